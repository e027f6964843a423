//! Peeling spikes off valuations of uniform matroids.
//!
//! A spike is a valuation supported on a single basis. `ν − λ·1_B` stays a
//! valuation exactly while `λ` is at most the slack of `B`: at every
//! location where `B` is one of the pair sets, the pairing through `B` must
//! stay at or above the other two.

use num::{BigRational, Signed};

use crate::matroid::johnson_adjacent;
use crate::rational::ExtRational;
use crate::subset::{self, Set};
use crate::valuation::Valuation;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothDecomposition {
    pub smooth: Valuation,
    /// `(basis, λ)` in peeling order.
    pub peels: Vec<(Set, BigRational)>,
    /// Whether the peeled supports are pairwise non-adjacent in `J(r, n)`.
    pub supports_stable: bool,
}

/// Largest `λ ≥ 0` with `ν − λ·1_B` a valuation.
pub fn spike_slack(nu: &Valuation, b: Set) -> Result<BigRational> {
    let m = nu.matroid();
    if !m.is_uniform() {
        return Err(Error::Unsupported("spikes are only peeled on uniform matroids".into()));
    }
    let (n, r) = (m.n(), m.rank());
    if r < 2 || n < r + 2 {
        return Err(Error::Unsupported(format!("U({r},{n}) has no three-term relations, so every spike is unbounded")));
    }
    if !m.is_basis(b) {
        return Err(Error::Input(format!("{{{}}} is not a basis", subset::format(b))));
    }
    let v = |s: Set| nu.value(s).expect("uniform").clone();
    let outside = subset::full(n) & !b;
    let mut slack: Option<BigRational> = None;
    // B = S ∪ {x, y}; the complementary pair {z, w} lies outside B.
    for xy in subset::k_subsets_of(b, 2) {
        let s = b & !xy;
        let [x, y]: [usize; 2] = subset::to_vec(xy).try_into().expect("two elements");
        for zw in subset::k_subsets_of(outside, 2) {
            let [z, w]: [usize; 2] = subset::to_vec(zw).try_into().expect("two elements");
            let one = |e: usize| subset::singleton(e);
            let p1 = v(b) + v(s | zw);
            let p2 = v(s | one(x) | one(z)) + v(s | one(y) | one(w));
            let p3 = v(s | one(x) | one(w)) + v(s | one(y) | one(z));
            let here = if p2 == p3 && p1 > p2 { p1 - p2 } else { BigRational::from_integer(0.into()) };
            if slack.as_ref().is_none_or(|cur| here < *cur) {
                slack = Some(here);
            }
        }
    }
    Ok(slack.expect("at least one location"))
}

/// Peels spikes in colex order of bases, each with its maximal height.
///
/// Slacks never increase under peeling, so one colex pass reaches a
/// valuation without spike summands.
pub fn smooth_decompose(nu: &Valuation) -> Result<SmoothDecomposition> {
    let mut current = nu.clone();
    let mut peels = Vec::new();
    for &b in nu.matroid().bases() {
        let lambda = spike_slack(&current, b)?;
        if lambda.is_positive() {
            let lowered = current.value(b).expect("basis") - &lambda;
            current = current.with_value(b, lowered)?;
            peels.push((b, lambda));
        }
    }
    let supports_stable =
        peels.iter().enumerate().all(|(i, (x, _))| peels[i + 1..].iter().all(|(y, _)| !johnson_adjacent(*x, *y)));
    Ok(SmoothDecomposition { smooth: current, peels, supports_stable })
}

/// Whether `ν` has no spike summand.
pub fn is_smooth(nu: &Valuation) -> Result<bool> {
    for &b in nu.matroid().bases() {
        if spike_slack(nu, b)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl SmoothDecomposition {
    /// `ν_smooth + Σ λ·1_B`.
    pub fn recombine(&self) -> Valuation {
        let mut out = self.smooth.clone();
        for (b, lambda) in &self.peels {
            let v = out.value(*b).expect("basis") + lambda;
            let (m, mut values) = out.into_parts();
            let i = m.basis_index(*b).expect("basis");
            values[i] = v;
            out = Valuation::new_unchecked(m, values);
        }
        out
    }
}

/// `ExtRational` view used by reports.
pub fn slack_ext(nu: &Valuation, b: Set) -> ExtRational {
    spike_slack(nu, b).map(ExtRational::Finite).unwrap_or(ExtRational::Infinite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{modular_stable_matroid, Matroid};
    use crate::rational::int;
    use crate::subset::from_elements as set;

    #[test]
    fn zero_has_no_peels() {
        let d = smooth_decompose(&Valuation::zero(Matroid::uniform(2, 5).unwrap())).unwrap();
        assert!(d.peels.is_empty());
        assert_eq!(d.smooth, Valuation::zero(Matroid::uniform(2, 5).unwrap()));
    }

    #[test]
    fn sparse_paving_peels_its_nonbases() {
        for (n, r, k) in [(5, 2, 0), (6, 3, 1), (6, 2, 3), (7, 3, 0)] {
            let big_n = modular_stable_matroid(n, r, k).unwrap();
            let nu = Valuation::from_matroid(&big_n);
            let d = smooth_decompose(&nu).unwrap();
            let supports: Vec<Set> = d.peels.iter().map(|(b, _)| *b).collect();
            assert_eq!(supports, big_n.nonbases());
            assert!(d.peels.iter().all(|(_, l)| *l == int(1)));
            assert_eq!(d.smooth, Valuation::zero(nu.matroid().clone()));
            assert!(d.supports_stable);
            assert_eq!(d.recombine(), nu);
        }
    }

    #[test]
    fn u24_two_nonbases_peel_further() {
        // with a single location the first spike can be lowered by 2
        let big_n = modular_stable_matroid(4, 2, 1).unwrap();
        let d = smooth_decompose(&Valuation::from_matroid(&big_n)).unwrap();
        assert_eq!(d.peels, vec![(set([0, 1]), int(2))]);
        assert!(is_smooth(&d.smooth).unwrap());
    }

    #[test]
    fn unsupported_shapes() {
        let nu = Valuation::zero(Matroid::uniform(1, 4).unwrap());
        assert!(smooth_decompose(&nu).is_err());
        let m = Matroid::uniform_minus(2, 5, &[set([0, 1])]).unwrap();
        assert!(smooth_decompose(&Valuation::zero(m)).is_err());
    }
}
