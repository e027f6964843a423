//! Valuations of a matroid: exact rational functions on the bases
//! satisfying the valuated exchange axiom (min convention).

use std::collections::BTreeMap;

use num::{BigRational, Signed, Zero};

use crate::matroid::Matroid;
use crate::rational::{int, ExtRational};
use crate::subset::{self, Set};
use crate::linalg::solve;
use crate::symbol::{locations, Symbol};
use crate::{Error, Result};

/// A valuation of `matroid`, stored as one value per basis in colex order.
/// Off the bases the value is implicitly `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    matroid: Matroid,
    values: Vec<BigRational>,
}

/// Arranges `(basis, value)` pairs into a per-basis vector, rejecting
/// non-bases, duplicates and missing bases.
pub fn values_from_pairs<I>(m: &Matroid, pairs: I) -> Result<Vec<BigRational>>
where
    I: IntoIterator<Item = (Set, BigRational)>,
{
    let mut slots: Vec<Option<BigRational>> = vec![None; m.bases().len()];
    for (b, v) in pairs {
        let i = m.basis_index(b).ok_or_else(|| Error::Input(format!("value given for non-basis {{{}}}", subset::format(b))))?;
        if slots[i].replace(v).is_some() {
            return Err(Error::Input(format!("duplicate value for {{{}}}", subset::format(b))));
        }
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Input(format!("no value for basis {{{}}}", subset::format(m.bases()[i])))))
        .collect()
}

fn check_len(m: &Matroid, values: &[BigRational]) -> Result<()> {
    if values.len() != m.bases().len() {
        return Err(Error::Input(format!("{} values for {} bases", values.len(), m.bases().len())));
    }
    Ok(())
}

fn lookup<'a>(m: &Matroid, values: &'a [BigRational], s: Set) -> Option<&'a BigRational> {
    m.basis_index(s).map(|i| &values[i])
}

/// The three-term criterion: at every `(S, 4-set)` the minimum of the three
/// pairing sums of `ν̄` is `∞` or attained at least twice. The basis family
/// itself is a matroid by construction of [`Matroid`].
pub fn check_valuation(m: &Matroid, values: &[BigRational]) -> Result<bool> {
    check_len(m, values)?;
    Ok(first_three_term_failure(m, values).is_none())
}

pub(crate) fn first_three_term_failure(m: &Matroid, values: &[BigRational]) -> Option<(Set, [usize; 4])> {
    let ext = |s: Set| ExtRational::from(lookup(m, values, s));
    for (s, q) in locations(m.n(), m.rank()) {
        let [w, x, y, z] = q.map(subset::singleton);
        let sums = [
            ext(s | w | x) + ext(s | y | z),
            ext(s | w | y) + ext(s | x | z),
            ext(s | w | z) + ext(s | x | y),
        ];
        let min = sums.iter().min().expect("three sums");
        if min.is_finite() && sums.iter().filter(|&v| v == min).count() < 2 {
            return Some((s, q));
        }
    }
    None
}

/// Direct evaluation of the exchange axiom (V) over all pairs of `r`-sets:
/// for all `B, B'` and `e ∈ B \ B'` some `f ∈ B' \ B` has
/// `ν̄(B) + ν̄(B') ≥ ν̄(B-e+f) + ν̄(B'+e-f)`.
pub fn check_valuation_bruteforce(m: &Matroid, values: &[BigRational]) -> Result<bool> {
    check_len(m, values)?;
    let ext = |s: Set| ExtRational::from(lookup(m, values, s));
    let all: Vec<Set> = subset::k_subsets(m.n(), m.rank()).collect();
    for &b in &all {
        for &b2 in &all {
            let lhs = ext(b) + ext(b2);
            if !lhs.is_finite() {
                continue;
            }
            for e in subset::elements(b & !b2) {
                let ok = subset::elements(b2 & !b).any(|f| {
                    let (se, sf) = (subset::singleton(e), subset::singleton(f));
                    lhs >= ext(b & !se | sf) + ext(b2 & !sf | se)
                });
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

impl Valuation {
    /// Builds a valuation from one value per basis (colex order), rejecting
    /// value maps that violate the axiom.
    pub fn new(matroid: Matroid, values: Vec<BigRational>) -> Result<Self> {
        check_len(&matroid, &values)?;
        if let Some((s, q)) = first_three_term_failure(&matroid, &values) {
            return Err(Error::NotAValuation(format!(
                "three-term condition fails at S={{{}}}, {{{},{},{},{}}}",
                subset::format(s),
                q[0],
                q[1],
                q[2],
                q[3]
            )));
        }
        Ok(Valuation { matroid, values })
    }

    pub fn from_pairs<I: IntoIterator<Item = (Set, BigRational)>>(matroid: Matroid, pairs: I) -> Result<Self> {
        let values = values_from_pairs(&matroid, pairs)?;
        Self::new(matroid, values)
    }

    pub(crate) fn new_unchecked(matroid: Matroid, values: Vec<BigRational>) -> Self {
        debug_assert_eq!(matroid.bases().len(), values.len());
        Valuation { matroid, values }
    }

    pub fn zero(matroid: Matroid) -> Self {
        let values = vec![BigRational::zero(); matroid.bases().len()];
        Valuation { matroid, values }
    }

    /// `ν_N(X) = r − r_N(X)`, a valuation of `U(r, n)`.
    pub fn from_matroid(n: &Matroid) -> Self {
        let u = Matroid::uniform(n.rank(), n.n()).expect("rank at most n");
        let values = u.bases().iter().map(|&x| int((n.rank() - n.rank_unchecked(x)) as i64)).collect();
        Valuation { matroid: u, values }
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn into_parts(self) -> (Matroid, Vec<BigRational>) {
        (self.matroid, self.values)
    }

    pub fn value(&self, b: Set) -> Option<&BigRational> {
        lookup(&self.matroid, &self.values, b)
    }

    /// `ν̄(b)`: the value, or `∞` off the bases.
    pub fn ext(&self, b: Set) -> ExtRational {
        self.value(b).into()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Set, &BigRational)> {
        self.matroid.bases().iter().copied().zip(&self.values)
    }

    /// Basis with the given value, for tests and examples.
    pub fn with_value(&self, b: Set, v: BigRational) -> Result<Valuation> {
        let i = self.matroid.basis_index(b).ok_or_else(|| Error::Input(format!("{{{}}} is not a basis", subset::format(b))))?;
        let mut values = self.values.clone();
        values[i] = v;
        Valuation::new(self.matroid.clone(), values)
    }

    /// `ν^w(B) = ν(B) + Σ_{e∈B} w(e)`.
    pub fn shift(&self, w: &[BigRational]) -> Result<Valuation> {
        if w.len() != self.matroid.n() {
            return Err(Error::Input(format!("shift vector has {} entries, expected {}", w.len(), self.matroid.n())));
        }
        let values = self.pairs().map(|(b, v)| subset::elements(b).fold(v.clone(), |acc, e| acc + &w[e])).collect();
        Ok(Valuation::new_unchecked(self.matroid.clone(), values))
    }

    /// Multiplies every value by `lambda > 0`.
    pub fn scale(&self, lambda: &BigRational) -> Result<Valuation> {
        if !lambda.is_positive() {
            return Err(Error::Input("scaling factor must be positive".into()));
        }
        let values = self.values.iter().map(|v| v * lambda).collect();
        Ok(Valuation::new_unchecked(self.matroid.clone(), values))
    }

    pub fn min_value(&self) -> &BigRational {
        self.values.iter().min().expect("nonempty basis family")
    }

    /// The residue matroid `M₀(ν^w)`: bases minimizing `ν^w`.
    pub fn residue_matroid(&self, w: &[BigRational]) -> Result<Matroid> {
        let shifted = self.shift(w)?;
        let min = shifted.min_value().clone();
        let bases: Vec<Set> = shifted.pairs().filter(|(_, v)| **v == min).map(|(b, _)| b).collect();
        Ok(Matroid::from_sorted_unchecked(self.matroid.n(), self.matroid.rank(), bases))
    }

    /// `ν/S` on `M/S`, with `(ν/S)(B) = ν(B ∪ S)`. The minor's elements are
    /// relabelled as in [`Matroid::minor`].
    pub fn contract(&self, s: Set) -> Result<Valuation> {
        let minor = self.matroid.contract(s)?;
        let values = minor
            .matroid
            .bases()
            .iter()
            .map(|&b| {
                let orig = subset::elements(b).fold(s, |acc, i| acc | subset::singleton(minor.element_map[i]));
                self.value(orig).cloned().ok_or_else(|| Error::Internal("contraction left the basis family".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Valuation::new_unchecked(minor.matroid, values))
    }

    /// A shift `w` certifying that `sym ∈ Z₁(M)` is *not* in `[ν]`: the
    /// residue matroid `M₀(ν^w)` contains `Sab`, `Scd` and one cross pair of
    /// `sym`, and neither set of the other cross pair.
    ///
    /// Returns `Ok(None)` when the symbol belongs to `[ν]`.
    pub fn residue_witness(&self, sym: &Symbol) -> Result<Option<Vec<BigRational>>> {
        let m = &self.matroid;
        let (p, q) = sym.own_pair();
        let ((ac, bd), (ad, bc)) = sym.cross_pairs();
        if ![p, q, ac, bd, ad, bc].iter().all(|&b| m.is_basis(b)) {
            return Err(Error::Input(format!("symbol {sym} is not in Z1(M)")));
        }
        if sym.holds(|b| self.ext(b)) {
            return Ok(None);
        }
        let v = |b: Set| self.value(b).expect("basis").clone();
        let (tie, lose) = if v(ac) + v(bd) < v(ad) + v(bc) { ((ac, bd), (ad, bc)) } else { ((ad, bc), (ac, bd)) };

        // Unknowns: w on the quad. Flatten Sab, Scd and the tying pair, and
        // balance the losing pair; the losing sets then sit strictly above.
        let quad: Vec<usize> = subset::elements(sym.quad()).collect();
        let row = |x: Set, y: Set| -> Vec<BigRational> {
            quad.iter()
                .map(|&e| int(subset::contains(x, e) as i64 - subset::contains(y, e) as i64))
                .collect()
        };
        let eqs = [(p, tie.0), (p, tie.1), (p, q), (lose.0, lose.1)];
        let a: Vec<Vec<BigRational>> = eqs.iter().map(|&(x, y)| row(x, y)).collect();
        let rhs: Vec<BigRational> = eqs.iter().map(|&(x, y)| v(y) - v(x)).collect();
        let wq = solve(&a, &rhs).ok_or_else(|| Error::Internal(format!("witness system for {sym} is inconsistent")))?;

        let max_w = wq.iter().map(|x| x.abs()).max().expect("four entries");
        let spread = self.values.iter().max().expect("nonempty") - self.min_value();
        let big = int(1) + spread + max_w * int(6);
        let w: Vec<BigRational> = (0..m.n())
            .map(|e| {
                if let Some(i) = quad.iter().position(|&x| x == e) {
                    wq[i].clone()
                } else if subset::contains(sym.s, e) {
                    -big.clone()
                } else {
                    big.clone()
                }
            })
            .collect();

        let residue = self.residue_matroid(&w)?;
        let certified = [p, q, tie.0, tie.1].iter().all(|&b| residue.is_basis(b))
            && !residue.is_basis(lose.0)
            && !residue.is_basis(lose.1);
        if !certified {
            return Err(Error::Internal(format!("witness for {sym} failed verification")));
        }
        Ok(Some(w))
    }
}

/// Collects `(basis, value)` pairs keyed by basis, colex order.
pub fn value_map(v: &Valuation) -> BTreeMap<Set, BigRational> {
    v.pairs().map(|(b, x)| (b, x.clone())).collect()
}
