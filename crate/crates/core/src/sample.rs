//! Seeded random instances: valuations, shifts, equivalent pairs, subspaces
//! and exact covers.
//!
//! Valid valuations come from `p`-adic valuations of the maximal minors of
//! integer matrices, which satisfy the three-term condition in any rank.

use num::{BigInt, BigRational, Integer, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{ExactCover, RationalSubspace};
use crate::matroid::Matroid;
use crate::rational::int;
use crate::subset::{self, Set};
use crate::valuation::Valuation;
use crate::{Error, Result};

/// The generator for item `index` of a run seeded with `seed`: independent
/// of thread scheduling.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-max_num..=max_num)), BigInt::from(rng.gen_range(1..=max_den)))
}

pub fn random_shift<R: Rng>(rng: &mut R, n: usize) -> Vec<BigRational> {
    (0..n).map(|_| random_rational(rng, 6, 4)).collect()
}

fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    // Bareiss elimination
    let k = a.len();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for i in 0..k {
        if a[i][i].is_zero() {
            let Some(p) = (i + 1..k).find(|&p| !a[p][i].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(i, p);
            sign = -sign;
        }
        for j in i + 1..k {
            for c in i + 1..k {
                a[j][c] = (&a[j][c] * &a[i][i] - &a[j][i] * &a[i][c]) / &prev;
            }
        }
        prev = a[i][i].clone();
    }
    sign * &a[k - 1][k - 1]
}

fn padic(x: &BigInt, p: u32) -> i64 {
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    while x.is_multiple_of(&p) {
        x /= &p;
        v += 1;
    }
    v
}

fn entry<R: Rng>(rng: &mut R, p: u32) -> BigInt {
    let unit = loop {
        let u: i64 = rng.gen_range(-9..=9);
        if u % p as i64 != 0 {
            break u;
        }
    };
    BigInt::from(unit) * num::pow(BigInt::from(p), rng.gen_range(0..4usize))
}

/// A matrix whose column matroid is `m`, for uniform `m` or loopless
/// rank-2 `m`: parallel columns are random multiples of one another.
fn realizing_matrix<R: Rng>(rng: &mut R, m: &Matroid, p: u32) -> Result<Vec<Vec<BigInt>>> {
    let (n, r) = (m.n(), m.rank());
    let classes: Vec<Set> = if m.is_uniform() {
        (0..n).map(subset::singleton).collect()
    } else if r == 2 && m.loops() == 0 {
        m.parallel_classes()
    } else {
        return Err(Error::Unsupported("random realizations are generated for uniform or loopless rank-2 matroids".into()));
    };
    for _ in 0..1000 {
        let mut cols = vec![Vec::new(); n];
        for &class in &classes {
            let base: Vec<BigInt> = (0..r).map(|_| entry(rng, p)).collect();
            for e in subset::elements(class) {
                let f = entry(rng, p);
                cols[e] = base.iter().map(|x| x * &f).collect();
            }
        }
        let realized = subset::k_subsets(n, r).all(|b| {
            let minor: Vec<Vec<BigInt>> = (0..r).map(|i| subset::elements(b).map(|e| cols[e][i].clone()).collect()).collect();
            let nonzero = r == 0 || !det(minor).is_zero();
            nonzero == m.is_basis(b)
        });
        if realized {
            return Ok(cols);
        }
    }
    Err(Error::Internal("failed to realize the matroid by a random matrix".into()))
}

/// `B ↦ v_p(det A_B)` for a random integer matrix realizing `m`, then a
/// random positive scaling and shift.
pub fn random_valuation<R: Rng>(rng: &mut R, m: &Matroid) -> Result<Valuation> {
    let p = *[2u32, 3].choose(rng).expect("nonempty");
    let cols = realizing_matrix(rng, m, p)?;
    let r = m.rank();
    let values: Vec<BigRational> = m
        .bases()
        .iter()
        .map(|&b| {
            let minor: Vec<Vec<BigInt>> = (0..r).map(|i| subset::elements(b).map(|e| cols[e][i].clone()).collect()).collect();
            let d = if r == 0 { BigInt::from(1) } else { det(minor) };
            int(padic(&d, p))
        })
        .collect();
    let lambda = BigRational::new(BigInt::from(rng.gen_range(1..=5)), BigInt::from(rng.gen_range(1..=3)));
    let nu = Valuation::new(m.clone(), values)?.scale(&lambda)?;
    let w = random_shift(rng, m.n());
    nu.shift(&w)
}

/// A value vector that is usually *not* a valuation: a valid one with a
/// single value perturbed, or independent random values.
pub fn random_value_map<R: Rng>(rng: &mut R, m: &Matroid) -> Result<Vec<BigRational>> {
    if rng.gen_bool(0.5) {
        let nu = random_valuation(rng, m)?;
        let mut values = nu.values().to_vec();
        let i = rng.gen_range(0..values.len());
        let delta = loop {
            let d = random_rational(rng, 4, 3);
            if !d.is_zero() {
                break d;
            }
        };
        values[i] += delta;
        Ok(values)
    } else {
        Ok((0..m.bases().len()).map(|_| int(rng.gen_range(-2..=2))).collect())
    }
}

/// A random tree valuation of a loopless rank-2 matroid: random compatible
/// clusters on the parallel classes, negative internal lengths and random
/// leaf lengths.
pub fn random_tree_valuation<R: Rng>(rng: &mut R, m: &Matroid) -> Result<Valuation> {
    use crate::tree::{canonical_tree, tree_to_valuation, MetricTree};
    if m.rank() != 2 || m.loops() != 0 {
        return Err(Error::Unsupported("tree valuations need a loopless rank-2 matroid".into()));
    }
    let classes = m.parallel_classes();
    let t = classes.len();
    let mut candidates: Vec<Set> =
        (2..t.saturating_sub(1)).flat_map(|k| subset::k_subsets_of(subset::full(t) & !1, k)).collect();
    candidates.shuffle(rng);
    let mut chosen: Vec<Set> = Vec::new();
    for c in candidates {
        if rng.gen_bool(0.5) && chosen.iter().all(|&x| x & c == 0 || x & c == x || x & c == c) {
            chosen.push(c);
        }
    }
    let lifted: Vec<Set> =
        chosen.iter().map(|&c| subset::elements(c).fold(0, |acc, i| acc | classes[i])).collect();
    let shape = canonical_tree(m.n(), &lifted)?;
    let edges = shape
        .edges()
        .iter()
        .map(|(u, v, l)| {
            let len = if l.is_zero() {
                random_rational(rng, 5, 3)
            } else {
                -BigRational::new(BigInt::from(rng.gen_range(1..=6)), BigInt::from(rng.gen_range(1..=3)))
            };
            (*u, *v, len)
        })
        .collect();
    let tree = MetricTree::new(shape.n(), shape.vertex_count(), edges)?;
    tree_to_valuation(&tree, m)
}

/// A valuation equivalent to `nu`: `nu + ε·μ` for a random `μ ∈ L([ν])`,
/// halving `ε` until the type is preserved, then a random positive scaling
/// and shift.
pub fn random_equivalent<R: Rng>(rng: &mut R, nu: &Valuation) -> Result<Valuation> {
    let l = crate::cells::cell_subspace(nu)?;
    let basis = l.kernel_basis();
    let mut mu = vec![BigRational::zero(); nu.values().len()];
    for v in &basis {
        let c = int(rng.gen_range(-3..=3));
        for (x, y) in mu.iter_mut().zip(v) {
            *x += &c * y;
        }
    }
    let mut eps = BigRational::new(BigInt::from(1), BigInt::from(rng.gen_range(1..=4)));
    let moved = loop {
        let values: Vec<BigRational> = nu.values().iter().zip(&mu).map(|(a, b)| a + &eps * b).collect();
        if let Ok(cand) = Valuation::new(nu.matroid().clone(), values) {
            if cand.equivalent(nu)? {
                break cand;
            }
        }
        eps /= int(2);
        if eps < BigRational::new(BigInt::from(1), BigInt::from(1u64 << 40)) {
            break nu.clone();
        }
    };
    let lambda = BigRational::new(BigInt::from(rng.gen_range(1..=4)), BigInt::from(rng.gen_range(1..=4)));
    moved.scale(&lambda)?.shift(&random_shift(rng, nu.matroid().n()))
}

/// A random subspace of `Q^dim` cut out by up to `dim` sparse integer
/// equations.
pub fn random_subspace<R: Rng>(rng: &mut R, dim: usize) -> RationalSubspace {
    let mut l = RationalSubspace::full(dim);
    let eqs = rng.gen_range(0..=dim);
    for _ in 0..eqs {
        let support = rng.gen_range(1..=dim.min(4));
        let coeffs: Vec<(usize, i64)> = (0..support).map(|_| (rng.gen_range(0..dim), rng.gen_range(-3..=3))).collect();
        l.add_small_equation(&coeffs).expect("in range");
    }
    l
}

/// A random exact `k`-cover of `0..ground` with at most `blocks` blocks:
/// every element goes into `k` distinct random blocks; empty blocks are
/// dropped.
pub fn random_cover<R: Rng>(rng: &mut R, ground: usize, k: usize, blocks: usize) -> Result<ExactCover> {
    if blocks < k {
        return Err(Error::Input(format!("{blocks} blocks cannot cover {k} times")));
    }
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); blocks];
    let idx: Vec<usize> = (0..blocks).collect();
    for x in 0..ground {
        for &b in idx.choose_multiple(rng, k) {
            sets[b].push(x);
        }
    }
    sets.retain(|s| !s.is_empty());
    ExactCover::new(ground, sets, k)
}

/// A random subset of `0..ground` as a coordinate list.
pub fn random_coords<R: Rng>(rng: &mut R, ground: usize) -> Vec<usize> {
    (0..ground).filter(|_| rng.gen_bool(0.5)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::from_elements as set;
    use crate::valuation::check_valuation_bruteforce;

    #[test]
    fn valuations_are_valid_and_reproducible() {
        let ms = [
            Matroid::uniform(3, 6).unwrap(),
            Matroid::uniform_minus(2, 5, &[set([0, 1]), set([2, 3])]).unwrap(),
            Matroid::uniform_minus(2, 6, &[set([0, 1]), set([0, 2]), set([1, 2])]).unwrap(),
        ];
        for m in &ms {
            let a = random_valuation(&mut rng(7), m).unwrap();
            let b = random_valuation(&mut rng(7), m).unwrap();
            assert_eq!(a, b);
            assert!(check_valuation_bruteforce(m, a.values()).unwrap());
        }
    }

    #[test]
    fn equivalent_pairs_are_equivalent() {
        let m = Matroid::uniform(3, 6).unwrap();
        let mut g = rng(3);
        for _ in 0..5 {
            let nu = random_valuation(&mut g, &m).unwrap();
            let nu2 = random_equivalent(&mut g, &nu).unwrap();
            assert!(nu.equivalent(&nu2).unwrap());
        }
    }

    #[test]
    fn covers_are_exact() {
        let mut g = rng(1);
        for _ in 0..20 {
            let c = random_cover(&mut g, 7, 3, 6).unwrap();
            assert_eq!(c.k(), 3);
        }
    }

    #[test]
    fn streams_differ() {
        let a: u64 = stream_rng(5, 0).gen();
        let b: u64 = stream_rng(5, 1).gen();
        assert_ne!(a, b);
        assert_eq!(a, stream_rng(5, 0).gen::<u64>());
    }

    #[test]
    fn tree_valuations_decode() {
        let m = Matroid::uniform(2, 6).unwrap();
        let mut g = rng(11);
        for _ in 0..10 {
            let nu = random_tree_valuation(&mut g, &m).unwrap();
            let t = crate::tree::decode_tree(&nu).unwrap();
            assert_eq!(crate::tree::tree_to_valuation(&t, &m).unwrap(), nu);
        }
    }
}
