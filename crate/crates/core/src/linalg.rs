//! Exact linear algebra over the rationals.
//!
//! Subspaces are kept in kernel form: `L = {x : A x = 0}` with the rows of
//! `A` maintained in fraction-free echelon form over `BigInt`.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::Serialize;

use crate::rational::common_denominator;
use crate::{Error, Result};

/// A linear subspace of `Q^ambient` given by linear equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSubspace {
    ambient: usize,
    /// Echelon rows sorted by pivot; each row primitive with positive pivot.
    rows: Vec<(usize, Vec<BigInt>)>,
    equations_added: usize,
}

fn normalize(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let lead_negative = row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in row.iter_mut() {
        *x = &*x / &g;
        if lead_negative {
            *x = -&*x;
        }
    }
}

impl RationalSubspace {
    /// The whole space `Q^ambient`.
    pub fn full(ambient: usize) -> Self {
        RationalSubspace { ambient, rows: Vec::new(), equations_added: 0 }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.rows.len()
    }

    /// Rank of the equation system.
    pub fn equation_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn equations_added(&self) -> usize {
        self.equations_added
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.ambient {
            return Err(Error::Input(format!("coordinate {i} out of range 0..{}", self.ambient)));
        }
        Ok(())
    }

    /// Adds `Σ c_i x_i = 0` given as sparse integer coefficients. Returns
    /// whether the dimension dropped.
    pub fn add_integer_equation(&mut self, coeffs: &[(usize, BigInt)]) -> Result<bool> {
        let mut row = vec![BigInt::zero(); self.ambient];
        for (i, c) in coeffs {
            self.check_index(*i)?;
            row[*i] += c;
        }
        self.equations_added += 1;
        Ok(self.insert_row(row))
    }

    /// Adds `Σ c_i x_i = 0` with rational coefficients.
    pub fn add_equation(&mut self, coeffs: &[(usize, BigRational)]) -> Result<bool> {
        let den = common_denominator(coeffs.iter().map(|(_, c)| c));
        let ints: Vec<(usize, BigInt)> =
            coeffs.iter().map(|(i, c)| (*i, (c * BigRational::from_integer(den.clone())).to_integer())).collect();
        self.add_integer_equation(&ints)
    }

    pub fn add_small_equation(&mut self, coeffs: &[(usize, i64)]) -> Result<bool> {
        let ints: Vec<(usize, BigInt)> = coeffs.iter().map(|&(i, c)| (i, BigInt::from(c))).collect();
        self.add_integer_equation(&ints)
    }

    fn reduce(&self, row: &mut [BigInt]) {
        for (p, u) in &self.rows {
            if row[*p].is_zero() {
                continue;
            }
            let f = row[*p].clone();
            let g = &u[*p];
            for (x, y) in row.iter_mut().zip(u) {
                if y.is_zero() && x.is_zero() {
                    continue;
                }
                *x = &*x * g - y * &f;
            }
            normalize(row);
        }
    }

    fn insert_row(&mut self, mut row: Vec<BigInt>) -> bool {
        self.reduce(&mut row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        normalize(&mut row);
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, row));
        true
    }

    /// Whether `x ∈ L`.
    pub fn contains(&self, x: &[BigRational]) -> Result<bool> {
        if x.len() != self.ambient {
            return Err(Error::Input(format!("vector of length {} in ambient {}", x.len(), self.ambient)));
        }
        Ok(self.rows.iter().all(|(_, u)| {
            u.iter().zip(x).filter(|(c, _)| !c.is_zero()).fold(BigRational::zero(), |acc, (c, v)| acc + v * c).is_zero()
        }))
    }

    /// `L^A = {x ∈ L : x_a = 0 for a ∈ A}`.
    pub fn with_zero_coords(&self, coords: &[usize]) -> Result<RationalSubspace> {
        let mut out = self.clone();
        for &a in coords {
            out.add_small_equation(&[(a, 1)])?;
        }
        Ok(out)
    }

    /// `dim L_A`, the dimension of the coordinate projection onto `A`,
    /// computed as `dim L − dim L^A`.
    pub fn projection_dim(&self, coords: &[usize]) -> Result<usize> {
        Ok(self.dim() - self.with_zero_coords(coords)?.dim())
    }

    pub fn intersect(&self, other: &RationalSubspace) -> Result<RationalSubspace> {
        if self.ambient != other.ambient {
            return Err(Error::Input("subspaces live in different ambient spaces".into()));
        }
        let mut out = self.clone();
        for (_, u) in &other.rows {
            out.insert_row(u.clone());
            out.equations_added += 1;
        }
        Ok(out)
    }

    /// A basis of `L`, one vector per free coordinate of the reduced
    /// echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let rref = rref(self.rows.iter().map(|(_, u)| u.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect());
        let pivots: Vec<usize> = rref.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect();
        (0..self.ambient)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![BigRational::zero(); self.ambient];
                v[free] = BigRational::one();
                for (row, &p) in rref.iter().zip(&pivots) {
                    v[p] = -row[free].clone();
                }
                v
            })
            .collect()
    }
}

/// Reduced row echelon form over the rationals; zero rows dropped.
pub fn rref(mut m: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut lead = 0;
    for c in 0..cols {
        let Some(piv) = (lead..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(lead, piv);
        let inv = m[lead][c].recip();
        for x in m[lead].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[lead].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != lead && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= y * &f;
                }
            }
        }
        lead += 1;
    }
    m.truncate(lead);
    m
}

/// Rank of a rational matrix.
pub fn rank(m: &[Vec<BigRational>]) -> usize {
    let Some(first) = m.first() else {
        return 0;
    };
    let mut l = RationalSubspace::full(first.len());
    for row in m {
        let den = common_denominator(row.iter());
        let ints: Vec<BigInt> = row.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect();
        l.insert_row(ints);
    }
    l.equation_rank()
}

/// Rank of an integer matrix given as small entries.
pub fn rank_small(m: &[Vec<i64>]) -> usize {
    let Some(first) = m.first() else {
        return 0;
    };
    let mut l = RationalSubspace::full(first.len());
    for row in m {
        l.insert_row(row.iter().map(|&x| BigInt::from(x)).collect());
    }
    l.equation_rank()
}

/// A solution of `A x = b` with free variables set to zero, or `None` if the
/// system is inconsistent.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = a.first().map_or(0, |r| r.len());
    let aug: Vec<Vec<BigRational>> =
        a.iter().zip(b).map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect()).collect();
    let red = rref(aug);
    let mut x = vec![BigRational::zero(); cols];
    for row in &red {
        let p = row.iter().position(|v| !v.is_zero()).expect("nonzero row");
        if p == cols {
            return None;
        }
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// A multiset of nonempty blocks covering each element of `0..ground`
/// exactly `k` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCover {
    ground: usize,
    blocks: Vec<Vec<usize>>,
    k: usize,
}

impl ExactCover {
    pub fn new(ground: usize, blocks: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        let mut count = vec![0usize; ground];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::NotExactCover("empty block".into()));
            }
            let mut sorted = block.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != block.len() {
                return Err(Error::NotExactCover(format!("block {block:?} repeats an element")));
            }
            for &x in block {
                if x >= ground {
                    return Err(Error::NotExactCover(format!("element {x} outside 0..{ground}")));
                }
                count[x] += 1;
            }
        }
        if k == 0 {
            return Err(Error::NotExactCover("multiplicity must be positive".into()));
        }
        if let Some(x) = (0..ground).find(|&x| count[x] != k) {
            return Err(Error::NotExactCover(format!("element {x} covered {} times, expected {k}", count[x])));
        }
        Ok(ExactCover { ground, blocks, k })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCheck {
    pub lhs: usize,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub rhs: BigRational,
    pub holds: bool,
}

/// Evaluates `dim L ≤ (1/k) Σ_A dim L_A` exactly.
pub fn exact_cover_check(l: &RationalSubspace, cover: &ExactCover) -> Result<CoverCheck> {
    if cover.ground != l.ambient() {
        return Err(Error::NotExactCover(format!("cover ground set has {} elements, subspace {}", cover.ground, l.ambient())));
    }
    let mut total = 0usize;
    for block in &cover.blocks {
        total += l.projection_dim(block)?;
    }
    let rhs = BigRational::new(BigInt::from(total), BigInt::from(cover.k));
    let lhs = l.dim();
    let holds = BigRational::from_integer(BigInt::from(lhs)) <= rhs;
    Ok(CoverCheck { lhs, rhs, holds })
}
