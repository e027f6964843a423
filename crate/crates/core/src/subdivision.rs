//! The regular matroid subdivision `P(ν)` of the matroid polytope.
//!
//! Maximal cells are found by walking the dual graph: start from a
//! full-dimensional lower face and cross each interior facet by tilting the
//! height function until the neighbouring cell becomes the minimizer set.

use std::collections::{BTreeSet, VecDeque};

use num::{BigRational, Signed, Zero};
use serde::Serialize;

use crate::linalg::{rank_small, RationalSubspace};
use crate::matroid::Matroid;
use crate::subset::{self, Set};
use crate::valuation::Valuation;
use crate::{Error, Result};

/// Affine dimension of the convex hull of the incidence vectors of `bases`.
pub fn face_dim(n: usize, bases: &[Set]) -> usize {
    let Some(&first) = bases.first() else {
        return 0;
    };
    let rows: Vec<Vec<i64>> = bases[1..]
        .iter()
        .map(|&b| (0..n).map(|e| subset::contains(b, e) as i64 - subset::contains(first, e) as i64).collect())
        .collect();
    rank_small(&rows)
}

/// `dim P_M`.
pub fn polytope_dim(m: &Matroid) -> usize {
    face_dim(m.n(), m.bases())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExplorationStatus {
    /// The flip graph closed: every maximal cell was found.
    Exhaustive,
    /// Exploration stopped at the cell cap.
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionCensus {
    /// Residue matroids of the full-dimensional cells, sorted.
    pub maximal_cells: Vec<Matroid>,
    /// A shift realising each cell as `M₀(ν^w)`, aligned with `maximal_cells`.
    pub witnesses: Vec<Vec<BigRational>>,
    pub spread: usize,
    pub status: ExplorationStatus,
}

fn minimizers(nu: &Valuation, w: &[BigRational]) -> Result<(Vec<Set>, BigRational, Valuation)> {
    let shifted = nu.shift(w)?;
    let min = shifted.min_value().clone();
    let bases = shifted.pairs().filter(|(_, v)| **v == min).map(|(b, _)| b).collect();
    Ok((bases, min, shifted))
}

fn incidence_sum(psi: &[BigRational], b: Set) -> BigRational {
    subset::elements(b).fold(BigRational::zero(), |acc, e| acc + &psi[e])
}

/// A shift whose minimizer set is full-dimensional, reached from `w = 0`.
fn initial_cell(nu: &Valuation) -> Result<Vec<BigRational>> {
    let m = nu.matroid();
    let n = m.n();
    let target = polytope_dim(m);
    let mut w = vec![BigRational::zero(); n];
    loop {
        let (face, min, shifted) = minimizers(nu, &w)?;
        if face_dim(n, &face) == target {
            return Ok(w);
        }
        // ψ constant on the face but not on P_M
        let mut constant_on_face = RationalSubspace::full(n);
        for &b in &face[1..] {
            let coeffs: Vec<(usize, i64)> = (0..n)
                .map(|e| (e, subset::contains(b, e) as i64 - subset::contains(face[0], e) as i64))
                .filter(|&(_, c)| c != 0)
                .collect();
            constant_on_face.add_small_equation(&coeffs)?;
        }
        let psi = constant_on_face
            .kernel_basis()
            .into_iter()
            .find(|psi| m.bases().iter().any(|&b| incidence_sum(psi, b) != incidence_sum(psi, face[0])))
            .ok_or_else(|| Error::Internal("no direction leaves a lower-dimensional face".into()))?;
        let level = incidence_sum(&psi, face[0]);
        let below = m.bases().iter().any(|&b| incidence_sum(&psi, b) < level);
        let psi: Vec<BigRational> = if below { psi } else { psi.into_iter().map(|x| -x).collect() };
        let level = incidence_sum(&psi, face[0]);
        let step = shifted
            .pairs()
            .filter_map(|(b, v)| {
                let drop = &level - incidence_sum(&psi, b);
                drop.is_positive().then(|| (v - &min) / drop)
            })
            .min()
            .ok_or_else(|| Error::Internal("tilt direction does not decrease any basis".into()))?;
        for (x, p) in w.iter_mut().zip(&psi) {
            *x += &step * p;
        }
    }
}

/// Facets of the matroid polytope of `cell` as `(A, r_cell(A))` with the
/// face `x(A) = r_cell(A)` of codimension 1; one `A` per distinct facet.
fn facets(n: usize, cell: &[Set]) -> Vec<(Set, usize)> {
    let dim = face_dim(n, cell);
    let mut seen: BTreeSet<Vec<Set>> = BTreeSet::new();
    let mut out = Vec::new();
    for a in 1..subset::full(n) {
        let rank = cell.iter().map(|&b| subset::size(b & a)).max().unwrap_or(0);
        let face: Vec<Set> = cell.iter().copied().filter(|&b| subset::size(b & a) == rank).collect();
        if face.len() == cell.len() || face_dim(n, &face) + 1 != dim {
            continue;
        }
        if seen.insert(face) {
            out.push((a, rank));
        }
    }
    out
}

/// Enumerates the maximal cells of `P(ν)`, stopping after `max_cells`.
pub fn subdivision_cells_capped(nu: &Valuation, max_cells: usize) -> Result<SubdivisionCensus> {
    let m = nu.matroid();
    let n = m.n();
    let start = initial_cell(nu)?;
    let mut found: BTreeSet<Vec<Set>> = BTreeSet::new();
    let mut cells: Vec<(Vec<Set>, Vec<BigRational>)> = Vec::new();
    let mut queue = VecDeque::new();
    let (first, _, _) = minimizers(nu, &start)?;
    found.insert(first.clone());
    queue.push_back((first, start));
    let mut status = ExplorationStatus::Exhaustive;
    while let Some((cell, w)) = queue.pop_front() {
        let (_, min, shifted) = minimizers(nu, &w)?;
        for (a, rank) in facets(n, &cell) {
            let step = shifted
                .pairs()
                .filter_map(|(b, v)| {
                    let excess = subset::size(b & a) as i64 - rank as i64;
                    (excess > 0).then(|| (v - &min) / BigRational::from_integer(excess.into()))
                })
                .min();
            let Some(step) = step else {
                continue;
            };
            let w2: Vec<BigRational> =
                w.iter().enumerate().map(|(e, x)| if subset::contains(a, e) { x - &step } else { x.clone() }).collect();
            let (next, _, _) = minimizers(nu, &w2)?;
            if found.insert(next.clone()) {
                if found.len() > max_cells {
                    status = ExplorationStatus::Sampled;
                    found.remove(&next);
                    continue;
                }
                queue.push_back((next, w2));
            }
        }
        cells.push((cell, w));
    }
    cells.sort();
    let covered = cells.iter().flat_map(|(c, _)| c.iter().copied()).collect::<BTreeSet<Set>>();
    if status == ExplorationStatus::Exhaustive && covered.len() != m.bases().len() {
        return Err(Error::Internal("maximal cells do not cover the basis family".into()));
    }
    let spread = cells.len();
    let (maximal_cells, witnesses) =
        cells.into_iter().map(|(c, w)| (Matroid::from_sorted_unchecked(n, m.rank(), c), w)).unzip();
    Ok(SubdivisionCensus { maximal_cells, witnesses, spread, status })
}

/// Default cap on the number of maximal cells explored.
pub const DEFAULT_CELL_CAP: usize = 10_000;

pub fn subdivision_cells(nu: &Valuation) -> Result<SubdivisionCensus> {
    subdivision_cells_capped(nu, DEFAULT_CELL_CAP)
}

/// Measured spread against `C(n−2, r−2)` and `C(n−2, r−1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpreadReport {
    pub n: usize,
    pub r: usize,
    pub spread: usize,
    pub status: ExplorationStatus,
    pub binom_n2_r2: u64,
    pub binom_n2_r1: u64,
    pub within_r2: bool,
    pub within_r1: bool,
}

pub fn spread_report(nu: &Valuation) -> Result<SpreadReport> {
    let census = subdivision_cells(nu)?;
    let (n, r) = (nu.matroid().n(), nu.matroid().rank());
    let binom = |k: Option<usize>| match (n.checked_sub(2), k) {
        (Some(top), Some(k)) => subset::binomial(top, k),
        _ => 0,
    };
    let b2 = binom(r.checked_sub(2));
    let b1 = binom(r.checked_sub(1));
    Ok(SpreadReport {
        n,
        r,
        spread: census.spread,
        status: census.status,
        binom_n2_r2: b2,
        binom_n2_r1: b1,
        within_r2: census.spread as u64 <= b2,
        within_r1: census.spread as u64 <= b1,
    })
}
