//! Closed-form bounds on the dimension and number of cells of Dressians,
//! lower-bound certificates from sparse paving matroids, and censuses of
//! combinatorial types.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use dashu::float::DBig;
use num::{BigInt, BigRational, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cells::{cell_dim, u_dim};
use crate::matroid::{johnson_adjacent, largest_modular_class, modular_stable_matroid, Matroid};
use crate::rational::to_significant_digits;
use crate::subset::{self, binomial_big, Set};
use crate::symbol::{canonical_symbol_count, Symbol};
use crate::valuation::Valuation;
use crate::{Error, Result};

/// Significant digits of every reported decimal.
pub const REPORT_DIGITS: usize = 20;
/// Working precision (decimal digits) for logarithms.
const LOG_DIGITS: usize = 60;
/// Largest `C(n, r)` for which `s(r, n)` is enumerated.
pub const STABLE_SET_LIMIT: u64 = 20;
/// Largest `C(n, r)` for which certificates run exact elimination.
pub const CERTIFICATE_LIMIT: u64 = 84;

fn big(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn binom(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial_big(n, k))
}

fn decimal_to_rational(s: &str) -> BigRational {
    let (neg, s) = s.strip_prefix('-').map_or((false, s), |t| (true, t));
    let (int_part, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = BigInt::from_str(&format!("{int_part}{frac}")).expect("decimal digits");
    let q = BigRational::new(digits, num::pow(BigInt::from(10), frac.len()));
    if neg {
        -q
    } else {
        q
    }
}

/// `ln(x)` for a positive integer, accurate to about 60 digits.
fn ln_int(x: &BigInt) -> BigRational {
    let f = DBig::from_str(&x.to_string()).expect("integer").with_precision(LOG_DIGITS).value();
    let text = f.ln().to_string();
    decimal_to_rational(&text)
}

/// `ln(q)` for a positive rational.
fn ln(q: &BigRational) -> BigRational {
    ln_int(q.numer()) - ln_int(q.denom())
}

/// One reported quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub quantity: String,
    /// Exact value when the formula is rational.
    pub exact: Option<String>,
    /// The value to [`REPORT_DIGITS`] significant digits.
    pub value: String,
    /// Which statement the formula comes from.
    pub anchor: String,
    #[serde(skip)]
    pub numeric: BigRational,
}

impl BoundEntry {
    fn exact(quantity: &str, q: BigRational, anchor: &str) -> Self {
        BoundEntry {
            quantity: quantity.into(),
            exact: Some(q.to_string()),
            value: to_significant_digits(&q, REPORT_DIGITS),
            anchor: anchor.into(),
            numeric: q,
        }
    }

    fn approx(quantity: &str, q: BigRational, anchor: &str) -> Self {
        BoundEntry {
            quantity: quantity.into(),
            exact: None,
            value: to_significant_digits(&q, REPORT_DIGITS),
            anchor: anchor.into(),
            numeric: q,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub r: usize,
    /// Rank of the contractions used in the contraction-ratio bound.
    pub t: usize,
    pub digits: usize,
    pub entries: Vec<BoundEntry>,
}

impl BoundsReport {
    pub fn get(&self, quantity: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.quantity == quantity)
    }
}

/// Upper bound on `dim D(U(t, m))` used as the contraction base case:
/// the tree bound `2m − 3` in rank 2, otherwise the spread bound with
/// binomial exponent `t − 2` (`low`) or `t − 1`.
fn contraction_base(m: usize, t: usize, low: bool) -> BigRational {
    if t == 2 {
        return big(2 * m as u64 - 3);
    }
    let k = if low { t - 2 } else { t - 1 };
    binom(m - 2, k) + big(m as u64 - 1)
}

/// Evaluates every bound formula for `U(r, n)`; `t` is the contraction rank
/// for the contraction-ratio bound.
pub fn bounds_report(n: usize, r: usize, t: usize) -> Result<BoundsReport> {
    if !(0 < r && r < n && n <= subset::MAX_GROUND) {
        return Err(Error::Input(format!("bounds need 0 < r < n <= {}, got n={n} r={r}", subset::MAX_GROUND)));
    }
    if r >= 2 && !(2 <= t && t <= r) {
        return Err(Error::Input(format!("contraction rank t must satisfy 2 <= t <= r, got t={t} r={r}")));
    }
    let nr = binom(n, r);
    let nb = big(n as u64);
    let ln_n = ln_int(&BigInt::from(n));
    let mut e = Vec::new();

    let z_ordered = if r >= 2 && n >= r + 2 { binom(n, r - 2) * binom(n - r + 2, 4) * big(6) } else { BigRational::zero() };
    let z_canonical = big(canonical_symbol_count(n, r));
    let z_crude = &nr * big(((n - r) * (n - r) * r * r) as u64) / big(4);
    e.push(BoundEntry::exact("z_count_ordered", z_ordered, "symbol count C(n,r-2)*C(n-r+2,4)*6 (ordered pairings)"));
    e.push(BoundEntry::exact("z_count_canonical", z_canonical.clone(), "symbol count with 3 pairings per 4-set"));
    e.push(BoundEntry::exact("z_count_crude", z_crude, "crude symbol bound C(n,r)*(n-r)^2*r^2/4"));
    e.push(BoundEntry::exact("log2_count_upper", z_canonical, "log2 #D(M) <= |Z1(M)|"));

    e.push(BoundEntry::exact(
        "dim_upper",
        &nr * big(3) / big((n - r + 3) as u64),
        "dim D(M) <= C(n,r)*3/(n-r+3), rank >= 3",
    ));

    let m = n - r + t;
    let contraction_readings: &[(&str, bool)] =
        if r >= 2 { &[("dim_contraction_ratio_r2", true), ("dim_contraction_ratio_r1", false)] } else { &[] };
    for &(name, low) in contraction_readings {
        let ratio = contraction_base(m, t, low) / binom(m, t);
        e.push(BoundEntry::exact(
            name,
            ratio.clone(),
            &format!(
                "dim D(M)/C(n,r) <= max dim D(M/S)/C(n-r+t,t), t={t}, base case {}",
                if t == 2 { "tree bound 2m-3" } else if low { "C(m-2,t-2)+m-1" } else { "C(m-2,t-1)+m-1" }
            ),
        ));
        e.push(BoundEntry::exact(
            &name.replace("ratio", "bound"),
            &nr * ratio,
            "C(n,r) times the contraction ratio",
        ));
    }

    e.push(BoundEntry::exact(
        "spreaddim_upper_r2",
        if r >= 2 { binom(n - 2, r - 2) } else { BigRational::zero() } + big(n as u64 - 1),
        "dim D(M) <= C(n-2,r-2)+n-1",
    ));
    e.push(BoundEntry::exact(
        "spreaddim_upper_r1",
        if n >= 2 { binom(n - 2, r - 1) } else { BigRational::zero() } + big(n as u64 - 1),
        "dim D(M) <= C(n-2,r-1)+n-1 (spread exponent r-1)",
    ));

    let u = nr.clone();
    let n4 = big((n as u64).pow(4));
    let sub = &u * ln(&(&nr * n4 / &u));
    e.push(BoundEntry::approx("subspace_count_bound", sub, "ln #D(M) <= u*ln(C(n,r)*n^4/u), u = dim U(M)"));

    let count = &nr * (big(55) * &ln_n + big(4) * &ln_n * &ln_n) / &nb;
    e.push(BoundEntry::approx("count_upper", count, "ln #D(M) <= C(n,r)*(55 ln n + 4 ln^2 n)/n, rank >= 3"));

    let m2 = n - r + 2;
    e.push(BoundEntry::exact(
        "tree_dim_upper",
        big(2 * m2 as u64 - 3),
        "rank-2 contraction U(2,n-r+2): dim <= n+t-3 with t = n-r+2 classes",
    ));
    let tree_count = BigRational::from_integer(num::pow(BigInt::from(2), m2) * num::pow(BigInt::from(m2), m2));
    e.push(BoundEntry::exact("tree_count_upper", tree_count, "rank-2 contraction U(2,n-r+2): #D <= 2^t * t^n"));

    e.push(BoundEntry::exact("dim_lower", &nr / &nb, "C(n,r)/n <= dim D(U(r,n))"));
    if subset::binomial(n, r) <= STABLE_SET_LIMIT {
        e.push(BoundEntry::exact("count_lower", big(sparse_paving_count(n, r)?), "s(r,n) <= #D(U(r,n))"));
    }
    Ok(BoundsReport { n, r, t, digits: REPORT_DIGITS, entries: e })
}

/// Every stable set of `J(r, n)` as a colex-sorted list of `r`-sets.
pub fn johnson_stable_sets(n: usize, r: usize) -> Result<Vec<Vec<Set>>> {
    let count = subset::binomial(n, r);
    if count > STABLE_SET_LIMIT {
        return Err(Error::ScaleLimit(format!(
            "stable-set enumeration of J({r},{n}) has {count} vertices; the limit is {STABLE_SET_LIMIT}"
        )));
    }
    let vertices: Vec<Set> = subset::k_subsets(n, r).collect();
    let k = vertices.len();
    let nbr: Vec<u64> = (0..k)
        .map(|i| (0..k).filter(|&j| johnson_adjacent(vertices[i], vertices[j])).fold(0u64, |acc, j| acc | 1 << j))
        .collect();
    let mut out = Vec::new();
    fn rec(i: usize, k: usize, chosen: u64, blocked: u64, nbr: &[u64], out: &mut Vec<u64>) {
        if i == k {
            out.push(chosen);
            return;
        }
        rec(i + 1, k, chosen, blocked, nbr, out);
        if blocked & (1 << i) == 0 {
            rec(i + 1, k, chosen | 1 << i, blocked | nbr[i], nbr, out);
        }
    }
    let mut masks = Vec::new();
    rec(0, k, 0, 0, &nbr, &mut masks);
    masks.sort_unstable();
    for mask in masks {
        out.push((0..k).filter(|&i| mask & (1 << i) != 0).map(|i| vertices[i]).collect());
    }
    Ok(out)
}

/// All sparse paving matroids of rank `r` on `0..n`: complements of stable
/// sets of `J(r, n)` with at least one basis left.
pub fn sparse_paving_matroids(n: usize, r: usize) -> Result<Vec<Matroid>> {
    johnson_stable_sets(n, r)?
        .into_iter()
        .filter(|s| (s.len() as u64) < subset::binomial(n, r))
        .map(|s| Matroid::uniform_minus(r, n, &s))
        .collect()
}

/// `s(r, n)`, the number of sparse paving matroids of rank `r` on `n`
/// labelled elements.
pub fn sparse_paving_count(n: usize, r: usize) -> Result<u64> {
    Ok(sparse_paving_matroids(n, r)?.len() as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundCertificate {
    pub n: usize,
    pub r: usize,
    /// Residue class of the modular construction.
    pub k: usize,
    #[serde(skip)]
    pub matroid: Matroid,
    pub nonbases: usize,
    pub components: usize,
    pub dim: usize,
    /// `⌈C(n, r)/n⌉`.
    pub target: u64,
}

impl LowerBoundCertificate {
    /// `dim ≥ c ≥ ⌈C(n,r)/n⌉`.
    pub fn holds(&self) -> bool {
        self.dim >= self.components && self.components as u64 >= self.target
    }
}

/// A sparse paving matroid `N` with many Johnson components together with
/// the dimension of the cell of `ν_N`.
pub fn lower_bound_certificate(n: usize, r: usize) -> Result<LowerBoundCertificate> {
    if !(0 < r && r < n) {
        return Err(Error::Input(format!("need 0 < r < n, got n={n} r={r}")));
    }
    let size = subset::binomial(n, r);
    if size > CERTIFICATE_LIMIT {
        return Err(Error::ScaleLimit(format!("C({n},{r}) = {size} exceeds the certificate limit {CERTIFICATE_LIMIT}")));
    }
    let k = largest_modular_class(n, r);
    let matroid = modular_stable_matroid(n, r, k)?;
    let report = matroid.johnson_components();
    let dim = cell_dim(&Valuation::from_matroid(&matroid))?;
    Ok(LowerBoundCertificate {
        n,
        r,
        k,
        nonbases: report.nonbasis_count,
        components: report.component_count,
        dim,
        target: size.div_ceil(n as u64),
        matroid,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub n: usize,
    pub r: usize,
    pub matroids: usize,
    pub distinct_types: usize,
    /// Whether `N ↦ [ν_N]` was injective on the source.
    pub injective: bool,
    pub max_dim: Option<usize>,
}

/// Counts the distinct combinatorial types of `ν_N` over `source`; all
/// matroids must have rank `r` on `n` elements.
pub fn census_from_matroids(n: usize, r: usize, source: &[Matroid], with_dims: bool) -> Result<CensusRecord> {
    if let Some(bad) = source.iter().find(|m| m.n() != n || m.rank() != r) {
        return Err(Error::Input(format!("census over U({r},{n}) received a rank-{} matroid on {}", bad.rank(), bad.n())));
    }
    if subset::binomial(n, r) > CERTIFICATE_LIMIT {
        return Err(Error::ScaleLimit(format!("C({n},{r}) exceeds the census limit {CERTIFICATE_LIMIT}")));
    }
    let typed: Vec<(BTreeSet<Symbol>, Option<usize>)> = source
        .par_iter()
        .map(|m| {
            let nu = Valuation::from_matroid(m);
            let dim = if with_dims { Some(cell_dim(&nu)?) } else { None };
            Ok((nu.combinatorial_type().symbols_equal, dim))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut seen: BTreeMap<&BTreeSet<Symbol>, usize> = BTreeMap::new();
    for (ty, _) in &typed {
        *seen.entry(ty).or_default() += 1;
    }
    Ok(CensusRecord {
        n,
        r,
        matroids: source.len(),
        distinct_types: seen.len(),
        injective: seen.len() == source.len(),
        max_dim: typed.iter().filter_map(|(_, d)| *d).max(),
    })
}

/// Observed quantity against a bound, for CSV reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub quantity: String,
    pub observed: String,
    pub bound: String,
    pub bound_source: String,
    pub satisfied: bool,
}

/// Compares an observed value against an upper-bound entry.
pub fn compare_upper(quantity: &str, observed: &BigRational, entry: &BoundEntry) -> Comparison {
    Comparison {
        quantity: quantity.into(),
        observed: if observed.is_integer() { observed.to_string() } else { to_significant_digits(observed, REPORT_DIGITS) },
        bound: entry.value.clone(),
        bound_source: entry.anchor.clone(),
        satisfied: *observed <= entry.numeric,
    }
}

/// Compares an observed value against a lower-bound entry.
pub fn compare_lower(quantity: &str, observed: &BigRational, entry: &BoundEntry) -> Comparison {
    Comparison { satisfied: *observed >= entry.numeric, ..compare_upper(quantity, observed, entry) }
}

/// `log2` of a positive integer count, to 20 significant digits.
pub fn log2_count(count: u64) -> BigRational {
    if count <= 1 {
        return BigRational::zero();
    }
    ln_int(&BigInt::from(count)) / ln_int(&BigInt::from(2))
}

/// Natural log of a positive integer count.
pub fn ln_count(count: u64) -> BigRational {
    if count <= 1 {
        return BigRational::zero();
    }
    ln_int(&BigInt::from(count))
}

/// `dim U(M)` as a rational, for the subspace-count bound of non-uniform
/// matroids.
pub fn subspace_count_bound(m: &Matroid) -> Result<BigRational> {
    let u = BigRational::from_integer(BigInt::from(u_dim(m)?));
    if u.is_zero() {
        return Ok(BigRational::zero());
    }
    let total = BigRational::from_integer(BigInt::from(m.bases().len()));
    let n4 = big((m.n() as u64).pow(4));
    Ok(&u * ln(&(total * n4 / &u)))
}

/// Floating view of an entry for quick comparisons.
pub fn approx_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
