//! Matroids given by their basis families.

use std::collections::VecDeque;

use serde::Serialize;

use crate::subset::{self, Set};
use crate::{Error, Result};

/// A matroid on `{0, .., n-1}` given by its bases.
///
/// Bases are kept sorted in colex order (numeric order of the masks), so two
/// matroids are equal iff their fields are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matroid {
    n: usize,
    r: usize,
    bases: Vec<Set>,
}

/// The result of [`Matroid::minor`]: the minor on `{0, .., n'-1}` and the
/// original name of each of its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub matroid: Matroid,
    pub element_map: Vec<usize>,
}

/// Connected components of the subgraph of the Johnson graph `J(r, n)`
/// induced on the non-bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JohnsonComponentReport {
    pub nonbasis_count: usize,
    pub component_count: usize,
    pub components: Vec<Vec<Set>>,
}

fn validate_family(n: usize, r: usize, sets: &[Set]) -> Result<()> {
    if n > subset::MAX_GROUND {
        return Err(Error::Input(format!("ground set of size {n} exceeds {}", subset::MAX_GROUND)));
    }
    if r > n {
        return Err(Error::Input(format!("rank {r} exceeds ground set size {n}")));
    }
    if sets.is_empty() {
        return Err(Error::EmptyBasisFamily);
    }
    for &b in sets {
        if b & !subset::full(n) != 0 {
            return Err(Error::Input(format!("basis {{{}}} has elements outside 0..{n}", subset::format(b))));
        }
        if subset::size(b) != r {
            return Err(Error::Input(format!("basis {{{}}} does not have {r} elements", subset::format(b))));
        }
    }
    Ok(())
}

/// The first violation of the exchange axiom, as `(B, B', e)`.
fn exchange_violation(sorted: &[Set]) -> Option<(Set, Set, usize)> {
    let has = |s: Set| sorted.binary_search(&s).is_ok();
    for &b in sorted {
        for &b2 in sorted {
            for e in subset::elements(b & !b2) {
                let ok = subset::elements(b2 & !b).any(|f| {
                    let x = b & !subset::singleton(e) | subset::singleton(f);
                    let y = b2 & !subset::singleton(f) | subset::singleton(e);
                    has(x) && has(y)
                });
                if !ok {
                    return Some((b, b2, e));
                }
            }
        }
    }
    None
}

/// Whether `candidate_bases` satisfies the basis-exchange axiom.
///
/// Malformed input (wrong sizes, elements out of range, empty family) is an
/// error rather than `false`.
pub fn is_matroid(n: usize, r: usize, candidate_bases: &[Set]) -> Result<bool> {
    validate_family(n, r, candidate_bases)?;
    let mut sorted = candidate_bases.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(exchange_violation(&sorted).is_none())
}

impl Matroid {
    /// Builds a matroid, checking the exchange axiom.
    pub fn new(n: usize, r: usize, bases: impl IntoIterator<Item = Set>) -> Result<Self> {
        let mut bases: Vec<Set> = bases.into_iter().collect();
        validate_family(n, r, &bases)?;
        bases.sort_unstable();
        bases.dedup();
        if let Some((b, b2, e)) = exchange_violation(&bases) {
            return Err(Error::NotAMatroid(format!(
                "exchange fails for B={{{}}}, B'={{{}}}, e={e}",
                subset::format(b),
                subset::format(b2)
            )));
        }
        Ok(Matroid { n, r, bases })
    }

    /// Skips the exchange check. Callers must guarantee the axiom holds.
    pub(crate) fn from_sorted_unchecked(n: usize, r: usize, bases: Vec<Set>) -> Self {
        debug_assert!(bases.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!bases.is_empty());
        Matroid { n, r, bases }
    }

    /// The uniform matroid `U(r, n)`.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n || n > subset::MAX_GROUND {
            return Err(Error::Input(format!("no uniform matroid U({r},{n})")));
        }
        Ok(Matroid { n, r, bases: subset::k_subsets(n, r).collect() })
    }

    /// `U(r, n)` with the listed `r`-sets removed from the bases.
    pub fn uniform_minus(r: usize, n: usize, nonbases: &[Set]) -> Result<Self> {
        let u = Self::uniform(r, n)?;
        Self::new(n, r, u.bases.into_iter().filter(|b| !nonbases.contains(b)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn bases(&self) -> &[Set] {
        &self.bases
    }

    pub fn ground(&self) -> Set {
        subset::full(self.n)
    }

    pub fn is_basis(&self, s: Set) -> bool {
        self.basis_index(s).is_some()
    }

    /// Position of `s` in the colex-sorted basis list.
    pub fn basis_index(&self, s: Set) -> Option<usize> {
        self.bases.binary_search(&s).ok()
    }

    pub fn is_uniform(&self) -> bool {
        self.bases.len() as u64 == subset::binomial(self.n, self.r)
    }

    /// The `r`-subsets that are not bases, colex order.
    pub fn nonbases(&self) -> Vec<Set> {
        subset::k_subsets(self.n, self.r).filter(|&s| !self.is_basis(s)).collect()
    }

    fn check_range(&self, x: Set) -> Result<()> {
        if x & !self.ground() != 0 {
            return Err(Error::Input(format!(
                "set {{{}}} is not contained in 0..{}",
                subset::format(x),
                self.n
            )));
        }
        Ok(())
    }

    /// `max |X ∩ B|` over the bases.
    pub fn rank_of(&self, x: Set) -> Result<usize> {
        self.check_range(x)?;
        Ok(self.rank_unchecked(x))
    }

    pub(crate) fn rank_unchecked(&self, x: Set) -> usize {
        self.bases.iter().map(|&b| subset::size(b & x)).max().unwrap_or(0)
    }

    pub fn is_independent(&self, x: Set) -> Result<bool> {
        Ok(self.rank_of(x)? == subset::size(x))
    }

    /// Elements contained in no basis.
    pub fn loops(&self) -> Set {
        let union = self.bases.iter().fold(0, |acc, &b| acc | b);
        self.ground() & !union
    }

    /// Parallel classes of the non-loop elements, each sorted, ordered by
    /// smallest element.
    pub fn parallel_classes(&self) -> Vec<Set> {
        let loops = self.loops();
        let mut seen: Set = loops;
        let mut classes = Vec::new();
        for e in 0..self.n {
            if subset::contains(seen, e) {
                continue;
            }
            let mut class = subset::singleton(e);
            for f in e + 1..self.n {
                if !subset::contains(seen, f) && self.rank_unchecked(subset::singleton(e) | subset::singleton(f)) == 1 {
                    class |= subset::singleton(f);
                }
            }
            seen |= class;
            classes.push(class);
        }
        classes
    }

    /// Contracts `contract_set` (which must be independent) and deletes
    /// `delete_set`, relabelling the surviving elements `0..n'` in
    /// increasing order.
    pub fn minor(&self, contract_set: Set, delete_set: Set) -> Result<Minor> {
        self.check_range(contract_set)?;
        self.check_range(delete_set)?;
        if contract_set & delete_set != 0 {
            return Err(Error::Input("contraction and deletion sets intersect".into()));
        }
        if !self.is_independent(contract_set)? {
            return Err(Error::Dependent(subset::format(contract_set)));
        }
        let contracted: Vec<Set> = self
            .bases
            .iter()
            .filter(|&&b| b & contract_set == contract_set)
            .map(|&b| b & !contract_set)
            .collect();
        let best = contracted.iter().map(|&b| subset::size(b & !delete_set)).max().ok_or(Error::EmptyBasisFamily)?;
        let element_map: Vec<usize> = subset::elements(self.ground() & !contract_set & !delete_set).collect();
        let relabel = |b: Set| -> Set {
            element_map.iter().enumerate().filter(|(_, &e)| subset::contains(b, e)).fold(0, |acc, (i, _)| acc | subset::singleton(i))
        };
        let mut bases: Vec<Set> =
            contracted.iter().map(|&b| b & !delete_set).filter(|&b| subset::size(b) == best).map(relabel).collect();
        bases.sort_unstable();
        bases.dedup();
        if bases.is_empty() {
            return Err(Error::EmptyBasisFamily);
        }
        Ok(Minor { matroid: Matroid::from_sorted_unchecked(element_map.len(), best, bases), element_map })
    }

    pub fn contract(&self, s: Set) -> Result<Minor> {
        self.minor(s, 0)
    }

    pub fn delete(&self, d: Set) -> Result<Minor> {
        self.minor(0, d)
    }

    /// The matroid whose bases are the complements of the bases.
    pub fn dual(&self) -> Matroid {
        let g = self.ground();
        let mut bases: Vec<Set> = self.bases.iter().map(|&b| g & !b).collect();
        bases.sort_unstable();
        Matroid::from_sorted_unchecked(self.n, self.n - self.r, bases)
    }

    /// Whether the non-bases are pairwise non-adjacent in `J(r, n)`.
    pub fn is_sparse_paving(&self) -> bool {
        is_johnson_stable(&self.nonbases())
    }

    pub fn johnson_components(&self) -> JohnsonComponentReport {
        let nb = self.nonbases();
        let mut comp = vec![usize::MAX; nb.len()];
        let mut components = Vec::new();
        for start in 0..nb.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = Vec::new();
            let mut queue = VecDeque::from([start]);
            comp[start] = id;
            while let Some(i) = queue.pop_front() {
                members.push(nb[i]);
                for j in 0..nb.len() {
                    if comp[j] == usize::MAX && johnson_adjacent(nb[i], nb[j]) {
                        comp[j] = id;
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        JohnsonComponentReport { nonbasis_count: nb.len(), component_count: components.len(), components }
    }
}

/// Adjacency in the Johnson graph: equal size, differing in one element.
#[inline]
pub fn johnson_adjacent(x: Set, y: Set) -> bool {
    subset::size(x ^ y) == 2 && subset::size(x) == subset::size(y)
}

/// Whether no two of `sets` are adjacent in the Johnson graph.
pub fn is_johnson_stable(sets: &[Set]) -> bool {
    sets.iter().enumerate().all(|(i, &x)| sets[i + 1..].iter().all(|&y| !johnson_adjacent(x, y)))
}

/// The sparse paving matroid whose non-bases are the `r`-sets with element
/// sum `≡ k (mod n)`.
pub fn modular_stable_matroid(n: usize, r: usize, k: usize) -> Result<Matroid> {
    if n == 0 || k >= n || r == 0 || r >= n {
        return Err(Error::Input(format!("modular construction needs 0 <= k < n and 0 < r < n, got n={n} r={r} k={k}")));
    }
    let bases = subset::k_subsets(n, r).filter(|&s| subset::elements(s).sum::<usize>() % n != k);
    Matroid::new(n, r, bases)
}

/// Residue classes `k` whose modular construction has the most non-bases;
/// ties resolved toward the smallest `k`.
pub fn largest_modular_class(n: usize, r: usize) -> usize {
    let mut counts = vec![0usize; n];
    for s in subset::k_subsets(n, r) {
        counts[subset::elements(s).sum::<usize>() % n] += 1;
    }
    (0..n).max_by_key(|&k| (counts[k], std::cmp::Reverse(k))).unwrap_or(0)
}
