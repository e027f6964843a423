//! Symbols `(S, ab|cd)`: the sites of the three-term Plücker relations, and
//! the combinatorial type of a valuation.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::matroid::Matroid;
use crate::rational::ExtRational;
use crate::subset::{self, Set};
use crate::valuation::Valuation;
use crate::{Error, Result};

/// An `(r-2)`-set `S` with an unordered pairing `{{a,b},{c,d}}` of four
/// further elements.
///
/// Canonical form: `a < b`, `c < d`, `a < c`. There are exactly three symbols
/// per `(S, 4-set)`. The symbol stands for the equality
/// `ν(Sac) + ν(Sbd) = ν(Sad) + ν(Sbc)` between the two *other* pairings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Symbol {
    pub s: Set,
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub d: u8,
}

impl Symbol {
    /// Builds the canonical symbol for `(S, {x,y}|{z,w})` in any presentation.
    pub fn new(s: Set, ab: (usize, usize), cd: (usize, usize)) -> Result<Self> {
        let (mut p, mut q) = (ab, cd);
        if p.0 > p.1 {
            p = (p.1, p.0);
        }
        if q.0 > q.1 {
            q = (q.1, q.0);
        }
        if q.0 < p.0 {
            std::mem::swap(&mut p, &mut q);
        }
        let quad = subset::from_elements([p.0, p.1, q.0, q.1]);
        if subset::size(quad) != 4 || quad & s != 0 || p.1 >= 64 || q.1 >= 64 {
            return Err(Error::Input("a symbol needs four distinct elements outside S".into()));
        }
        Ok(Symbol { s, a: p.0 as u8, b: p.1 as u8, c: q.0 as u8, d: q.1 as u8 })
    }

    fn with(s: Set, a: usize, b: usize, c: usize, d: usize) -> Self {
        Symbol { s, a: a as u8, b: b as u8, c: c as u8, d: d as u8 }
    }

    fn pair(&self, x: u8, y: u8) -> Set {
        self.s | subset::singleton(x as usize) | subset::singleton(y as usize)
    }

    /// `(Sab, Scd)`: the pairing the symbol is named after.
    pub fn own_pair(&self) -> (Set, Set) {
        (self.pair(self.a, self.b), self.pair(self.c, self.d))
    }

    /// `((Sac, Sbd), (Sad, Sbc))`: the two sums that are compared.
    pub fn cross_pairs(&self) -> ((Set, Set), (Set, Set)) {
        ((self.pair(self.a, self.c), self.pair(self.b, self.d)), (self.pair(self.a, self.d), self.pair(self.b, self.c)))
    }

    pub fn quad(&self) -> Set {
        subset::from_elements([self.a as usize, self.b as usize, self.c as usize, self.d as usize])
    }

    /// Whether the equality holds for the extended function `f`.
    pub fn holds<F: Fn(Set) -> ExtRational>(&self, f: F) -> bool {
        let ((x1, y1), (x2, y2)) = self.cross_pairs();
        f(x1) + f(y1) == f(x2) + f(y2)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{{}}},{}{}|{}{})", subset::format(self.s), self.a, self.b, self.c, self.d)
    }
}

/// All `(S, quad)` locations of rank `r` on `n` elements, `S` and `quad` in
/// colex order.
pub(crate) fn locations(n: usize, r: usize) -> impl Iterator<Item = (Set, [usize; 4])> {
    let full = subset::full(n);
    let s_iter: Box<dyn Iterator<Item = Set>> =
        if r >= 2 { Box::new(subset::k_subsets(n, r - 2)) } else { Box::new(std::iter::empty()) };
    s_iter.flat_map(move |s| {
        subset::k_subsets_of(full & !s, 4).map(move |q| {
            let v: Vec<usize> = subset::elements(q).collect();
            (s, [v[0], v[1], v[2], v[3]])
        })
    })
}

/// The three canonical symbols at a location: `wx|yz`, `wy|xz`, `wz|xy`.
pub(crate) fn location_symbols(s: Set, q: [usize; 4]) -> [Symbol; 3] {
    let [w, x, y, z] = q;
    [Symbol::with(s, w, x, y, z), Symbol::with(s, w, y, x, z), Symbol::with(s, w, z, x, y)]
}

/// Number of symbols in `Z(r, E)` under the canonical 3-per-location count.
pub fn canonical_symbol_count(n: usize, r: usize) -> u64 {
    if r < 2 || n < r + 2 {
        return 0;
    }
    subset::binomial(n, r - 2) * subset::binomial(n - r + 2, 4) * 3
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SymbolSets {
    /// `Z(M)`: all four cross sets are bases.
    pub all: Vec<Symbol>,
    /// `Z₀(M)`: in `Z(M)` with `Sab` or `Scd` a non-basis.
    pub z0: Vec<Symbol>,
    /// `Z₁(M) = Z(M) \ Z₀(M)`.
    pub z1: Vec<Symbol>,
}

/// `Z(M)`, `Z₀(M)` and `Z₁(M)`, each sorted. Empty for `r < 2`.
pub fn symbol_sets(m: &Matroid) -> SymbolSets {
    let mut out = SymbolSets::default();
    for (s, q) in locations(m.n(), m.rank()) {
        for sym in location_symbols(s, q) {
            let ((x1, y1), (x2, y2)) = sym.cross_pairs();
            if ![x1, y1, x2, y2].iter().all(|&b| m.is_basis(b)) {
                continue;
            }
            out.all.push(sym);
            let (p, q) = sym.own_pair();
            if m.is_basis(p) && m.is_basis(q) {
                out.z1.push(sym);
            } else {
                out.z0.push(sym);
            }
        }
    }
    out.all.sort_unstable();
    out.z0.sort_unstable();
    out.z1.sort_unstable();
    out
}

/// The combinatorial type of a valuation: the symbols of `Z₁(M)` at which
/// the equality holds, together with the sizes of the larger symbol sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialType {
    pub matroid: Matroid,
    /// `[ν]₁`.
    pub symbols_equal: BTreeSet<Symbol>,
    /// `|[ν]|`, counted over `Z(M)`.
    pub type_size: usize,
    /// `|[ν̄] ∩ Z(r, E)|`, counted over all symbols of the rank.
    pub extended_size: usize,
}

impl Valuation {
    /// The equalities of `ν̄` over all of `Z(r, E)` restricted to `Z(M)`,
    /// i.e. the set `[ν]` (which contains `Z₀(M)`).
    pub fn type_symbols(&self) -> Vec<Symbol> {
        let m = self.matroid();
        let mut out = Vec::new();
        for (s, q) in locations(m.n(), m.rank()) {
            for sym in location_symbols(s, q) {
                let ((x1, y1), (x2, y2)) = sym.cross_pairs();
                if [x1, y1, x2, y2].iter().all(|&b| m.is_basis(b)) && sym.holds(|b| self.ext(b)) {
                    out.push(sym);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn combinatorial_type(&self) -> CombinatorialType {
        let m = self.matroid();
        let mut symbols_equal = BTreeSet::new();
        let (mut type_size, mut extended_size) = (0, 0);
        for (s, q) in locations(m.n(), m.rank()) {
            for sym in location_symbols(s, q) {
                if !sym.holds(|b| self.ext(b)) {
                    continue;
                }
                extended_size += 1;
                let ((x1, y1), (x2, y2)) = sym.cross_pairs();
                if ![x1, y1, x2, y2].iter().all(|&b| m.is_basis(b)) {
                    continue;
                }
                type_size += 1;
                let (p, q) = sym.own_pair();
                if m.is_basis(p) && m.is_basis(q) {
                    symbols_equal.insert(sym);
                }
            }
        }
        CombinatorialType { matroid: m.clone(), symbols_equal, type_size, extended_size }
    }

    /// Combinatorial equivalence: equal types over `Z₁(M)`.
    pub fn equivalent(&self, other: &Valuation) -> Result<bool> {
        if self.matroid() != other.matroid() {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.combinatorial_type().symbols_equal == other.combinatorial_type().symbols_equal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::subset::from_elements as set;

    fn pairs(ps: &[(usize, usize)]) -> Vec<Set> {
        ps.iter().map(|&(a, b)| set([a, b])).collect()
    }

    #[test]
    fn canonical_form() {
        let s1 = Symbol::new(0, (3, 2), (1, 0)).unwrap();
        let s2 = Symbol::new(0, (0, 1), (2, 3)).unwrap();
        assert_eq!(s1, s2);
        assert_eq!((s1.a, s1.b, s1.c, s1.d), (0, 1, 2, 3));
        assert!(Symbol::new(set([0]), (0, 1), (2, 3)).is_err());
        assert!(Symbol::new(0, (0, 1), (1, 3)).is_err());
    }

    #[test]
    fn symbol_set_sizes() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        let z = symbol_sets(&u24);
        assert_eq!((z.all.len(), z.z0.len(), z.z1.len()), (3, 0, 3));

        let m = Matroid::uniform_minus(2, 5, &pairs(&[(0, 1)])).unwrap();
        let z = symbol_sets(&m);
        assert_eq!((z.all.len(), z.z0.len(), z.z1.len()), (9, 3, 6));

        let m = Matroid::uniform_minus(2, 5, &pairs(&[(0, 1), (2, 3)])).unwrap();
        let z = symbol_sets(&m);
        assert_eq!((z.all.len(), z.z0.len(), z.z1.len()), (5, 5, 0));

        let z = symbol_sets(&Matroid::uniform(1, 5).unwrap());
        assert!(z.all.is_empty());
    }

    #[test]
    fn canonical_count_matches_enumeration() {
        for n in 2..9 {
            for r in 0..=n {
                let u = Matroid::uniform(r, n).unwrap();
                assert_eq!(symbol_sets(&u).all.len() as u64, canonical_symbol_count(n, r), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn sparse_paving_type_sizes() {
        let n1 = Matroid::uniform(2, 5).unwrap();
        let n2 = Matroid::uniform_minus(2, 5, &pairs(&[(0, 1)])).unwrap();
        let n3 = Matroid::uniform_minus(2, 5, &pairs(&[(0, 1), (2, 3)])).unwrap();
        let sizes: Vec<usize> =
            [n1, n2, n3].iter().map(|n| Valuation::from_matroid(n).combinatorial_type().type_size).collect();
        assert_eq!(sizes, vec![15, 9, 5]);
    }

    #[test]
    fn equivalence() {
        let u25 = Matroid::uniform(2, 5).unwrap();
        let nu = Valuation::from_matroid(&Matroid::uniform_minus(2, 5, &pairs(&[(0, 1)])).unwrap());
        assert!(nu.equivalent(&nu.scale(&int(3)).unwrap()).unwrap());
        let other = Valuation::from_matroid(&Matroid::uniform_minus(2, 5, &pairs(&[(0, 2)])).unwrap());
        assert!(!nu.equivalent(&other).unwrap());
        let zero24 = Valuation::zero(Matroid::uniform(2, 4).unwrap());
        assert_eq!(nu.equivalent(&zero24), Err(Error::AmbientMismatch));
        assert!(Valuation::zero(u25.clone()).equivalent(&Valuation::zero(u25)).unwrap());
    }
}
