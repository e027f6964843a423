//! Linear hulls `L(Z)` of Dressian cells and cell dimensions.
//!
//! Coordinates are the bases of the ambient matroid in colex order. The
//! coordinates of non-bases are forced to zero and are left out.

use num::{BigInt, BigRational, One, Zero};

use crate::linalg::RationalSubspace;
use crate::matroid::Matroid;
use crate::symbol::{symbol_sets, Symbol};
use crate::valuation::Valuation;
use crate::Result;

/// `L(Z) = {x : x(Sac) + x(Sbd) = x(Sad) + x(Sbc) for (S,ab|cd) ∈ Z}`, with
/// `x(B) = 0` off the bases.
pub fn subspace_from_symbols(m: &Matroid, symbols: &[Symbol]) -> Result<RationalSubspace> {
    let mut l = RationalSubspace::full(m.bases().len());
    for sym in symbols {
        let ((x1, y1), (x2, y2)) = sym.cross_pairs();
        let mut coeffs: Vec<(usize, BigInt)> = Vec::with_capacity(4);
        for (set, c) in [(x1, 1), (y1, 1), (x2, -1), (y2, -1)] {
            if let Some(i) = m.basis_index(set) {
                coeffs.push((i, BigInt::from(c)));
            }
        }
        l.add_integer_equation(&coeffs)?;
    }
    Ok(l)
}

/// `U(M) = L(Z₀(M))`.
pub fn u_subspace(m: &Matroid) -> Result<RationalSubspace> {
    subspace_from_symbols(m, &symbol_sets(m).z0)
}

pub fn u_dim(m: &Matroid) -> Result<usize> {
    Ok(u_subspace(m)?.dim())
}

/// `L([ν])`, the linear hull of the cell of `ν`.
pub fn cell_subspace(nu: &Valuation) -> Result<RationalSubspace> {
    subspace_from_symbols(nu.matroid(), &nu.type_symbols())
}

/// `dim L([ν])`.
pub fn cell_dim(nu: &Valuation) -> Result<usize> {
    let l = cell_subspace(nu)?;
    debug_assert!(l.contains(nu.values()).unwrap_or(false));
    Ok(l.dim())
}

/// The indicator vector of a set of basis coordinates.
pub fn indicator(m: &Matroid, sets: &[crate::Set]) -> Vec<BigRational> {
    m.bases().iter().map(|b| if sets.contains(b) { BigRational::one() } else { BigRational::zero() }).collect()
}
