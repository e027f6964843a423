//! Bit-mask subsets of a small ground set.

use num::BigInt;

/// A subset of `{0, .., 63}`.
pub type Set = u64;

pub const MAX_GROUND: usize = 63;

#[inline]
pub fn singleton(e: usize) -> Set {
    1 << e
}

#[inline]
pub fn size(s: Set) -> usize {
    s.count_ones() as usize
}

#[inline]
pub fn contains(s: Set, e: usize) -> bool {
    s >> e & 1 == 1
}

#[inline]
pub fn full(n: usize) -> Set {
    if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// Elements of `s` in increasing order.
pub fn elements(mut s: Set) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let e = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(e)
        }
    })
}

pub fn from_elements<I: IntoIterator<Item = usize>>(it: I) -> Set {
    it.into_iter().fold(0, |acc, e| acc | singleton(e))
}

/// All `k`-subsets of `{0, .., n-1}` in colex order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Set> {
    let limit = full(n);
    let mut next = if k > n { None } else { Some(full(k)) };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (r != 0 && nxt & !limit == 0).then_some(nxt)
        };
        Some(cur)
    })
}

/// All `k`-subsets of the given set, colex order relative to the ambient mask.
pub fn k_subsets_of(set: Set, k: usize) -> impl Iterator<Item = Set> {
    let elems: Vec<usize> = elements(set).collect();
    k_subsets(elems.len(), k).map(move |m| elements(m).fold(0, |acc, i| acc | singleton(elems[i])))
}

/// Comma-joined elements, e.g. `"0,2,5"`.
pub fn format(s: Set) -> String {
    elements(s).map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

pub fn to_vec(s: Set) -> Vec<usize> {
    elements(s).collect()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

pub fn binomial_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_subsets_counts_and_order() {
        for n in 0..9 {
            for k in 0..=n + 1 {
                let v: Vec<Set> = k_subsets(n, k).collect();
                assert_eq!(v.len() as u64, binomial(n, k), "n={n} k={k}");
                assert!(v.windows(2).all(|w| w[0] < w[1]));
                assert!(v.iter().all(|&s| size(s) == k && s & !full(n) == 0));
            }
        }
    }

    #[test]
    fn subsets_of_a_set() {
        let s = from_elements([1, 4, 6]);
        let v: Vec<Set> = k_subsets_of(s, 2).collect();
        assert_eq!(v, vec![from_elements([1, 4]), from_elements([1, 6]), from_elements([4, 6])]);
    }

    #[test]
    fn formatting() {
        assert_eq!(format(from_elements([0, 2, 5])), "0,2,5");
        assert_eq!(format(0), "");
    }
}
