//! Cyclic polytopes `C(n, d)` generated combinatorially.
//!
//! Vertices are indexed `0..n` in moment-curve order; that order is part
//! of the contract, since the facets are exactly the `d`-subsets picked
//! out by Gale's evenness condition on it. Wraparound is not treated as
//! contiguity: the condition is applied on the linear order.

use crate::error::{Error, Result};
use crate::polytope::SimplicialPolytope;
use crate::set::VertexSet;

/// Gale's evenness condition: `s` (a subset of `{0, .., n-1}`) qualifies
/// iff for every pair `u < v` outside `s`, the number of members of `s`
/// strictly between `u` and `v` is even.
pub fn gale_even(s: VertexSet, n: usize) -> bool {
    let ground = VertexSet::full(n).expect("n checked by callers");
    debug_assert!(s.is_subset_of(ground));
    let outside: Vec<usize> = ground.difference(s).iter().map(|v| v.index()).collect();
    for (i, &u) in outside.iter().enumerate() {
        for &v in &outside[i + 1..] {
            let between = VertexSet::from_bits(((1u64 << v) - 1) & !((1u64 << (u + 1)) - 1));
            if !s.intersection(between).len().is_multiple_of(2) {
                return false;
            }
        }
    }
    true
}

/// Builds `C(n, d)` by enumerating all `d`-subsets passing [`gale_even`].
/// Labels are the decimal indices `"0", .., "n-1"`.
pub fn cyclic_polytope(n: usize, d: usize) -> Result<SimplicialPolytope> {
    if d < 2 || n < d + 1 {
        return Err(Error::BadParameters(format!(
            "cyclic polytope needs d >= 2 and n >= d + 1, got n={n}, d={d}"
        )));
    }
    let ground = VertexSet::full(n)?;
    let facets: Vec<VertexSet> = ground
        .subsets_of_size(d)
        .filter(|s| gale_even(*s, n))
        .collect();
    SimplicialPolytope::new(d, (0..n).map(|i| i.to_string()).collect(), facets)
}

/// `C(n - m, m) + C(n - m - 1, m - 1)`: the facet count of a neighbourly
/// `2m`-polytope with `n` vertices. `None` for odd dimensions or
/// out-of-range `n`.
pub fn neighbourly_facet_count(n: usize, dim: usize) -> Option<u64> {
    if !dim.is_multiple_of(2) || dim == 0 || n < dim + 1 {
        return None;
    }
    let m = dim / 2;
    Some(binomial(n - m, m) + binomial(n - m - 1, m - 1))
}

/// Binomial coefficient; exact for everything a 64-vertex polytope can ask.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial out of u64 range")
}
