//! Seeded random corpora for property tests: reproducible generators for
//! families, up-sets, left-compressed up-sets, and the eligible instances
//! used by the shortening and split-and-shorten checks.
//!
//! All generators draw from a ChaCha8 stream seeded explicitly, so a corpus
//! is identified by `(seed, parameters)` and failures replay exactly.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SetFamError};
use crate::family::Family;
use crate::genset::{generating_set, GeneratingSet};
use crate::mask::SubsetMask;
use crate::transforms::find_sharp_pairs;

/// The corpus stream for a given seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random subset of `[n]`.
pub fn random_subset(rng: &mut ChaCha8Rng, n: u8) -> SubsetMask {
    let bits = if n == 63 {
        rng.gen::<u64>() >> 1
    } else {
        rng.gen_range(0..(1u64 << n))
    };
    SubsetMask::new(bits, n).expect("in range by construction")
}

/// A uniformly random subset of `[n]` with exactly `size` elements.
pub fn random_subset_of_size(rng: &mut ChaCha8Rng, n: u8, size: u8) -> SubsetMask {
    assert!(size <= n, "size {size} exceeds ground size {n}");
    let mut bits = 0u64;
    for idx in sample(rng, usize::from(n), usize::from(size)) {
        bits |= 1 << idx;
    }
    SubsetMask::new(bits, n).expect("in range by construction")
}

/// A random family of at most `members` subsets (duplicates collapse).
pub fn random_family(rng: &mut ChaCha8Rng, n: u8, members: usize) -> Family {
    let sets: Vec<SubsetMask> = (0..members).map(|_| random_subset(rng, n)).collect();
    Family::from_sets(n, &sets).expect("uniform ground")
}

/// The up-closure of a random family: a random (non-uniform) up-set.
pub fn random_up_set(rng: &mut ChaCha8Rng, n: u8, members: usize) -> Family {
    random_family(rng, n, members)
        .up_closure()
        .expect("n is small enough to materialize")
}

/// A random left-compressed up-set: compressions of an up-set stay up-sets,
/// so the fixpoint is both.
pub fn random_lc_up_set(rng: &mut ChaCha8Rng, n: u8, members: usize) -> Family {
    let f = random_up_set(rng, n, members).left_compress();
    debug_assert!(f.is_up_set());
    debug_assert!(f.is_left_compressed());
    f
}

/// A random family all of whose members have at least `⌈(n+3)/2⌉` elements.
/// For `n ≤ 8` any two such sets share ≥ 3 elements and any three share ≥ 1,
/// so the family satisfies both standard constraints by counting alone —
/// and keeps them under up-closure and left-compression.
pub fn random_intersecting_family(rng: &mut ChaCha8Rng, n: u8, members: usize) -> Result<Family> {
    if !(1..=8).contains(&n) {
        return Err(SetFamError::InvalidParameter(format!(
            "size-forced intersecting corpus requires 1 <= n <= 8, got {n}"
        )));
    }
    let min_size = (n + 3).div_ceil(2).min(n);
    let sets: Vec<SubsetMask> = (0..members)
        .map(|_| {
            let size = rng.gen_range(min_size..=n);
            random_subset_of_size(rng, n, size)
        })
        .collect();
    Family::from_sets(n, &sets)
}

/// A random left-compressed up-set satisfying both standard constraints
/// (3-wise 1-intersecting, pairwise 3-intersecting), `n ≤ 8`.
pub fn random_lc_intersecting_up_set(
    rng: &mut ChaCha8Rng,
    n: u8,
    members: usize,
) -> Result<Family> {
    let f = random_intersecting_family(rng, n, members)?
        .up_closure()?
        .left_compress();
    debug_assert!(f.is_r_wise_k_intersecting(3, 1) && f.is_r_wise_k_intersecting(2, 3));
    Ok(f)
}

/// A random left-compressed generating set with at least one generator whose
/// maximum element is `n`, plus that generator — the eligible shape for the
/// shortening-delta law.  Draws fresh up-sets until one qualifies.
///
/// Panics after `tries` failed draws; with the defaults used by the test
/// corpora a qualifying instance appears within a handful of draws.
pub fn random_shortenable_genset(
    rng: &mut ChaCha8Rng,
    n: u8,
    members: usize,
    tries: u32,
) -> (GeneratingSet, SubsetMask) {
    for _ in 0..tries {
        let f = random_lc_up_set(rng, n, members);
        if f.is_empty() {
            continue;
        }
        let g = generating_set(&f).expect("closure is an up-set");
        let found = g.iter().find(|s| s.contains(n));
        if let Some(a) = found {
            return (g, a);
        }
    }
    panic!("no generator containing {n} appeared in {tries} draws");
}

/// A random eligible input for the split-and-shorten transform: a
/// left-compressed up-set meeting both standard constraints with no
/// `(i, n−1)`-sharp pair among its generators.  Draws until one qualifies.
pub fn random_transform_instance(
    rng: &mut ChaCha8Rng,
    n: u8,
    members: usize,
    tries: u32,
) -> Result<Family> {
    for _ in 0..tries {
        let f = random_lc_intersecting_up_set(rng, n, members)?;
        if f.is_empty() {
            continue;
        }
        let g = generating_set(&f).expect("closure is an up-set");
        if find_sharp_pairs(&g).iter().all(|p| p.j != n - 1) {
            return Ok(f);
        }
    }
    Err(SetFamError::Precondition(format!(
        "no transform-eligible instance appeared in {tries} draws at n = {n}"
    )))
}
