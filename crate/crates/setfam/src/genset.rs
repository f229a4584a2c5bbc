//! Generating antichains of up-sets and the generator weight calculus.

use std::fmt;

use crate::dyadic::DyadicRational;
use crate::error::{Result, SetFamError};
use crate::family::Family;
use crate::mask::SubsetMask;

/// An antichain of subsets of `[n]` (no member contains another), viewed
/// as the set of minimal elements of the up-set it generates.
///
/// Generators are stored as masks in ascending numeric order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneratingSet {
    n: u8,
    gens: Vec<u64>,
}

impl GeneratingSet {
    /// Builds a generating set, validating the antichain property.
    pub fn new(n: u8, gens: impl IntoIterator<Item = u64>) -> Result<Self> {
        let as_family = Family::from_masks(n, gens)?;
        let masks = as_family.masks();
        for (idx, &a) in masks.iter().enumerate() {
            for &b in &masks[idx + 1..] {
                // Sorted order means a < b, so only a ⊆ b is possible.
                if a & b == a {
                    return Err(SetFamError::InvalidParameter(format!(
                        "not an antichain: {} ⊆ {}",
                        SubsetMask::new(a, n).expect("validated"),
                        SubsetMask::new(b, n).expect("validated"),
                    )));
                }
            }
        }
        Ok(Self {
            n,
            gens: masks.to_vec(),
        })
    }

    /// Builds from [`SubsetMask`] values sharing ground set `[n]`.
    pub fn from_sets(n: u8, sets: &[SubsetMask]) -> Result<Self> {
        let fam = Family::from_sets(n, sets)?;
        Self::new(n, fam.masks().iter().copied())
    }

    /// Ground-set size.
    pub fn n(&self) -> u8 {
        self.n
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// True iff there are no generators (the generated up-set is empty).
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generator masks in ascending numeric order.
    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    /// Iterator over generators in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        let n = self.n;
        self.gens
            .iter()
            .map(move |&bits| SubsetMask::new(bits, n).expect("stored mask is valid"))
    }

    /// The antichain itself as a [`Family`].
    pub fn to_family(&self) -> Family {
        Family::from_masks(self.n, self.gens.iter().copied()).expect("validated masks")
    }

    /// The up-set generated by this antichain (capped at `n ≤ 24`).
    pub fn closure(&self) -> Result<Family> {
        self.to_family().up_closure()
    }
}

impl fmt::Debug for GeneratingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneratingSet[n={}:", self.n)?;
        for s in self.iter() {
            write!(f, " {{{s}}}")?;
        }
        f.write_str("]")
    }
}

/// The antichain of minimal members of an up-set.  Errors if `f` is not an
/// up-set.  Satisfies `generating_set(f).closure() == f`.
pub fn generating_set(f: &Family) -> Result<GeneratingSet> {
    if !f.is_up_set() {
        return Err(SetFamError::Precondition(
            "generating_set requires an up-set".to_string(),
        ));
    }
    // A proper submask is numerically smaller, so scanning members in
    // ascending mask order sees every potential subset of A before A.
    let masks = f.masks();
    let mut minimal: Vec<u64> = Vec::new();
    for &a in masks {
        // Subset test, not membership — clippy misreads the pattern.
        #[allow(clippy::manual_contains)]
        if !minimal.iter().any(|&m| m & a == m) {
            minimal.push(a);
        }
    }
    GeneratingSet::new(f.n(), minimal)
}

/// True iff the antichain has the left-compressed-generator property: for
/// every generator `B` and every `A ≺ B` (domination order on equal-size
/// sets), some generator is contained in `A`.
///
/// This holds exactly when the generated up-set is left-compressed, and it
/// is the condition under which [`weight_via_generators`] equals the true
/// closure weight.
pub fn is_lc_genset(g: &GeneratingSet) -> bool {
    let n = g.n();
    for &b in g.gens() {
        let elems: Vec<u8> = SubsetMask::new(b, n).expect("valid").elements();
        if !predecessors_covered(g, &elems, 0, 0, 0, b) {
            return false;
        }
    }
    true
}

/// Recursively enumerates every `A ≺ B` (choosing the `i`-th element of A
/// in `(prev, b_i]`) and checks each is covered by some generator.
fn predecessors_covered(
    g: &GeneratingSet,
    b_elems: &[u8],
    idx: usize,
    prev: u8,
    acc: u64,
    b_bits: u64,
) -> bool {
    if idx == b_elems.len() {
        if acc == b_bits {
            return true; // A = B is not a predecessor
        }
        // Subset test, not membership — clippy misreads the pattern.
        #[allow(clippy::manual_contains)]
        return g.gens().iter().any(|&c| c & acc == c);
    }
    for e in (prev + 1)..=b_elems[idx] {
        if !predecessors_covered(g, b_elems, idx + 1, e, acc | 1 << (e - 1), b_bits) {
            return false;
        }
    }
    true
}

/// The generator weight formula `Σ_{E ∈ g} 2^{−max(E)}`.
///
/// For an antichain with the [`is_lc_genset`] property this equals the
/// exact weight of the generated up-set (the blocks `D(E)` partition it).
/// For other antichains it is just the formula value and may differ from
/// the closure weight: for `{{2}, {1,3}}` over `[3]` the formula gives
/// 3/8 while the closure has weight 5/8.
///
/// The empty generator (only possible as the sole generator `{∅}`, which
/// generates the whole power set) contributes `2^0 = 1`.
pub fn weight_via_generators(g: &GeneratingSet) -> DyadicRational {
    g.iter()
        .map(|e| DyadicRational::inv_pow2(u32::from(e.max_element().unwrap_or(0))))
        .sum()
}
