//! Families of subsets of `[n]`: membership, compression, up-closure,
//! intersection predicates, weights, and the shared text format.

use std::fmt;

use crate::dyadic::DyadicRational;
use crate::error::{Result, SetFamError};
use crate::mask::{self, compress_set, SubsetMask};
use crate::MAX_DENSE_GROUND;

/// A finite family of subsets of a fixed ground set `[n]`.
///
/// Members are stored as a sorted, deduplicated vector of bit masks
/// (ascending numeric order; see [`SubsetMask`] for the element↔bit
/// mapping).  The sorted-vector form keeps equality structural and makes
/// reports deterministic; operations that need constant-time membership
/// over all `2^n` subsets (up-closure, the searches) build transient
/// characteristic bitmaps internally, which is why those operations are
/// capped at `n ≤ 24`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: u8,
    masks: Vec<u64>,
}

impl Family {
    /// The empty family over `[n]`.
    pub fn empty(n: u8) -> Result<Self> {
        mask::check_ground(n)?;
        Ok(Self {
            n,
            masks: Vec::new(),
        })
    }

    /// Builds a family from raw masks (validated, sorted, deduplicated).
    pub fn from_masks(n: u8, masks: impl IntoIterator<Item = u64>) -> Result<Self> {
        mask::check_ground(n)?;
        let limit = mask::full_bits(n);
        let mut v: Vec<u64> = Vec::new();
        for m in masks {
            if m & !limit != 0 {
                return Err(SetFamError::ElementOutOfRange {
                    element: u64::from(64 - m.leading_zeros()),
                    n,
                });
            }
            v.push(m);
        }
        v.sort_unstable();
        v.dedup();
        Ok(Self { n, masks: v })
    }

    /// Builds a family from masks that all share ground set `[n]`.
    pub fn from_sets(n: u8, sets: &[SubsetMask]) -> Result<Self> {
        for s in sets {
            if s.ground() != n {
                return Err(SetFamError::GroundMismatch {
                    left: n,
                    right: s.ground(),
                });
            }
        }
        Self::from_masks(n, sets.iter().map(|s| s.bits()))
    }

    /// Ground-set size.
    pub fn n(&self) -> u8 {
        self.n
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    /// True iff the family has no members.
    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// Member masks in ascending numeric order.
    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    /// Membership test by raw mask.
    pub fn contains_mask(&self, bits: u64) -> bool {
        self.masks.binary_search(&bits).is_ok()
    }

    /// Membership test.
    pub fn contains(&self, set: SubsetMask) -> bool {
        set.ground() == self.n && self.contains_mask(set.bits())
    }

    /// Iterator over members in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        let n = self.n;
        self.masks
            .iter()
            .map(move |&bits| SubsetMask::new(bits, n).expect("stored mask is valid"))
    }

    /// Exact weight `|F| / 2^n`.
    pub fn weight(&self) -> DyadicRational {
        DyadicRational::new(self.masks.len() as u64, u32::from(self.n))
    }

    /// Applies the left-compression `C_{ij}` to every member, keeping a
    /// member unchanged when its image is already present.  Cardinality is
    /// always preserved.
    pub fn compress_family(&self, i: u8, j: u8) -> Result<Family> {
        // Validate (i, j) once on a throwaway mask.
        compress_set(SubsetMask::empty(self.n)?, i, j)?;
        let ib = 1u64 << (i - 1);
        let jb = 1u64 << (j - 1);
        let mut out = Vec::with_capacity(self.masks.len());
        for &m in &self.masks {
            let img = if m & jb != 0 && m & ib == 0 {
                (m ^ jb) | ib
            } else {
                m
            };
            if img != m && !self.contains_mask(img) {
                out.push(img);
            } else {
                out.push(m);
            }
        }
        let result = Family::from_masks(self.n, out)?;
        debug_assert_eq!(result.len(), self.len(), "compression must preserve size");
        Ok(result)
    }

    /// True iff every compression `C_{ij}` (i < j) leaves the family
    /// unchanged.
    pub fn is_left_compressed(&self) -> bool {
        for j in 2..=self.n {
            let jb = 1u64 << (j - 1);
            for i in 1..j {
                let ib = 1u64 << (i - 1);
                for &m in &self.masks {
                    if m & jb != 0 && m & ib == 0 && !self.contains_mask((m ^ jb) | ib) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Applies compressions `C_{ij}` over all pairs `i < j` (lexicographic
    /// sweeps) until no compression changes the family.  Terminates because
    /// each effective compression strictly decreases the sum of member
    /// masks.  Cardinality is preserved.
    pub fn left_compress(&self) -> Family {
        let mut cur = self.clone();
        loop {
            let mut changed = false;
            for i in 1..self.n {
                for j in (i + 1)..=self.n {
                    let next = cur
                        .compress_family(i, j)
                        .expect("pair (i, j) validated by loop bounds");
                    if next != cur {
                        cur = next;
                        changed = true;
                    }
                }
            }
            if !changed {
                return cur;
            }
        }
    }

    /// True iff the family is closed under taking supersets.
    pub fn is_up_set(&self) -> bool {
        for &m in &self.masks {
            let mut absent = mask::full_bits(self.n) & !m;
            while absent != 0 {
                let bit = absent & absent.wrapping_neg();
                if !self.contains_mask(m | bit) {
                    return false;
                }
                absent ^= bit;
            }
        }
        true
    }

    /// The up-set generated by the family: every superset of every member.
    ///
    /// Materialises a characteristic bitmap over all `2^n` subsets, so it
    /// is capped at `n ≤ 24`.
    pub fn up_closure(&self) -> Result<Family> {
        if self.n > MAX_DENSE_GROUND {
            return Err(SetFamError::TooLargeToMaterialise {
                n: self.n,
                max: MAX_DENSE_GROUND,
            });
        }
        let size = 1usize << self.n;
        let mut bitmap = vec![0u64; size.div_ceil(64)];
        for &m in &self.masks {
            bitmap[(m as usize) / 64] |= 1 << (m % 64);
        }
        // Superset-closure by bitwise dynamic programming: after processing
        // bit b, an index is marked iff some member is a subset of it using
        // only decisions on bits 0..=b.
        for b in 0..u32::from(self.n) {
            let bit = 1usize << b;
            for idx in 0..size {
                if idx & bit != 0 && bitmap[(idx ^ bit) / 64] & (1 << ((idx ^ bit) % 64)) != 0 {
                    bitmap[idx / 64] |= 1 << (idx % 64);
                }
            }
        }
        let mut out = Vec::new();
        for (w, &word) in bitmap.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push((w * 64 + b) as u64);
                bits &= bits - 1;
            }
        }
        Ok(Family {
            n: self.n,
            masks: out,
        })
    }

    /// True iff every `r` members (repetition allowed) share at least `k`
    /// common elements.
    ///
    /// Repetition makes the r-wise property imply the (r−1)-wise one, and
    /// reduces the check to: every nonempty subset of at most `r` distinct
    /// members has intersection of size ≥ k.  Since intersections only
    /// shrink as sets are added, it suffices to check subsets of size
    /// exactly `min(r, |F|)` — but the implementation checks all prefixes
    /// anyway because the running intersection gives early exits for free.
    pub fn is_r_wise_k_intersecting(&self, r: u32, k: u32) -> bool {
        if k == 0 || self.masks.is_empty() {
            return true;
        }
        let r = (r as usize).min(self.masks.len()).max(1);
        // DFS over index-increasing subsets with a running intersection.
        // A subset whose running intersection already drops below k is a
        // witness itself (prefixes are subsets too), so we can fail fast.
        fn dfs(masks: &[u64], start: usize, depth_left: usize, acc: u64, k: u32) -> bool {
            for (offset, &m) in masks[start..].iter().enumerate() {
                let next = acc & m;
                if next.count_ones() < k {
                    return false;
                }
                if depth_left > 1 && !dfs(masks, start + offset + 1, depth_left - 1, next, k) {
                    return false;
                }
            }
            true
        }
        dfs(&self.masks, 0, r, u64::MAX, k)
    }

    /// The block `D(E) = {A ⊆ [n] : A ∩ [max(E)] = E}` for a nonempty `E`;
    /// its size is exactly `2^{n − max(E)}`.
    pub fn d_block(e: SubsetMask) -> Result<Family> {
        let Some(max) = e.max_element() else {
            return Err(SetFamError::InvalidParameter(
                "d_block requires a nonempty set".to_string(),
            ));
        };
        let n = e.ground();
        if n - max > MAX_DENSE_GROUND {
            return Err(SetFamError::TooLargeToMaterialise {
                n,
                max: MAX_DENSE_GROUND,
            });
        }
        let free = mask::full_bits(n) & !mask::full_bits(max);
        let mut out = Vec::with_capacity(1 << (n - max));
        let mut s = free;
        loop {
            out.push(e.bits() | s);
            if s == 0 {
                break;
            }
            s = (s - 1) & free;
        }
        Family::from_masks(n, out)
    }

    /// Serialises to the shared text format: first line `n=<n>`, then one
    /// line per member (ascending mask order), each a comma-separated
    /// ascending element list, with `-` for the empty set.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for s in self.iter() {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the shared text format.  Rejects malformed headers, elements
    /// out of range, non-ascending element lists, and duplicate member
    /// lines.  `from_text(f.to_text()) == f` holds for every family.
    pub fn from_text(text: &str) -> Result<Family> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(SetFamError::Parse {
            line: 1,
            message: "missing header line \"n=<int>\"".to_string(),
        })?;
        let header = header.trim_end_matches('\r');
        let n: u8 = header
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| SetFamError::Parse {
                line: 1,
                message: format!("expected header \"n=<int>\", got {header:?}"),
            })?;
        mask::check_ground(n).map_err(|e| SetFamError::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        let mut masks = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 2;
            let set = SubsetMask::parse_line(line, n).map_err(|message| SetFamError::Parse {
                line: lineno,
                message,
            })?;
            if !seen.insert(set.bits()) {
                return Err(SetFamError::Parse {
                    line: lineno,
                    message: format!("duplicate set {set}"),
                });
            }
            masks.push(set.bits());
        }
        Family::from_masks(n, masks)
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family[n={}, {} sets: ", self.n, self.masks.len())?;
        let mut first = true;
        for s in self.iter().take(12) {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{{{s}}}")?;
            first = false;
        }
        if self.masks.len() > 12 {
            f.write_str(" …")?;
        }
        f.write_str("]")
    }
}
