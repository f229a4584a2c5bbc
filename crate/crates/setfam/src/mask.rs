//! Subsets of the ground set `[n] = {1, …, n}` as bit masks.

use std::fmt;

use crate::error::{Result, SetFamError};
use crate::MAX_GROUND;

/// A subset of `[n] = {1, …, n}` stored as an `n`-bit mask.
///
/// Element `i` corresponds to bit `i − 1`.  This mapping is fixed: the text
/// format, the JSON reports, and every mask integer a user ever sees all
/// assume it, so two runs (or two implementations) can compare raw mask
/// values directly.
///
/// The derived ordering compares `bits` first, so masks over the same
/// ground set sort by numeric mask value.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u64,
    n: u8,
}

/// Validates a ground-set size, shared by every constructor in the crate.
pub(crate) fn check_ground(n: u8) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(SetFamError::GroundSize {
            n: u64::from(n),
            reason: "must satisfy 1 <= n <= 63",
        });
    }
    Ok(())
}

/// All-ones mask over `[n]`.
pub(crate) fn full_bits(n: u8) -> u64 {
    debug_assert!((1..=MAX_GROUND).contains(&n));
    u64::MAX >> (64 - u32::from(n))
}

impl SubsetMask {
    /// Builds a mask over `[n]` from raw bits.
    pub fn new(bits: u64, n: u8) -> Result<Self> {
        check_ground(n)?;
        if bits & !full_bits(n) != 0 {
            return Err(SetFamError::ElementOutOfRange {
                element: u64::from(64 - bits.leading_zeros()),
                n,
            });
        }
        Ok(Self { bits, n })
    }

    /// The empty subset of `[n]`.
    pub fn empty(n: u8) -> Result<Self> {
        Self::new(0, n)
    }

    /// The whole ground set `[n]`.
    pub fn full(n: u8) -> Result<Self> {
        check_ground(n)?;
        Ok(Self {
            bits: full_bits(n),
            n,
        })
    }

    /// Builds a mask from a list of elements (order and repeats are
    /// irrelevant; each element must lie in `1..=n`).
    pub fn from_elements(elements: &[u8], n: u8) -> Result<Self> {
        check_ground(n)?;
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return Err(SetFamError::ElementOutOfRange {
                    element: u64::from(e),
                    n,
                });
            }
            bits |= 1 << (e - 1);
        }
        Ok(Self { bits, n })
    }

    /// Raw bit representation (bit `i − 1` set iff `i` is an element).
    pub fn bits(self) -> u64 {
        self.bits
    }

    /// Ground-set size `n`.
    pub fn ground(self) -> u8 {
        self.n
    }

    /// Number of elements.
    pub fn card(self) -> u32 {
        self.bits.count_ones()
    }

    /// True iff the subset is empty.
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// True iff `element` belongs to the subset (false when out of range).
    pub fn contains(self, element: u8) -> bool {
        element >= 1 && element <= self.n && self.bits & (1 << (element - 1)) != 0
    }

    /// Largest element, or `None` for the empty set.
    pub fn max_element(self) -> Option<u8> {
        if self.bits == 0 {
            None
        } else {
            Some(64 - self.bits.leading_zeros() as u8)
        }
    }

    /// Smallest element, or `None` for the empty set.
    pub fn min_element(self) -> Option<u8> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as u8 + 1)
        }
    }

    /// The subset with `element` added.
    pub fn with(self, element: u8) -> Result<Self> {
        if element == 0 || element > self.n {
            return Err(SetFamError::ElementOutOfRange {
                element: u64::from(element),
                n: self.n,
            });
        }
        Ok(Self {
            bits: self.bits | 1 << (element - 1),
            n: self.n,
        })
    }

    /// The subset with `element` removed.
    pub fn without(self, element: u8) -> Result<Self> {
        if element == 0 || element > self.n {
            return Err(SetFamError::ElementOutOfRange {
                element: u64::from(element),
                n: self.n,
            });
        }
        Ok(Self {
            bits: self.bits & !(1 << (element - 1)),
            n: self.n,
        })
    }

    /// Set union.  Panics if the ground sets differ (programmer error, not
    /// input error).
    pub fn union(self, other: Self) -> Self {
        assert_eq!(self.n, other.n, "ground set mismatch in union");
        Self {
            bits: self.bits | other.bits,
            n: self.n,
        }
    }

    /// Set intersection.  Panics if the ground sets differ.
    pub fn intersection(self, other: Self) -> Self {
        assert_eq!(self.n, other.n, "ground set mismatch in intersection");
        Self {
            bits: self.bits & other.bits,
            n: self.n,
        }
    }

    /// True iff `self ⊆ other`.  Panics if the ground sets differ.
    pub fn is_subset_of(self, other: Self) -> bool {
        assert_eq!(self.n, other.n, "ground set mismatch in is_subset_of");
        self.bits & !other.bits == 0
    }

    /// Elements in ascending order.
    pub fn elements(self) -> Vec<u8> {
        self.iter_elements().collect()
    }

    /// Iterator over elements in ascending order.
    pub fn iter_elements(self) -> impl Iterator<Item = u8> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as u8 + 1;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    /// Parses one line of the family text format: comma-separated ascending
    /// elements, or `-` for the empty set.  Errors are returned as plain
    /// messages; the family parser attaches line numbers.
    pub(crate) fn parse_line(line: &str, n: u8) -> std::result::Result<Self, String> {
        let line = line.trim_end_matches('\r');
        if line == "-" {
            return Ok(Self { bits: 0, n });
        }
        if line.is_empty() {
            return Err("empty line (use \"-\" for the empty set)".to_string());
        }
        let mut bits = 0u64;
        let mut last = 0u8;
        for part in line.split(',') {
            let e: u8 = part
                .parse()
                .map_err(|_| format!("invalid element {part:?}"))?;
            if e == 0 || e > n {
                return Err(format!("element {e} out of range for ground set [{n}]"));
            }
            if e <= last {
                return Err(format!(
                    "elements must be strictly ascending ({e} after {last})"
                ));
            }
            last = e;
            bits |= 1 << (e - 1);
        }
        Ok(Self { bits, n })
    }
}

/// Domination order on equal-size subsets: `a ≺ b` iff for every index
/// `i`, the `i`-th smallest element of `a` is at most the `i`-th smallest
/// element of `b`.  Defined only for distinct sets of equal size;
/// `prec(a, a)` is `false`.
///
/// Equivalent prefix form (used here): for every threshold `t`,
/// `|a ∩ [t]| ≥ |b ∩ [t]|`.
pub fn prec(a: SubsetMask, b: SubsetMask) -> Result<bool> {
    if a.n != b.n {
        return Err(SetFamError::GroundMismatch {
            left: a.n,
            right: b.n,
        });
    }
    if a.card() != b.card() {
        return Err(SetFamError::InvalidParameter(format!(
            "domination order requires equal sizes, got {} and {}",
            a.card(),
            b.card()
        )));
    }
    Ok(prec_bits(a.bits, b.bits, a.n))
}

/// Raw-mask form of [`prec`] for callers that have already validated the
/// ground size and equal cardinality.
pub(crate) fn prec_bits(a: u64, b: u64, n: u8) -> bool {
    if a == b {
        return false;
    }
    let mut prefix = 0u64;
    for t in 0..n {
        prefix |= 1 << t;
        if (a & prefix).count_ones() < (b & prefix).count_ones() {
            return false;
        }
    }
    true
}

/// The left-compression `C_{ij}`: if `j ∈ a` and `i ∉ a`, replaces `j` by
/// `i`; otherwise returns `a` unchanged.  Requires `i < j`, both in `[n]`.
pub fn compress_set(a: SubsetMask, i: u8, j: u8) -> Result<SubsetMask> {
    if i >= j {
        return Err(SetFamError::InvalidParameter(format!(
            "compression requires i < j, got i={i}, j={j}"
        )));
    }
    if i == 0 || j > a.n {
        return Err(SetFamError::ElementOutOfRange {
            element: u64::from(if i == 0 { i } else { j }),
            n: a.n,
        });
    }
    let ib = 1u64 << (i - 1);
    let jb = 1u64 << (j - 1);
    if a.bits & jb != 0 && a.bits & ib == 0 {
        Ok(SubsetMask {
            bits: (a.bits ^ jb) | ib,
            n: a.n,
        })
    } else {
        Ok(a)
    }
}

impl fmt::Display for SubsetMask {
    /// Renders as the family text format line: ascending comma-separated
    /// elements, `-` for the empty set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for e in self.iter_elements() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}⊆[{}]", self.n)
    }
}
