//! Named extremal constructions: the anchored families `F_n`, cylinder
//! extension, and the Katona maximum k-intersecting families, together
//! with their closed-form counts and weights.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::binom::binomial;
use crate::dyadic::DyadicRational;
use crate::error::{Result, SetFamError};
use crate::family::Family;
use crate::mask::SubsetMask;
use crate::MAX_DENSE_GROUND;

/// Validates the `F_n` parameter: odd and at least 7.
fn check_fn_param(n: u64) -> Result<()> {
    if n < 7 || n.is_multiple_of(2) {
        return Err(SetFamError::GroundSize {
            n,
            reason: "F_n is defined for odd n >= 7",
        });
    }
    Ok(())
}

/// Exact weight of `F_n` by closed form:
/// `w(F_n) = 1/4 + 2^{−n} (n − C(n−1, (n−1)/2) / 2)`,
/// computed as `1/4 + (2n − C(n−1, (n−1)/2)) / 2^{n+1}` so no intermediate
/// value leaves dyadic arithmetic.  Defined for odd `n ≥ 7`; no upper
/// bound (the value is needed far beyond enumerable sizes).
pub fn fn_weight(n: u64) -> Result<DyadicRational> {
    check_fn_param(n)?;
    let central = binomial(n as i64 - 1, (n as i64 - 1) / 2);
    let correction = DyadicRational::new(BigInt::from(2 * n) - central, n as u32 + 1);
    Ok(DyadicRational::new(1, 2) + correction)
}

/// Exact cardinality of `F_n`:
/// sets containing 1 of size ≥ (n+3)/2, plus sets avoiding 1 of size ≥ n−2.
pub fn fn_cardinality(n: u64) -> Result<BigInt> {
    check_fn_param(n)?;
    let m = n as i64;
    let mut count = BigInt::zero();
    // Contains 1, |A| ≥ (n+3)/2: choose the other |A|−1 elements from n−1.
    for s in (m + 3) / 2..=m {
        count += binomial(m - 1, s - 1);
    }
    // Avoids 1, |A| ≥ n−2.
    for s in m - 2..=m {
        count += binomial(m - 1, s);
    }
    Ok(count)
}

/// Membership predicate for `F_n` without materialising the family:
/// `a ∈ F_n` iff `1 ∈ a` and `|a| ≥ (n+3)/2`, or `1 ∉ a` and `|a| ≥ n−2`.
pub fn fn_contains(a: SubsetMask) -> Result<bool> {
    let n = u64::from(a.ground());
    check_fn_param(n)?;
    let size = u64::from(a.card());
    Ok(if a.contains(1) {
        2 * size >= n + 3
    } else {
        size + 2 >= n
    })
}

/// Materialises `F_n` (odd `n` with `7 ≤ n ≤ 24`): the family of all sets
/// containing 1 of size ≥ (n+3)/2 together with all sets avoiding 1 of
/// size ≥ n−2.  It is an up-set, left-compressed, 3-wise 1-intersecting,
/// and pairwise 3-intersecting, with weight [`fn_weight`]`(n)`.
pub fn fn_family(n: u8) -> Result<Family> {
    check_fn_param(u64::from(n))?;
    if n > MAX_DENSE_GROUND {
        return Err(SetFamError::TooLargeToMaterialise {
            n,
            max: MAX_DENSE_GROUND,
        });
    }
    let threshold_with_1 = (u32::from(n) + 3) / 2;
    let threshold_without = u32::from(n) - 2;
    let masks = (0u64..1 << n).filter(|&m| {
        let size = m.count_ones();
        if m & 1 != 0 {
            size >= threshold_with_1
        } else {
            size >= threshold_without
        }
    });
    Family::from_masks(n, masks)
}

/// Cylinder extension: lifts `f` over `[n]` to `[n + k]` by allowing the
/// new elements freely: `{A ⊆ [n+k] : A ∩ [n] ∈ f}`.  Preserves weight and
/// every r-wise k-intersection property.  Requires `k ≥ 1` and
/// `n + k ≤ 24` for materialisation.
pub fn extend(f: &Family, k: u8) -> Result<Family> {
    if k == 0 {
        return Err(SetFamError::InvalidParameter(
            "extension requires k >= 1".to_string(),
        ));
    }
    let n = f.n();
    let new_n = n.checked_add(k).filter(|&m| m <= MAX_DENSE_GROUND).ok_or(
        SetFamError::TooLargeToMaterialise {
            n: n.saturating_add(k),
            max: MAX_DENSE_GROUND,
        },
    )?;
    let mut masks = Vec::with_capacity(f.len() << k);
    for &m in f.masks() {
        for high in 0u64..1 << k {
            masks.push(m | high << n);
        }
    }
    Family::from_masks(new_n, masks)
}

/// The Katona maximum k-intersecting family over `[n]`:
/// if `n + k` is even, all sets of size ≥ (n+k)/2; if odd, all sets `A`
/// with `|A ∩ [n−1]| ≥ (n+k−1)/2` (the excluded element is fixed as `n`;
/// any fixed element gives an extremal family, so this is a canonical
/// choice, not a mathematical necessity).  Requires `1 ≤ k ≤ n ≤ 24`.
pub fn katona_family(n: u8, k: u8) -> Result<Family> {
    if k == 0 || k > n {
        return Err(SetFamError::InvalidParameter(format!(
            "katona_family requires 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    if n > MAX_DENSE_GROUND {
        return Err(SetFamError::TooLargeToMaterialise {
            n,
            max: MAX_DENSE_GROUND,
        });
    }
    let nk = u32::from(n) + u32::from(k);
    let masks: Vec<u64> = if nk % 2 == 0 {
        (0u64..1 << n)
            .filter(|m| 2 * m.count_ones() >= nk)
            .collect()
    } else {
        let low = (1u64 << (n - 1)) - 1; // the prefix [n−1]
        (0u64..1 << n)
            .filter(|m| 2 * (m & low).count_ones() >= nk - 1)
            .collect()
    };
    Family::from_masks(n, masks)
}

/// Exact cardinality of [`katona_family`]`(n, k)` by binomial sums.
pub fn katona_cardinality(n: u64, k: u64) -> BigInt {
    let (n, k) = (n as i64, k as i64);
    let mut count = BigInt::zero();
    if (n + k) % 2 == 0 {
        for s in (n + k) / 2..=n {
            count += binomial(n, s);
        }
    } else {
        // Sets split by membership of the excluded element n.
        for s in (n + k - 1) / 2..=n - 1 {
            count += binomial(n - 1, s) * 2;
        }
    }
    count
}

/// The maximum size of a 2-intersecting family on the `n − 1` ground
/// elements `[2, n]`, parameterised by `n` (the size of the original
/// ground set) because the parity of `n` selects the closed form:
///
/// * odd `n`:  `2^{n−2} − C(n−1, (n−1)/2) / 2`
/// * even `n`: `2^{n−2} − C(n−2, (n−2)/2)`
///
/// Both equal the Katona cardinality for k = 2 on `n − 1` elements.
/// Requires `n ≥ 5`.
pub fn katona_2intersect_bound(n: u64) -> Result<BigInt> {
    if n < 5 {
        return Err(SetFamError::InvalidParameter(format!(
            "katona_2intersect_bound requires n >= 5, got {n}"
        )));
    }
    let m = n as i64;
    let pow = BigInt::from(1u8) << (m - 2) as u32;
    Ok(if n % 2 == 1 {
        pow - binomial(m - 1, (m - 1) / 2) / 2
    } else {
        pow - binomial(m - 2, (m - 2) / 2)
    })
}

/// A parsed construction descriptor:
/// `Fn:<n>`, `katona:<n>:<k>`, or `extend:<base>:<k>` where `<base>` is
/// itself a label or (for CLI use) a file path resolved by a caller-
/// supplied loader.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyLabel {
    Fn { n: u8 },
    Katona { n: u8, k: u8 },
    Extend { base: String, k: u8 },
}

impl FromStr for FamilyLabel {
    type Err = SetFamError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| SetFamError::Parse {
            line: 0,
            message: msg,
        };
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| bad(format!("label {s:?} has no parameters")))?;
        match kind {
            "Fn" => {
                let n = rest
                    .parse()
                    .map_err(|_| bad(format!("Fn:<n> needs an integer, got {rest:?}")))?;
                Ok(FamilyLabel::Fn { n })
            }
            "katona" => {
                let (ns, ks) = rest.split_once(':').ok_or_else(|| {
                    bad(format!("katona:<n>:<k> needs two parameters, got {rest:?}"))
                })?;
                let n = ns
                    .parse()
                    .map_err(|_| bad(format!("katona ground size {ns:?} is not an integer")))?;
                let k = ks
                    .parse()
                    .map_err(|_| bad(format!("katona strength {ks:?} is not an integer")))?;
                Ok(FamilyLabel::Katona { n, k })
            }
            "extend" => {
                // The trailing :<k> is the extension count; everything
                // between belongs to the base label or path (which may
                // itself contain colons).
                let (base, ks) = rest
                    .rsplit_once(':')
                    .ok_or_else(|| bad(format!("extend:<base>:<k> needs a count, got {rest:?}")))?;
                let k = ks
                    .parse()
                    .map_err(|_| bad(format!("extension count {ks:?} is not an integer")))?;
                if base.is_empty() {
                    return Err(bad("extend needs a base label or path".to_string()));
                }
                Ok(FamilyLabel::Extend {
                    base: base.to_string(),
                    k,
                })
            }
            other => Err(bad(format!(
                "unknown construction {other:?} (expected Fn, katona, or extend)"
            ))),
        }
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyLabel::Fn { n } => write!(f, "Fn:{n}"),
            FamilyLabel::Katona { n, k } => write!(f, "katona:{n}:{k}"),
            FamilyLabel::Extend { base, k } => write!(f, "extend:{base}:{k}"),
        }
    }
}

/// A constructed family together with the label that produced it.
#[derive(Debug, Clone)]
pub struct NamedFamily {
    pub label: String,
    pub family: Family,
}

/// Builds a family from a label string.  `resolve_path` is consulted for
/// an `extend` base that does not parse as a label (CLI passes a file
/// loader; pure-library callers can pass a closure that always errors).
pub fn build_from_label_str(
    s: &str,
    resolve_path: &dyn Fn(&str) -> Result<Family>,
) -> Result<NamedFamily> {
    let label: FamilyLabel = s.parse()?;
    let family = match &label {
        FamilyLabel::Fn { n } => {
            let f = fn_family(*n)?;
            debug_assert!(f.is_r_wise_k_intersecting(3, 1) && f.is_r_wise_k_intersecting(2, 3));
            f
        }
        FamilyLabel::Katona { n, k } => {
            let f = katona_family(*n, *k)?;
            debug_assert!(f.is_r_wise_k_intersecting(2, u32::from(*k)));
            f
        }
        FamilyLabel::Extend { base, k } => {
            let base_family = match build_from_label_str(base, resolve_path) {
                Ok(named) => named.family,
                Err(SetFamError::Parse { .. }) => resolve_path(base)?,
                Err(other) => return Err(other),
            };
            extend(&base_family, *k)?
        }
    };
    Ok(NamedFamily {
        label: s.to_string(),
        family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_paths(_: &str) -> Result<Family> {
        Err(SetFamError::InvalidParameter("no path loading here".into()))
    }

    #[test]
    fn fn_weight_frozen_values() {
        assert_eq!(fn_weight(7).unwrap(), DyadicRational::new(29, 7));
        assert_eq!(fn_weight(9).unwrap(), DyadicRational::new(51, 8));
        assert_eq!(fn_weight(11).unwrap(), DyadicRational::new(397, 11));
        assert_eq!(
            fn_weight(73).unwrap(),
            DyadicRational::new("2139926971296404217319".parse::<BigInt>().unwrap(), 73)
        );
        assert!(fn_weight(8).is_err());
        assert!(fn_weight(5).is_err());
    }

    #[test]
    fn fn_family_7_matches_hand_count() {
        let f = fn_family(7).unwrap();
        // 22 sets containing 1 of size ≥ 5, plus 7 sets avoiding 1 of
        // size ≥ 5 (= n − 2).
        assert_eq!(f.len(), 29);
        assert_eq!(f.weight(), DyadicRational::new(29, 7));
        assert_eq!(f.weight(), fn_weight(7).unwrap());

        // Spot memberships from the definition.
        let a = SubsetMask::from_elements(&[1, 2, 3, 4, 5], 7).unwrap();
        let b = SubsetMask::from_elements(&[2, 3, 4, 5, 6], 7).unwrap();
        let c = SubsetMask::from_elements(&[2, 3, 4, 5], 7).unwrap();
        assert!(f.contains(a));
        assert!(f.contains(b));
        assert!(!f.contains(c));
        assert!(fn_contains(a).unwrap());
        assert!(fn_contains(b).unwrap());
        assert!(!fn_contains(c).unwrap());

        // Structure: up-set, left-compressed, both intersection predicates.
        assert!(f.is_up_set());
        assert!(f.is_left_compressed());
        assert!(f.is_r_wise_k_intersecting(3, 1));
        assert!(f.is_r_wise_k_intersecting(2, 3));

        assert!(fn_family(8).is_err());
    }

    #[test]
    fn fn_cardinality_matches_enumeration_and_weight() {
        for n in [7u8, 9, 11, 13] {
            let f = fn_family(n).unwrap();
            assert_eq!(
                fn_cardinality(u64::from(n)).unwrap(),
                BigInt::from(f.len()),
                "n={n}"
            );
            // weight formula × 2^n == cardinality
            let w = fn_weight(u64::from(n)).unwrap();
            let scaled = w * DyadicRational::integer(BigInt::from(1u8) << n);
            assert_eq!(scaled, DyadicRational::integer(BigInt::from(f.len())));
        }
    }

    #[test]
    fn fn_membership_predicate_agrees_with_materialisation() {
        for n in [7u8, 9] {
            let f = fn_family(n).unwrap();
            for bits in 0..1u64 << n {
                let a = SubsetMask::new(bits, n).unwrap();
                assert_eq!(f.contains(a), fn_contains(a).unwrap(), "n={n}, a={a}");
            }
        }
    }

    #[test]
    fn extension_preserves_weight_and_membership_shape() {
        let base = Family::from_masks(3, [0b111]).unwrap();
        let lifted = extend(&base, 1).unwrap();
        assert_eq!(lifted, Family::from_masks(4, [0b0111, 0b1111]).unwrap());
        assert_eq!(lifted.weight(), base.weight());
        assert_eq!(base.weight(), DyadicRational::new(1, 3));

        // Composition: extending twice by 1 equals extending by 2.
        let f = fn_family(7).unwrap();
        assert_eq!(
            extend(&extend(&f, 1).unwrap(), 1).unwrap(),
            extend(&f, 2).unwrap()
        );
        assert_eq!(extend(&f, 2).unwrap().weight(), f.weight());

        assert!(extend(&base, 0).is_err());
    }

    #[test]
    fn extension_preserves_intersection_predicates() {
        let f = fn_family(7).unwrap();
        let lifted = extend(&f, 1).unwrap();
        assert!(lifted.is_r_wise_k_intersecting(3, 1));
        assert!(lifted.is_r_wise_k_intersecting(2, 3));
        assert!(lifted.is_up_set());
        assert!(lifted.is_left_compressed());
    }

    #[test]
    fn katona_small_cases() {
        // n=5, k=3: all sets of size ≥ 4; weight 3/16.
        let f53 = katona_family(5, 3).unwrap();
        assert_eq!(f53.len(), 6);
        assert_eq!(f53.weight(), DyadicRational::new(3, 4));
        assert!(f53.iter().all(|a| a.card() >= 4));

        // n=6, k=3: |A ∩ [5]| ≥ 4; weight 12/64 = 3/16.
        let f63 = katona_family(6, 3).unwrap();
        assert_eq!(f63.len(), 12);
        assert_eq!(f63.weight(), DyadicRational::new(3, 4));

        // n=4, k=3: exactly {123, 1234}.
        let f43 = katona_family(4, 3).unwrap();
        assert_eq!(f43, Family::from_masks(4, [0b0111, 0b1111]).unwrap());

        assert!(katona_family(4, 0).is_err());
        assert!(katona_family(4, 5).is_err());
    }

    #[test]
    fn katona_families_are_k_intersecting() {
        for n in 1..=8u8 {
            for k in 1..=n {
                let f = katona_family(n, k).unwrap();
                assert!(
                    f.is_r_wise_k_intersecting(2, u32::from(k)),
                    "katona({n},{k}) must be {k}-intersecting"
                );
                assert_eq!(
                    BigInt::from(f.len()),
                    katona_cardinality(u64::from(n), u64::from(k)),
                    "cardinality formula for katona({n},{k})"
                );
            }
        }
    }

    #[test]
    fn two_intersect_bound_values() {
        assert_eq!(katona_2intersect_bound(7).unwrap(), BigInt::from(22));
        assert_eq!(katona_2intersect_bound(8).unwrap(), BigInt::from(44));
        assert_eq!(katona_2intersect_bound(9).unwrap(), BigInt::from(93));
        assert!(katona_2intersect_bound(4).is_err());
        // The bound is the Katona k=2 cardinality on n−1 ground elements.
        for n in 5..=12u64 {
            assert_eq!(
                katona_2intersect_bound(n).unwrap(),
                katona_cardinality(n - 1, 2),
                "n={n}"
            );
        }
        // Equality case at n=7: all subsets of [2,7] of size ≥ 4, of which
        // there are 22.
        let count = (0u64..64).filter(|m| m.count_ones() >= 4).count();
        assert_eq!(BigInt::from(count), katona_2intersect_bound(7).unwrap());
    }

    #[test]
    fn labels_parse_build_and_round_trip() {
        let f7 = build_from_label_str("Fn:7", &no_paths).unwrap();
        assert_eq!(f7.family.len(), 29);
        assert_eq!(f7.label, "Fn:7");

        let kat = build_from_label_str("katona:5:3", &no_paths).unwrap();
        assert_eq!(kat.family.len(), 6);

        let ext = build_from_label_str("extend:Fn:7:1", &no_paths).unwrap();
        assert_eq!(ext.family, extend(&fn_family(7).unwrap(), 1).unwrap());

        // Display round-trip.
        for s in ["Fn:7", "katona:5:3", "extend:Fn:7:1"] {
            let label: FamilyLabel = s.parse().unwrap();
            assert_eq!(label.to_string(), s);
        }

        // Parse errors vs domain errors.
        assert!(matches!(
            build_from_label_str("Fn:x", &no_paths),
            Err(SetFamError::Parse { .. })
        ));
        assert!(matches!(
            build_from_label_str("mystery:3", &no_paths),
            Err(SetFamError::Parse { .. })
        ));
        assert!(matches!(
            build_from_label_str("Fn:8", &no_paths),
            Err(SetFamError::GroundSize { .. })
        ));

        // A non-label base goes through the resolver.
        let resolved = build_from_label_str("extend:somewhere.fam:1", &|p| {
            assert_eq!(p, "somewhere.fam");
            Family::from_masks(3, [0b111])
        })
        .unwrap();
        assert_eq!(resolved.family.len(), 2);
    }
}
