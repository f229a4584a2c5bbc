//! Exact computation with finite families of subsets of `[n] = {1, …, n}`
//! under simultaneous intersection constraints.
//!
//! A family `F` of subsets of `[n]` is *r-wise k-intersecting* when every
//! choice of `r` members (repetition allowed) has at least `k` common
//! elements.  The central quantity here is the largest possible *weight*
//! `w(F) = |F| / 2^n` of a family that is simultaneously 3-wise
//! 1-intersecting and (pairwise) 3-intersecting, together with the
//! structures that witness the extremes.
//!
//! The crate provides:
//!
//! * exact dyadic arithmetic ([`dyadic::DyadicRational`]) so that weights
//!   are never rounded;
//! * compact bitmask representations for sets ([`mask::SubsetMask`]) and
//!   families ([`family::Family`]);
//! * the compression machinery (left-compression, up-closure, generating
//!   antichains) that the extremal arguments rely on;
//! * named extremal constructions and closed-form weight formulas
//!   ([`constructions`]);
//! * the structural transforms used to rule out candidate optima
//!   (shortening, sharp pairs and triples, the split-and-shorten step)
//!   in [`transforms`];
//! * exhaustive and branch-and-bound searches over small ground sets that
//!   certify optimal weights ([`search`]);
//! * seeded random corpora for cross-validation ([`corpus`]).
//!
//! Ground sets are capped at `n = 63` so that a single `u64` can hold any
//! subset; operations that materialise all `2^n` subsets are additionally
//! capped at `n = 24`.

pub mod binom;
pub mod constructions;
pub mod corpus;
pub mod dyadic;
pub mod error;
pub mod family;
pub mod genset;
pub mod mask;
pub mod search;
pub mod transforms;

pub use dyadic::DyadicRational;
pub use error::SetFamError;
pub use family::Family;
pub use genset::GeneratingSet;
pub use mask::SubsetMask;

/// Largest ground-set size representable by the mask types.
pub const MAX_GROUND: u8 = 63;

/// Largest ground-set size for which a family may be materialised as a
/// characteristic bitmap over all `2^n` subsets.
pub const MAX_DENSE_GROUND: u8 = 24;
