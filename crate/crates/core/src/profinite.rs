//! Residue-system surrogates for infinite hypernaturals.
//!
//! A [`ProfinitePoint`] `(M, r)` stands for an infinite `γ` whose remainder
//! modulo every divisor `d` of `M` is `r mod d`. On eventually-periodic sets
//! this is all the information the generated ultrafilter `𝔘_γ` can see: the
//! exceptional part of a set is finite and never contains `γ`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semilinear::{AffineMap, SemilinearSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("residue {residue} is not below the modulus {modulus}")]
    ResidueOutOfRange { residue: u64, modulus: u64 },
    #[error("{divisor} does not divide the depth {modulus}")]
    NotADivisor { divisor: u64, modulus: u64 },
    #[error("cannot lift {from} to depth {modulus} with residue {residue}")]
    IncompatibleLift {
        from: ProfinitePoint,
        modulus: u64,
        residue: u64,
    },
    #[error("insufficient depth: period {period} does not divide the depth {modulus}")]
    InsufficientDepth { period: u64, modulus: u64 },
    #[error("depth mismatch: {left} vs {right}")]
    DepthMismatch { left: u64, right: u64 },
    #[error("malformed point `{0}`, expected `point M:r`")]
    Malformed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProfinitePoint {
    modulus: u64,
    residue: u64,
}

impl ProfinitePoint {
    pub fn new(modulus: u64, residue: u64) -> Result<Self, PointError> {
        if modulus == 0 {
            return Err(PointError::ZeroModulus);
        }
        if residue >= modulus {
            return Err(PointError::ResidueOutOfRange { residue, modulus });
        }
        Ok(Self { modulus, residue })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn reduce(&self, divisor: u64) -> Result<Self, PointError> {
        if divisor == 0 || self.modulus % divisor != 0 {
            return Err(PointError::NotADivisor {
                divisor,
                modulus: self.modulus,
            });
        }
        Ok(Self {
            modulus: divisor,
            residue: self.residue % divisor,
        })
    }

    pub fn lift(&self, modulus: u64, residue: u64) -> Result<Self, PointError> {
        let lifted = Self::new(modulus, residue)?;
        if modulus % self.modulus != 0 {
            return Err(PointError::NotADivisor {
                divisor: self.modulus,
                modulus,
            });
        }
        if residue % self.modulus != self.residue {
            return Err(PointError::IncompatibleLift {
                from: *self,
                modulus,
                residue,
            });
        }
        Ok(lifted)
    }

    fn require_period(&self, period: u64) -> Result<(), PointError> {
        if self.modulus % period != 0 {
            return Err(PointError::InsufficientDepth {
                period,
                modulus: self.modulus,
            });
        }
        Ok(())
    }

    fn same_depth(&self, other: &Self) -> Result<(), PointError> {
        if self.modulus != other.modulus {
            return Err(PointError::DepthMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PointError> {
        self.same_depth(other)?;
        let m = self.modulus as u128;
        let r = (self.residue as u128 + other.residue as u128) % m;
        Ok(Self {
            modulus: self.modulus,
            residue: r as u64,
        })
    }

    /// `self − other`, i.e. the point for `δ − γ` when called as `δ.sub(γ)`.
    pub fn sub(&self, other: &Self) -> Result<Self, PointError> {
        self.same_depth(other)?;
        let m = self.modulus as u128;
        let r = (self.residue as u128 + m - other.residue as u128) % m;
        Ok(Self {
            modulus: self.modulus,
            residue: r as u64,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            modulus: self.modulus,
            residue: (self.modulus - self.residue) % self.modulus,
        }
    }

    /// `γ + k` for a finite (possibly negative) `k`.
    pub fn add_integer(&self, k: i64) -> Self {
        let m = self.modulus as i128;
        let r = (self.residue as i128 + k as i128).rem_euclid(m);
        Self {
            modulus: self.modulus,
            residue: r as u64,
        }
    }

    /// Image under an affine map.
    pub fn map(&self, f: &AffineMap) -> Self {
        Self {
            modulus: self.modulus,
            residue: f.apply_mod(self.residue, self.modulus),
        }
    }

    /// Idempotency of `𝔘_γ` under `⊕` at this depth: `2r ≡ r (mod M)`.
    pub fn is_idempotent(&self) -> bool {
        self.residue == 0
    }
}

impl fmt::Display for ProfinitePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "point {}:{}", self.modulus, self.residue)
    }
}

impl FromStr for ProfinitePoint {
    type Err = PointError;

    /// Accepts `point M:r` or the bare `M:r`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim();
        let body = body
            .strip_prefix("point")
            .map(str::trim_start)
            .unwrap_or(body);
        let malformed = || PointError::Malformed(s.to_string());
        let (m, r) = body.split_once(':').ok_or_else(malformed)?;
        let m = m.trim().parse().map_err(|_| malformed())?;
        let r = r.trim().parse().map_err(|_| malformed())?;
        Self::new(m, r)
    }
}

/// Decide `A ∈ 𝔘_γ`.
pub fn member_set(set: &SemilinearSet, point: &ProfinitePoint) -> Result<bool, PointError> {
    point.require_period(set.period())?;
    Ok(set.pattern_contains(point.residue))
}

/// `A_γ = (✳A − γ) ∩ ℕ`, computed from residues.
pub fn hyper_shift(
    set: &SemilinearSet,
    point: &ProfinitePoint,
) -> Result<SemilinearSet, PointError> {
    point.require_period(set.period())?;
    Ok(set.rotate(point.residue))
}

/// `A − 𝔘_γ = {n : A − n ∈ 𝔘_γ}`, computed one shift at a time over a full
/// period. Deliberately independent of [`hyper_shift`].
pub fn ultrafilter_shift(
    set: &SemilinearSet,
    point: &ProfinitePoint,
) -> Result<SemilinearSet, PointError> {
    point.require_period(set.period())?;
    let period = set.period();
    let mut pattern = Vec::new();
    for n in 0..period {
        if member_set(&set.shift_left(n), point)? {
            pattern.push(n);
        }
    }
    Ok(SemilinearSet::periodic(period, pattern).expect("residues below period"))
}

/// `A ∈ 𝔘_γ ⊕ 𝔘_δ`, decided as `A_δ ∈ 𝔘_γ`.
pub fn pseudo_sum_member(
    set: &SemilinearSet,
    gamma: &ProfinitePoint,
    delta: &ProfinitePoint,
) -> Result<bool, PointError> {
    gamma.same_depth(delta)?;
    member_set(&hyper_shift(set, delta)?, gamma)
}

/// The set `{n : A + n ∈ 𝔘_δ}`.
pub fn right_shift_trace(
    set: &SemilinearSet,
    delta: &ProfinitePoint,
) -> Result<SemilinearSet, PointError> {
    delta.require_period(set.period())?;
    let period = set.period();
    let mut pattern = Vec::new();
    for n in 0..period {
        if member_set(&set.shift_right(n), delta)? {
            pattern.push(n);
        }
    }
    Ok(SemilinearSet::periodic(period, pattern).expect("residues below period"))
}

/// `A ∈ 𝔘_γ ⋆ 𝔘_δ`, i.e. `{n : A + n ∈ 𝔘_δ} ∈ 𝔘_γ`.
pub fn star_member(
    set: &SemilinearSet,
    gamma: &ProfinitePoint,
    delta: &ProfinitePoint,
) -> Result<bool, PointError> {
    gamma.same_depth(delta)?;
    member_set(&right_shift_trace(set, delta)?, gamma)
}

/// `A ∈ f(𝔘_γ)`, i.e. `f⁻¹(A) ∈ 𝔘_γ`.
pub fn image_member(
    set: &SemilinearSet,
    f: &AffineMap,
    point: &ProfinitePoint,
) -> Result<bool, PointError> {
    member_set(&set.preimage_affine(f), point)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(m: u64, r: u64) -> ProfinitePoint {
        ProfinitePoint::new(m, r).unwrap()
    }

    fn class(r: u64, m: u64) -> SemilinearSet {
        SemilinearSet::residue_class(r, m).unwrap()
    }

    #[test]
    fn reduce_and_lift() {
        assert_eq!(pt(6, 5).reduce(3), Ok(pt(3, 2)));
        assert_eq!(pt(3, 2).lift(6, 5), Ok(pt(6, 5)));
        assert!(matches!(
            pt(3, 2).lift(6, 4),
            Err(PointError::IncompatibleLift { .. })
        ));
        assert!(matches!(
            pt(6, 5).reduce(4),
            Err(PointError::NotADivisor { .. })
        ));
        assert!(matches!(
            pt(3, 2).lift(8, 5),
            Err(PointError::NotADivisor { .. })
        ));
    }

    #[test]
    fn membership_at_infinity() {
        assert_eq!(member_set(&class(0, 3), &pt(3, 0)), Ok(true));
        let with_five = class(0, 3).union(&SemilinearSet::finite([5]));
        assert_eq!(member_set(&with_five, &pt(3, 1)), Ok(false));
        assert_eq!(member_set(&with_five, &pt(3, 2)), Ok(false));
        assert_eq!(member_set(&SemilinearSet::naturals(), &pt(7, 3)), Ok(true));
        assert!(matches!(
            member_set(&class(0, 4), &pt(6, 0)),
            Err(PointError::InsufficientDepth {
                period: 4,
                modulus: 6
            })
        ));
    }

    #[test]
    fn hyper_shift_examples() {
        assert_eq!(hyper_shift(&class(0, 3), &pt(3, 1)), Ok(class(2, 3)));
        assert_eq!(
            hyper_shift(&SemilinearSet::naturals(), &pt(5, 2)),
            Ok(SemilinearSet::naturals())
        );
        assert_eq!(hyper_shift(&class(0, 2), &pt(2, 0)), Ok(class(0, 2)));
    }

    #[test]
    fn ultrafilter_shift_examples() {
        assert_eq!(ultrafilter_shift(&class(0, 3), &pt(3, 1)), Ok(class(2, 3)));
        assert_eq!(ultrafilter_shift(&class(1, 2), &pt(2, 1)), Ok(class(0, 2)));
        assert_eq!(
            ultrafilter_shift(&SemilinearSet::empty(), &pt(4, 1)),
            Ok(SemilinearSet::empty())
        );
    }

    #[test]
    fn arithmetic() {
        assert_eq!(pt(3, 1).add(&pt(3, 1)), Ok(pt(3, 2)));
        assert_eq!(pt(3, 0).sub(&pt(3, 1)), Ok(pt(3, 2)));
        assert_eq!(pt(6, 5).add_integer(2), pt(6, 1));
        assert_eq!(pt(6, 1).add_integer(-3), pt(6, 4));
        assert!(matches!(
            pt(3, 1).add(&pt(6, 1)),
            Err(PointError::DepthMismatch { .. })
        ));
    }

    #[test]
    fn pseudo_sum_examples() {
        assert_eq!(
            pseudo_sum_member(&class(2, 3), &pt(3, 1), &pt(3, 1)),
            Ok(true)
        );
        assert_eq!(
            pseudo_sum_member(&class(0, 3), &pt(3, 1), &pt(3, 1)),
            Ok(false)
        );
        assert_eq!(
            pseudo_sum_member(&SemilinearSet::naturals(), &pt(4, 3), &pt(4, 1)),
            Ok(true)
        );
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_member(&class(0, 3), &pt(3, 1), &pt(3, 1)), Ok(true));
        assert_eq!(star_member(&class(1, 3), &pt(3, 0), &pt(3, 1)), Ok(true));
        assert_eq!(
            star_member(&SemilinearSet::empty(), &pt(3, 0), &pt(3, 1)),
            Ok(false)
        );
    }

    #[test]
    fn idempotency() {
        assert!(pt(12, 0).is_idempotent());
        assert!(!pt(3, 1).is_idempotent());
        assert!(pt(1, 0).is_idempotent());
    }

    #[test]
    fn image_examples() {
        let times3 = AffineMap::new(3, 0).unwrap();
        let odd_map = AffineMap::new(2, 1).unwrap();
        assert_eq!(image_member(&class(0, 3), &times3, &pt(5, 2)), Ok(true));
        assert_eq!(image_member(&class(1, 2), &odd_map, &pt(5, 2)), Ok(true));
        assert_eq!(image_member(&class(0, 2), &odd_map, &pt(5, 2)), Ok(false));
    }

    #[test]
    fn parse_point() {
        assert_eq!("point 12:0".parse::<ProfinitePoint>(), Ok(pt(12, 0)));
        assert_eq!("6:5".parse::<ProfinitePoint>(), Ok(pt(6, 5)));
        assert!(matches!(
            "point 3:3".parse::<ProfinitePoint>(),
            Err(PointError::ResidueOutOfRange { .. })
        ));
        assert!(matches!(
            "point 3".parse::<ProfinitePoint>(),
            Err(PointError::Malformed(_))
        ));
        assert_eq!(pt(12, 0).to_string(), "point 12:0");
    }
}
