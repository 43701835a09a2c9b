//! Sets of pairs and the ultrafilters on `ℕ×ℕ` they are tested against:
//! pair-generated ultrafilters, tensor products and diagonal ultrafilters.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::profinite::{hyper_shift, member_set, right_shift_trace, PointError, ProfinitePoint};
use crate::semilinear::{AffineMap, SemilinearSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error(transparent)]
    Point(#[from] PointError),
    #[error("inconsistent difference metadata: {0}")]
    InconsistentDiff(String),
}

/// A Boolean combination of the primitive 2D sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairSet {
    /// `A × B`.
    Rect(SemilinearSet, SemilinearSet),
    /// `{(n,m) : n + m ∈ A}`.
    SumBand(SemilinearSet),
    /// `{(n,m) : m ≥ n and m − n ∈ A}`.
    DiffBand(SemilinearSet),
    /// `Δ⁺ = {(n,m) : n < m}`.
    UpperTriangle,
    Union(Box<PairSet>, Box<PairSet>),
    Intersection(Box<PairSet>, Box<PairSet>),
    Complement(Box<PairSet>),
}

impl PairSet {
    pub fn union(self, other: PairSet) -> PairSet {
        PairSet::Union(Box::new(self), Box::new(other))
    }

    pub fn intersection(self, other: PairSet) -> PairSet {
        PairSet::Intersection(Box::new(self), Box::new(other))
    }

    pub fn complement(self) -> PairSet {
        PairSet::Complement(Box::new(self))
    }

    /// Membership of a concrete pair.
    pub fn contains(&self, n: u64, m: u64) -> bool {
        match self {
            PairSet::Rect(a, b) => a.contains(n) && b.contains(m),
            PairSet::SumBand(a) => a.contains(n + m),
            PairSet::DiffBand(a) => m >= n && a.contains(m - n),
            PairSet::UpperTriangle => n < m,
            PairSet::Union(x, y) => x.contains(n, m) || y.contains(n, m),
            PairSet::Intersection(x, y) => x.contains(n, m) && y.contains(n, m),
            PairSet::Complement(x) => !x.contains(n, m),
        }
    }

    /// The vertical fiber `X_n = {m : (n,m) ∈ X}`.
    pub fn fiber(&self, n: u64) -> SemilinearSet {
        match self {
            PairSet::Rect(a, b) => {
                if a.contains(n) {
                    b.clone()
                } else {
                    SemilinearSet::empty()
                }
            }
            PairSet::SumBand(a) => a.shift_left(n),
            PairSet::DiffBand(a) => a.shift_right(n),
            PairSet::UpperTriangle => SemilinearSet::interval(0, n + 1).unwrap().complement(),
            PairSet::Union(x, y) => x.fiber(n).union(&y.fiber(n)),
            PairSet::Intersection(x, y) => x.fiber(n).intersect(&y.fiber(n)),
            PairSet::Complement(x) => x.fiber(n).complement(),
        }
    }

    /// `{n : (n,n) ∈ X}`.
    pub fn diagonal_section(&self) -> SemilinearSet {
        match self {
            PairSet::Rect(a, b) => a.intersect(b),
            PairSet::SumBand(a) => a.preimage_affine(&AffineMap::new(2, 0).unwrap()),
            PairSet::DiffBand(a) => {
                if a.contains(0) {
                    SemilinearSet::naturals()
                } else {
                    SemilinearSet::empty()
                }
            }
            PairSet::UpperTriangle => SemilinearSet::empty(),
            PairSet::Union(x, y) => x.diagonal_section().union(&y.diagonal_section()),
            PairSet::Intersection(x, y) => x.diagonal_section().intersect(&y.diagonal_section()),
            PairSet::Complement(x) => x.diagonal_section().complement(),
        }
    }

    /// Every semilinear set appearing in a leaf.
    pub fn leaves(&self) -> Vec<&SemilinearSet> {
        match self {
            PairSet::Rect(a, b) => vec![a, b],
            PairSet::SumBand(a) | PairSet::DiffBand(a) => vec![a],
            PairSet::UpperTriangle => Vec::new(),
            PairSet::Union(x, y) | PairSet::Intersection(x, y) => {
                let mut v = x.leaves();
                v.extend(y.leaves());
                v
            }
            PairSet::Complement(x) => x.leaves(),
        }
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn prec(x: &PairSet) -> u8 {
            match x {
                PairSet::Union(..) => 0,
                PairSet::Intersection(..) => 1,
                _ => 2,
            }
        }
        fn wrap(x: &PairSet, min: u8) -> String {
            if prec(x) < min {
                format!("({x})")
            } else {
                x.to_string()
            }
        }
        match self {
            PairSet::Rect(a, b) => write!(f, "rect({a}, {b})"),
            PairSet::SumBand(a) => write!(f, "sumband({a})"),
            PairSet::DiffBand(a) => write!(f, "diffband({a})"),
            PairSet::UpperTriangle => f.write_str("delta+"),
            PairSet::Union(x, y) => write!(f, "{} | {}", wrap(x, 0), wrap(y, 1)),
            PairSet::Intersection(x, y) => write!(f, "{} & {}", wrap(x, 1), wrap(y, 2)),
            PairSet::Complement(x) => write!(f, "!{}", wrap(x, 2)),
        }
    }
}

/// What the residues cannot see about `β − α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairDiff {
    InfinitePositive,
    InfiniteNegative,
    Zero,
    FiniteOffset(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairPoint {
    alpha: ProfinitePoint,
    beta: ProfinitePoint,
    diff: PairDiff,
}

impl PairPoint {
    pub fn new(
        alpha: ProfinitePoint,
        beta: ProfinitePoint,
        diff: PairDiff,
    ) -> Result<Self, PairError> {
        if alpha.modulus() != beta.modulus() {
            return Err(PointError::DepthMismatch {
                left: alpha.modulus(),
                right: beta.modulus(),
            }
            .into());
        }
        match diff {
            PairDiff::Zero if alpha != beta => {
                return Err(PairError::InconsistentDiff(format!(
                    "diff is zero but {alpha} differs from {beta}"
                )))
            }
            PairDiff::FiniteOffset(k) if alpha.add_integer(k) != beta => {
                return Err(PairError::InconsistentDiff(format!(
                    "{beta} is not {alpha} shifted by {k}"
                )))
            }
            _ => {}
        }
        Ok(Self { alpha, beta, diff })
    }

    pub fn alpha(&self) -> ProfinitePoint {
        self.alpha
    }

    pub fn beta(&self) -> ProfinitePoint {
        self.beta
    }

    pub fn diff(&self) -> PairDiff {
        self.diff
    }
}

/// Decide `X ∈ 𝔘_(α,β)`.
pub fn pair_member(set: &PairSet, point: &PairPoint) -> Result<bool, PairError> {
    // Re-check in case the point was deserialized.
    let point = PairPoint::new(point.alpha, point.beta, point.diff)?;
    pair_member_checked(set, &point)
}

fn pair_member_checked(set: &PairSet, point: &PairPoint) -> Result<bool, PairError> {
    let (alpha, beta) = (&point.alpha, &point.beta);
    Ok(match set {
        PairSet::Rect(a, b) => member_set(a, alpha)? & member_set(b, beta)?,
        PairSet::SumBand(a) => member_set(a, &alpha.add(beta)?)?,
        PairSet::DiffBand(a) => match point.diff {
            PairDiff::Zero => a.contains(0),
            PairDiff::FiniteOffset(k) => k >= 0 && a.contains(k as u64),
            PairDiff::InfinitePositive => member_set(a, &beta.sub(alpha)?)?,
            PairDiff::InfiniteNegative => false,
        },
        PairSet::UpperTriangle => match point.diff {
            PairDiff::InfinitePositive => true,
            PairDiff::FiniteOffset(k) => k > 0,
            PairDiff::Zero | PairDiff::InfiniteNegative => false,
        },
        PairSet::Union(x, y) => pair_member_checked(x, point)? | pair_member_checked(y, point)?,
        PairSet::Intersection(x, y) => {
            pair_member_checked(x, point)? & pair_member_checked(y, point)?
        }
        PairSet::Complement(x) => !pair_member_checked(x, point)?,
    })
}

/// `{n : X_n ∈ 𝔘_δ}`. Boolean structure is pushed through leafwise since the
/// trace of an ultrafilter is prime.
pub fn fiber_membership_set(
    set: &PairSet,
    delta: &ProfinitePoint,
) -> Result<SemilinearSet, PairError> {
    Ok(match set {
        PairSet::Rect(a, b) => {
            if member_set(b, delta)? {
                a.clone()
            } else {
                SemilinearSet::empty()
            }
        }
        PairSet::SumBand(a) => hyper_shift(a, delta)?,
        PairSet::DiffBand(a) => right_shift_trace(a, delta)?,
        PairSet::UpperTriangle => SemilinearSet::naturals(),
        PairSet::Union(x, y) => {
            fiber_membership_set(x, delta)?.union(&fiber_membership_set(y, delta)?)
        }
        PairSet::Intersection(x, y) => {
            fiber_membership_set(x, delta)?.intersect(&fiber_membership_set(y, delta)?)
        }
        PairSet::Complement(x) => fiber_membership_set(x, delta)?.complement(),
    })
}

/// Decide `X ∈ 𝔘_γ ⊗ 𝔘_δ`.
pub fn tensor_member(
    set: &PairSet,
    gamma: &ProfinitePoint,
    delta: &ProfinitePoint,
) -> Result<bool, PairError> {
    if gamma.modulus() != delta.modulus() {
        return Err(PointError::DepthMismatch {
            left: gamma.modulus(),
            right: delta.modulus(),
        }
        .into());
    }
    Ok(member_set(&fiber_membership_set(set, delta)?, gamma)?)
}

/// The pair point realizing `𝔘_γ ⊗ 𝔘_δ` on this algebra.
pub fn canonical_tensor_point(
    gamma: &ProfinitePoint,
    delta: &ProfinitePoint,
) -> Result<PairPoint, PairError> {
    PairPoint::new(*gamma, *delta, PairDiff::InfinitePositive)
}

/// Decide `X` against the diagonal ultrafilter of `𝔘_γ`.
pub fn diagonal_member(set: &PairSet, gamma: &ProfinitePoint) -> Result<bool, PairError> {
    Ok(member_set(&set.diagonal_section(), gamma)?)
}

/// Push a pair point through `(f, g)`.
///
/// An infinite positive (negative) difference is kept: images of tensor pairs
/// under `(f, g)` are tensor pairs, so `g(β)` stays above every finite shift
/// of `f(α)`. Zero and finite differences stay finite only when the scales
/// agree.
pub fn image_pair(f: &AffineMap, g: &AffineMap, point: &PairPoint) -> Result<PairPoint, PairError> {
    let alpha = point.alpha.map(f);
    let beta = point.beta.map(g);
    let k = match point.diff {
        PairDiff::InfinitePositive | PairDiff::InfiniteNegative => None,
        PairDiff::Zero => Some(0),
        PairDiff::FiniteOffset(k) => Some(k),
    };
    let diff = match k {
        None => point.diff,
        Some(k) => {
            if f.scale() == g.scale() {
                let offset = g.scale() as i64 * k + g.offset() as i64 - f.offset() as i64;
                if offset == 0 {
                    PairDiff::Zero
                } else {
                    PairDiff::FiniteOffset(offset)
                }
            } else if g.scale() > f.scale() {
                PairDiff::InfinitePositive
            } else {
                PairDiff::InfiniteNegative
            }
        }
    };
    PairPoint::new(alpha, beta, diff)
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
    fn upper_triangle_membership() {
        let pos = PairPoint::new(pt(3, 1), pt(3, 2), PairDiff::InfinitePositive).unwrap();
        assert_eq!(pair_member(&PairSet::UpperTriangle, &pos), Ok(true));
        let zero = PairPoint::new(pt(3, 1), pt(3, 1), PairDiff::Zero).unwrap();
        assert_eq!(pair_member(&PairSet::UpperTriangle, &zero), Ok(false));
    }

    #[test]
    fn rect_membership() {
        let p = PairPoint::new(pt(6, 0), pt(6, 3), PairDiff::InfinitePositive).unwrap();
        let x = PairSet::Rect(class(0, 2), class(0, 3));
        assert_eq!(pair_member(&x, &p), Ok(true));
    }

    #[test]
    fn inconsistent_diff_rejected() {
        assert!(matches!(
            PairPoint::new(pt(3, 1), pt(3, 2), PairDiff::Zero),
            Err(PairError::InconsistentDiff(_))
        ));
        assert!(matches!(
            PairPoint::new(pt(3, 1), pt(3, 2), PairDiff::FiniteOffset(2)),
            Err(PairError::InconsistentDiff(_))
        ));
        assert!(PairPoint::new(pt(3, 1), pt(3, 0), PairDiff::FiniteOffset(2)).is_ok());
        assert!(matches!(
            PairPoint::new(pt(3, 1), pt(6, 1), PairDiff::InfinitePositive),
            Err(PairError::Point(PointError::DepthMismatch { .. }))
        ));
    }

    #[test]
    fn fiber_membership_examples() {
        assert_eq!(
            fiber_membership_set(&PairSet::SumBand(class(0, 3)), &pt(3, 1)),
            Ok(class(2, 3))
        );
        assert_eq!(
            fiber_membership_set(&PairSet::UpperTriangle, &pt(5, 4)),
            Ok(SemilinearSet::naturals())
        );
        assert_eq!(
            fiber_membership_set(&PairSet::Rect(class(0, 2), class(1, 3)), &pt(3, 0)),
            Ok(SemilinearSet::empty())
        );
    }

    #[test]
    fn fibers_are_semilinear_and_match_membership() {
        let x = PairSet::SumBand(class(1, 3))
            .union(PairSet::DiffBand(class(0, 2)))
            .intersection(PairSet::UpperTriangle.complement());
        for n in 0..12 {
            let fiber = x.fiber(n);
            for m in 0..40 {
                assert_eq!(fiber.contains(m), x.contains(n, m));
            }
        }
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(
            tensor_member(&PairSet::UpperTriangle, &pt(4, 3), &pt(4, 1)),
            Ok(true)
        );
        assert_eq!(
            tensor_member(&PairSet::SumBand(class(2, 3)), &pt(3, 1), &pt(3, 1)),
            Ok(true)
        );
        let a = class(1, 2);
        let b = class(0, 3);
        for (g, d) in [
            (pt(6, 1), pt(6, 3)),
            (pt(6, 0), pt(6, 3)),
            (pt(6, 1), pt(6, 2)),
        ] {
            let expected = member_set(&a, &g).unwrap() && member_set(&b, &d).unwrap();
            assert_eq!(
                tensor_member(&PairSet::Rect(a.clone(), b.clone()), &g, &d),
                Ok(expected)
            );
        }
        assert!(tensor_member(&PairSet::UpperTriangle, &pt(4, 3), &pt(2, 1)).is_err());
    }

    #[test]
    fn canonical_tensor_examples() {
        let p = canonical_tensor_point(&pt(3, 1), &pt(3, 1)).unwrap();
        assert_eq!(p.diff(), PairDiff::InfinitePositive);
        assert_eq!(pair_member(&PairSet::UpperTriangle, &p), Ok(true));
        assert_eq!(pair_member(&PairSet::DiffBand(class(0, 3)), &p), Ok(true));
    }

    #[test]
    fn diagonal_examples() {
        let x = PairSet::Rect(class(0, 2), class(0, 3));
        assert_eq!(x.diagonal_section(), class(0, 6));
        assert_eq!(
            diagonal_member(&PairSet::UpperTriangle, &pt(5, 2)),
            Ok(false)
        );
        assert_eq!(
            diagonal_member(&PairSet::DiffBand(SemilinearSet::finite([0])), &pt(5, 2)),
            Ok(true)
        );
        let sb = PairSet::SumBand(class(1, 4));
        assert_eq!(sb.diagonal_section(), SemilinearSet::empty());
    }

    #[test]
    fn image_pair_examples() {
        let p = PairPoint::new(pt(6, 1), pt(6, 2), PairDiff::InfinitePositive).unwrap();
        let id = AffineMap::identity();
        assert_eq!(image_pair(&id, &id, &p), Ok(p));
        let f = AffineMap::new(2, 0).unwrap();
        let g = AffineMap::new(3, 1).unwrap();
        let q = image_pair(&f, &g, &p).unwrap();
        assert_eq!(
            (q.alpha(), q.beta(), q.diff()),
            (pt(6, 2), pt(6, 1), PairDiff::InfinitePositive)
        );
        assert_eq!(
            pair_member(&PairSet::Rect(class(0, 2), class(1, 3)), &q),
            Ok(true)
        );
    }

    #[test]
    fn image_pair_finite_offsets() {
        let p = PairPoint::new(pt(6, 1), pt(6, 3), PairDiff::FiniteOffset(2)).unwrap();
        let f = AffineMap::new(2, 1).unwrap();
        let g = AffineMap::new(2, 0).unwrap();
        let q = image_pair(&f, &g, &p).unwrap();
        assert_eq!(q.diff(), PairDiff::FiniteOffset(3));
        let z = PairPoint::new(pt(6, 1), pt(6, 1), PairDiff::Zero).unwrap();
        assert_eq!(image_pair(&f, &f, &z).unwrap().diff(), PairDiff::Zero);
        assert_eq!(
            image_pair(&g, &AffineMap::new(3, 0).unwrap(), &z)
                .unwrap()
                .diff(),
            PairDiff::InfinitePositive
        );
    }

    #[test]
    fn display() {
        let x = PairSet::Rect(class(0, 2), class(1, 3))
            .union(PairSet::UpperTriangle)
            .complement();
        assert_eq!(x.to_string(), "!(rect(0%2, 1%3) | delta+)");
    }
}
