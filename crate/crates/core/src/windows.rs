//! Finite windows of computable sets.
//!
//! Sets here need not be eventually periodic: a [`PredicateSet`] is any
//! membership test from a small catalog, evaluated at arbitrary-precision
//! points. A [`WindowSet`] is the explicit membership sequence of such a set
//! on `[origin, origin + len)`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::profinite::hyper_shift;
use crate::profinite::ProfinitePoint;
use crate::semilinear::{Density, SemilinearSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("window length must be at least 1")]
    EmptyWindow,
    #[error("sub-window length {n} is outside [1, {len}]")]
    LengthOutOfRange { n: usize, len: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("good-start scan exhausted the window")]
    NotFound,
}

/// 3-adic valuation and unit part of `n ≥ 1`.
pub fn triadic_parts(n: &BigUint) -> Option<(u64, BigUint)> {
    if n.is_zero() {
        return None;
    }
    let three = BigUint::from(3u32);
    let mut unit = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = unit.div_rem(&three);
        if !r.is_zero() {
            break;
        }
        unit = q;
        v += 1;
    }
    Some((v, unit))
}

/// A total membership predicate on ℕ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PredicateSet {
    Semilinear(SemilinearSet),
    /// `⋃_{n even} [n², (n+1)²)`.
    SquaresBlocks,
    /// `{n ≥ 1 : unit part of n ≡ j (mod 3)}`.
    TriadicUnit(u8),
    /// `{n : 3^k | n}`.
    TriadicValGe(u64),
    Not(Box<PredicateSet>),
    And(Box<PredicateSet>, Box<PredicateSet>),
    Or(Box<PredicateSet>, Box<PredicateSet>),
    /// `A − k`.
    ShiftLeft(Box<PredicateSet>, u64),
    /// `A + k`.
    ShiftRight(Box<PredicateSet>, u64),
}

impl PredicateSet {
    pub fn contains(&self, n: &BigUint) -> bool {
        match self {
            PredicateSet::Semilinear(s) => s.contains_big(n),
            PredicateSet::SquaresBlocks => n.sqrt().is_even(),
            PredicateSet::TriadicUnit(j) => match triadic_parts(n) {
                Some((_, unit)) => (unit % 3u32).to_u8() == Some(*j),
                None => false,
            },
            PredicateSet::TriadicValGe(k) => match triadic_parts(n) {
                Some((v, _)) => v >= *k,
                None => true,
            },
            PredicateSet::Not(a) => !a.contains(n),
            PredicateSet::And(a, b) => a.contains(n) && b.contains(n),
            PredicateSet::Or(a, b) => a.contains(n) || b.contains(n),
            PredicateSet::ShiftLeft(a, k) => a.contains(&(n + *k)),
            PredicateSet::ShiftRight(a, k) => {
                let k = BigUint::from(*k);
                *n >= k && a.contains(&(n - k))
            }
        }
    }

    pub fn contains_u64(&self, n: u64) -> bool {
        self.contains(&BigUint::from(n))
    }
}

impl From<SemilinearSet> for PredicateSet {
    fn from(s: SemilinearSet) -> Self {
        PredicateSet::Semilinear(s)
    }
}

/// `A ∩ [origin, origin + len)` as an explicit bit sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowSet {
    origin: BigUint,
    bits: Vec<bool>,
}

impl WindowSet {
    pub fn new(origin: BigUint, bits: Vec<bool>) -> Result<Self, WindowError> {
        if bits.is_empty() {
            return Err(WindowError::EmptyWindow);
        }
        Ok(Self { origin, bits })
    }

    pub fn origin(&self) -> &BigUint {
        &self.origin
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn density(&self) -> Density {
        Ratio::new(self.count() as u64, self.len() as u64)
    }

    pub fn all_true(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn all_false(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }
}

impl fmt::Display for WindowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

pub fn window_of(
    set: &PredicateSet,
    origin: &BigUint,
    len: usize,
) -> Result<WindowSet, WindowError> {
    let bits = (0..len).map(|i| set.contains(&(origin + i))).collect();
    WindowSet::new(origin.clone(), bits)
}

/// `{n < len : g + n ∈ A}`, the finite stand-in for a hyper-shift.
pub fn finite_hyper_shift(
    set: &PredicateSet,
    g: &BigUint,
    len: usize,
) -> Result<WindowSet, WindowError> {
    let bits = (0..len).map(|n| set.contains(&(g + n))).collect();
    WindowSet::new(BigUint::zero(), bits)
}

/// `max_k |W ∩ [k+1, k+n]| / n` over sub-windows lying inside `W`.
pub fn window_banach(window: &WindowSet, n: usize) -> Result<Density, WindowError> {
    Ok(Ratio::new(max_window_count(window, n)? as u64, n as u64))
}

/// `a_n = max_k |W ∩ [k+1, k+n]|`; subadditive in `n`.
pub fn max_window_count(window: &WindowSet, n: usize) -> Result<usize, WindowError> {
    let len = window.len();
    if n == 0 || n > len {
        return Err(WindowError::LengthOutOfRange { n, len });
    }
    let bits = window.bits();
    let mut count = bits[..n].iter().filter(|&&b| b).count();
    let mut best = count;
    for k in n..len {
        count += bits[k] as usize;
        count -= bits[k - n] as usize;
        best = best.max(count);
    }
    Ok(best)
}

/// Whether every prefix of length `1..=nu` starting at offset `start` has
/// density at least `a − nu/N`, where `a` is the window density.
pub fn good_start_holds(window: &WindowSet, nu: usize, start: usize) -> bool {
    start + nu <= window.len() && first_failing_prefix(window, nu, start).is_none()
}

/// `ψ(start)`: the shortest prefix length whose density drops below
/// `a − nu/N`. Compared exactly as `hits·N < i·(count − nu)`.
fn first_failing_prefix(window: &WindowSet, nu: usize, start: usize) -> Option<usize> {
    let total = window.len() as i128;
    let slack = window.count() as i128 - nu as i128;
    let bits = window.bits();
    let mut hits = 0i128;
    for i in 1..=nu {
        hits += bits[start + i - 1] as i128;
        if hits * total < i as i128 * slack {
            return Some(i);
        }
    }
    None
}

/// An offset `γ` such that `|W ∩ [γ, γ+i)| / i ≥ a − ν/N` for every
/// `1 ≤ i ≤ ν`, found by repeatedly skipping the shortest failing prefix.
///
/// Requires `a > ν/N`, i.e. more than `ν` hits in the window. Under that
/// precondition the skips cannot carry the scan into the last `ν` positions.
pub fn good_start(window: &WindowSet, nu: usize) -> Result<usize, WindowError> {
    if nu == 0 {
        return Err(WindowError::PreconditionViolated(
            "nu must be at least 1".into(),
        ));
    }
    let count = window.count();
    if count <= nu {
        return Err(WindowError::PreconditionViolated(format!(
            "window density {}/{} does not exceed nu/N = {}/{}",
            count,
            window.len(),
            nu,
            window.len()
        )));
    }
    let len = window.len();
    let mut start = 0;
    while start + nu <= len {
        match first_failing_prefix(window, nu, start) {
            None => return Ok(start),
            Some(skip) => start += skip,
        }
    }
    debug_assert!(
        false,
        "good-start scan left the window under its precondition"
    );
    Err(WindowError::NotFound)
}

/// Smallest `x` in `xs` with `x + (A ∩ I) = B ∩ (x + I)` for `I = [lo, hi]`.
pub fn exact_embed_window(
    a: &PredicateSet,
    b: &PredicateSet,
    interval: (u64, u64),
    xs: std::ops::RangeInclusive<u64>,
) -> Option<u64> {
    let (lo, hi) = interval;
    let a_bits: Vec<bool> = (lo..=hi).map(|n| a.contains_u64(n)).collect();
    xs.into_iter().find(|&x| {
        (lo..=hi)
            .zip(&a_bits)
            .all(|(n, &in_a)| b.contains_u64(x + n) == in_a)
    })
}

/// How `A ≤ₑ B` was witnessed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum EmbedWitness {
    /// `A = B − g` for a finite `g`.
    FiniteShift(u64),
    /// `A = B_γ` for infinite `γ ≡ r (mod p_B)`.
    Rotation(u64),
}

/// Decide whether `A` is exactly embeddable in `B`, i.e. `A = B_γ` for some
/// hypernatural `γ`, finite or infinite.
///
/// Reports `g = 0` when `A = B`, then prefers a rotation witness, then a
/// finite shift up to `threshold(B) + lcm(p_A, p_B) + 1`.
pub fn exact_embed_decide(a: &SemilinearSet, b: &SemilinearSet) -> Option<EmbedWitness> {
    if a == b {
        return Some(EmbedWitness::FiniteShift(0));
    }
    let period = b.period();
    for r in 0..period {
        let point = ProfinitePoint::new(period, r).expect("residue below period");
        if hyper_shift(b, &point).expect("depth equals period") == *a {
            return Some(EmbedWitness::Rotation(r));
        }
    }
    let bound = b.threshold() + a.period().lcm(&b.period()) + 1;
    (1..=bound)
        .find(|&g| b.shift_left(g) == *a)
        .map(EmbedWitness::FiniteShift)
}

/// Result of [`noncomm_demo`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoncommReport {
    pub nu: BigUint,
    pub length: usize,
    pub full_at: BigUint,
    pub empty_at: BigUint,
    pub full_window: WindowSet,
    pub empty_window: WindowSet,
}

impl NoncommReport {
    pub fn dichotomy_holds(&self) -> bool {
        self.full_window.all_true() && self.empty_window.all_false()
    }
}

/// Hyper-shift surrogates of the squares-blocks set at `ν²` and `(ν+1)²`
/// for even `ν`: the first starts an included block, the second an excluded one.
pub fn noncomm_demo(nu: &BigUint, length: usize) -> Result<NoncommReport, WindowError> {
    if nu.is_odd() {
        return Err(WindowError::PreconditionViolated(format!(
            "nu = {nu} must be even so that [nu^2, (nu+1)^2) is an included block"
        )));
    }
    let full_at = nu * nu;
    let next = nu + BigUint::one();
    let empty_at = &next * &next;
    let set = PredicateSet::SquaresBlocks;
    Ok(NoncommReport {
        nu: nu.clone(),
        length,
        full_window: finite_hyper_shift(&set, &full_at, length)?,
        empty_window: finite_hyper_shift(&set, &empty_at, length)?,
        full_at,
        empty_at,
    })
}
