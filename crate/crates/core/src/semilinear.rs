//! Eventually-periodic subsets of ℕ (0 included).
//!
//! A [`SemilinearSet`] is a finite exceptional part below a threshold `N`
//! followed by a residue pattern modulo a period `p`. Every constructor
//! returns the canonical form, so two values denote the same set exactly
//! when they compare equal.

use std::cmp::{max, min};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact density value, always in lowest terms.
pub type Density = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("residue {residue} is not below the period {period}")]
    ResidueOutOfRange { residue: u64, period: u64 },
    #[error("exceptional element {element} is not below the threshold {threshold}")]
    ExceptionalOutOfRange { element: u64, threshold: u64 },
    #[error("interval [{start},{end}) is reversed")]
    ReversedInterval { start: u64, end: u64 },
    #[error("affine map scale must be at least 1")]
    ZeroScale,
    #[error("no rotation exists for a set with an empty residue pattern")]
    NoRotation,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemilinearSet {
    threshold: u64,
    period: u64,
    pattern: Vec<u64>,
    exceptional: Vec<u64>,
}

/// The map `n ↦ scale·n + offset` with `scale ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    scale: u64,
    offset: u64,
}

impl AffineMap {
    pub fn new(scale: u64, offset: u64) -> Result<Self, SetError> {
        if scale == 0 {
            return Err(SetError::ZeroScale);
        }
        Ok(Self { scale, offset })
    }

    pub fn identity() -> Self {
        Self {
            scale: 1,
            offset: 0,
        }
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn apply(&self, n: u64) -> u64 {
        self.scale * n + self.offset
    }

    /// Image of a residue modulo `modulus`.
    pub fn apply_mod(&self, residue: u64, modulus: u64) -> u64 {
        let m = modulus as u128;
        ((self.scale as u128 % m * (residue as u128 % m) + self.offset as u128) % m) as u64
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n -> {}n + {}", self.scale, self.offset)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl SemilinearSet {
    /// Canonicalize from dense membership data: `below[n]` for `n < below.len()`
    /// and `bits[n mod p]` from there on.
    fn from_bits(below: Vec<bool>, mut bits: Vec<bool>) -> Self {
        let p = bits.len();
        debug_assert!(p >= 1);
        for d in divisors(p as u64) {
            let d = d as usize;
            if (0..p).all(|i| bits[i] == bits[i % d]) {
                bits.truncate(d);
                break;
            }
        }
        let p = bits.len();
        let mut threshold = below.len();
        while threshold > 0 && below[threshold - 1] == bits[(threshold - 1) % p] {
            threshold -= 1;
        }
        let exceptional = (0..threshold)
            .filter(|&n| below[n])
            .map(|n| n as u64)
            .collect();
        let pattern = (0..p).filter(|&i| bits[i]).map(|i| i as u64).collect();
        Self {
            threshold: threshold as u64,
            period: p as u64,
            pattern,
            exceptional,
        }
    }

    /// Build the set `{n : pred(n)}` for a predicate known to be periodic with
    /// period `period` from `threshold` on.
    pub(crate) fn from_fn(threshold: u64, period: u64, pred: impl Fn(u64) -> bool) -> Self {
        let below = (0..threshold).map(&pred).collect();
        let bits = (0..period)
            .map(|i| {
                let n = threshold + (i + period - threshold % period) % period;
                pred(n)
            })
            .collect();
        Self::from_bits(below, bits)
    }

    /// Canonical form of raw fields. Fields must respect the bound invariants.
    pub fn normalize(
        threshold: u64,
        period: u64,
        pattern: impl IntoIterator<Item = u64>,
        exceptional: impl IntoIterator<Item = u64>,
    ) -> Result<Self, SetError> {
        if period == 0 {
            return Err(SetError::ZeroPeriod);
        }
        let mut bits = vec![false; period as usize];
        for r in pattern {
            if r >= period {
                return Err(SetError::ResidueOutOfRange { residue: r, period });
            }
            bits[r as usize] = true;
        }
        let mut below = vec![false; threshold as usize];
        for e in exceptional {
            if e >= threshold {
                return Err(SetError::ExceptionalOutOfRange {
                    element: e,
                    threshold,
                });
            }
            below[e as usize] = true;
        }
        Ok(Self::from_bits(below, bits))
    }

    pub fn empty() -> Self {
        Self {
            threshold: 0,
            period: 1,
            pattern: Vec::new(),
            exceptional: Vec::new(),
        }
    }

    pub fn naturals() -> Self {
        Self {
            threshold: 0,
            period: 1,
            pattern: vec![0],
            exceptional: Vec::new(),
        }
    }

    /// `{n : n ≡ residue (mod modulus)}`.
    pub fn residue_class(residue: u64, modulus: u64) -> Result<Self, SetError> {
        Self::normalize(0, modulus, [residue], [])
    }

    pub fn finite(elements: impl IntoIterator<Item = u64>) -> Self {
        let elements: Vec<u64> = elements.into_iter().collect();
        let threshold = elements.iter().max().map_or(0, |m| m + 1);
        let mut below = vec![false; threshold as usize];
        for e in elements {
            below[e as usize] = true;
        }
        Self::from_bits(below, vec![false])
    }

    /// The half-open interval `[start, end)`.
    pub fn interval(start: u64, end: u64) -> Result<Self, SetError> {
        if end < start {
            return Err(SetError::ReversedInterval { start, end });
        }
        Ok(Self::finite(start..end))
    }

    /// Purely periodic set with the given residue pattern.
    pub fn periodic(period: u64, pattern: impl IntoIterator<Item = u64>) -> Result<Self, SetError> {
        Self::normalize(0, period, pattern, [])
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn pattern(&self) -> &[u64] {
        &self.pattern
    }

    pub fn exceptional(&self) -> &[u64] {
        &self.exceptional
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty() && self.exceptional.is_empty()
    }

    pub fn is_naturals(&self) -> bool {
        self.threshold == 0 && self.pattern.len() as u64 == self.period
    }

    pub fn is_finite(&self) -> bool {
        self.pattern.is_empty()
    }

    /// Whether the residue class `residue mod period` lies in the pattern.
    pub fn pattern_contains(&self, residue: u64) -> bool {
        self.pattern.binary_search(&(residue % self.period)).is_ok()
    }

    pub fn contains(&self, n: u64) -> bool {
        if n < self.threshold {
            self.exceptional.binary_search(&n).is_ok()
        } else {
            self.pattern_contains(n)
        }
    }

    pub fn contains_big(&self, n: &BigUint) -> bool {
        match n.to_u64() {
            Some(small) => self.contains(small),
            None => self.pattern_contains((n % self.period).to_u64().unwrap_or(0)),
        }
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let threshold = max(self.threshold, other.threshold);
        let period = self.period.lcm(&other.period);
        Self::from_fn(threshold, period, |n| {
            op(self.contains(n), other.contains(n))
        })
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        Self::from_fn(self.threshold, self.period, |n| !self.contains(n))
    }

    /// `A − k = {m : m + k ∈ A}`.
    pub fn shift_left(&self, k: u64) -> Self {
        Self::from_fn(self.threshold.saturating_sub(k), self.period, |m| {
            self.contains(m + k)
        })
    }

    /// `A + k = {a + k : a ∈ A}`.
    pub fn shift_right(&self, k: u64) -> Self {
        Self::from_fn(self.threshold + k, self.period, |m| {
            m >= k && self.contains(m - k)
        })
    }

    /// `{n : f(n) ∈ A}`.
    pub fn preimage_affine(&self, f: &AffineMap) -> Self {
        let threshold = if self.threshold > f.offset {
            (self.threshold - f.offset).div_ceil(f.scale)
        } else {
            0
        };
        Self::from_fn(threshold, self.period, |n| self.contains(f.apply(n)))
    }

    /// The purely periodic set `{n : (n + r) mod p ∈ pattern}`.
    pub fn rotate(&self, r: u64) -> Self {
        Self::from_fn(0, self.period, |n| self.pattern_contains(n + r))
    }

    /// `|A ∩ [1, n]|`.
    pub fn count_up_to(&self, n: u64) -> u64 {
        (1..=n).filter(|&m| self.contains(m)).count() as u64
    }

    /// Schnirelmann density `inf_{n≥1} |A∩[1,n]|/n`.
    pub fn schnirelmann(&self) -> Density {
        // Along each residue class n0 + q·p (n0 ≥ N) the ratio moves
        // monotonically toward w/p, so one full period past the threshold
        // decides the infimum.
        let mut best = self.asymptotic();
        let end = max(self.threshold, 1) + self.period;
        let mut count = 0;
        for n in 1..end {
            if self.contains(n) {
                count += 1;
            }
            best = min(best, Ratio::new(count, n));
        }
        best
    }

    /// Asymptotic density; the limit always exists here and equals `|pattern|/p`.
    pub fn asymptotic(&self) -> Density {
        Ratio::new(self.pattern.len() as u64, self.period)
    }

    pub fn lower_density(&self) -> Density {
        self.asymptotic()
    }

    pub fn upper_density(&self) -> Density {
        self.asymptotic()
    }

    /// Banach density. Every window of `q·p` elements in the periodic regime
    /// holds `q·|pattern|` elements, so this equals the asymptotic density.
    pub fn banach(&self) -> Density {
        self.asymptotic()
    }

    /// A rotation `r` such that [`rotate(r)`](Self::rotate) has Schnirelmann
    /// density equal to the Banach density.
    ///
    /// Cycle lemma: with steps `p·[i ∈ pattern] − w`, starting right after the
    /// position of the minimal prefix sum keeps every partial sum nonnegative.
    pub fn best_rotation(&self) -> Result<u64, SetError> {
        if self.pattern.is_empty() {
            return Err(SetError::NoRotation);
        }
        let p = self.period as i64;
        let w = self.pattern.len() as i64;
        let mut prefix = 0i64;
        let mut min_prefix = 0i64;
        let mut start = 0i64;
        for i in 0..p {
            prefix += if self.pattern_contains(i as u64) {
                p - w
            } else {
                -w
            };
            if prefix < min_prefix {
                min_prefix = prefix;
                start = i + 1;
            }
        }
        let r = (start - 1).rem_euclid(p) as u64;
        debug_assert_eq!(self.rotate(r).schnirelmann(), self.banach());
        Ok(r)
    }
}

/// Text for a finite set: isolated elements in one `{…}` block followed by
/// runs of three or more as `[a,b)` intervals.
pub(crate) fn finite_terms(elements: &[u64]) -> Vec<String> {
    let mut singles = Vec::new();
    let mut runs = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        let mut j = i;
        while j + 1 < elements.len() && elements[j + 1] == elements[j] + 1 {
            j += 1;
        }
        if j - i + 1 >= 3 {
            runs.push(format!("[{},{})", elements[i], elements[j] + 1));
        } else {
            singles.extend(&elements[i..=j]);
        }
        i = j + 1;
    }
    let mut terms = Vec::new();
    if !singles.is_empty() {
        let body: Vec<String> = singles.iter().map(u64::to_string).collect();
        terms.push(format!("{{{}}}", body.join(",")));
    }
    terms.extend(runs);
    terms
}

impl fmt::Display for SemilinearSet {
    /// Canonical text, parseable by the set-expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        if self.is_naturals() {
            return f.write_str("N");
        }
        let (removed, added): (Vec<u64>, Vec<u64>) = {
            let mut removed = Vec::new();
            let mut added = Vec::new();
            for n in 0..self.threshold {
                match (self.contains(n), self.pattern_contains(n)) {
                    (false, true) => removed.push(n),
                    (true, false) => added.push(n),
                    _ => {}
                }
            }
            (removed, added)
        };
        let mut parts = Vec::new();
        if !self.pattern.is_empty() {
            let full = self.pattern.len() as u64 == self.period;
            let classes: Vec<String> = if full {
                vec!["N".to_string()]
            } else {
                self.pattern
                    .iter()
                    .map(|r| format!("{}%{}", r, self.period))
                    .collect()
            };
            if removed.is_empty() {
                parts.extend(classes);
            } else {
                let holes = finite_terms(&removed);
                let holes = if holes.len() == 1 {
                    format!("!{}", holes[0])
                } else {
                    format!("!({})", holes.join(" | "))
                };
                if full {
                    parts.push(holes);
                } else if classes.len() == 1 {
                    parts.push(format!("{} & {}", classes[0], holes));
                } else {
                    parts.push(format!("({}) & {}", classes.join(" | "), holes));
                }
            }
        }
        parts.extend(finite_terms(&added));
        f.write_str(&parts.join(" | "))
    }
}
