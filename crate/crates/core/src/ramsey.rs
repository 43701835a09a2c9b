//! Finite Ramsey-type searches: 3-coloring functional graphs, single-equation
//! partition regularity, finite sums and the 3-adic obstruction to
//! `𝒰 ⋆ 𝒰 = 𝒰`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::windows::triadic_parts;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamseyError {
    #[error("vertex {0} is a fixed point of the map")]
    FixedPointPresent(usize),
    #[error("vertex {vertex} maps to {target}, outside [0, {size})")]
    TargetOutOfRange {
        vertex: usize,
        target: usize,
        size: usize,
    },
    #[error("size mismatch: graph has {graph} vertices, coloring has {coloring}")]
    SizeMismatch { graph: usize, coloring: usize },
    #[error("colors must be at least 1")]
    ZeroColor,
    #[error("an equation needs at least two coefficients")]
    TooFewCoefficients,
    #[error("coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("{0} coefficients exceed the enumeration guard of 25")]
    TooManyCoefficients(usize),
    #[error("enumeration of {0} colorings exceeds the budget")]
    BudgetExceeded(String),
    #[error("finite-sums input has {0} elements, at most 20 allowed")]
    TooLarge(usize),
    #[error("{0} sets exceed the cap of 3")]
    TooManySets(usize),
    #[error("no witness in the searched window")]
    NotFound,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A fixed-point-free map `f : [0, N) → [0, N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalGraph {
    map: Vec<usize>,
}

impl FunctionalGraph {
    pub fn new(map: Vec<usize>) -> Result<Self, RamseyError> {
        let size = map.len();
        for (vertex, &target) in map.iter().enumerate() {
            if target >= size {
                return Err(RamseyError::TargetOutOfRange {
                    vertex,
                    target,
                    size,
                });
            }
            if target == vertex {
                return Err(RamseyError::FixedPointPresent(vertex));
            }
        }
        Ok(Self { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, vertex: usize) -> usize {
        self.map[vertex]
    }
}

impl FromStr for FunctionalGraph {
    type Err = RamseyError;

    /// One `i -> f(i)` line per vertex; blank lines and `#` comments skipped.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut pairs = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| RamseyError::Parse {
                line: idx + 1,
                message: message.into(),
            };
            let (from, to) = line
                .split_once("->")
                .ok_or_else(|| err("expected `i -> f(i)`"))?;
            let from: usize = from.trim().parse().map_err(|_| err("bad source vertex"))?;
            let to: usize = to.trim().parse().map_err(|_| err("bad target vertex"))?;
            pairs.push((from, to, idx + 1));
        }
        let size = pairs.len();
        let mut map = vec![usize::MAX; size];
        for (from, to, line) in pairs {
            if from >= size || map[from] != usize::MAX {
                return Err(RamseyError::Parse {
                    line,
                    message: format!("vertex {from} is duplicated or outside [0, {size})"),
                });
            }
            map[from] = to;
        }
        Self::new(map)
    }
}

/// Colors `1..=r` assigned to a finite domain. Ramsey searches read the
/// domain as `[1, N]`; graph colorings index vertices from 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coloring {
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Result<Self, RamseyError> {
        if colors.contains(&0) {
            return Err(RamseyError::ZeroColor);
        }
        Ok(Self { colors })
    }

    /// All of `[1, n]` in color 1.
    pub fn constant(n: usize) -> Self {
        Self { colors: vec![1; n] }
    }

    pub fn from_fn(n: u64, f: impl Fn(u64) -> u32) -> Result<Self, RamseyError> {
        Self::new((1..=n).map(f).collect())
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn num_colors(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// Color of `n ∈ [1, N]`.
    pub fn color_of(&self, n: u64) -> Option<u32> {
        if n == 0 {
            return None;
        }
        self.colors.get(n as usize - 1).copied()
    }
}

impl FromStr for Coloring {
    type Err = RamseyError;

    /// Color indices separated by whitespace or commas, possibly over several lines.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut colors = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            for tok in line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
            {
                let c = tok.parse().map_err(|_| RamseyError::Parse {
                    line: idx + 1,
                    message: format!("bad color `{tok}`"),
                })?;
                colors.push(c);
            }
        }
        Self::new(colors)
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.colors.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Proper 3-coloring of a fixed-point-free functional graph in linear time.
///
/// Peel vertices of in-degree at most 1 (among the remaining ones) onto a
/// stack, then color in reverse peeling order. A vertex sees at most two
/// already-colored neighbours: its image and at most one preimage.
pub fn three_color(graph: &FunctionalGraph) -> Coloring {
    let n = graph.len();
    let mut indegree = vec![0usize; n];
    for v in 0..n {
        indegree[graph.image(v)] += 1;
    }
    let mut removed = vec![false; n];
    let mut queued = vec![false; n];
    let mut queue: Vec<usize> = Vec::new();
    for v in 0..n {
        if indegree[v] <= 1 {
            queue.push(v);
            queued[v] = true;
        }
    }
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop() {
        removed[v] = true;
        order.push(v);
        let w = graph.image(v);
        if !removed[w] {
            indegree[w] -= 1;
            if indegree[w] <= 1 && !queued[w] {
                queued[w] = true;
                queue.push(w);
            }
        }
    }
    debug_assert_eq!(order.len(), n);

    // preimages still present when each vertex was peeled
    let mut pre_of: Vec<Option<usize>> = vec![None; n];
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    for u in 0..n {
        let w = graph.image(u);
        if position[u] > position[w] {
            pre_of[w] = Some(u);
        }
    }

    let mut colors = vec![0u32; n];
    for &v in order.iter().rev() {
        let mut used = [false; 4];
        let w = graph.image(v);
        used[colors[w] as usize] = true;
        if let Some(u) = pre_of[v] {
            used[colors[u] as usize] = true;
        }
        colors[v] = (1..=3)
            .find(|&c| !used[c as usize])
            .expect("at most two neighbours colored");
    }
    Coloring { colors }
}

pub fn verify_coloring(graph: &FunctionalGraph, coloring: &Coloring) -> Result<bool, RamseyError> {
    if graph.len() != coloring.len() {
        return Err(RamseyError::SizeMismatch {
            graph: graph.len(),
            coloring: coloring.len(),
        });
    }
    Ok((0..graph.len()).all(|v| coloring.colors[v] != coloring.colors[graph.image(v)]))
}

/// `c₁X₁ + … + c_kX_k = 0` with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinearEquation {
    coeffs: Vec<i64>,
}

impl LinearEquation {
    pub fn new(coeffs: Vec<i64>) -> Result<Self, RamseyError> {
        if coeffs.len() < 2 {
            return Err(RamseyError::TooFewCoefficients);
        }
        if coeffs.contains(&0) {
            return Err(RamseyError::ZeroCoefficient);
        }
        Ok(Self { coeffs })
    }

    /// `X + Y = Z`.
    pub fn schur() -> Self {
        Self {
            coeffs: vec![1, 1, -1],
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn evaluate(&self, values: &[u64]) -> i128 {
        self.coeffs
            .iter()
            .zip(values)
            .map(|(&c, &x)| c as i128 * x as i128)
            .sum()
    }
}

impl FromStr for LinearEquation {
    type Err = RamseyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim().parse().map_err(|_| RamseyError::Parse {
                    line: 1,
                    message: format!("bad coefficient `{}`", t.trim()),
                })
            })
            .collect::<Result<Vec<i64>, _>>()?;
        Self::new(coeffs)
    }
}

impl fmt::Display for LinearEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Rado's criterion for one equation: some nonempty subset of the
/// coefficients sums to zero.
pub fn rado_single_pr(eq: &LinearEquation) -> Result<bool, RamseyError> {
    let k = eq.coeffs.len();
    if k > 25 {
        return Err(RamseyError::TooManyCoefficients(k));
    }
    let mut sums: HashSet<i128> = HashSet::new();
    for &c in &eq.coeffs {
        let c = c as i128;
        let mut next: Vec<i128> = sums.iter().map(|s| s + c).collect();
        next.push(c);
        if next.contains(&0) {
            return Ok(true);
        }
        sums.extend(next);
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoSolution {
    pub values: Vec<u64>,
    pub color: u32,
}

/// The lexicographically smallest monochromatic solution inside `[1, N]`.
pub fn find_mono_solution(eq: &LinearEquation, coloring: &Coloring) -> Option<MonoSolution> {
    let n = coloring.len() as u64;
    let k = eq.coeffs.len();
    let mut values = vec![0u64; k];
    for first in 1..=n {
        let color = coloring.color_of(first).expect("in range");
        let class: Vec<u64> = (1..=n)
            .filter(|&m| coloring.color_of(m) == Some(color))
            .collect();
        values[0] = first;
        let partial = eq.coeffs[0] as i128 * first as i128;
        if extend_solution(eq, coloring, color, &class, &mut values, 1, partial) {
            return Some(MonoSolution { values, color });
        }
    }
    None
}

fn extend_solution(
    eq: &LinearEquation,
    coloring: &Coloring,
    color: u32,
    class: &[u64],
    values: &mut [u64],
    pos: usize,
    partial: i128,
) -> bool {
    let k = eq.coeffs.len();
    let (lo, hi) = (class[0] as i128, *class.last().unwrap() as i128);
    if pos == k - 1 {
        let c = eq.coeffs[pos] as i128;
        if (-partial) % c != 0 {
            return false;
        }
        let x = -partial / c;
        if x < 1 || x > hi || coloring.color_of(x as u64) != Some(color) {
            return false;
        }
        values[pos] = x as u64;
        return true;
    }
    // range of the remaining terms c_j·x_j with x_j ∈ [lo, hi]
    let (mut rest_min, mut rest_max) = (0i128, 0i128);
    for &c in &eq.coeffs[pos..] {
        let (a, b) = (c as i128 * lo, c as i128 * hi);
        rest_min += a.min(b);
        rest_max += a.max(b);
    }
    if -partial < rest_min || -partial > rest_max {
        return false;
    }
    for &x in class {
        values[pos] = x;
        let next = partial + eq.coeffs[pos] as i128 * x as i128;
        if extend_solution(eq, coloring, color, class, values, pos + 1, next) {
            return true;
        }
    }
    false
}

/// Outcome of an exhaustive partition-regularity check on `[1, N]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrCertificate {
    /// Every coloring examined has a monochromatic solution.
    pub regular: bool,
    pub colorings_checked: u64,
    /// First coloring found without a monochromatic solution.
    pub avoiding: Option<Coloring>,
}

/// Enumeration budget for [`exhaustive_pr_check`].
pub const PR_BUDGET: u64 = 1 << 22;

/// Check every `r`-coloring of `[1, N]` for a monochromatic solution. The
/// color of 1 is fixed to 1 since renaming colors preserves solutions.
pub fn exhaustive_pr_check(
    eq: &LinearEquation,
    n: usize,
    r: u32,
) -> Result<PrCertificate, RamseyError> {
    if r == 0 {
        return Err(RamseyError::PreconditionViolated(
            "at least one color is required".into(),
        ));
    }
    let free = n.saturating_sub(1) as u32;
    let total = (r as u64)
        .checked_pow(free)
        .filter(|&t| t <= PR_BUDGET)
        .ok_or_else(|| RamseyError::BudgetExceeded(format!("{r}^{free}")))?;
    let mut colors = vec![1u32; n];
    for index in 0..total {
        let mut rest = index;
        for slot in colors.iter_mut().skip(1) {
            *slot = (rest % r as u64) as u32 + 1;
            rest /= r as u64;
        }
        let coloring = Coloring {
            colors: colors.clone(),
        };
        if find_mono_solution(eq, &coloring).is_none() {
            return Ok(PrCertificate {
                regular: false,
                colorings_checked: index + 1,
                avoiding: Some(coloring),
            });
        }
    }
    Ok(PrCertificate {
        regular: true,
        colorings_checked: total,
        avoiding: None,
    })
}

/// Sums of all nonempty subsets of distinct elements.
pub fn fs(elements: &[u64]) -> Result<BTreeSet<u64>, RamseyError> {
    let distinct: BTreeSet<u64> = elements.iter().copied().collect();
    if distinct.len() > 20 {
        return Err(RamseyError::TooLarge(distinct.len()));
    }
    let mut sums = BTreeSet::new();
    for x in distinct {
        let shifted: Vec<u64> = sums.iter().map(|s| s + x).collect();
        sums.insert(x);
        sums.extend(shifted);
    }
    Ok(sums)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FsWitness {
    pub elements: Vec<u64>,
    pub color: u32,
    pub sums: Vec<u64>,
}

/// A `k`-element set whose `2^k − 1` subset sums are pairwise distinct, lie
/// in `[1, N]` and share one color. Depth-first, smallest candidate first;
/// `None` only means the window holds no such set.
pub fn find_fs_set(coloring: &Coloring, k: usize) -> Option<FsWitness> {
    if k == 0 {
        return None;
    }
    let n = coloring.len() as u64;
    for first in 1..=n {
        let color = coloring.color_of(first).expect("in range");
        let mut chosen = vec![first];
        let mut sums = vec![first];
        if extend_fs(coloring, color, k, &mut chosen, &mut sums) {
            sums.sort_unstable();
            return Some(FsWitness {
                elements: chosen,
                color,
                sums,
            });
        }
    }
    None
}

fn extend_fs(
    coloring: &Coloring,
    color: u32,
    k: usize,
    chosen: &mut Vec<u64>,
    sums: &mut Vec<u64>,
) -> bool {
    if chosen.len() == k {
        return true;
    }
    let n = coloring.len() as u64;
    let last = *chosen.last().unwrap();
    let existing: HashSet<u64> = sums.iter().copied().collect();
    for y in last + 1..=n {
        let mut fresh = Vec::with_capacity(sums.len() + 1);
        fresh.push(y);
        fresh.extend(sums.iter().map(|s| s + y));
        let ok = fresh
            .iter()
            .all(|&s| s <= n && coloring.color_of(s) == Some(color) && !existing.contains(&s));
        if !ok {
            continue;
        }
        let before = sums.len();
        chosen.push(y);
        sums.extend(fresh);
        if extend_fs(coloring, color, k, chosen, sums) {
            return true;
        }
        chosen.pop();
        sums.truncate(before);
    }
    false
}

/// Whether `a`, `b` and `b − a` fall in the same atom of the Boolean algebra
/// generated by `sets`, i.e. `(a, b) ∈ ⋂ Γ(Aᵢ)`.
pub fn gamma_holds(sets: &[BTreeSet<u64>], a: u64, b: u64) -> bool {
    if b <= a || a == 0 {
        return false;
    }
    let sig = |x: u64| sets.iter().map(|s| s.contains(&x)).collect::<Vec<_>>();
    let s = sig(a);
    sig(b) == s && sig(b - a) == s
}

/// Smallest `(a, b)` (ordered by `b`, then `a`) inside `[1, N]` with
/// `a, b, b − a` in one atom of the algebra generated by at most 3 sets.
pub fn gamma_fip_witness(sets: &[BTreeSet<u64>], n: u64) -> Result<(u64, u64), RamseyError> {
    if sets.len() > 3 {
        return Err(RamseyError::TooManySets(sets.len()));
    }
    let atom: Vec<u8> = (0..=n)
        .map(|x| {
            sets.iter()
                .enumerate()
                .fold(0u8, |acc, (i, s)| acc | ((s.contains(&x) as u8) << i))
        })
        .collect();
    for b in 2..=n {
        for a in 1..b {
            let (a_i, b_i, d_i) = (a as usize, b as usize, (b - a) as usize);
            if atom[a_i] == atom[b_i] && atom[d_i] == atom[b_i] {
                return Ok((a, b));
            }
        }
    }
    Err(RamseyError::NotFound)
}

/// `n = 3^v · u` with `3 ∤ u`.
pub fn triadic_split(n: &BigUint) -> Result<(u64, BigUint), RamseyError> {
    triadic_parts(n).ok_or_else(|| RamseyError::PreconditionViolated("n must be at least 1".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub valuation_a: u64,
    pub valuation_b: u64,
    pub valuation_diff: u64,
    /// `j = unit(a) mod 3`.
    pub unit_a_mod3: u8,
    pub unit_diff_mod3: u8,
    pub valuation_preserved: bool,
    pub unit_negated: bool,
    pub statement: String,
}

impl ObstructionReport {
    pub fn confirmed(&self) -> bool {
        self.valuation_preserved && self.unit_negated
    }
}

/// The 3-adic congruence behind the non-existence of `⋆`-idempotents: for
/// `v₃(a) < v₃(b)` and `a < b`, `v₃(b−a) = v₃(a)` and
/// `unit(b−a) ≡ −unit(a) (mod 3)`.
pub fn star_obstruction_check(a: &BigUint, b: &BigUint) -> Result<ObstructionReport, RamseyError> {
    if b <= a {
        return Err(RamseyError::PreconditionViolated(format!(
            "need a < b, got a = {a}, b = {b}"
        )));
    }
    let (va, ua) = triadic_split(a)?;
    let (vb, _) = triadic_split(b)?;
    if va >= vb {
        return Err(RamseyError::PreconditionViolated(format!(
            "need v3(a) < v3(b), got {va} and {vb}"
        )));
    }
    let (vd, ud) = triadic_split(&(b - a))?;
    let j = (ua % 3u32).to_u8().expect("small");
    let jd = (ud % 3u32).to_u8().expect("small");
    let valuation_preserved = vd == va;
    let unit_negated = (j + jd) % 3 == 0;
    let statement = format!(
        "a point u-equivalent to both a and b - a would need unit residue {j} = {jd} (mod 3), \
         impossible since {jd} = -{j} (mod 3) and {j} is nonzero"
    );
    Ok(ObstructionReport {
        valuation_a: va,
        valuation_b: vb,
        valuation_diff: vd,
        unit_a_mod3: j,
        unit_diff_mod3: jd,
        valuation_preserved,
        unit_negated,
        statement,
    })
}
