//! Command dispatch shared by the `hyperset` binary and the tests.
//!
//! Every command yields a [`CommandResult`]: a human-readable report and a
//! JSON machine block. Output depends only on the command's inputs.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::expr::{parse_pair_set, parse_predicate, parse_set, ExprError};
use crate::pairs::{
    canonical_tensor_point, fiber_membership_set, pair_member, tensor_member, PairError,
};
use crate::profinite::{
    hyper_shift, member_set, pseudo_sum_member, star_member, ultrafilter_shift, PointError,
    ProfinitePoint,
};
use crate::ramsey::{
    exhaustive_pr_check, find_fs_set, gamma_fip_witness, gamma_holds, rado_single_pr, three_color,
    verify_coloring, Coloring, FunctionalGraph, LinearEquation, RamseyError,
};
use crate::semilinear::SetError;
use crate::windows::{
    exact_embed_decide, good_start, noncomm_demo, EmbedWitness, WindowError, WindowSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub human: String,
    pub machine: Value,
}

impl CommandResult {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human.clone(),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.machine).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Usage errors exit with 1, domain errors with 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandError {
    Usage(String),
    Domain(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Usage(_) => 1,
            CommandError::Domain(_) => 2,
        }
    }
}

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommandError::Usage(m) => write!(f, "usage error: {m}"),
            CommandError::Domain(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CommandError {}

impl From<ExprError> for CommandError {
    fn from(e: ExprError) -> Self {
        CommandError::Usage(e.to_string())
    }
}

impl From<SetError> for CommandError {
    fn from(e: SetError) -> Self {
        CommandError::Domain(e.to_string())
    }
}

impl From<PointError> for CommandError {
    fn from(e: PointError) -> Self {
        match e {
            PointError::Malformed(_)
            | PointError::ZeroModulus
            | PointError::ResidueOutOfRange { .. } => CommandError::Usage(e.to_string()),
            _ => CommandError::Domain(e.to_string()),
        }
    }
}

impl From<PairError> for CommandError {
    fn from(e: PairError) -> Self {
        match e {
            PairError::Point(p) => p.into(),
            other => CommandError::Domain(other.to_string()),
        }
    }
}

impl From<RamseyError> for CommandError {
    fn from(e: RamseyError) -> Self {
        match e {
            RamseyError::Parse { .. } => CommandError::Usage(e.to_string()),
            _ => CommandError::Domain(e.to_string()),
        }
    }
}

impl From<WindowError> for CommandError {
    fn from(e: WindowError) -> Self {
        CommandError::Domain(e.to_string())
    }
}

/// One invocation. File-based commands carry the file contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Density {
        set: String,
    },
    Shift {
        set: String,
        point: String,
    },
    Embed {
        a: String,
        b: String,
    },
    Psum {
        set: String,
        gamma: String,
        delta: String,
    },
    Star {
        set: String,
        gamma: String,
        delta: String,
    },
    Idem {
        point: String,
    },
    Tensor {
        pair_set: String,
        gamma: String,
        delta: String,
    },
    Color3 {
        graph: String,
    },
    Rado {
        coeffs: String,
    },
    Schur {
        n: usize,
        colors: u32,
        coeffs: Option<String>,
    },
    Hindman {
        coloring: String,
        k: usize,
    },
    BanachStart {
        window: String,
        nu: usize,
    },
    DemoNoncomm {
        nu: String,
        length: usize,
    },
    GammaFip {
        sets: String,
        window: u64,
    },
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn point(text: &str) -> Result<ProfinitePoint, CommandError> {
    Ok(text.parse::<ProfinitePoint>()?)
}

/// Window file: optional `origin <n>` line, then `0`/`1` characters.
pub fn parse_window(text: &str) -> Result<WindowSet, CommandError> {
    let mut origin = BigUint::default();
    let mut bits = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if let Some(rest) = line.strip_prefix("origin") {
            let rest = rest.trim_start_matches(':').trim();
            origin = rest.parse().map_err(|_| {
                CommandError::Usage(format!("line {}: bad origin `{rest}`", idx + 1))
            })?;
            continue;
        }
        for c in line.chars().filter(|c| !c.is_whitespace()) {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(CommandError::Usage(format!(
                        "line {}: unexpected `{other}` in window",
                        idx + 1
                    )))
                }
            }
        }
    }
    Ok(WindowSet::new(origin, bits)?)
}

pub fn execute(command: &Command) -> Result<CommandResult, CommandError> {
    match command {
        Command::Density { set } => density(set),
        Command::Shift { set, point: p } => {
            let a = parse_set(set)?;
            let g = point(p)?;
            let hs = hyper_shift(&a, &g)?;
            let us = ultrafilter_shift(&a, &g)?;
            Ok(CommandResult {
                human: format!(
                    "A = {a}\ngamma = {g}\nhyper-shift A_gamma = {hs}\nultrafilter-shift A - U_gamma = {us}\nequal: {}\n",
                    yes_no(hs == us)
                ),
                machine: json!({
                    "command": "shift",
                    "set": a.to_string(),
                    "point": g.to_string(),
                    "hyper_shift": hs.to_string(),
                    "ultrafilter_shift": us.to_string(),
                    "equal": hs == us,
                }),
            })
        }
        Command::Embed { a, b } => {
            let sa = parse_set(a)?;
            let sb = parse_set(b)?;
            let witness = exact_embed_decide(&sa, &sb);
            let (kind, value) = match witness {
                Some(EmbedWitness::FiniteShift(g)) => (Some("finite-shift"), Some(g)),
                Some(EmbedWitness::Rotation(r)) => (Some("rotation"), Some(r)),
                None => (None, None),
            };
            let witness_text = match witness {
                Some(EmbedWitness::FiniteShift(g)) => format!("A = B - {g}"),
                Some(EmbedWitness::Rotation(r)) => {
                    format!("A = B_gamma for gamma = {r} mod {}", sb.period())
                }
                None => "none".to_string(),
            };
            Ok(CommandResult {
                human: format!(
                    "A = {sa}\nB = {sb}\nA exactly embeddable in B: {}\nwitness: {witness_text}\nBD(A) = {}, BD(B) = {}\n",
                    yes_no(witness.is_some()),
                    sa.banach(),
                    sb.banach()
                ),
                machine: json!({
                    "command": "embed",
                    "a": sa.to_string(),
                    "b": sb.to_string(),
                    "embeddable": witness.is_some(),
                    "witness_kind": kind,
                    "witness_value": value,
                    "banach_a": sa.banach().to_string(),
                    "banach_b": sb.banach().to_string(),
                }),
            })
        }
        Command::Psum { set, gamma, delta } => {
            let a = parse_set(set)?;
            let (g, d) = (point(gamma)?, point(delta)?);
            let member = pseudo_sum_member(&a, &g, &d)?;
            let sum = g.add(&d)?;
            let via_sum = member_set(&a, &sum)?;
            let shifted = hyper_shift(&a, &d)?;
            Ok(CommandResult {
                human: format!(
                    "A = {a}\nA_delta = {shifted}\nA in U_gamma (+) U_delta (A_delta in U_gamma): {}\nA in U_(gamma+delta) with gamma+delta = {sum}: {}\n",
                    yes_no(member),
                    yes_no(via_sum)
                ),
                machine: json!({
                    "command": "psum",
                    "set": a.to_string(),
                    "gamma": g.to_string(),
                    "delta": d.to_string(),
                    "hyper_shift_delta": shifted.to_string(),
                    "member": member,
                    "sum_point": sum.to_string(),
                    "member_at_sum": via_sum,
                }),
            })
        }
        Command::Star { set, gamma, delta } => {
            let a = parse_set(set)?;
            let (g, d) = (point(gamma)?, point(delta)?);
            let member = star_member(&a, &g, &d)?;
            let diff = d.sub(&g)?;
            let via_diff = member_set(&a, &diff)?;
            Ok(CommandResult {
                human: format!(
                    "A = {a}\nA in U_gamma * U_delta ({{n : A+n in U_delta}} in U_gamma): {}\nA in U_(delta-gamma) with delta-gamma = {diff}: {}\n",
                    yes_no(member),
                    yes_no(via_diff)
                ),
                machine: json!({
                    "command": "star",
                    "set": a.to_string(),
                    "gamma": g.to_string(),
                    "delta": d.to_string(),
                    "member": member,
                    "difference_point": diff.to_string(),
                    "member_at_difference": via_diff,
                }),
            })
        }
        Command::Idem { point: p } => {
            let g = point(p)?;
            let idem = g.is_idempotent();
            Ok(CommandResult {
                human: format!(
                    "{g}\nidempotent at depth {}: {}\n",
                    g.modulus(),
                    yes_no(idem)
                ),
                machine: json!({
                    "command": "idem",
                    "point": g.to_string(),
                    "depth": g.modulus(),
                    "idempotent": idem,
                }),
            })
        }
        Command::Tensor {
            pair_set,
            gamma,
            delta,
        } => {
            let x = parse_pair_set(pair_set)?;
            let (g, d) = (point(gamma)?, point(delta)?);
            let fibers = fiber_membership_set(&x, &d)?;
            let member = tensor_member(&x, &g, &d)?;
            let canonical = pair_member(&x, &canonical_tensor_point(&g, &d)?)?;
            Ok(CommandResult {
                human: format!(
                    "X = {x}\n{{n : X_n in U_delta}} = {fibers}\nX in U_gamma (x) U_delta: {}\nX in U_(gamma,delta) at the canonical tensor point: {}\n",
                    yes_no(member),
                    yes_no(canonical)
                ),
                machine: json!({
                    "command": "tensor",
                    "pair_set": x.to_string(),
                    "gamma": g.to_string(),
                    "delta": d.to_string(),
                    "fiber_set": fibers.to_string(),
                    "member": member,
                    "canonical_point_member": canonical,
                }),
            })
        }
        Command::Color3 { graph } => {
            let g: FunctionalGraph = graph.parse()?;
            let coloring = three_color(&g);
            let valid = verify_coloring(&g, &coloring)?;
            Ok(CommandResult {
                human: format!(
                    "vertices: {}\nvalid: {}\ncoloring: {coloring}\n",
                    g.len(),
                    yes_no(valid)
                ),
                machine: json!({
                    "command": "color3",
                    "vertices": g.len(),
                    "valid": valid,
                    "coloring": coloring.colors(),
                }),
            })
        }
        Command::Rado { coeffs } => {
            let eq: LinearEquation = coeffs.parse()?;
            let pr = rado_single_pr(&eq)?;
            Ok(CommandResult {
                human: format!(
                    "equation coefficients: {eq}\nsome nonempty subset of coefficients sums to 0: {}\npartition regular: {}\n",
                    yes_no(pr),
                    yes_no(pr)
                ),
                machine: json!({
                    "command": "rado",
                    "coefficients": eq.coeffs(),
                    "partition_regular": pr,
                }),
            })
        }
        Command::Schur { n, colors, coeffs } => {
            let eq = match coeffs {
                Some(c) => c.parse()?,
                None => LinearEquation::schur(),
            };
            let cert = exhaustive_pr_check(&eq, *n, *colors)?;
            let avoiding = cert.avoiding.as_ref().map(|c| c.colors().to_vec());
            Ok(CommandResult {
                human: format!(
                    "equation coefficients: {eq}\nevery {colors}-coloring of [1,{n}] has a monochromatic solution: {}\ncolorings checked (color of 1 fixed): {}\navoiding coloring: {}\n",
                    yes_no(cert.regular),
                    cert.colorings_checked,
                    cert.avoiding.map_or("none".to_string(), |c| c.to_string())
                ),
                machine: json!({
                    "command": "schur",
                    "coefficients": eq.coeffs(),
                    "n": n,
                    "colors": colors,
                    "regular": cert.regular,
                    "colorings_checked": cert.colorings_checked,
                    "avoiding": avoiding,
                }),
            })
        }
        Command::Hindman { coloring, k } => {
            let c: Coloring = coloring.parse()?;
            let found = find_fs_set(&c, *k);
            let human = match &found {
                Some(w) => format!(
                    "domain: [1,{}]\nFS set of size {k}: {:?}\ncolor: {}\nsums: {:?}\n",
                    c.len(),
                    w.elements,
                    w.color,
                    w.sums
                ),
                None => format!(
                    "domain: [1,{}]\nno monochromatic FS set of size {k} in the window\n",
                    c.len()
                ),
            };
            Ok(CommandResult {
                human,
                machine: json!({
                    "command": "hindman",
                    "domain": c.len(),
                    "k": k,
                    "found": found.is_some(),
                    "elements": found.as_ref().map(|w| w.elements.clone()),
                    "color": found.as_ref().map(|w| w.color),
                    "sums": found.as_ref().map(|w| w.sums.clone()),
                }),
            })
        }
        Command::BanachStart { window, nu } => {
            let w = parse_window(window)?;
            let start = good_start(&w, *nu)?;
            let bound = format!("{}/{}", w.count() as i64 - *nu as i64, w.len());
            let mut hits = 0;
            let prefixes: Vec<String> = (1..=*nu)
                .map(|i| {
                    hits += w.bits()[start + i - 1] as u64;
                    num_rational::Ratio::new(hits, i as u64).to_string()
                })
                .collect();
            Ok(CommandResult {
                human: format!(
                    "window length N = {}, hits = {}, nu = {nu}\nbound a - nu/N = {bound}\ngood start offset: {start} (position {})\nprefix densities: {}\n",
                    w.len(),
                    w.count(),
                    w.origin() + start,
                    prefixes.join(" ")
                ),
                machine: json!({
                    "command": "banach-start",
                    "length": w.len(),
                    "hits": w.count(),
                    "nu": nu,
                    "bound": bound,
                    "start": start,
                    "position": (w.origin() + start).to_string(),
                    "prefix_densities": prefixes,
                }),
            })
        }
        Command::DemoNoncomm { nu, length } => {
            let nu: BigUint = nu
                .trim()
                .parse()
                .map_err(|_| CommandError::Usage(format!("bad natural number `{nu}`")))?;
            let r = noncomm_demo(&nu, *length)?;
            Ok(CommandResult {
                human: format!(
                    "A = union of [n^2,(n+1)^2) over even n\nshift at {} (nu^2):     {} all in A: {}\nshift at {} ((nu+1)^2): {} none in A: {}\n",
                    r.full_at,
                    r.full_window,
                    yes_no(r.full_window.all_true()),
                    r.empty_at,
                    r.empty_window,
                    yes_no(r.empty_window.all_false())
                ),
                machine: json!({
                    "command": "demo-noncomm",
                    "nu": r.nu.to_string(),
                    "length": r.length,
                    "full_at": r.full_at.to_string(),
                    "empty_at": r.empty_at.to_string(),
                    "full_window": r.full_window.to_string(),
                    "empty_window": r.empty_window.to_string(),
                    "dichotomy": r.dichotomy_holds(),
                }),
            })
        }
        Command::GammaFip { sets, window } => {
            let mut family = Vec::new();
            let mut texts = Vec::new();
            for line in sets.lines() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let p = parse_predicate(line)?;
                family.push(
                    (1..=*window)
                        .filter(|&n| p.contains_u64(n))
                        .collect::<BTreeSet<u64>>(),
                );
                texts.push(line.to_string());
            }
            let (a, b) = gamma_fip_witness(&family, *window)?;
            let verified = gamma_holds(&family, a, b);
            Ok(CommandResult {
                human: format!(
                    "sets: {}\nwindow: [1,{window}]\nwitness (a, b) = ({a}, {b}); a, b, b-a = {}, {}, {} share one atom: {}\n",
                    texts.len(),
                    a,
                    b,
                    b - a,
                    yes_no(verified)
                ),
                machine: json!({
                    "command": "gamma-fip",
                    "sets": texts,
                    "window": window,
                    "a": a,
                    "b": b,
                    "verified": verified,
                }),
            })
        }
    }
}

fn density(text: &str) -> Result<CommandResult, CommandError> {
    let a = parse_set(text)?;
    let rotation = a.best_rotation().ok();
    Ok(CommandResult {
        human: format!(
            "A = {a}\nschnirelmann sigma = {}\nasymptotic d = {}\nlower density = {}\nupper density = {}\nbanach BD = {}\nbest rotation: {}\n",
            a.schnirelmann(),
            a.asymptotic(),
            a.lower_density(),
            a.upper_density(),
            a.banach(),
            rotation.map_or("none".to_string(), |r| r.to_string())
        ),
        machine: json!({
            "command": "density",
            "set": a.to_string(),
            "schnirelmann": a.schnirelmann().to_string(),
            "asymptotic": a.asymptotic().to_string(),
            "lower": a.lower_density().to_string(),
            "upper": a.upper_density().to_string(),
            "banach": a.banach().to_string(),
            "best_rotation": rotation,
        }),
    })
}

/// Keys every machine block of a command must carry.
pub fn schema(command: &str) -> &'static [&'static str] {
    match command {
        "density" => &[
            "command",
            "set",
            "schnirelmann",
            "asymptotic",
            "lower",
            "upper",
            "banach",
            "best_rotation",
        ],
        "shift" => &[
            "command",
            "set",
            "point",
            "hyper_shift",
            "ultrafilter_shift",
            "equal",
        ],
        "embed" => &[
            "command",
            "a",
            "b",
            "embeddable",
            "witness_kind",
            "witness_value",
            "banach_a",
            "banach_b",
        ],
        "psum" => &[
            "command",
            "set",
            "gamma",
            "delta",
            "hyper_shift_delta",
            "member",
            "sum_point",
            "member_at_sum",
        ],
        "star" => &[
            "command",
            "set",
            "gamma",
            "delta",
            "member",
            "difference_point",
            "member_at_difference",
        ],
        "idem" => &["command", "point", "depth", "idempotent"],
        "tensor" => &[
            "command",
            "pair_set",
            "gamma",
            "delta",
            "fiber_set",
            "member",
            "canonical_point_member",
        ],
        "color3" => &["command", "vertices", "valid", "coloring"],
        "rado" => &["command", "coefficients", "partition_regular"],
        "schur" => &[
            "command",
            "coefficients",
            "n",
            "colors",
            "regular",
            "colorings_checked",
            "avoiding",
        ],
        "hindman" => &[
            "command", "domain", "k", "found", "elements", "color", "sums",
        ],
        "banach-start" => &[
            "command",
            "length",
            "hits",
            "nu",
            "bound",
            "start",
            "position",
            "prefix_densities",
        ],
        "demo-noncomm" => &[
            "command",
            "nu",
            "length",
            "full_at",
            "empty_at",
            "full_window",
            "empty_window",
            "dichotomy",
        ],
        "gamma-fip" => &["command", "sets", "window", "a", "b", "verified"],
        _ => &[],
    }
}

/// Whether a machine block has exactly the keys declared for its command.
pub fn validate_machine(machine: &Value) -> bool {
    let Some(obj) = machine.as_object() else {
        return false;
    };
    let Some(name) = obj.get("command").and_then(Value::as_str) else {
        return false;
    };
    let keys = schema(name);
    !keys.is_empty() && obj.len() == keys.len() && keys.iter().all(|k| obj.contains_key(*k))
}
