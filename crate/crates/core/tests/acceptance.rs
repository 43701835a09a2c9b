//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p hyperset --test acceptance`. Criteria listed in
//! `KNOWN_FAILURES` cannot be met as stated; they still run in full and
//! print FAIL, but do not fail the process.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{count_range, random_periodic, random_point, random_set};
use hyperset::commands::{execute, Command, Format};
use hyperset::expr::{parse_expr, parse_set, SetExpr};
use hyperset::pairs::{pair_member, tensor_member, PairDiff, PairPoint, PairSet};
use hyperset::profinite::{
    hyper_shift, member_set, pseudo_sum_member, star_member, ultrafilter_shift, ProfinitePoint,
};
use hyperset::ramsey::{
    exhaustive_pr_check, find_fs_set, find_mono_solution, fs, gamma_fip_witness, gamma_holds,
    rado_single_pr, star_obstruction_check, three_color, verify_coloring, Coloring,
    FunctionalGraph, LinearEquation,
};
use hyperset::semilinear::{Density, SemilinearSet};
use hyperset::windows::{
    finite_hyper_shift, good_start, good_start_holds, noncomm_demo, PredicateSet, WindowSet,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2024;
const MAX_PERIOD: u64 = 36;
const KNOWN_FAILURES: &[u32] = &[11];
const MEDIAN_COLORING_LIMIT: Duration = Duration::from_secs(1);

type Outcome = Result<String, String>;

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ (criterion << 32))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_hyper_shift_coherence() -> Outcome {
    let mut rng = rng(1);
    for _ in 0..500 {
        let a = random_set(&mut rng, MAX_PERIOD);
        let b = random_set(&mut rng, MAX_PERIOD);
        let n = rng.gen_range(0..50);
        let g = random_point(&mut rng, &[&a, &b]);
        let hs = |s: &SemilinearSet| hyper_shift(s, &g).map_err(|e| e.to_string());
        let (ag, bg) = (hs(&a)?, hs(&b)?);
        ensure(hs(&a.intersect(&b))? == ag.intersect(&bg), || {
            format!("meet: A={a} B={b} {g}")
        })?;
        ensure(hs(&a.union(&b))? == ag.union(&bg), || {
            format!("join: A={a} B={b} {g}")
        })?;
        ensure(hs(&a.complement())? == ag.complement(), || {
            format!("complement: A={a} {g}")
        })?;
        ensure(hs(&a.shift_left(n))? == ag.shift_left(n), || {
            format!("shift: A={a} n={n} {g}")
        })?;
    }
    Ok("500 instances, exact".into())
}

fn c2_shift_equality() -> Outcome {
    let mut rng = rng(2);
    for _ in 0..500 {
        let a = random_set(&mut rng, MAX_PERIOD);
        let g = random_point(&mut rng, &[&a]);
        let h = hyper_shift(&a, &g).map_err(|e| e.to_string())?;
        let u = ultrafilter_shift(&a, &g).map_err(|e| e.to_string())?;
        ensure(h == u, || format!("A={a} {g}: {h} vs {u}"))?;
    }
    Ok("500 instances, exact".into())
}

fn c3_finite_surrogate_bridge() -> Outcome {
    let mut rng = rng(3);
    for _ in 0..200 {
        let a = random_set(&mut rng, MAX_PERIOD);
        let p = random_point(&mut rng, &[&a]);
        let g =
            BigUint::from(p.residue()) + BigUint::from(p.modulus()) * BigUint::from(1_000_000u32);
        let w = finite_hyper_shift(&PredicateSet::Semilinear(a.clone()), &g, 200)
            .map_err(|e| e.to_string())?;
        let h = hyper_shift(&a, &p).map_err(|e| e.to_string())?;
        ensure(
            (0..200).all(|n| w.bits()[n as usize] == h.contains(n)),
            || format!("A={a} {p}"),
        )?;
    }
    Ok("200 instances on [0,200)".into())
}

fn c4_density_formulas() -> Outcome {
    let mut rng = rng(4);
    for _ in 0..200 {
        let a = random_set(&mut rng, MAX_PERIOD);
        let (t, p) = (a.threshold(), a.period());
        let n = 10 * (t + p);
        // Tail density of one full period past the threshold.
        let limit = Density::new(count_range(&a, t, t + p), p);
        let prefix_min = (1..=n)
            .map(|k| Density::new(count_range(&a, 1, k + 1), k))
            .min()
            .unwrap();
        let sigma = prefix_min.min(limit);
        ensure(a.schnirelmann() == sigma, || {
            format!("sigma A={a}: {} vs {sigma}", a.schnirelmann())
        })?;
        let tol = Density::new(p, n);
        let dist = |x: Density, y: Density| if x > y { x - y } else { y - x };
        let d_est = Density::new(count_range(&a, n, 2 * n), n);
        ensure(dist(d_est, a.asymptotic()) <= tol, || {
            format!("d A={a}: est {d_est}")
        })?;
        let bd_est = (t..t + p)
            .map(|k| Density::new(count_range(&a, k, k + n), n))
            .max()
            .unwrap();
        ensure(dist(bd_est, a.banach()) <= tol, || {
            format!("BD A={a}: est {bd_est}")
        })?;
        ensure(a.banach() == limit && a.asymptotic() == limit, || {
            format!("w/p A={a}")
        })?;
    }
    Ok("200 sets; sigma exact, d and BD within p/n".into())
}

fn c5_banach_rotation() -> Outcome {
    let mut rng = rng(5);
    for _ in 0..200 {
        let a = random_periodic(&mut rng, MAX_PERIOD);
        let r = a.best_rotation().map_err(|e| e.to_string())?;
        let rotated = a.rotate(r);
        let target = Density::new(a.pattern().len() as u64, a.period());
        let oracle = (1..=4 * a.period())
            .map(|k| Density::new(count_range(&rotated, 1, k + 1), k))
            .min()
            .unwrap();
        ensure(rotated.schnirelmann() == target && oracle >= target, || {
            format!(
                "A={a} r={r}: sigma {} target {target}",
                rotated.schnirelmann()
            )
        })?;
    }
    Ok("200 patterns".into())
}

fn c6_good_start() -> Outcome {
    let mut rng = rng(6);
    let (len, nu) = (1000usize, 25usize);
    for _ in 0..100 {
        let fill: f64 = rng.gen_range(0.05..0.95);
        let bits: Vec<bool> = (0..len).map(|_| rng.gen_bool(fill)).collect();
        let w = WindowSet::new(BigUint::from(rng.gen::<u64>()), bits.clone()).unwrap();
        if w.count() <= nu {
            continue;
        }
        let g = good_start(&w, nu).map_err(|e| format!("fill {fill}: {e}"))?;
        let count = w.count() as i64;
        let mut hits = 0i64;
        for i in 1..=nu {
            ensure(g + i <= len, || format!("offset {g} overruns"))?;
            hits += bits[g + i - 1] as i64;
            ensure(hits * len as i64 >= i as i64 * (count - nu as i64), || {
                format!("prefix {i} at {g}")
            })?;
        }
        ensure((0..=len - nu).any(|s| good_start_holds(&w, nu, s)), || {
            "scan disagrees".into()
        })?;
    }
    Ok("100 windows, N=1000, nu=25".into())
}

fn c7_pseudo_sums() -> Outcome {
    let mut rng = rng(7);
    for _ in 0..500 {
        let a = random_set(&mut rng, MAX_PERIOD);
        let g = random_point(&mut rng, &[&a]);
        let d = ProfinitePoint::new(g.modulus(), rng.gen_range(0..g.modulus())).unwrap();
        let s = g.add(&d).unwrap();
        let ad = hyper_shift(&a, &d).unwrap();
        let lhs = pseudo_sum_member(&a, &g, &d).unwrap();
        ensure(
            lhs == member_set(&a, &s).unwrap() && lhs == member_set(&ad, &g).unwrap(),
            || format!("membership A={a} {g} {d}"),
        )?;
        ensure(
            hyper_shift(&a, &s).unwrap() == hyper_shift(&ad, &g).unwrap(),
            || format!("shift A={a} {g} {d}"),
        )?;
    }
    Ok("500 instances, exact".into())
}

fn c8_tensor_bridges() -> Outcome {
    let mut rng = rng(8);
    for _ in 0..300 {
        let a = random_set(&mut rng, MAX_PERIOD);
        let g = random_point(&mut rng, &[&a]);
        let d = ProfinitePoint::new(g.modulus(), rng.gen_range(0..g.modulus())).unwrap();
        let sum = tensor_member(&PairSet::SumBand(a.clone()), &g, &d).unwrap();
        ensure(sum == pseudo_sum_member(&a, &g, &d).unwrap(), || {
            format!("sum band A={a} {g} {d}")
        })?;
        let diff = tensor_member(&PairSet::DiffBand(a.clone()), &g, &d).unwrap();
        ensure(diff == star_member(&a, &g, &d).unwrap(), || {
            format!("diff band A={a} {g} {d}")
        })?;
        ensure(
            tensor_member(&PairSet::UpperTriangle, &g, &d).unwrap(),
            || format!("delta+ {g} {d}"),
        )?;
        let diag = PairPoint::new(g, g, PairDiff::Zero).unwrap();
        ensure(
            !pair_member(&PairSet::UpperTriangle, &diag).unwrap(),
            || format!("diagonal {g}"),
        )?;
    }
    Ok("300 instances".into())
}

fn c9_idempotency() -> Outcome {
    let mut rng = rng(9);
    for _ in 0..200 {
        let a = random_set(&mut rng, MAX_PERIOD);
        let m = a.period() * rng.gen_range(1..=3);
        let g = ProfinitePoint::new(m, 0).unwrap();
        let ag = hyper_shift(&a, &g).unwrap();
        ensure(ag == hyper_shift(&ag, &g).unwrap(), || format!("A={a} {g}"))?;
        if member_set(&a, &g).unwrap() {
            ensure(!a.intersect(&ag).is_empty(), || {
                format!("A={a} {g} meets nothing")
            })?;
        }
    }
    for _ in 0..200 {
        let m = rng.gen_range(2..=MAX_PERIOD);
        let g = ProfinitePoint::new(m, rng.gen_range(1..m)).unwrap();
        let violated = (0..m).any(|k| {
            let a = SemilinearSet::residue_class(k, m).unwrap();
            let ag = hyper_shift(&a, &g).unwrap();
            ag != hyper_shift(&ag, &g).unwrap()
        });
        ensure(violated, || format!("no violation found for {g}"))?;
    }
    Ok("200 idempotent points hold, 200 non-idempotent points violated".into())
}

fn schur_triple(colors: &[u32]) -> bool {
    let n = colors.len();
    (1..=n).any(|x| {
        (x..=n).any(|y| {
            x + y <= n && colors[x - 1] == colors[y - 1] && colors[x - 1] == colors[x + y - 1]
        })
    })
}

fn c10_schur() -> Outcome {
    let cert = exhaustive_pr_check(&LinearEquation::schur(), 5, 2).map_err(|e| e.to_string())?;
    ensure(cert.regular, || {
        "exhaustive check found an avoiding coloring of [1,5]".into()
    })?;
    let all = (0..32u32)
        .filter(|mask| schur_triple(&(0..5).map(|i| (mask >> i) & 1).collect::<Vec<_>>()))
        .count();
    ensure(all == 32, || {
        format!("only {all} of 32 colorings of [1,5] have a triple")
    })?;
    let stored = Coloring::new(vec![1, 2, 2, 1]).unwrap();
    ensure(
        find_mono_solution(&LinearEquation::schur(), &stored).is_none(),
        || "{1,4}/{2,3} has a solution".into(),
    )?;
    ensure(!schur_triple(stored.colors()), || {
        "oracle finds a triple in {1,4}/{2,3}".into()
    })?;
    Ok("[1,5] regular over all 32 colorings; {1,4}/{2,3} avoids".into())
}

fn c11_rado_fixtures() -> Outcome {
    let schur_like = LinearEquation::new(vec![1, -1, -1]).unwrap();
    ensure(rado_single_pr(&schur_like).unwrap(), || {
        "x - y = z not regular".into()
    })?;
    let eq = LinearEquation::new(vec![1, 1, -3]).unwrap();
    ensure(!rado_single_pr(&eq).unwrap(), || {
        "x + y = 3z regular".into()
    })?;
    // An avoiding 2-coloring of [1,20] is sought exhaustively.
    let cert = exhaustive_pr_check(&eq, 20, 2).map_err(|e| e.to_string())?;
    match cert.avoiding {
        Some(c) if find_mono_solution(&eq, &c).is_none() => Ok(format!("avoiding 2-coloring of [1,20]: {c}")),
        _ => Err(format!(
            "no 2-coloring of [1,20] avoids x + y = 3z ({} colorings checked); non-regularity needs 3 colors",
            cert.colorings_checked
        )),
    }
}

fn c12_three_coloring() -> Outcome {
    let mut rng = rng(12);
    let n = 100_000usize;
    let mut times = Vec::new();
    for _ in 0..100 {
        let map: Vec<usize> = (0..n)
            .map(|i| {
                let j = rng.gen_range(0..n - 1);
                if j >= i {
                    j + 1
                } else {
                    j
                }
            })
            .collect();
        let g = FunctionalGraph::new(map).unwrap();
        let start = Instant::now();
        let c = three_color(&g);
        times.push(start.elapsed());
        ensure(
            verify_coloring(&g, &c).unwrap() && c.num_colors() <= 3,
            || "invalid coloring".into(),
        )?;
    }
    times.sort();
    let median = times[times.len() / 2];
    ensure(median < MEDIAN_COLORING_LIMIT, || {
        format!("median {median:?}")
    })?;
    Ok(format!("100 graphs, N=1e5, median {median:?}"))
}

fn c13_finite_sums() -> Outcome {
    let mut rng = rng(13);
    for _ in 0..100 {
        let k = rng.gen_range(1..=10);
        let xs: Vec<u64> = (0..k).map(|_| rng.gen_range(1..1000)).collect();
        let distinct: Vec<u64> = xs
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let oracle: BTreeSet<u64> = (1u32..1 << distinct.len())
            .map(|mask| {
                (0..distinct.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| distinct[i])
                    .sum()
            })
            .collect();
        ensure(fs(&xs).unwrap() == oracle, || format!("FS({xs:?})"))?;
    }
    let ones = Coloring::constant(7);
    let w = find_fs_set(&ones, 3).ok_or("no FS set in the all-one coloring of [1,7]")?;
    let sums = fs(&w.elements).unwrap();
    ensure(
        sums.len() == 7 && sums.iter().all(|&s| ones.color_of(s) == Some(1)),
        || format!("{:?}", w.elements),
    )?;
    Ok(format!(
        "100 random X; all-one [1,7] gives X = {:?}",
        w.elements
    ))
}

fn c14_gamma_fip() -> Outcome {
    let mut rng = rng(14);
    let mut worst = 0;
    for _ in 0..100 {
        let family: Vec<BTreeSet<u64>> = (0..2)
            .map(|_| (1..=100).filter(|_| rng.gen_bool(0.5)).collect())
            .collect();
        let (a, b) = gamma_fip_witness(&family, 100).map_err(|e| e.to_string())?;
        ensure(gamma_holds(&family, a, b), || format!("({a},{b}) fails"))?;
        let sig = |x: u64| family.iter().map(|s| s.contains(&x)).collect::<Vec<_>>();
        ensure(a < b && sig(a) == sig(b) && sig(a) == sig(b - a), || {
            format!("oracle rejects ({a},{b})")
        })?;
        worst = worst.max(b);
    }
    ensure(worst <= 45, || format!("witness beyond 45: {worst}"))?;
    Ok(format!("100 families, largest b = {worst}"))
}

fn c15_triadic_obstruction() -> Outcome {
    let mut rng = rng(15);
    let mut done = 0;
    while done < 1000 {
        let a: u64 = rng.gen_range(1..1_000_000_000);
        let b: u64 = rng.gen_range(a + 1..2_000_000_000);
        let v = |mut x: u64| {
            let mut k = 0;
            while x % 3 == 0 {
                x /= 3;
                k += 1;
            }
            (k, x)
        };
        let ((va, ua), (vb, _)) = (v(a), v(b));
        if va >= vb {
            continue;
        }
        done += 1;
        let (vd, ud) = v(b - a);
        ensure(vd == va && (ua + ud) % 3 == 0, || {
            format!("oracle fails at a={a} b={b}")
        })?;
        let r = star_obstruction_check(&BigUint::from(a), &BigUint::from(b))
            .map_err(|e| e.to_string())?;
        ensure(r.confirmed() && r.valuation_diff == vd, || {
            format!("a={a} b={b}")
        })?;
    }
    Ok("1000 pairs".into())
}

fn c16_noncomm_demo() -> Outcome {
    let r = noncomm_demo(&BigUint::from(10u32), 21).map_err(|e| e.to_string())?;
    ensure(
        r.full_at == BigUint::from(100u32) && r.full_window.all_true(),
        || "window at 100".into(),
    )?;
    ensure(
        r.empty_at == BigUint::from(121u32) && r.empty_window.all_false(),
        || "window at 121".into(),
    )?;
    Ok("all true at 100, all false at 121".into())
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> SetExpr {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..5) {
            0 => {
                let xs: BTreeSet<u64> = (0..rng.gen_range(1..5))
                    .map(|_| rng.gen_range(0..30))
                    .collect();
                SetExpr::Finite(xs.into_iter().collect())
            }
            1 => {
                let m = rng.gen_range(1..13);
                SetExpr::Residue(rng.gen_range(0..m), m)
            }
            2 => {
                let a = rng.gen_range(0..20);
                SetExpr::Interval(a, a + rng.gen_range(0..15))
            }
            3 => SetExpr::Naturals,
            _ => SetExpr::Empty,
        };
    }
    let sub = |rng: &mut ChaCha8Rng| Box::new(random_expr(rng, depth - 1));
    match rng.gen_range(0..5) {
        0 => SetExpr::Not(sub(rng)),
        1 => SetExpr::And(sub(rng), sub(rng)),
        2 => SetExpr::Or(sub(rng), sub(rng)),
        3 => SetExpr::ShiftLeft(sub(rng), rng.gen_range(0..10)),
        _ => SetExpr::ShiftRight(sub(rng), rng.gen_range(0..10)),
    }
}

fn c17_cli() -> Outcome {
    let mut rng = rng(17);
    for _ in 0..200 {
        let e = random_expr(&mut rng, 4);
        let text = e.to_string();
        let back = parse_expr(&text).map_err(|err| format!("`{text}`: {err}"))?;
        ensure(back == e, || format!("AST round trip `{text}`"))?;
        let value = e.eval().map_err(|err| err.to_string())?;
        let canon = parse_set(&value.to_string()).map_err(|err| format!("`{value}`: {err}"))?;
        ensure(canon == value, || format!("canonical round trip `{value}`"))?;
    }
    let commands = [
        Command::Density {
            set: "0%3 | {5}".into(),
        },
        Command::Shift {
            set: "0%3".into(),
            point: "point 6:1".into(),
        },
        Command::Embed {
            a: "1%3".into(),
            b: "0%3".into(),
        },
        Command::Psum {
            set: "1%3".into(),
            gamma: "point 6:1".into(),
            delta: "point 6:5".into(),
        },
        Command::Star {
            set: "1%3".into(),
            gamma: "point 6:1".into(),
            delta: "point 6:5".into(),
        },
        Command::Idem {
            point: "point 12:0".into(),
        },
        Command::Tensor {
            pair_set: "delta+".into(),
            gamma: "point 6:1".into(),
            delta: "point 6:2".into(),
        },
        Command::Color3 {
            graph: "0 -> 1\n1 -> 2\n2 -> 0\n".into(),
        },
        Command::Rado {
            coeffs: "1,1,-3".into(),
        },
        Command::Schur {
            n: 5,
            colors: 2,
            coeffs: None,
        },
        Command::Hindman {
            coloring: "1 1 1 1 1 1 1".into(),
            k: 3,
        },
        Command::BanachStart {
            window: "0110101101".into(),
            nu: 3,
        },
        Command::DemoNoncomm {
            nu: "10".into(),
            length: 21,
        },
        Command::GammaFip {
            sets: "0%2\n[1,40)\n".into(),
            window: 100,
        },
    ];
    for c in &commands {
        for f in [Format::Human, Format::Json] {
            let a = execute(c).map_err(|e| format!("{c:?}: {e}"))?.render(f);
            let b = execute(c).map_err(|e| format!("{c:?}: {e}"))?.render(f);
            ensure(a.as_bytes() == b.as_bytes(), || {
                format!("{c:?} not deterministic")
            })?;
        }
    }
    Ok(format!(
        "200 expressions round-trip; {} commands byte-identical",
        commands.len()
    ))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 17] = [
        (1, "hyper-shift coherence", c1_hyper_shift_coherence),
        (2, "shift equality", c2_shift_equality),
        (3, "finite-surrogate bridge", c3_finite_surrogate_bridge),
        (4, "density formulas", c4_density_formulas),
        (5, "Banach density rotation", c5_banach_rotation),
        (6, "good start", c6_good_start),
        (7, "pseudo-sum identities", c7_pseudo_sums),
        (8, "tensor bridges", c8_tensor_bridges),
        (9, "idempotency", c9_idempotency),
        (10, "Schur certificate", c10_schur),
        (11, "Rado criterion fixtures", c11_rado_fixtures),
        (12, "3-coloring", c12_three_coloring),
        (13, "finite sums", c13_finite_sums),
        (14, "Gamma-FIP witnesses", c14_gamma_fip),
        (15, "3-adic obstruction", c15_triadic_obstruction),
        (16, "noncommutativity demo", c16_noncomm_demo),
        (17, "CLI round trip and determinism", c17_cli),
    ];
    let total = Instant::now();
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[{id:>2}] PASS {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                let known = KNOWN_FAILURES.contains(&id);
                let tag = if known { " (known)" } else { "" };
                println!("[{id:>2}] FAIL{tag} {name}: {detail} ({secs:.2}s)");
                if !known {
                    unexpected.push(id);
                }
            }
        }
    }
    println!("total {:.2}s", total.elapsed().as_secs_f64());
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
