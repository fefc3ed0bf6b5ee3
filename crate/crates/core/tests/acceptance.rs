//! Acceptance suite: one check per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the report.

use std::path::PathBuf;
use std::process::Command;

use barrier_core::oracle::{best_subset_lifetime, grid_best_lifetime, grid_prefix_trace, GridConfig, SubsetPredicate};
use barrier_core::{
    decide, decide_fixed, gen_partition_bcfr, io, maximize_constrained, maximize_exhaustive, optimal_travel,
    random_instance, solve_dynamic_fixed, solve_dynamic_variable, solve_endpoint, solve_static_fixed, verify_solution,
    Config, Instance, MoveCost, OrderConstraint, RadiusKind, RandomParams, Sensor,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Solver accuracy on lifetimes.
const EPS: f64 = 1e-6;
/// Closed-form reproduction and argmax agreement.
const CLOSED_FORM_TOL: f64 = 1e-9;
/// Witness placement agreement for the two-sensor instance.
const WITNESS_TOL: f64 = 1e-5;
/// Grid spacing of the deployment oracle.
const GRID_STEP: f64 = 1.0 / 128.0;
/// Largest acceptable median gap between exhaustive search and the grid oracle.
const GRID_MEDIAN_GAP: f64 = 0.05;
/// Realized-lifetime slack for decision witnesses.
const WITNESS_LIFETIME_TOL: f64 = 1e-9;
/// Coverage tolerance handed to `verify_solution`.
const COVER_TOL: f64 = 1e-9;
/// Grid spacing and agreement for covered-prefix traces.
const TRACE_STEP: f64 = 1e-4;
const TRACE_TOL: f64 = 1e-3 + EPS;

type Outcome = Result<String, String>;

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + tag)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cfg() -> Config {
    Config::with_epsilon(EPS)
}

fn variable(alpha: f64, a: f64, xb: &[(f64, f64)]) -> Instance {
    Instance::new(alpha, MoveCost::Finite(a), xb.iter().map(|&(x, b)| Sensor::variable(x, b)).collect()).unwrap()
}

fn random_order(n: usize, rng: &mut ChaCha8Rng) -> OrderConstraint {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    OrderConstraint::new(perm).unwrap()
}

fn fixed_params(alpha: f64) -> RandomParams {
    RandomParams {
        alpha,
        move_cost: 1.0,
        battery: (0.2, 2.0),
        radius: (0.1, 0.4),
        endpoints_only: false,
    }
}

fn variable_params(alpha: f64) -> RandomParams {
    RandomParams {
        alpha,
        move_cost: 1.0,
        battery: (0.1, 1.5),
        ..RandomParams::default()
    }
}

/// `g(d1) - g(d2)` for the right reach `g(d) = d + ((b - a|d|)/t)^(1/alpha)`,
/// evaluated without cancellation so the sign is reliable near the maximum.
fn reach_difference(d1: f64, d2: f64, b: f64, a: f64, alpha: f64, t: f64) -> f64 {
    let c = |d: f64| ((b - a * d.abs()) / t).max(0.0);
    let (c1, c2) = (c(d1), c(d2));
    let radius_gap = if c2 == 0.0 {
        c1.powf(1.0 / alpha)
    } else {
        let dc = -a * (d1.abs() - d2.abs()) / t;
        let r2 = c2.powf(1.0 / alpha);
        r2 * ((dc / c2).ln_1p() / alpha).exp_m1()
    };
    (d1 - d2) + radius_gap
}

fn golden_argmax(b: f64, a: f64, alpha: f64, t: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (-b / a, b / a);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    for _ in 0..300 {
        if hi - lo < 1e-15 {
            break;
        }
        if reach_difference(x1, x2, b, a, alpha, t) < 0.0 {
            lo = x1;
            x1 = x2;
            x2 = lo + inv_phi * (hi - lo);
        } else {
            hi = x2;
            x2 = x1;
            x1 = hi - inv_phi * (hi - lo);
        }
    }
    0.5 * (lo + hi)
}

fn criterion_1() -> Outcome {
    let s = Sensor::<f64>::variable(0.0, 1.0);
    let opt = optimal_travel(&s, 4.0, 2.0, 2.0).map_err(|e| e.to_string())?;
    ensure((opt.d_star - 0.375).abs() <= CLOSED_FORM_TOL && (opt.reach - 0.625).abs() <= CLOSED_FORM_TOL, || {
        format!("d*={} reach={}", opt.d_star, opt.reach)
    })?;
    let mut rng = rng(1);
    let mut worst: f64 = 0.0;
    for k in 0..10_000 {
        let b: f64 = rng.gen_range(0.1..4.0);
        let a: f64 = rng.gen_range(0.5..4.0);
        let t: f64 = rng.gen_range(0.5..4.0);
        let alpha = match k % 4 {
            0 => 1.0,
            1 => 2.0,
            2 => 3.0,
            _ => rng.gen_range(1.1..4.0),
        };
        if alpha == 1.0 && (a - t).abs() < 1e-6 {
            continue; // flat reach, every distance is an argmax
        }
        let d_star = optimal_travel(&Sensor::variable(0.0, b), t, a, alpha)
            .map_err(|e| e.to_string())?
            .d_star;
        let err = (d_star - golden_argmax(b, a, alpha, t)).abs();
        worst = worst.max(err);
        ensure(err <= CLOSED_FORM_TOL, || format!("b={b} a={a} alpha={alpha} t={t}: formula {d_star}, numeric differs by {err:e}"))?;
    }
    Ok(format!("d*=0.375 reach=0.625; 10^4 draws, worst argmax gap {worst:.1e}"))
}

fn criterion_2() -> Outcome {
    let inst = variable(1.0, 1.0, &[(0.0, 1.0), (1.0, 1.0)]);
    let cfg = cfg();
    let (exh, _) = maximize_exhaustive(&inst, &cfg).map_err(|e| e.to_string())?;
    let (end, _) = solve_endpoint(&inst, &cfg).map_err(|e| e.to_string())?;
    let con = maximize_constrained(&inst, &OrderConstraint::identity(2), &cfg).map_err(|e| e.to_string())?;
    for (name, sol) in [("exhaustive", &exh), ("endpoint", &end), ("constrained", &con)] {
        ensure((sol.lifetime - 3.0).abs() <= EPS, || format!("{name}: lifetime {}", sol.lifetime))?;
    }
    let ok = (con.y[0] - 0.25).abs() <= WITNESS_TOL
        && (con.y[1] - 0.75).abs() <= WITNESS_TOL
        && (con.r[0] - 0.25).abs() <= WITNESS_TOL
        && (con.r[1] - 0.25).abs() <= WITNESS_TOL;
    ensure(ok, || format!("witness y={:?} r={:?}", con.y, con.r))?;
    Ok(format!("lifetimes {:.7} / {:.7} / {:.7}", exh.lifetime, end.lifetime, con.lifetime))
}

fn criterion_3() -> Outcome {
    let two = variable(1.0, 0.0, &[(0.0, 1.0), (1.0, 1.0)]);
    let l = solve_dynamic_variable(&two).map_err(|e| e.to_string())?.lifetime;
    ensure(l == 4.0, || format!("b=(1,1): {l}"))?;
    let cube = variable(3.0, 0.0, &[(0.0, 1.0), (1.0, 8.0)]);
    let l = solve_dynamic_variable(&cube).map_err(|e| e.to_string())?.lifetime;
    ensure(l == 216.0, || format!("b=(1,8), alpha=3: {l}"))?;
    let mut rng = rng(3);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let alpha = [1.0, 2.0, 3.0, 1.5][rng.gen_range(0..4)];
        let xb: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.0..=1.0), rng.gen_range(0.1..3.0))).collect();
        let inst = variable(alpha, 0.0, &xb);
        let best = solve_dynamic_variable(&inst).map_err(|e| e.to_string())?;
        let mut r: Vec<f64> = best.r.iter().map(|&ri| ri * rng.gen_range(0.5..1.5)).collect();
        let total: f64 = r.iter().map(|ri| 2.0 * ri).sum();
        if total < 1.0 {
            r.iter_mut().for_each(|ri| *ri /= total);
        }
        if r == best.r {
            continue;
        }
        let life = xb
            .iter()
            .zip(&r)
            .map(|(&(_, b), &ri)| b / ri.powf(alpha))
            .fold(f64::INFINITY, f64::min);
        ensure(life <= best.lifetime * (1.0 + 1e-12), || {
            format!("perturbed radii {r:?} live {life} > closed form {}", best.lifetime)
        })?;
    }
    Ok("4 and 216 exact; 1000 perturbations never better".into())
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    if values.len() % 2 == 0 {
        0.5 * (values[m - 1] + values[m])
    } else {
        values[m]
    }
}

fn criterion_4() -> Outcome {
    let mut gaps = Vec::new();
    let mut per_kind = Vec::new();
    let mut rng = rng(4);
    for kind in [RadiusKind::Variable, RadiusKind::Fixed] {
        let mut kind_gaps = Vec::new();
        for k in 0..100 {
            let alpha = if k % 2 == 0 { 1.0 } else { 2.0 };
            let n = rng.gen_range(1..=4);
            let params = match kind {
                RadiusKind::Variable => variable_params(alpha),
                RadiusKind::Fixed => fixed_params(alpha),
            };
            let inst: Instance = random_instance(n, kind, rng.gen(), &params).map_err(|e| e.to_string())?;
            let (sol, _) = maximize_exhaustive(&inst, &cfg()).map_err(|e| e.to_string())?;
            let grid = grid_best_lifetime(&inst, GridConfig::new(GRID_STEP)).map_err(|e| e.to_string())?;
            ensure(sol.lifetime >= grid - (GRID_STEP + EPS), || {
                format!("{kind:?} instance {inst:?}: exhaustive {} < grid {grid}", sol.lifetime)
            })?;
            kind_gaps.push(sol.lifetime - grid);
        }
        gaps.extend_from_slice(&kind_gaps);
        per_kind.push(median(&mut kind_gaps));
    }
    let overall = median(&mut gaps);
    ensure(overall < GRID_MEDIAN_GAP, || format!("median gap {overall}"))?;
    Ok(format!(
        "200 instances, median gap {overall:.2e} (variable {:.2e}, fixed {:.2e}), min gap {:.2e}",
        per_kind[0], per_kind[1], gaps[0]
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = rng(5);
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let kind = if k % 2 == 0 { RadiusKind::Variable } else { RadiusKind::Fixed };
        let alpha = [1.0, 2.0, 3.0][k % 3];
        let n = rng.gen_range(1..=7);
        let mut params = match kind {
            RadiusKind::Variable => variable_params(alpha),
            RadiusKind::Fixed => fixed_params(alpha),
        };
        params.endpoints_only = true;
        let inst: Instance = random_instance(n, kind, rng.gen(), &params).map_err(|e| e.to_string())?;
        let (end, _) = solve_endpoint(&inst, &cfg()).map_err(|e| e.to_string())?;
        let (exh, _) = maximize_exhaustive(&inst, &cfg()).map_err(|e| e.to_string())?;
        let gap = (end.lifetime - exh.lifetime).abs();
        worst = worst.max(gap);
        ensure(gap <= 2.0 * EPS, || {
            format!("{kind:?} {inst:?}: endpoint {} vs exhaustive {}", end.lifetime, exh.lifetime)
        })?;
    }
    Ok(format!("100 instances, worst gap {worst:.1e}"))
}

/// Nondecreasing lists of length `1..=max_len` over `1..=max_value`.
fn value_lists(max_len: usize, max_value: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for list in &frontier {
            let start = list.last().copied().unwrap_or(1);
            for v in start..=max_value {
                let mut l = list.clone();
                l.push(v);
                next.push(l);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn has_equal_split(values: &[u64]) -> bool {
    let total: u64 = values.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    (0..1usize << values.len()).any(|mask| {
        let s: u64 = values.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, v)| v).sum();
        2 * s == total
    })
}

fn criterion_6() -> Outcome {
    let (mut yes, mut no) = (0, 0);
    for (a, alpha) in [(1.0, 1.0), (2.0, 2.0)] {
        for values in value_lists(5, 6) {
            let g = gen_partition_bcfr(&values, 0.5, a, alpha).map_err(|e| e.to_string())?;
            if has_equal_split(&values) {
                yes += 1;
                let (sol, _) = maximize_exhaustive(&g.instance, &cfg()).map_err(|e| e.to_string())?;
                ensure(sol.lifetime >= a - EPS, || format!("yes list {values:?}: lifetime {}", sol.lifetime))?;
            } else {
                no += 1;
                let n = g.instance.len();
                for perm in itertools::Itertools::permutations(0..n, n) {
                    let order = OrderConstraint::new(perm).unwrap();
                    for t in [a, a / 2.0, 1e-6 * a] {
                        let out = decide_fixed(&g.instance, &order, t).map_err(|e| e.to_string())?;
                        ensure(!out.achievable, || format!("no list {values:?}: YES at t={t} for order {order}"))?;
                    }
                }
            }
        }
    }
    Ok(format!("{yes} yes lists reach a, {no} no lists rejected for every order"))
}

fn criterion_7() -> Outcome {
    let mut rng = rng(7);
    let mut yes_count = 0;
    for kind in [RadiusKind::Variable, RadiusKind::Fixed] {
        for k in 0..200 {
            let alpha = [1.0, 2.0, 3.0, 1.5][k % 4];
            let n = rng.gen_range(1..=6);
            let params = match kind {
                RadiusKind::Variable => variable_params(alpha),
                RadiusKind::Fixed => fixed_params(alpha),
            };
            let inst: Instance = random_instance(n, kind, rng.gen(), &params).map_err(|e| e.to_string())?;
            let order = random_order(n, &mut rng);
            let t = if k % 2 == 0 {
                let best = maximize_constrained(&inst, &order, &cfg()).map_err(|e| e.to_string())?;
                if best.achievable {
                    best.lifetime * rng.gen_range(0.05..1.0)
                } else {
                    rng.gen_range(0.01..2.0)
                }
            } else {
                rng.gen_range(0.01..2.0)
            };
            let out = decide(&inst, &order, t).map_err(|e| e.to_string())?;
            if !out.achievable {
                continue;
            }
            yes_count += 1;
            let half = decide(&inst, &order, t / 2.0).map_err(|e| e.to_string())?;
            ensure(half.achievable, || format!("{kind:?} {inst:?} order {order}: YES at {t}, NO at half"))?;
            let w = out.witness.ok_or("YES without witness")?;
            let rep = verify_solution(&inst, &w, COVER_TOL);
            ensure(rep.feasible && rep.realized_lifetime >= t - WITNESS_LIFETIME_TOL, || {
                format!("{kind:?} {inst:?} order {order} t={t}: witness {w:?} report {rep:?}")
            })?;
            let ys: Vec<f64> = order.perm().iter().map(|&i| w.y[i]).collect();
            ensure(ys.windows(2).all(|p| p[0] <= p[1]), || format!("witness ignores order {order}: {ys:?}"))?;
        }
    }
    ensure(yes_count >= 100, || format!("only {yes_count} YES cases"))?;
    Ok(format!("400 triples, {yes_count} YES witnesses valid and monotone"))
}

fn criterion_8() -> Outcome {
    let mut rng = rng(8);
    let mut worst: f64 = 0.0;
    for kind in [RadiusKind::Variable, RadiusKind::Fixed] {
        for k in 0..50 {
            let alpha = [1.0, 2.0][k % 2];
            let n = rng.gen_range(1..=4);
            let params = match kind {
                RadiusKind::Variable => variable_params(alpha),
                RadiusKind::Fixed => fixed_params(alpha),
            };
            let inst: Instance = random_instance(n, kind, rng.gen(), &params).map_err(|e| e.to_string())?;
            let order = random_order(n, &mut rng);
            let best = maximize_constrained(&inst, &order, &cfg()).map_err(|e| e.to_string())?;
            let t = if best.achievable {
                best.lifetime * rng.gen_range(0.3..1.2)
            } else {
                rng.gen_range(0.05..1.0)
            };
            let out = decide(&inst, &order, t).map_err(|e| e.to_string())?;
            let grid = grid_prefix_trace(&inst, &order, t, TRACE_STEP).map_err(|e| e.to_string())?;
            if out.covered_prefix_trace.is_empty() {
                ensure(grid.len() < n, || format!("{kind:?} {inst:?}: order rejected but grid places everyone"))?;
                continue;
            }
            ensure(out.covered_prefix_trace.len() == grid.len(), || {
                format!("{kind:?} {inst:?}: trace lengths {} vs {}", out.covered_prefix_trace.len(), grid.len())
            })?;
            for (i, (z, g)) in out.covered_prefix_trace.iter().zip(&grid).enumerate() {
                let gap = (z.min(1.0) - g.min(1.0)).abs();
                worst = worst.max(gap);
                ensure(gap <= TRACE_TOL, || {
                    format!("{kind:?} {inst:?} order {order} t={t}: step {i} z={z} grid={g}")
                })?;
            }
        }
    }
    Ok(format!("100 traces, worst gap {worst:.1e}"))
}

fn criterion_9() -> Outcome {
    let mut rng = rng(9);
    for k in 0..100 {
        let n = rng.gen_range(1..=10);
        let alpha = [1.0, 2.0, 3.0][k % 3];
        let sensors: Vec<Sensor<f64>> = (0..n)
            .map(|_| Sensor::fixed(rng.gen_range(0.0..=1.0), rng.gen_range(0.1..2.0), rng.gen_range(0.0..0.5)))
            .collect();
        let stat = Instance::new(alpha, MoveCost::Static, sensors.clone()).unwrap();
        let dyn_ = Instance::new(alpha, MoveCost::Finite(0.0), sensors).unwrap();
        let got = solve_static_fixed(&stat).map_err(|e| e.to_string())?.lifetime;
        let want = best_subset_lifetime(&stat, SubsetPredicate::StaticCover).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("static {stat:?}: greedy {got}, subsets {want}"))?;
        let got = solve_dynamic_fixed(&dyn_).map_err(|e| e.to_string())?.lifetime;
        let want = best_subset_lifetime(&dyn_, SubsetPredicate::TotalDiameter).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("dynamic {dyn_:?}: greedy {got}, subsets {want}"))?;
    }
    Ok("100 static + 100 dynamic instances match subset enumeration exactly".into())
}

fn scratch_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance-cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_barrier")).args(args).output().expect("run CLI");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_10() -> Outcome {
    let mut rng = rng(10);
    for k in 0..100 {
        let n = rng.gen_range(1..=12);
        let kind = if k % 2 == 0 { RadiusKind::Variable } else { RadiusKind::Fixed };
        let params = RandomParams {
            alpha: [1.0, 2.0, 2.5][k % 3],
            move_cost: rng.gen_range(0.1..3.0),
            endpoints_only: k % 5 == 0,
            ..RandomParams::default()
        };
        let inst: Instance = if k % 10 == 9 {
            let values: Vec<u64> = (0..rng.gen_range(1..6)).map(|_| rng.gen_range(1..20)).collect();
            gen_partition_bcfr(&values, rng.gen_range(0.05..0.95), 1.0 / 3.0, 2.0).map_err(|e| e.to_string())?.instance
        } else {
            random_instance(n, kind, rng.gen(), &params).map_err(|e| e.to_string())?
        };
        let mut doc = io::InstanceDocument::from_instance(&inst);
        doc.metadata = Some(io::Metadata {
            seed: Some(k as u64),
            generator: Some("acceptance".into()),
        });
        let back = io::parse_instance_document(&io::serialize_instance(&doc)).map_err(|e| e.to_string())?;
        ensure(back == doc && back.instance().map_err(|e| e.to_string())? == inst, || {
            format!("round trip changed {inst:?}")
        })?;
    }
    let dir = scratch_dir();
    let inst_path = dir.join("random.json");
    let inst_arg = inst_path.to_str().unwrap();
    let gen = ["generate", "random", "--n", "5", "--seed", "42", "--out", inst_arg];
    ensure(run(&gen).0 == 0, || "generate failed".into())?;
    let first = std::fs::read(&inst_path).unwrap();
    run(&gen);
    ensure(std::fs::read(&inst_path).unwrap() == first, || "generate output differs".into())?;
    let commands: [&[&str]; 4] = [
        &["generate", "random", "--n", "6", "--radii", "fixed", "--seed", "9"],
        &["solve", inst_arg],
        &["solve", inst_arg, "--format", "svg"],
        &["decide", inst_arg, "--t", "0.2", "--order", "1,2,3,4,5"],
    ];
    for args in commands {
        let a = run(args);
        let b = run(args);
        ensure(a == b, || format!("{args:?} differs between runs"))?;
        ensure(!a.1.is_empty(), || format!("{args:?} printed nothing"))?;
    }
    Ok("100 round trips field-exact; CLI output byte-identical".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("optimal travel closed form", criterion_1),
        ("two endpoint sensors, lifetime 3", criterion_2),
        ("free movement closed form", criterion_3),
        ("grid oracle agreement", criterion_4),
        ("endpoint orderings exact", criterion_5),
        ("partition gadget behavior", criterion_6),
        ("decision monotonicity and witnesses", criterion_7),
        ("covered prefix optimality", criterion_8),
        ("greedy matches subset enumeration", criterion_9),
        ("round trip and CLI determinism", criterion_10),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", k + 1),
            Err(detail) => {
                println!("FAIL {:>2} {name}: {detail} ({secs:.1}s)", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
