//! Acceptance criteria, one line of output per criterion. Runs without the
//! libtest harness so the lines are always printed.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::type_complexity)]

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use it2bayes::bayes::{posterior_fou, AlphaCutFou, BayesInputs};
use it2bayes::centroid::ekm_centroid;
use it2bayes::fou::{compute_overlap, reduce_intervals, wpm, OverlapResult};
use it2bayes::io::{parse_intervals_csv, parse_intervals_json, write_intervals_csv, write_intervals_json};
use it2bayes::{
    synthesize, synthesize_signed, FouCategory, IntervalSet, SampledFou, SynthesisConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within_time(start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    ensure!(t < limit, "took {t:?}, limit {limit:?}");
    Ok(())
}

fn overlap_and_reduction() -> Check {
    let start = Instant::now();

    let set = unbounded(&PRODUCTION);
    let o = compute_overlap(&set);
    ensure!(
        o == OverlapResult::NonNull { interval: it2bayes::Interval::new(1.0e6, 1.1e6).unwrap() },
        "production overlap {o:?}"
    );
    let red = reduce_intervals(&set, &o);
    let left: Vec<_> = PRODUCTION.iter().map(|&(lo, _)| (lo, 1.0e6)).collect();
    let right: Vec<_> = PRODUCTION.iter().map(|&(_, hi)| (1.1e6, hi)).collect();
    ensure!(pairs(&red.left) == left, "production left set {:?}", red.left);
    ensure!(pairs(&red.right) == right, "production right set {:?}", red.right);

    let set = unbounded(&PRODUCTION_NULL);
    let o = compute_overlap(&set);
    ensure!(o == OverlapResult::Null { mean: 1.12e6 }, "null production overlap {o:?}");
    let red = reduce_intervals(&set, &o);
    let left = [(900_000.0, 1.12e6), (850_000.0, 1.1e6), (850_000.0, 1.12e6), (800_000.0, 1.12e6)];
    let right = [(1.12e6, 1.2e6), (1.12e6, 1.2e6), (1.4e6, 1.6e6), (1.12e6, 1.3e6)];
    ensure!(pairs(&red.left) == left, "null production left set {:?}", red.left);
    ensure!(pairs(&red.right) == right, "null production right set {:?}", red.right);

    let set = unit(&INTERIOR_DROOP);
    let o = compute_overlap(&set);
    ensure!(o == OverlapResult::Null { mean: 0.45 }, "interior droop overlap {o:?}");
    let red = reduce_intervals(&set, &o);
    ensure!(
        red.left.len() == 3 && red.left.iter().all(|iv| iv.lo() == 0.0),
        "interior droop left set {:?}",
        red.left
    );
    ensure!(
        red.right.len() == 4 && red.right.iter().filter(|iv| iv.hi() == 1.0).count() == 1,
        "interior droop right set {:?}",
        red.right
    );
    within_time(start, Duration::from_secs(1))
}

fn droop_heights() -> Check {
    let cfg = SynthesisConfig::with_r(10.0);
    let cases: [(&str, &[(f64, f64)], FouCategory, [Option<f64>; 4]); 3] = [
        ("left droop", &LEFT_DROOP, FouCategory::LeftDroop, [Some(0.6), Some(0.3), None, None]),
        ("right droop", &RIGHT_DROOP, FouCategory::RightDroop, [None, None, Some(0.75), Some(0.375)]),
        (
            "interior droop",
            &INTERIOR_DROOP,
            FouCategory::InteriorDroop,
            [Some(1.0), Some(0.5), Some(0.25), Some(0.125)],
        ),
    ];
    for (name, data, category, want) in cases {
        let mf = synthesize(&unit(data), &cfg).map_err(|e| format!("{name}: {e}"))?;
        ensure!(mf.category == category, "{name}: category {:?}", mf.category);
        let h = mf.droop_heights.ok_or(format!("{name}: no droop heights"))?;
        let got = [h.upper_left, h.lower_left, h.upper_right, h.lower_right];
        ensure!(got == want, "{name}: heights {got:?}, expected {want:?}");
        // the curves themselves meet the bounds at those heights
        let (u0, l0) = mf.eval(0.0);
        let (u1, l1) = mf.eval(1.0);
        let curve = [
            want[0].map(|_| u0),
            want[1].map(|_| l0),
            want[2].map(|_| u1),
            want[3].map(|_| l1),
        ];
        for (c, w) in curve.iter().zip(&want) {
            if let (Some(c), Some(w)) = (c, w) {
                ensure!((c - w).abs() <= 1e-12, "{name}: curve height {c}, expected {w}");
            }
        }
    }
    Ok(())
}

fn direct_power_mean(x: &[f64], w: &[f64], r: f64) -> f64 {
    let total: f64 = w.iter().sum();
    let s: f64 = x.iter().zip(w).map(|(xi, wi)| wi * xi.powf(r)).sum();
    (s / total).powf(1.0 / r)
}

fn wpm_suite() -> Check {
    let x = [1.0, 2.0, 4.0, 8.0];
    let ones = [1.0; 4];
    let named = [
        ("arithmetic", 1.0, 3.75),
        ("geometric", 0.0, 64f64.powf(0.25)),
        ("harmonic", -1.0, 4.0 / (1.0 + 0.5 + 0.25 + 0.125)),
        ("rms", 2.0, (85.0f64 / 4.0).sqrt()),
        ("min", f64::NEG_INFINITY, 1.0),
        ("max", f64::INFINITY, 8.0),
    ];
    for (name, r, want) in named {
        let got = wpm(&x, &ones, r).map_err(|e| e.to_string())?;
        ensure!((got - want).abs() <= 1e-12, "{name} mean {got}, expected {want}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let exponents = [-50.0, -8.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0, 8.0, 50.0];
    for trial in 0..1000 {
        let n = rng.random_range(1..12);
        let xs: Vec<f64> = (0..n).map(|_| rng.random_range(0.01..100.0)).collect();
        let ws: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..3.0)).collect();
        let means: Vec<f64> = exponents
            .iter()
            .map(|&r| wpm(&xs, &ws, r).unwrap())
            .collect();
        for pair in means.windows(2) {
            ensure!(
                pair[1] >= pair[0] * (1.0 - 1e-12),
                "trial {trial}: mean decreased with r: {means:?}"
            );
        }
    }

    // direct form on inputs small enough not to overflow
    for trial in 0..500 {
        let scale = [1e-3, 1.0, 1e3, 1e6][trial % 4];
        let n = rng.random_range(1..10);
        let xs: Vec<f64> = (0..n).map(|_| scale * rng.random_range(0.05..1.0)).collect();
        let ws: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..3.0)).collect();
        for r in [-8.0, -2.5, -1.0, -0.3, 0.4, 2.0, 7.0, 20.0] {
            let got = wpm(&xs, &ws, r).unwrap();
            let want = direct_power_mean(&xs, &ws, r);
            ensure!(
                ((got - want) / want).abs() <= 1e-9,
                "trial {trial}, r = {r}: {got} vs direct {want}"
            );
        }
    }
    Ok(())
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs()
}

fn limit_behaviour() -> Check {
    let set = unbounded(&PRODUCTION);
    let mf = synthesize(&set, &SynthesisConfig::with_r(1.0)).map_err(|e| e.to_string())?;
    ensure!(mf.umf == mf.lmf, "r = 1 is not type-1: {:?} vs {:?}", mf.umf, mf.lmf);
    let mean_lo = PRODUCTION.iter().map(|p| p.0).sum::<f64>() / 5.0;
    let mean_hi = PRODUCTION.iter().map(|p| p.1).sum::<f64>() / 5.0;
    ensure!(rel_close(mf.umf.left_bottom, mean_lo, 1e-12), "left bottom {}", mf.umf.left_bottom);
    ensure!(rel_close(mf.umf.right_bottom, mean_hi, 1e-12), "right bottom {}", mf.umf.right_bottom);

    let mf = synthesize(&set, &SynthesisConfig::with_r(1e6)).map_err(|e| e.to_string())?;
    let (ul, uh) = mf.umf.support();
    let (ll, lh) = mf.lmf.support();
    ensure!(
        rel_close(ul, 800_000.0, 1e-3) && rel_close(uh, 1_500_000.0, 1e-3),
        "upper support [{ul}, {uh}]"
    );
    ensure!(
        rel_close(ll, 1.0e6, 1e-3) && rel_close(lh, 1.1e6, 1e-3),
        "lower support [{ll}, {lh}]"
    );
    Ok(())
}

fn bayes_run(data: &[[(f64, f64); 6]; 3]) -> Result<it2bayes::Posterior, String> {
    let cfg = SynthesisConfig::default();
    let mfs = data
        .iter()
        .map(|d| synthesize(&unit(d), &cfg))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let inputs = BayesInputs::from_mfs(&mfs[0], &mfs[1], &mfs[2], 101).map_err(|e| e.to_string())?;
    posterior_fou(&inputs).map_err(|e| e.to_string())
}

fn check_cut_table(c: &AlphaCutFou) -> Check {
    for chan in [c.umf_cuts(), c.lmf_cuts()] {
        for (k, cut) in chan.iter().enumerate() {
            ensure!(cut.lo() >= 0.0 && cut.hi() <= 1.0, "cut {k} {cut:?} leaves [0, 1]");
            if k + 1 < chan.len() {
                ensure!(chan[k + 1].is_subset_of(cut), "cuts {k} and {} not nested", k + 1);
            }
        }
    }
    for (k, (u, l)) in c.umf_cuts().iter().zip(c.lmf_cuts()).enumerate() {
        ensure!(l.is_subset_of(u), "lower cut {k} outside upper cut");
    }
    Ok(())
}

fn bayes_validity() -> Check {
    let start = Instant::now();
    let post = bayes_run(&WIDE)?;
    let fired = &post.umf_adjusted;
    let region = fired.iter().take_while(|f| **f).count();
    ensure!(region > 0, "no adjustment at low alpha");
    ensure!(
        fired[region..].iter().all(|f| !f),
        "adjusted levels are not one contiguous low-alpha run: {fired:?}"
    );
    ensure!(region < fired.len(), "every level adjusted");
    let boundary = post.cuts.alphas()[region];
    ensure!(boundary > 0.0 && boundary < 0.3, "adjustment stops at alpha {boundary}");
    for k in 0..region {
        let hi = post.cuts.umf_cuts()[k].hi();
        ensure!(hi == 1.0, "adjusted level {k} has upper right endpoint {hi}");
    }
    check_cut_table(&post.cuts)?;

    let post = bayes_run(&NARROW)?;
    ensure!(
        post.umf_adjusted.iter().chain(&post.lmf_adjusted).all(|f| !f),
        "narrow example adjusted some level"
    );
    check_cut_table(&post.cuts)?;
    within_time(start, Duration::from_secs(1))
}

fn crisp_consistency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..1000 {
        let l: f64 = rng.random_range(0.001..=1.0);
        let p: f64 = rng.random_range(0.001..=1.0);
        let e: f64 = rng.random_range(l * p..=1.0);
        let inputs = BayesInputs::new(
            AlphaCutFou::crisp(l, 101).unwrap(),
            AlphaCutFou::crisp(p, 101).unwrap(),
            AlphaCutFou::crisp(e, 101).unwrap(),
        )
        .map_err(|err| format!("trial {trial}: {err}"))?;
        let post = posterior_fou(&inputs).map_err(|err| format!("trial {trial}: {err}"))?;
        let want = l * p / e;
        for cut in post.cuts.umf_cuts().iter().chain(post.cuts.lmf_cuts()) {
            ensure!(
                (cut.lo() - want).abs() <= 1e-12 && (cut.hi() - want).abs() <= 1e-12,
                "trial {trial}: cut {cut:?}, crisp posterior {want}"
            );
        }
    }
    Ok(())
}

fn random_fou(rng: &mut ChaCha8Rng) -> SampledFou {
    let n = rng.random_range(21..=64);
    let lo = rng.random_range(-5.0..5.0);
    let hi = lo + rng.random_range(0.1..10.0);
    let x = it2bayes::bayes::uniform_grid(lo, hi, n);
    let mut upper: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=1.0)).collect();
    // occasionally zero out the ends of the upper curve
    if rng.random_bool(0.3) {
        let k = rng.random_range(1..n / 3);
        upper[..k].iter_mut().for_each(|u| *u = 0.0);
        upper[n - k..].iter_mut().for_each(|u| *u = 0.0);
    }
    let lower = upper
        .iter()
        .map(|&u| if rng.random_bool(0.1) { 0.0 } else { u * rng.random_range(0.0..=1.0) })
        .collect();
    SampledFou::new(x, upper, lower).unwrap()
}

fn ekm_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..200 {
        let fou = random_fou(&mut rng);
        let c = ekm_centroid(&fou).map_err(|e| format!("trial {trial}: {e}"))?;
        let (c_l, c_r) = brute_force_centroid(&fou);
        ensure!(
            c.c_l == c_l && c.c_r == c_r,
            "trial {trial}: [{}, {}] vs oracle [{c_l}, {c_r}]",
            c.c_l,
            c.c_r
        );
    }

    for trial in 0..100 {
        let mut fou = random_fou(&mut rng);
        fou.lower = fou.upper.clone();
        let c = ekm_centroid(&fou).map_err(|e| format!("type-1 trial {trial}: {e}"))?;
        let num: f64 = fou.x.iter().zip(&fou.upper).map(|(x, u)| x * u).sum();
        let den: f64 = fou.upper.iter().sum();
        let want = num / den;
        ensure!(
            (c.c_l - want).abs() <= 1e-12 && (c.c_r - want).abs() <= 1e-12,
            "type-1 trial {trial}: [{}, {}] vs {want}",
            c.c_l,
            c.c_r
        );
    }

    for trial in 0..100 {
        let n = rng.random_range(21..=64);
        let center = rng.random_range(-3.0..3.0);
        let half = rng.random_range(0.5..4.0);
        let x = it2bayes::bayes::uniform_grid(center - half, center + half, n);
        let mut upper = vec![0.0; n];
        let mut lower = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let u: f64 = rng.random_range(0.05..=1.0);
            let l = u * rng.random_range(0.0..=1.0);
            (upper[i], upper[n - 1 - i]) = (u, u);
            (lower[i], lower[n - 1 - i]) = (l, l);
        }
        let step = 2.0 * half / (n - 1) as f64;
        let c = ekm_centroid(&SampledFou::new(x, upper, lower).unwrap())
            .map_err(|e| format!("symmetric trial {trial}: {e}"))?;
        ensure!(
            (c.midpoint - center).abs() <= step,
            "symmetric trial {trial}: midpoint {} vs center {center}",
            c.midpoint
        );
    }
    Ok(())
}

fn random_positive_set(rng: &mut ChaCha8Rng) -> IntervalSet {
    let n = rng.random_range(1..=10);
    let pairs: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let lo: f64 = if rng.random_bool(0.2) { 0.0 } else { rng.random_range(0.0..8.0) };
            let hi = if rng.random_bool(0.2) { 10.0 } else { lo + rng.random_range(0.0..(10.0 - lo)) };
            (lo, hi)
        })
        .collect();
    let (lb, ub) = match rng.random_range(0..3) {
        0 => (None, None),
        1 => (Some(0.0), None),
        _ => (Some(0.0), Some(10.0)),
    };
    IntervalSet::from_pairs(&pairs, lb, ub).unwrap()
}

fn signed_symmetry() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..100 {
        let set = random_positive_set(&mut rng);
        let cfg = if trial % 2 == 0 { SynthesisConfig::default() } else { SynthesisConfig::with_r(10.0) };
        let pos = synthesize(&set, &cfg).map_err(|e| format!("trial {trial}: {e}"))?;
        let neg = synthesize_signed(&set.mirror(), &cfg).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure!(neg == pos.mirror(), "trial {trial}: {neg:?} is not the mirror of {pos:?}");
        let (u, m) = (&neg.umf, &pos.umf);
        ensure!(
            u.left_bottom == -m.right_bottom
                && u.left_top == -m.right_top
                && u.right_top == -m.left_top
                && u.right_bottom == -m.left_bottom,
            "trial {trial}: upper parameters not negated and reversed"
        );
    }

    for (name, data) in [
        ("opening negative", &OPENING_NEG[..]),
        ("closing negative", &CLOSING_NEG[..]),
        ("opening mixed", &OPENING_MIXED[..]),
        ("closing mixed", &CLOSING_MIXED[..]),
    ] {
        let set = unbounded(data);
        let (min, max) = (set.min_lo(), set.max_hi());
        let mf = synthesize_signed(&set, &SynthesisConfig::with_r(10.0)).map_err(|e| format!("{name}: {e}"))?;
        let (lo, hi) = mf.umf.support();
        ensure!(lo >= min && hi <= max, "{name}: support [{lo}, {hi}] exceeds [{min}, {max}]");
        ensure!(mf.umf.is_valid() && mf.lmf.is_valid(), "{name}: invalid trapezoids");
        let wide = synthesize_signed(&set, &SynthesisConfig::with_r(f64::INFINITY))
            .map_err(|e| format!("{name}: {e}"))?;
        ensure!(
            wide.umf.support() == (min, max),
            "{name}: limiting support {:?}, expected [{min}, {max}]",
            wide.umf.support()
        );
        let mixed = data.iter().any(|p| p.1 < 0.0) && data.iter().any(|p| p.0 > 0.0);
        ensure!(
            (mf.category == FouCategory::SignedComposite) == mixed,
            "{name}: category {:?}",
            mf.category
        );
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_it2bayes"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    Ok(())
}

fn dir_contents(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn determinism_and_round_trip() -> Check {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let manifest = tmp.path().join("run.json");
    let json = serde_json::json!({
        "seed": 42,
        "quantities": [
            {"name": "likelihood", "intervals": WIDE[0].map(|p| [p.0, p.1]), "bounds": [0, 1]},
            {"name": "prior", "single_sme": {"min": [0.1, 0.2], "max": [0.5, 0.6]}, "bounds": [0, 1]},
            {"name": "evidence", "intervals": WIDE[2].map(|p| [p.0, p.1]), "bounds": [0, 1], "r": 10},
            {"name": "production", "intervals": PRODUCTION.map(|p| [p.0, p.1])}
        ]
    });
    std::fs::write(&manifest, json.to_string()).map_err(|e| e.to_string())?;
    let m = manifest.to_str().unwrap();
    let mut runs = Vec::new();
    for run in ["a", "b"] {
        let synth_dir = tmp.path().join(run).join("synth");
        let bayes_dir = tmp.path().join(run).join("bayes");
        run_cli(&["synth", "--manifest", m, "--out", synth_dir.to_str().unwrap()])?;
        run_cli(&["bayes", "--manifest", m, "--out", bayes_dir.to_str().unwrap()])?;
        runs.push((dir_contents(&synth_dir), dir_contents(&bayes_dir)));
    }
    ensure!(!runs[0].0.is_empty() && !runs[0].1.is_empty(), "no output files");
    ensure!(runs[0] == runs[1], "outputs differ between runs");

    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..200 {
        let n = rng.random_range(1..20);
        let pairs: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                let lo = rng.random_range(-1e7..1e7) * 10f64.powi(rng.random_range(-12..3));
                (lo, lo + rng.random_range(0.0..1.0) / 3.0)
            })
            .collect();
        let set = IntervalSet::from_pairs(&pairs, None, None).unwrap();
        let csv = parse_intervals_csv(&write_intervals_csv(&set), None, None)
            .map_err(|e| format!("trial {trial}: {e}"))?;
        ensure!(csv == set, "trial {trial}: CSV round trip changed the set");
        let bounded = IntervalSet::from_pairs(&pairs, Some(set.min_lo()), None).unwrap();
        let json = parse_intervals_json(&write_intervals_json(&bounded).unwrap(), None)
            .map_err(|e| format!("trial {trial}: {e}"))?;
        ensure!(json == bounded, "trial {trial}: JSON round trip changed the set");
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("overlap and reduction golden sets", overlap_and_reduction),
        ("droop boundary heights", droop_heights),
        ("weighted power mean suite", wpm_suite),
        ("tail-width limits", limit_behaviour),
        ("posterior validity and adjustment", bayes_validity),
        ("crisp consistency", crisp_consistency),
        ("EKM equals exhaustive search", ekm_oracle),
        ("signed synthesis symmetry", signed_symmetry),
        ("determinism and round trip", determinism_and_round_trip),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({ms} ms)", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} ({ms} ms): {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
