//! Acceptance criteria, one line each. Exits non-zero if any fails.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use bicolored_core::asymptotics::{integral_check, FloatPoly};
use bicolored_core::expansion::{expand, models, ExpandOptions};
use bicolored_core::graphoracle::{eulerian_polynomial, monochrome_classes};
use bicolored_core::numkernel::{ParamPoly, Rational, Ring};
use bicolored_core::phasescan::fit_law;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../potentials").join(format!("{name}.json"))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_bicolored")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let run = cli(args);
    if run.code != 0 {
        return Err(format!("`{}` exited {}: {}", args.join(" "), run.code, run.stderr.trim()));
    }
    serde_json::from_str(&run.stdout).map_err(|e| format!("bad json: {e}"))
}

fn strings(v: &Value) -> Vec<String> {
    match v {
        Value::String(s) => vec![s.clone()],
        Value::Array(items) => items.iter().map(|x| x.as_str().unwrap_or("?").to_string()).collect(),
        _ => vec![],
    }
}

fn poly(v: &Value) -> ParamPoly {
    ParamPoly::from_strs(&strings(v)).expect("exact coefficients")
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn exact_series_regression() -> Check {
    let start = Instant::now();
    let v = cli_json(&["expand", "--potential", fixture("ising").to_str().unwrap(), "--n", "3"])?;
    let elapsed = start.elapsed();
    let expected = [
        vec!["1/8", "1/4", "1/8"],
        vec!["35/384", "5/32", "19/64", "5/32", "35/384"],
        vec!["385/3072", "105/512", "1295/3072", "175/256", "1295/3072", "105/512", "385/3072"],
    ];
    for (n, want) in expected.iter().enumerate() {
        let got = strings(&v["a"][n + 1]);
        ensure(got == *want, || format!("A_{} = {got:?}", n + 1))?;
    }
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("A1..A3 exact, {elapsed:.2?}"))
}

fn write_potential(dir: &Path, name: &str, terms: &[((u32, u32), Rational)]) -> PathBuf {
    let items: Vec<Value> = terms
        .iter()
        .map(|((u, w), c)| serde_json::json!({ "u": u, "w": w, "coeff": c.to_string() }))
        .collect();
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, serde_json::json!({ "terms": items }).to_string()).unwrap();
    path
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(20261015);
    let mut random_rational = || loop {
        let (p, q) = (rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9));
        if p != 0 {
            return Rational::new(p, q);
        }
    };
    let mut files = Vec::new();
    for i in 0..3 {
        let l = random_rational();
        let terms = [((4, 0), Rational::one()), ((2, 2), l.clone()), ((0, 4), &l * &l)];
        files.push((format!("Ising λ = {l}"), write_potential(dir.path(), &format!("ising{i}"), &terms)));
    }
    let generic: Vec<((u32, u32), Rational)> =
        [(3, 0), (2, 1), (1, 2), (0, 3), (4, 0), (2, 2)].into_iter().map(|e| (e, random_rational())).collect();
    files.push(("generic six-term potential".into(), write_potential(dir.path(), "generic", &generic)));
    for (label, path) in &files {
        let p = path.to_str().unwrap();
        let series = cli_json(&["expand", "--potential", p, "--n", "2"])?;
        for n in 1..=2 {
            let census = cli_json(&["enumerate", "--potential", p, "--n", &n.to_string()])?;
            ensure(census["weighted_a"] == series["a"][n], || {
                format!("{label}, n = {n}: census {} vs series {}", census["weighted_a"], series["a"][n])
            })?;
        }
    }
    // Split A_2 of Ising by powers of λ: (2,2) vertices carry λ, (0,4) vertices λ².
    let census = cli_json(&["enumerate", "--potential", fixture("ising").to_str().unwrap(), "--n", "2"])?;
    let mut parts = vec![Rational::zero(); 5];
    for entry in census["census"].as_array().unwrap() {
        let power: usize = entry["profile"]
            .as_array()
            .unwrap()
            .iter()
            .map(|d| match (d[0].as_u64().unwrap(), d[1].as_u64().unwrap()) {
                (2, 2) => 1,
                (0, 4) => 2,
                _ => 0,
            })
            .sum();
        let w: Rational = entry["weight"].as_str().unwrap().parse().unwrap();
        parts[power] = &parts[power] + &w;
    }
    let want: Vec<Rational> = ["35/384", "5/32", "19/64", "5/32", "35/384"].iter().map(|s| s.parse().unwrap()).collect();
    ensure(parts == want, || format!("c_2 split {parts:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{} potentials at n = 1, 2 and the five λ-parts of A2 match, {elapsed:.2?}", files.len()))
}

fn eulerian_cross_check() -> Check {
    let classes = monochrome_classes(4, 2).map_err(|e| e.to_string())?;
    let mut total = ParamPoly::zero();
    for c in &classes {
        total.add_assign_ref(&eulerian_polynomial(&c.graph).mul_ref(&ParamPoly::constant(c.inv_aut.clone())));
    }
    let a2 = expand(&models::ising(), 2, ExpandOptions::default()).map_err(|e| e.to_string())?;
    ensure(Some(&total) == a2.get(2).unwrap().as_param(), || format!("Σ Z/|Aut| = {total}"))?;
    Ok(format!("{} graphs, Σ Z/|Aut| = {total}", classes.len()))
}

fn ising_table(l: f64) -> (f64, f64) {
    if l < 1.0 / 3.0 {
        (2.0 / 3.0, (1.0 / (2.0 - 6.0 * l)).sqrt() / PI)
    } else if l < 3.0 {
        (-16.0 * l * l / (3.0 * l * l - 18.0 * l + 3.0), (8.0 * l / (-3.0 * l * l + 10.0 * l - 3.0)).sqrt() / PI)
    } else {
        (2.0 * l * l / 3.0, (l / (2.0 * l - 6.0)).sqrt() / PI)
    }
}

fn closed_form_asymptotics() -> Check {
    let mut worst: f64 = 0.0;
    for lambda in ["1/4", "1", "2", "4"] {
        let v = cli_json(&["asympt", "--potential", fixture("ising").to_str().unwrap(), "--lambda", lambda])?;
        let l: Rational = lambda.parse().unwrap();
        let (alpha, c) = ising_table(l.to_f64());
        let got = (v["alpha"].as_f64().unwrap(), v["c"].as_f64().unwrap());
        let other = (v["cross_check"]["alpha"].as_f64().unwrap(), v["cross_check"]["c"].as_f64().unwrap());
        let errs = [rel(got.0, alpha), rel(got.1, c), rel(other.0, got.0), rel(other.1, got.1)];
        let e = errs.iter().fold(0.0f64, |m, x| m.max(*x));
        ensure(e <= 1e-9, || format!("λ = {lambda}: relative errors {errs:?}"))?;
        worst = worst.max(e);
    }
    Ok(format!("three branches and both routes within {worst:.1e}"))
}

fn integral_representation() -> Check {
    let mut worst: f64 = 0.0;
    for lambda in [Rational::from(1), Rational::from(2)] {
        let pot = models::ising_at(&lambda);
        let series = expand(&pot, 10, ExpandOptions::default()).map_err(|e| e.to_string())?;
        let v = FloatPoly::from_potential(&pot, 0.0);
        for n in 1..=10u64 {
            let exact = series.get(n as usize).unwrap().as_rational().unwrap().to_f64();
            let quad = integral_check(&v, n).map_err(|e| e.to_string())?;
            let e = rel(quad, exact);
            ensure(e <= 1e-9, || format!("λ = {lambda}, n = {n}: {quad} vs {exact}"))?;
            worst = worst.max(e);
        }
    }
    Ok(format!("n ≤ 10 at λ = 1, 2 within {worst:.1e}"))
}

fn vanishing_law() -> Check {
    let q = fixture("quintic");
    let v = cli_json(&["expand", "--potential", q.to_str().unwrap(), "--n", "3"])?;
    let a: Vec<String> = (0..=3).map(|n| strings(&v["a"][n]).concat()).collect();
    ensure(a[1] == "0" && a[2] == "0" && a[3] != "0", || format!("A = {a:?}"))?;
    let law = cli_json(&["asympt", "--potential", q.to_str().unwrap()])?;
    ensure(law["vanishing_period"] == 3, || format!("period {}", law["vanishing_period"]))?;
    Ok(format!("A1 = A2 = 0, A3 = {}, vanishing_period 3", a[3]))
}

fn numerical_fit() -> Check {
    let start = Instant::now();
    let v = cli_json(&["expand", "--potential", fixture("ising").to_str().unwrap(), "--n", "200"])?;
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(300), || format!("expand to 200 took {elapsed:?}"))?;
    let polys: Vec<ParamPoly> = v["a"].as_array().unwrap().iter().map(poly).collect();
    ensure(polys[200].degree() == Some(400), || "A_200 should have λ-degree 400".into())?;
    let mut worst: f64 = 0.0;
    for lambda in ["1/5", "1", "2", "7/2"] {
        let l: Rational = lambda.parse().unwrap();
        let a: Vec<Rational> = polys.iter().map(|p| p.eval(&l)).collect();
        let fit = fit_law(&a).map_err(|e| format!("λ = {lambda}: {e}"))?;
        let e = rel(fit.alpha, ising_table(l.to_f64()).0);
        ensure(e <= 1e-2, || format!("λ = {lambda}: α̂ = {}", fit.alpha))?;
        worst = worst.max(e);
    }
    Ok(format!("expand to 200 in {elapsed:.2?}, α̂ within {worst:.1e}"))
}

fn phase_transitions() -> Check {
    let ising = fixture("ising");
    let v = cli_json(&["phase-scan", "--potential", ising.to_str().unwrap(), "--range", "0.05:3.95:200", "--format", "json"])?;
    let found = v["transitions"].as_array().unwrap();
    let mut report = Vec::new();
    for target in [1.0 / 3.0, 3.0] {
        let hit = found.iter().find(|t| (t["lambda"].as_f64().unwrap() - target).abs() <= 0.05);
        let t = hit.ok_or_else(|| format!("nothing near {target}: {found:?}"))?;
        let peak = t["peak_c"].as_f64().unwrap_or(0.0);
        ensure(peak > 1e3, || format!("peak c {peak} near {target}"))?;
        report.push(format!("{:.6} (c {:.0})", t["lambda"].as_f64().unwrap(), peak));
    }
    ensure(found.len() == 2, || format!("{} transitions reported", found.len()))?;
    Ok(format!("transitions at {}", report.join(", ")))
}

fn lee_yang() -> Check {
    let ising = fixture("ising");
    let mut last = f64::INFINITY;
    let mut report = Vec::new();
    for n in [10, 25, 50] {
        let v = cli_json(&["roots", "--potential", ising.to_str().unwrap(), "--n", &n.to_string(), "--format", "json"])?;
        let roots: Vec<(f64, f64)> =
            v["roots"].as_array().unwrap().iter().map(|z| (z[0].as_f64().unwrap(), z[1].as_f64().unwrap())).collect();
        ensure(roots.len() == 2 * n, || format!("n = {n}: {} roots", roots.len()))?;
        let residual = v["residual"].as_f64().unwrap();
        ensure(residual <= 1e-8, || format!("n = {n}: residual {residual:e}"))?;
        for &(re, im) in &roots {
            let partner = roots.iter().map(|&(r, i)| (r - re).hypot(i + im)).fold(f64::INFINITY, f64::min);
            ensure(partner <= 1e-8, || format!("n = {n}: root {re}+{im}i unpaired ({partner:e})"))?;
        }
        let d = roots.iter().map(|&(re, im)| (re - 1.0 / 3.0).hypot(im)).fold(f64::INFINITY, f64::min);
        ensure(d < last, || format!("distance {d} at n = {n} does not shrink"))?;
        last = d;
        report.push(format!("{d:.4}"));
    }
    Ok(format!("distance to 1/3: {}", report.join(" > ")))
}

fn conjecture_probe() -> Check {
    let inhom = fixture("inhomogeneous");
    let table_alpha = |l: f64| {
        if l < 0.5 {
            1.5
        } else {
            let s = (2.0 * l * (8.0 * l - 3.0)).sqrt();
            6.0 * l * l / ((8.0 * l - 3.0) * (16.0 * l - 3.0 - 4.0 * s))
        }
    };
    // Above 1/2 the printed c has a negative radicand; this is the real form
    // that the critical points of g give.
    let table_c = |l: f64| {
        if l < 0.5 {
            1.0 / (2.0 * PI * (1.0 - 2.0 * l).sqrt())
        } else {
            let s = (2.0 * l * (8.0 * l - 3.0)).sqrt();
            (l / (32.0 * l * l - 12.0 * l + 2.0 * (1.0 - 4.0 * l) * s)).sqrt() / PI
        }
    };
    let mut report = Vec::new();
    for lambda in ["1/4", "1"] {
        let v = cli_json(&["expand", "--potential", inhom.to_str().unwrap(), "--n", "150", "--lambda", lambda])?;
        let a: Vec<Rational> =
            v["a"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().parse().unwrap()).collect();
        let fit = fit_law(&a).map_err(|e| format!("λ = {lambda}: {e}"))?;
        let l = lambda.parse::<Rational>().unwrap().to_f64();
        let (ea, ec) = (rel(fit.alpha, table_alpha(l)), rel(fit.c, table_c(l)));
        ensure(ea <= 1e-2 && ec <= 2e-2, || format!("λ = {lambda}: α̂ = {}, ĉ = {}", fit.alpha, fit.c))?;
        report.push(format!("λ = {lambda}: α {ea:.1e}, c {ec:.1e}"));
    }
    Ok(report.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("exact series regression", exact_series_regression),
        ("oracle equivalence", oracle_equivalence),
        ("eulerian cross-check", eulerian_cross_check),
        ("closed-form asymptotics", closed_form_asymptotics),
        ("integral representation", integral_representation),
        ("vanishing law", vanishing_law),
        ("numerical fit", numerical_fit),
        ("phase transitions", phase_transitions),
        ("lee-yang behaviour", lee_yang),
        ("conjecture probe", conjecture_probe),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
