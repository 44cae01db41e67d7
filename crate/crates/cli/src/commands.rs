use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use bicolored_core::asymptotics::{
    g_real_critical_points, law_circle, law_g, law_g_homogeneous, AsymptoticLaw, AsymptoticsError, CirclePoint,
    FloatPoly, GCritPoint, LawSign,
};
use bicolored_core::expansion::{expand as run_expand, ExpandOptions, ExpansionError, PotentialSpec, Route};
use bicolored_core::graphoracle::{
    census_for_order, census_polynomial, enumerate_census, weighted_a, CensusEntry, DegreeRule, GraphError,
};
use bicolored_core::numkernel::{Coeff, Rational};
use bicolored_core::phasescan::{
    attach_fits, detect_transitions, refine_transition, roots_of_an, rows_to_csv, scan, Cause, ScanError,
    ScanRange, Thresholds, Transition,
};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::potential_file::PotentialFile;
use crate::{AsymptArgs, AsymptRoute, EnumerateArgs, ExpandArgs, ExpandRoute, Format, PhaseScanArgs, RootsArgs};

fn load_potential(path: &Path) -> Result<PotentialSpec, CliError> {
    let text = fs::read_to_string(path)?;
    PotentialFile::from_json(&text)?.to_spec()
}

fn parse_lambda(s: &str) -> Result<Rational, CliError> {
    s.parse().map_err(|_| CliError::Parse(format!("--lambda: not a rational number: {s:?}")))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json(value: &Value, out: &Option<PathBuf>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    emit(&text, out)
}

fn expansion_error(e: ExpansionError) -> CliError {
    CliError::Validation(e.to_string())
}

fn graph_error(e: GraphError) -> CliError {
    match e {
        GraphError::TooLarge { .. } => CliError::Guard(e.to_string()),
        GraphError::Kernel(k) => CliError::Validation(k.to_string()),
    }
}

fn coeff_json(c: &Coeff) -> Value {
    match c {
        Coeff::Rational(r) => json!(r.to_string()),
        Coeff::Param(p) => json!(p.coeffs().iter().map(Rational::to_string).collect::<Vec<_>>()),
    }
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn expand(args: ExpandArgs) -> Result<(), CliError> {
    let mut pot = load_potential(&args.potential)?;
    let lambda = args.lambda.as_deref().map(parse_lambda).transpose()?;
    if let Some(l) = &lambda {
        pot = pot.at_lambda(l);
    }
    let route = match args.route {
        ExpandRoute::Auto => Route::Auto,
        ExpandRoute::Recursion => Route::Recursion,
        ExpandRoute::Homogeneous => Route::Homogeneous,
    };
    let series = run_expand(&pot, args.n, ExpandOptions { route, ..Default::default() }).map_err(expansion_error)?;
    match args.output.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(
            &json!({
                "order": args.n,
                "potential": serde_json::to_value(PotentialFile::from_spec(&pot)).expect("plain data serializes"),
                "parametric": pot.is_param(),
                "lambda": lambda.map(|l| l.to_string()),
                "a": series.iter().map(coeff_json).collect::<Vec<_>>(),
            }),
            &args.output.out,
        ),
        Format::Csv => {
            let mut text = String::from("n,power,coeff\n");
            for (n, c) in series.iter().enumerate() {
                match c {
                    Coeff::Rational(r) => writeln!(text, "{n},0,{r}").unwrap(),
                    Coeff::Param(p) if p.coeffs().is_empty() => writeln!(text, "{n},0,0").unwrap(),
                    Coeff::Param(p) => {
                        for (i, r) in p.coeffs().iter().enumerate() {
                            writeln!(text, "{n},{i},{r}").unwrap();
                        }
                    }
                }
            }
            emit(&text, &args.output.out)
        }
    }
}

fn profile_text(entry: &CensusEntry) -> String {
    entry.profile.iter().map(|(u, w)| format!("({u},{w})")).collect::<Vec<_>>().join(" ")
}

fn census_json(entries: &[CensusEntry]) -> Value {
    json!(entries
        .iter()
        .map(|e| json!({
            "profile": e.profile.iter().map(|&(u, w)| [u, w]).collect::<Vec<_>>(),
            "labeled": e.labeled.to_string(),
            "weight": e.weight.to_string(),
        }))
        .collect::<Vec<_>>())
}

pub fn enumerate(args: EnumerateArgs) -> Result<(), CliError> {
    let (entries, summary) = if args.generic {
        let edges = args.edges.ok_or_else(|| CliError::Validation("--generic needs --edges".into()))?;
        let mut entries = Vec::new();
        for s in 0..=edges {
            entries.extend(enumerate_census(s, edges - s, DegreeRule::at_least(args.min_degree)).map_err(graph_error)?);
        }
        let poly = census_polynomial(&entries);
        let terms: Vec<Value> =
            poly.terms().map(|(m, c)| json!({ "monomial": m.to_string(), "weight": c.to_string() })).collect();
        let summary = json!({
            "mode": "generic",
            "edges": edges,
            "min_degree": args.min_degree,
            "polynomial": terms,
            "display": poly.to_string(),
        });
        (entries, summary)
    } else {
        let path = args.potential.as_ref().expect("clap enforces --potential");
        let n = args.n.expect("clap enforces --n");
        let pot = load_potential(path)?;
        let entries = census_for_order(n, &pot).map_err(graph_error)?;
        let total = weighted_a(n, &pot).map_err(graph_error)?;
        let summary = json!({ "mode": "potential", "n": n, "weighted_a": coeff_json(&total) });
        (entries, summary)
    };
    match args.output.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut value = summary;
            value["census"] = census_json(&entries);
            emit_json(&value, &args.output.out)
        }
        Format::Csv => {
            let mut text = String::from("profile,labeled,weight\n");
            for e in &entries {
                writeln!(text, "{},{},{}", profile_text(e), e.labeled, e.weight).unwrap();
            }
            emit(&text, &args.output.out)
        }
    }
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn circle_json(p: &CirclePoint) -> Value {
    json!({ "x": p.x, "y": p.y, "angle": p.angle, "v": p.v, "b": p.b })
}

fn g_json(p: &GCritPoint) -> Value {
    json!({
        "x": complex_json(p.x),
        "y": complex_json(p.y),
        "g": complex_json(p.g),
        "det_hessian": complex_json(p.det_hessian),
    })
}

fn sign_name(s: LawSign) -> &'static str {
    match s {
        LawSign::Positive => "positive",
        LawSign::Alternating => "alternating",
    }
}

fn law_json(law: &AsymptoticLaw) -> Value {
    json!({
        "alpha": law.alpha,
        "c": law.c,
        "vanishing_period": law.vanishing_period,
        "sign": sign_name(law.sign),
    })
}

fn asymptotics_error(lambda: &Rational, e: AsymptoticsError) -> CliError {
    match e {
        AsymptoticsError::NotHomogeneous => CliError::Validation(format!("λ = {lambda}: {e}")),
        _ => CliError::Degenerate(format!("λ = {lambda}: {e}")),
    }
}

pub fn asympt(args: AsymptArgs) -> Result<(), CliError> {
    let pot = load_potential(&args.potential)?;
    let lambda = parse_lambda(&args.lambda)?;
    let v = FloatPoly::from_potential(&pot, lambda.to_f64());
    let fail = |e| asymptotics_error(&lambda, e);
    let homogeneous = v.homogeneous_degree().is_some();
    let (primary, secondary, route) = match (args.route, homogeneous) {
        (AsymptRoute::Auto | AsymptRoute::Circle, true) => {
            (law_circle(&v).map_err(fail)?, Some(law_g_homogeneous(&v).map_err(fail)?), "circle")
        }
        (AsymptRoute::CriticalPoints, true) => {
            (law_g_homogeneous(&v).map_err(fail)?, Some(law_circle(&v).map_err(fail)?), "critical-points")
        }
        (AsymptRoute::Circle, false) => return Err(fail(AsymptoticsError::NotHomogeneous)),
        (_, false) => (law_g(&g_real_critical_points(&v).map_err(fail)?).map_err(fail)?, None, "critical-points"),
    };
    let psi = match &secondary {
        Some(other) if other.g_points.len() > primary.g_points.len() => &other.g_points,
        _ => &primary.g_points,
    };
    let phi = if primary.circle_points.is_empty() {
        secondary.as_ref().map_or(&primary.circle_points, |s| &s.circle_points)
    } else {
        &primary.circle_points
    };
    let mut value = law_json(&primary);
    value["lambda"] = json!(lambda.to_string());
    value["route"] = json!(route);
    value["circle_points"] = json!(phi.iter().map(circle_json).collect::<Vec<_>>());
    value["g_points"] = json!(psi.iter().map(g_json).collect::<Vec<_>>());
    if let Some(other) = &secondary {
        value["cross_check"] = law_json(other);
    }
    emit_json(&value, &args.out)
}

fn cause_name(c: Cause) -> &'static str {
    match c {
        Cause::AlphaKink => "alpha-kink",
        Cause::CDivergence => "c-divergence",
        Cause::RegimeChange => "regime-change",
        Cause::Failed => "undefined",
    }
}

fn transition_json(t: &Transition) -> Value {
    json!({
        "lambda": t.lambda,
        "lo": t.lo,
        "hi": t.hi,
        "causes": t.causes.iter().map(|&c| cause_name(c)).collect::<Vec<_>>(),
        "peak_c": t.peak_c,
    })
}

pub fn phase_scan(args: PhaseScanArgs) -> Result<(), CliError> {
    let pot = load_potential(&args.potential)?;
    let range: ScanRange = args.range.parse().map_err(|e: ScanError| match e {
        ScanError::Syntax(_) => CliError::Parse(e.to_string()),
        ScanError::Invalid => CliError::Validation(e.to_string()),
    })?;
    let mut rows = scan(&pot, &range);
    if let Some(n) = args.fit_n {
        let series = run_expand(&pot, n, ExpandOptions::default()).map_err(expansion_error)?;
        attach_fits(&mut rows, &range, &series);
    }
    let thresholds = Thresholds { kink: args.kink_threshold, divergence: args.divergence_threshold };
    let transitions: Vec<Transition> =
        detect_transitions(&rows, thresholds).iter().map(|t| refine_transition(&pot, t)).collect();
    match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            for t in &transitions {
                let causes: Vec<&str> = t.causes.iter().map(|&c| cause_name(c)).collect();
                let peak = t.peak_c.map_or("none".to_string(), float);
                eprintln!("transition λ = {} (grid [{}, {}], {}, peak c {peak})", float(t.lambda), t.lo, t.hi, causes.join("+"));
            }
            emit(&rows_to_csv(&rows), &args.output.out)
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "lambda": r.lambda,
                        "alpha": r.alpha_analytic,
                        "c": r.c_analytic,
                        "regime": r.regime_id,
                        "alpha_fit": r.alpha_fit,
                        "c_fit": r.c_fit,
                        "error": r.error,
                    })
                })
                .collect();
            let transitions: Vec<Value> = transitions.iter().map(transition_json).collect();
            emit_json(&json!({ "rows": rows, "transitions": transitions }), &args.output.out)
        }
    }
}

pub fn roots(args: RootsArgs) -> Result<(), CliError> {
    let pot = load_potential(&args.potential)?;
    if !pot.is_param() {
        return Err(CliError::Validation("roots needs a λ-dependent potential".into()));
    }
    let series = run_expand(&pot, args.n, ExpandOptions::default()).map_err(expansion_error)?;
    let Some(Coeff::Param(p)) = series.get(args.n) else {
        return Err(CliError::Validation("parametric series expected".into()));
    };
    if p.degree().is_none() {
        return Err(CliError::Validation(format!("A_{} is identically zero", args.n)));
    }
    let set = roots_of_an(p, args.n).map_err(|e| CliError::Degenerate(e.to_string()))?;
    match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut text = String::from("re_root,im_root\n");
            for z in &set.roots {
                writeln!(text, "{},{}", float(z.re), float(z.im)).unwrap();
            }
            emit(&text, &args.output.out)
        }
        Format::Json => emit_json(
            &json!({
                "n": set.n,
                "degree": set.roots.len(),
                "residual": set.residual,
                "conjugate_mismatch": set.conjugate_mismatch(),
                "roots": set.roots.iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
            }),
            &args.output.out,
        ),
    }
}
