//! Command dispatch. Each command yields one JSON document; TSV and text are
//! rendered from that document, so cached and fresh runs print the same bytes.

use serde_json::{json, Map, Value};

use liftcong::congr::{weight32_example, congruence_check, SearchOptions};
use liftcong::exactnum::{prime_split, PrimeIdeal};
use liftcong::forms1::{dim_s, eigenforms, PrimitiveForm};
use liftcong::halfint::shimura_match;
use liftcong::lift::valuation::LValueContext;
use liftcong::lift::{lift_table, LiftSpec};
use liftcong::lser::AdjointValue;
use liftcong::msym::{build_space, critical_value_table, periods_eta};
use liftcong::{Error, Result};

use crate::cache::Cache;
use crate::{Cli, Command, Format};

pub fn run(cli: &Cli) -> Result<String> {
    let cache = Cache::new(cli.cache_dir.clone());
    let (schema, config, payload) = match &cli.command {
        Command::Eigenforms { weight, prec } => {
            let params = json!({"weight": weight, "prec": prec});
            ("liftcong.eigenforms/1", params.clone(), cache.get_or_compute("forms1", "eigenforms", params, || cmd_eigenforms(*weight, *prec))?)
        }
        Command::PlusSpace { lambda, prec } => {
            let params = json!({"lambda": lambda, "prec": prec});
            ("liftcong.plus_space/1", params.clone(), cache.get_or_compute("halfint", "shimura_match", params, || cmd_plus_space(*lambda, *prec))?)
        }
        Command::LiftCoeffs { n, k, det_bound, form } => {
            let params = json!({"n": n, "k": k, "det_bound": det_bound, "form": form});
            ("liftcong.siegel_table/1", params.clone(), cache.get_or_compute("lift", "lift_table", params, || cmd_lift_coeffs(*n, *k, *det_bound, *form))?)
        }
        Command::Lvalues { weight, l, d, prime, prime_index, form } => {
            let (lo, hi) = parse_range(l, "l")?;
            let params = json!({"weight": weight, "l": [lo, hi], "d": d, "prime": prime, "prime_index": prime_index, "form": form});
            let p = cache.get_or_compute("msym", "critical_value_table", params.clone(), || {
                cmd_lvalues(*weight, lo, hi, *d, *prime, *prime_index, *form)
            })?;
            ("liftcong.critical_values/1", params, p)
        }
        Command::Congruence { n, k, prime, form, m_range, d_bound, bits } => {
            let m_range = m_range.as_deref().map(|s| parse_range(s, "m")).transpose()?;
            let params = json!({"n": n, "k": k, "prime": prime, "form": form, "m_range": m_range, "d_bound": d_bound, "bits": bits});
            let opts = SearchOptions { m_range, d_bound: *d_bound, bits: *bits };
            ("liftcong.congruence/1", params, cmd_congruence(&cache, *n, *k, *prime, *form, &opts)?)
        }
        Command::Example { bits } => {
            let params = json!({"bits": bits});
            let p = cache.get_or_compute("congr", "weight32_example", params.clone(), || Ok(weight32_example(*bits)?.to_json()))?;
            ("liftcong.example/1", params, p)
        }
    };
    let mut config = config.as_object().cloned().unwrap_or_default();
    config.insert("command".into(), json!(command_name(&cli.command)));
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(schema));
    doc.insert("config".into(), Value::Object(config));
    doc.insert("result".into(), payload);
    let doc = Value::Object(doc);
    Ok(match cli.out {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")),
        Format::Tsv => render_tsv(&cli.command, &doc["result"]),
        Format::Text => render_text(&cli.command, &doc["result"]),
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eigenforms { .. } => "eigenforms",
        Command::PlusSpace { .. } => "plus-space",
        Command::LiftCoeffs { .. } => "lift-coeffs",
        Command::Lvalues { .. } => "lvalues",
        Command::Congruence { .. } => "congruence",
        Command::Example { .. } => "example",
    }
}

/// "a" or "a..b", inclusive.
pub fn parse_range(s: &str, what: &str) -> Result<(u32, u32)> {
    let bad = || Error::pre(format!("--{what} expects N or A..B, got {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn pick_form(w: u32, prec: usize, idx: usize) -> Result<PrimitiveForm> {
    let mut fs = eigenforms(w, prec)?;
    if idx >= fs.len() {
        return Err(Error::pre(format!("weight {w} has {} Galois orbits, --form {idx} out of range", fs.len())));
    }
    Ok(fs.swap_remove(idx))
}

fn pick_prime(f: &PrimitiveForm, p: u64, idx: usize) -> Result<PrimeIdeal> {
    let mut ps = prime_split(&f.field, p)?;
    if idx >= ps.len() {
        return Err(Error::pre(format!("{p} has {} prime ideals in Q(f), index {idx} out of range", ps.len())));
    }
    Ok(ps.swap_remove(idx))
}

fn minpoly(f: &PrimitiveForm) -> String {
    f.minpoly().to_string()
}

fn cmd_eigenforms(w: u32, prec: usize) -> Result<Value> {
    let forms = eigenforms(w, prec + 1)?;
    Ok(json!({
        "weight": w,
        "dim_cusp": dim_s(w),
        "forms": forms.iter().enumerate().map(|(i, f)| json!({
            "orbit": i,
            "degree": f.field.degree(),
            "field_minpoly": minpoly(f),
            "coefficients": (1..=prec).map(|n| f.coeff(n).to_strings()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    }))
}

fn cmd_plus_space(lambda: u32, prec: usize) -> Result<Value> {
    let gs = shimura_match(lambda, prec)?;
    Ok(json!({
        "lambda": lambda,
        "weight": format!("{}/2", 2 * lambda + 1),
        "dim": gs.len(),
        "forms": gs.iter().enumerate().map(|(i, g)| json!({
            "orbit": i,
            "field_minpoly": minpoly(&g.f),
            "normalized_at": g.normalized_at,
            "coefficients": (0..prec.min(g.g.prec()))
                .filter(|&e| !g.g.coeff(e).is_zero())
                .map(|e| json!([e, g.g.coeff(e).to_strings()]))
                .collect::<Vec<_>>(),
            "shimura_weight": 2 * lambda,
        })).collect::<Vec<_>>(),
    }))
}

fn cmd_lift_coeffs(n: usize, k: u32, det_bound: i64, form: usize) -> Result<Value> {
    if n != 2 {
        return Err(Error::pre("coefficient tables are available for n = 2"));
    }
    if det_bound < 1 {
        return Err(Error::pre("--det-bound must be positive"));
    }
    let lambda = k.checked_sub(n as u32 / 2).ok_or_else(|| Error::pre("k too small"))?;
    let mut gs = shimura_match(lambda, det_bound as usize + 1)?;
    if form >= gs.len() {
        return Err(Error::pre(format!("plus space has {} eigenforms, --form {form} out of range", gs.len())));
    }
    let spec = LiftSpec::new(n, k, gs.swap_remove(form))?;
    Ok(lift_table(&spec, det_bound)?.to_json())
}

fn cmd_lvalues(w: u32, lo: u32, hi: u32, d: i64, p: u64, pidx: usize, form: usize) -> Result<Value> {
    let f = pick_form(w, 0, form)?;
    let prime = pick_prime(&f, p, pidx)?;
    let pair = periods_eta(&build_space(w)?, &f, &prime)?;
    let ls: Vec<u32> = (lo..=hi).collect();
    let table = critical_value_table(&pair, &ls, d)?;
    let (_, gen, e, fdeg) = prime.to_serial();
    Ok(json!({
        "weight": w,
        "field_minpoly": minpoly(&f),
        "prime": {"p": p, "generator": gen, "ramification": e, "residue_degree": fdeg},
        "entries": table,
    }))
}

fn cmd_congruence(cache: &Cache, n: usize, k: u32, p: u64, form: usize, opts: &SearchOptions) -> Result<Value> {
    let w = (2 * k).checked_sub(n as u32).ok_or_else(|| Error::pre("need 2k > n"))?;
    let f = pick_form(w, 0, form)?;
    let primes = prime_split(&f.field, p)?;
    let mut reports = Vec::new();
    let mut adjoint: Option<(Vec<AdjointValue>, Value)> = None;
    for prime in &primes {
        let mut ctx = LValueContext::new(n, k, &f, prime)?;
        if adjoint.is_none() {
            let ms = ctx.adjoint_arguments();
            let params = json!({"weight": w, "field_minpoly": minpoly(&f), "m": ms, "bits": opts.bits});
            let base = ctx.clone();
            let v = cache.get_or_compute("lser", "adjoint_normalized", params, || {
                let c = base.compute_adjoint(opts.bits)?;
                Ok(json!({
                    "values": c.adjoint.values().map(|a| a.to_json()).collect::<Vec<_>>(),
                    "failures": c.adjoint_failures,
                }))
            })?;
            let vals = v["values"]
                .as_array()
                .map(|a| a.iter().map(|x| AdjointValue::from_json(ctx.f(), x)).collect::<Result<Vec<_>>>())
                .transpose()?
                .unwrap_or_default();
            adjoint = Some((vals, v["failures"].clone()));
        }
        let (vals, failures) = adjoint.as_ref().expect("set above");
        ctx = ctx.with_adjoint(vals.clone());
        if let Some(m) = failures.as_object() {
            for (key, why) in m {
                if let Ok(arg) = key.parse() {
                    ctx.adjoint_failures.insert(arg, why.as_str().unwrap_or_default().to_string());
                }
            }
        }
        reports.push(congruence_check(&ctx, opts)?.to_json());
    }
    Ok(json!({"field_minpoly": minpoly(&f), "reports": reports}))
}

fn strs(v: &Value) -> String {
    v.as_array().map(|a| a.iter().filter_map(|x| x.as_str()).collect::<Vec<_>>().join(",")).unwrap_or_default()
}

fn arr(v: &Value) -> &[Value] {
    v.as_array().map(Vec::as_slice).unwrap_or(&[])
}

fn render_tsv(c: &Command, r: &Value) -> String {
    let mut s = String::new();
    match c {
        Command::Eigenforms { .. } => {
            s += "orbit\tn\tcoeff\n";
            for f in arr(&r["forms"]) {
                for (i, a) in arr(&f["coefficients"]).iter().enumerate() {
                    s += &format!("{}\t{}\t{}\n", f["orbit"], i + 1, strs(a));
                }
            }
        }
        Command::PlusSpace { .. } => {
            s += "orbit\te\tcoeff\n";
            for f in arr(&r["forms"]) {
                for pair in arr(&f["coefficients"]) {
                    s += &format!("{}\t{}\t{}\n", f["orbit"], pair[0], strs(&pair[1]));
                }
            }
        }
        Command::LiftCoeffs { .. } => {
            s += "t11x2\tt12x2\tt22x2\tdet2\tcoeff\n";
            for e in arr(&r["entries"]) {
                let m = &e["two_t"];
                let det = m[0][0].as_i64().unwrap_or(0) * m[1][1].as_i64().unwrap_or(0) - m[0][1].as_i64().unwrap_or(0).pow(2);
                s += &format!("{}\t{}\t{}\t{}\t{}\n", m[0][0], m[0][1], m[1][1], det, strs(&e["coeff"]));
            }
        }
        Command::Lvalues { .. } => {
            s += "l\td\tparity\tcoordinates\tnorm\n";
            for e in arr(&r["entries"]) {
                s += &format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    e["l"],
                    e["d"],
                    e["parity"].as_str().unwrap_or(""),
                    strs(&e["coordinates"]),
                    e["norm_factorization"].as_str().unwrap_or("")
                );
            }
        }
        Command::Congruence { .. } => {
            s += "prime_generator\tcondition\twitness\tlabel\texponent\tord_P\tnorm\n";
            for rep in arr(&r["reports"]) {
                let g = strs(&rep["context"]["prime"]["generator"]);
                for cond in arr(&rep["conditions"]) {
                    let w = match &cond["witness"] {
                        Value::Null => "-".to_string(),
                        x => format!("m={},D={}", x["m"], x["d"]),
                    };
                    for f in arr(&cond["factors"]) {
                        s += &format!(
                            "{g}\t{}\t{w}\t{}\t{}\t{}\t{}\n",
                            cond["name"].as_str().unwrap_or(""),
                            f["label"].as_str().unwrap_or(""),
                            f["exponent"],
                            f["ord_P"],
                            f["norm_factorization"].as_str().unwrap_or("")
                        );
                    }
                }
            }
        }
        Command::Example { .. } => {
            s += "label\tcomputed\texpected_away_from_6\tmatches\n";
            for c in arr(&r["norms"]) {
                s += &format!(
                    "{}\t{}\t{}\t{}\n",
                    c["label"].as_str().unwrap_or(""),
                    c["computed"].as_str().unwrap_or(""),
                    c["expected_away_from_6"].as_str().unwrap_or(""),
                    c["matches"]
                );
            }
        }
    }
    s
}

fn report_text(rep: &Value) -> String {
    let ctx = &rep["context"];
    let mut s = format!("P | {} with generator ({})\n", ctx["prime"]["p"], strs(&ctx["prime"]["generator"]));
    for cond in arr(&rep["conditions"]) {
        let w = match &cond["witness"] {
            Value::Null => String::new(),
            x => format!(" (m = {}, D = {})", x["m"], x["d"]),
        };
        s += &format!("  {}{}: ord_P = {}, holds = {}\n", cond["name"].as_str().unwrap_or(""), w, cond["ord_total"], cond["holds"]);
    }
    s += &format!("  adjoint certified: {}\n  verdict: {}\n", rep["adjoint_certified"], rep["verdict"].as_str().unwrap_or(""));
    s
}

fn render_text(c: &Command, r: &Value) -> String {
    let mut s = String::new();
    match c {
        Command::Eigenforms { .. } => {
            s += &format!("S_{}: dimension {}\n", r["weight"], r["dim_cusp"]);
            for f in arr(&r["forms"]) {
                s += &format!("orbit {}: degree {}, field {}\n", f["orbit"], f["degree"], f["field_minpoly"].as_str().unwrap_or(""));
                for (i, a) in arr(&f["coefficients"]).iter().enumerate() {
                    s += &format!("  a({}) = [{}]\n", i + 1, strs(a));
                }
            }
        }
        Command::PlusSpace { .. } => {
            s += &format!("S+_{}: dimension {}\n", r["weight"].as_str().unwrap_or(""), r["dim"]);
            for f in arr(&r["forms"]) {
                s += &format!("orbit {}: field {}, c(e) = 1 at e = {}\n", f["orbit"], f["field_minpoly"].as_str().unwrap_or(""), f["normalized_at"]);
                for pair in arr(&f["coefficients"]) {
                    s += &format!("  c({}) = [{}]\n", pair[0], strs(&pair[1]));
                }
            }
        }
        Command::LiftCoeffs { .. } => {
            s += &format!("weight {}, det(2T) <= {}, {} classes\n", r["weight"], r["det_bound"], arr(&r["entries"]).len());
            s += &render_tsv(c, r);
        }
        Command::Lvalues { .. } => {
            s += &format!("weight {}, field {}, P | {}\n", r["weight"], r["field_minpoly"].as_str().unwrap_or(""), r["prime"]["p"]);
            for e in arr(&r["entries"]) {
                s += &format!(
                    "  L({}, f, chi_{}) = [{}]   N = {}\n",
                    e["l"],
                    e["d"],
                    strs(&e["coordinates"]),
                    e["norm_factorization"].as_str().unwrap_or("")
                );
            }
        }
        Command::Congruence { .. } => {
            for rep in arr(&r["reports"]) {
                s += &report_text(rep);
            }
        }
        Command::Example { .. } => {
            s += &format!(
                "dim S_32 = {}, dim S+_(17/2) = dim lift space = {}, [Q(f):Q] = {}, 211 splits into {} primes\n",
                r["dim_S32"],
                r["dim_plus_17_2"],
                r["field_degree"],
                arr(&r["split_211"]).len()
            );
            for c in arr(&r["norms"]) {
                s += &format!("N({}) = {}\n", c["label"].as_str().unwrap_or(""), c["computed"].as_str().unwrap_or(""));
            }
            s += &format!("xi~(6) = {}\n", r["xi_tilde_6"].as_str().unwrap_or(""));
            for rep in arr(&r["reports"]) {
                s += &report_text(rep);
            }
            s += "negative control:\n";
            s += &report_text(&r["negative_control"]);
            s += &format!("conclusion reproduced: {}\n", r["conclusion_reproduced"]);
        }
    }
    s
}
