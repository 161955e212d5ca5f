//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use liftcong::congr::{weight32_example, ExampleReport, Verdict, Witness};
use liftcong::exactnum::{bernoulli, q_frac, q_int, xi_tilde, NfElem, Rational};
use liftcong::forms1::hecke_charpoly;
use liftcong::halfint::{shimura_match, PlusEigenform};
use liftcong::lift::{eisenstein_table, h_poly, hecke_tp_siegel, lift_table, maass_table, tp_eigenvalue_degree2, LiftSpec};
use liftcong::lser::ratio_deviation;
use liftcong::msym::{build_space, cuspidal_charpoly};
use liftcong::qforms::{construct_lattice, enumerate_pd, HalfIntegralMatrix, LatticeMode};
use liftcong::siegel::{check_functional_equation, density_profile, predicted_density, siegel_series, stabilization_bound};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn norm_line(ex: &ExampleReport, idx: usize) -> Result<String, String> {
    let c = &ex.norms[idx];
    ensure(c.matches, format!("N({}) = {}, expected {} away from 2, 3", c.label, c.computed, c.expected_away_from_6))?;
    Ok(format!("N({}) = {}", c.label, c.computed))
}

fn criterion1(ex: &ExampleReport) -> Outcome {
    norm_line(ex, 0)
}

fn criterion2(ex: &ExampleReport) -> Outcome {
    Ok(format!("{}; {}", norm_line(ex, 1)?, norm_line(ex, 2)?))
}

fn criterion3() -> Outcome {
    ensure(xi_tilde(6).map_err(|e| e.to_string())? == q_frac(1, 252), "xi~(6) != 1/252")?;
    for m in (2..=40u32).step_by(2) {
        let sign = if (m / 2 + 1) % 2 == 0 { 1 } else { -1 };
        let lhs = xi_tilde(m).unwrap() * q_int(m as i64 * sign);
        ensure(lhs == bernoulli(m).unwrap(), format!("xi~({m}) inconsistent with B_{m}"))?;
    }
    Ok("xi~(6) = 1/252; Bernoulli identity for even m <= 40".into())
}

fn criterion4(ex: &ExampleReport) -> Outcome {
    ensure(ex.field_degree == 2, "[Q(f):Q] != 2")?;
    ensure(ex.split_211.len() == 2, "211 does not split")?;
    let mut hit = None;
    for r in &ex.reports {
        ensure(r.adjoint_certified, format!("conditional: {}", r.adjoint_notes.join("; ")))?;
        ensure(r.witnesses().contains(&Witness { m: 4, d: 1 }), "witness (m = 4, D = 1) missing")?;
        if r.verdict == Verdict::CongruencePrimeVsLiftComplement {
            let l18 = &r.condition1.factors[0];
            ensure(l18.label == "L(18,f)" && l18.ord_p >= 1, "condition (1) not carried by L(18,f)")?;
            hit = Some(r);
        }
    }
    let r = hit.ok_or("no prime above 211 reaches the lift-complement verdict")?;
    let ws: Vec<String> = r.witnesses().iter().map(|w| format!("(m={}, D={})", w.m, w.d)).collect();
    Ok(format!("P = ({}) : condition (1) via L(18,f); witnesses {}; verdict {}", r.context.prime.generator.join(", "), ws.join(" "), r.verdict.as_str()))
}

fn sk_form() -> PlusEigenform {
    shimura_match(9, 400).unwrap().remove(0)
}

fn criterion5(g: &PlusEigenform) -> Outcome {
    let spec = LiftSpec::new(2, 10, g.clone()).map_err(|e| e.to_string())?;
    let a = lift_table(&spec, 40).map_err(|e| e.to_string())?;
    let b = maass_table(g, 10, 40).map_err(|e| e.to_string())?;
    ensure(a.len() == b.len(), "table sizes differ")?;
    for (t, v) in a.iter() {
        ensure(b.get(t) == Some(v), format!("mismatch at {t}"))?;
    }
    Ok(format!("{} reduced T with det(2T) <= 40 agree exactly", a.len()))
}

fn criterion6(g: &PlusEigenform) -> Outcome {
    let k = 10u32;
    let spec = LiftSpec::new(2, k, g.clone()).map_err(|e| e.to_string())?;
    let table = lift_table(&spec, 120).map_err(|e| e.to_string())?;
    let eis = eisenstein_table(k, 120).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for p in [2u64, 3] {
        let img = hecke_tp_siegel(&table, p).map_err(|e| e.to_string())?;
        let lam = img.scalar_multiple_of(&table.restrict(img.det_bound)).ok_or("lift image is not a multiple")?;
        let expect = tp_eigenvalue_degree2(spec.f().coeff(p as usize), p, k);
        ensure(lam == expect, format!("T({p}) eigenvalue differs from c_f(p) + p^(k-1) + p^(k-2)"))?;
        let img = hecke_tp_siegel(&eis, p).map_err(|e| e.to_string())?;
        let mu = img.scalar_multiple_of(&eis.restrict(img.det_bound)).ok_or("Eisenstein image is not a multiple")?;
        let h = h_poly(2, p).eval(&Rational::from(BigInt::from(p).pow(k)));
        ensure(mu == NfElem::from_rational(eis.field(), h), format!("Eisenstein T({p}) eigenvalue != h_2,p(p^k)"))?;
        notes.push(format!("p={p}: lift c_f(p)+p^{}+p^{}, Eisenstein {}", k - 1, k - 2, mu.rational_part()));
    }
    Ok(format!("{} (lift exponents k-1, k-2 replace the printed 2k-3, 2k-4)", notes.join("; ")))
}

fn criterion7(g9: &PlusEigenform) -> Outcome {
    let mut forms = shimura_match(16, 0).map_err(|e| e.to_string())?;
    forms.push(g9.clone());
    for g in &forms {
        for p in [3u64, 5, 7] {
            let ev = g.eigenvalue(p).map_err(|e| e.to_string())?;
            ensure(&ev == g.f.coeff(p as usize), format!("lambda = {}: T({p}^2) != c_f({p})", g.lambda))?;
        }
    }
    Ok(format!("{} eigenforms (lambda 16 orbit over its quadratic field, lambda 9), p in 3, 5, 7", forms.len()))
}

fn criterion8() -> Outcome {
    let mut mats: Vec<HalfIntegralMatrix> = (1..=18).map(|t| HalfIntegralMatrix::diag(&[t])).collect();
    mats.extend(enumerate_pd(2, 36).map_err(|e| e.to_string())?);
    let mut polys = 0;
    for t in &mats {
        for p in [2u64, 3, 5] {
            let f = siegel_series(t, p).map_err(|e| e.to_string())?;
            ensure(f.eval(&q_int(0)) == q_int(1), format!("F(0) != 1 for {t} at {p}"))?;
            ensure(check_functional_equation(&f), format!("not palindromic: {t} at {p}"))?;
            let prof = density_profile(t, p, stabilization_bound(t, p)).map_err(|e| e.to_string())?;
            for r in [2u32, 3] {
                ensure(prof.at(r) == predicted_density(&f, r), format!("oracle mismatch {t} p={p} r={r}"))?;
                ensure(
                    prof.at(r) / prof.at(r + 1) == predicted_density(&f, r) / predicted_density(&f, r + 1),
                    format!("oracle ratio mismatch {t} p={p} r={r}"),
                )?;
            }
            polys += 1;
        }
    }
    for (n, q) in [(4usize, 2u64), (4, 3), (4, 5), (12, 2), (12, 3)] {
        let t = construct_lattice(n, LatticeMode::QSquared(q)).map_err(|e| e.to_string())?;
        let f = siegel_series(&t, q).map_err(|e| e.to_string())?;
        let h = BigInt::from(q).pow(((n - 2) / 2) as u32);
        let want = vec![BigInt::from(1), -(&h) * BigInt::from(q * q + q), BigInt::from(q).pow(3) * &h * &h];
        ensure(f.coeffs == want, format!("family instance n={n} q={q}: {:?}", f.coeffs))?;
    }
    Ok(format!("{polys} polynomials checked against the density oracle; family reproduced for 5 (n, q)"))
}

fn criterion9() -> Outcome {
    let weights = [12u32, 16, 18, 20, 22, 26, 32];
    let mut worst = 0f64;
    for w in weights {
        let space = build_space(w).map_err(|e| e.to_string())?;
        for p in [2u64, 3, 5] {
            let q = hecke_charpoly(w, p).map_err(|e| e.to_string())?;
            ensure(cuspidal_charpoly(&space, p).map_err(|e| e.to_string())? == q.mul(&q), format!("w={w} p={p}: not a square"))?;
        }
        worst = worst.max(ratio_deviation(w, 128).map_err(|e| e.to_string())?);
    }
    ensure(worst <= 1e-20, format!("ratio deviation {worst:e}"))?;
    Ok(format!("charpolys squared for 7 weights; worst ratio deviation {worst:.1e}"))
}

fn criterion10(ex: &ExampleReport) -> Outcome {
    let r = &ex.negative_control;
    ensure(r.verdict == Verdict::NotEstablished, format!("verdict {}", r.verdict.as_str()))?;
    ensure(r.condition2.iter().all(|c| c.ord_total >= 1), "some condition-(2) instance is a P|5 unit")?;
    Ok(format!("P | 5: {} witnesses all divisible; verdict not-established", r.condition2.len()))
}

fn run(id: u32, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    let secs = start.elapsed().as_secs_f64();
    match res {
        Ok(detail) => {
            println!("criterion {id:>2} PASS [{secs:7.1}s] {name}: {detail}");
            true
        }
        Err(why) => {
            println!("criterion {id:>2} FAIL [{secs:7.1}s] {name}: {why}");
            false
        }
    }
}

fn main() {
    // `cargo test -- --list` and filters probe the binary; run only when invoked plainly.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut ok = true;
    let ex = catch_unwind(|| weight32_example(256));
    let ex = match ex {
        Ok(Ok(ex)) => Some(ex),
        Ok(Err(e)) => {
            println!("example reproduction failed: {e}");
            None
        }
        Err(_) => None,
    };
    let ex = ex.as_ref();
    let with_ex = |f: fn(&ExampleReport) -> Outcome| move || ex.map_or(Err("example unavailable".into()), f);
    ok &= run(1, "L(18,f) norm", with_ex(criterion1));
    ok &= run(2, "product and twisted norms", with_ex(criterion2));
    ok &= run(3, "xi~ values", criterion3);
    ok &= run(4, "211 congruence verdict", with_ex(criterion4));
    let g = sk_form();
    ok &= run(5, "lift = Maass, k = 10", || criterion5(&g));
    ok &= run(6, "Hecke eigenform property", || criterion6(&g));
    ok &= run(7, "Shimura matching", || criterion7(&g));
    ok &= run(8, "Siegel series invariants", criterion8);
    ok &= run(9, "modular symbol consistency", criterion9);
    ok &= run(10, "negative control P | 5", with_ex(criterion10));
    println!("acceptance: {}", if ok { "all criteria pass" } else { "FAILURES" });
    if !ok {
        std::process::exit(1);
    }
}
