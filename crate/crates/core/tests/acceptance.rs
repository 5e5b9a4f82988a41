//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any fails.

use std::time::{Duration, Instant};

use nearkahler::curvature::verify_curvature_identities;
use nearkahler::fiber::{verify_fiber_identities, SU3Structure};
use nearkahler::hodge_model::verify_hodge_model;
use nearkahler::jets::verify_jet_identities;
use nearkahler::linalg::q;
use nearkahler::report::{ArithmeticMode, IdentityCheck};
use nearkahler::spectra::{
    enumerate_irreps, SpectraConfig, SpectralBundle, SpectralEngine, Verdict, DEFAULT_CUTOFF,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn all_exact_pass(checks: &[IdentityCheck]) -> Result<usize, String> {
    if let Some(c) = checks.iter().find(|c| !c.passed()) {
        return Err(format!("{} fails at {}", c.id, c.witness.as_deref().unwrap_or("?")));
    }
    if let Some(c) = checks.iter().find(|c| c.mode != ArithmeticMode::Exact) {
        return Err(format!("{} is not exact", c.id));
    }
    Ok(checks.len())
}

fn timed_suite(
    name: &str,
    limit: Duration,
    f: impl FnOnce() -> nearkahler::Result<Vec<IdentityCheck>>,
) -> Outcome {
    let t = Instant::now();
    let res = f();
    let dt = t.elapsed();
    match res.map_err(|e| e.to_string()).and_then(|c| all_exact_pass(&c)) {
        Ok(n) => Outcome {
            ok: dt < limit,
            detail: format!("{n} {name} identities exact in {:.2} s (limit {} s)", dt.as_secs_f64(), limit.as_secs()),
        },
        Err(e) => Outcome { ok: false, detail: e },
    }
}

fn criterion3() -> Outcome {
    let s = SU3Structure::standard();
    let checks = match verify_curvature_identities(&s) {
        Ok(c) => c,
        Err(e) => return Outcome { ok: false, detail: e.to_string() },
    };
    let ids = ["gray_relation_einstein", "gray_difference_cross_check", "q_ricci_one_forms", "q_two_forms"];
    for id in ids {
        match checks.iter().find(|c| c.id == id) {
            Some(c) if c.passed() && c.basis_size >= 100 && c.mode == ArithmeticMode::Exact => {}
            Some(c) => {
                return Outcome {
                    ok: false,
                    detail: format!("{id}: {:?} on {} samples, witness {:?}", c.status, c.basis_size, c.witness),
                }
            }
            None => return Outcome { ok: false, detail: format!("{id} missing") },
        }
    }
    Outcome {
        ok: true,
        detail: "q(gray(R̄)) − q(R̄) = D on every bundle and R̄ic = 4g ⇒ Ric = 5g, exact on 100 random R̄".into(),
    }
}

fn criterion6(engine: &SpectralEngine) -> Outcome {
    let t = Instant::now();
    let cutoff = q(DEFAULT_CUTOFF);
    let n = enumerate_irreps(cutoff).map(|v| v.len()).unwrap_or(0);
    let checks = match engine.verify(cutoff) {
        Ok(c) => c,
        Err(e) => return Outcome { ok: false, detail: e.to_string() },
    };
    let dt = t.elapsed();
    if let Some(c) = checks.iter().find(|c| !c.passed()) {
        return Outcome {
            ok: false,
            detail: format!("{} fails at {}", c.id, c.witness.as_deref().unwrap_or("?")),
        };
    }
    Outcome {
        ok: n >= 50,
        detail: format!(
            "{} setup and block checks hold on {n} irreps (Casimir ≤ {DEFAULT_CUTOFF}) in {:.1} s",
            checks.len(),
            dt.as_secs_f64()
        ),
    }
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Present => "present",
        Verdict::AbsentCertified => "absent (certified)",
        Verdict::AbsentBelowCutoffOnly => "absent in computed blocks only",
    }
}

fn criterion7(engine: &SpectralEngine) -> Outcome {
    let t = Instant::now();
    let m = match engine.moduli(q(DEFAULT_CUTOFF)) {
        Ok(m) => m,
        Err(e) => return Outcome { ok: false, detail: e.to_string() },
    };
    let bad: Vec<&str> = m.blocks.iter().filter(|b| !b.equal).map(|b| b.irrep.as_str()).collect();
    let verdicts: Vec<String> = m
        .verdicts
        .iter()
        .map(|v| format!("{}@{}: dim {} {}", v.bundle.name(), v.eigenvalue, v.dim, verdict_text(v.verdict)))
        .collect();
    Outcome {
        ok: m.equality && bad.is_empty(),
        detail: format!(
            "{} blocks, TT(10) = {} vs E(2)+E(6)+E(12) = {}{}; {}; cluster-stable: {} [{:.1} s]",
            m.blocks.len(),
            m.totals.tt10,
            m.totals.e_sum,
            if bad.is_empty() { String::new() } else { format!(", unequal in {}", bad.join(" ")) },
            verdicts.join("; "),
            m.stable,
            t.elapsed().as_secs_f64()
        ),
    }
}

fn reports_json(engine: &SpectralEngine, cutoff: i64) -> nearkahler::Result<Vec<String>> {
    let c = q(cutoff);
    let blocks = engine.blocks(c)?;
    let mut out: Vec<String> = SpectralBundle::ALL
        .iter()
        .map(|b| engine.spectrum_from(&blocks, *b, c).to_json())
        .collect();
    out.push(engine.moduli_from(&blocks, c).to_json());
    Ok(out)
}

fn criterion8(cold: &SpectralEngine, cache_dir: &std::path::Path) -> Outcome {
    let run = || -> nearkahler::Result<(bool, bool, bool, String)> {
        let t = Instant::now();
        let cold_reports = reports_json(cold, DEFAULT_CUTOFF)?;
        let warm = SpectralEngine::new(SpectraConfig::default(), Some(cache_dir.to_path_buf()))?;
        let warm_reports = reports_json(&warm, DEFAULT_CUTOFF)?;
        let stats = warm.cache_stats();
        let fresh = SpectralEngine::new(SpectraConfig::default(), None)?;
        let fresh_reports = reports_json(&fresh, DEFAULT_CUTOFF)?;
        let identical = cold_reports == warm_reports && cold_reports == fresh_reports;
        let warm_only_hits = stats.built == 0 && stats.rejected == 0;
        // a smaller cutoff must agree with the larger one where it is complete
        let small = 40;
        let mut nested = true;
        for b in SpectralBundle::ALL {
            let lo = warm.spectrum(b, q(small))?;
            let hi = warm.spectrum(b, q(DEFAULT_CUTOFF))?;
            let below = |r: &nearkahler::spectra::SpectralReport| {
                r.lines.iter().filter(|l| l.eigenvalue < lo.complete_below).cloned().collect::<Vec<_>>()
            };
            nested &= below(&lo) == below(&hi);
        }
        Ok((
            identical,
            warm_only_hits,
            nested,
            format!(
                "5 reports byte-identical across cold cache / warm cache ({} hits) / no cache: {identical}; nested at cutoff {small}: {nested} [{:.1} s]",
                stats.hits,
                t.elapsed().as_secs_f64()
            ),
        ))
    };
    match run() {
        Ok((a, b, c, detail)) => Outcome { ok: a && b && c, detail },
        Err(e) => Outcome { ok: false, detail: e.to_string() },
    }
}

fn main() {
    let s = SU3Structure::standard();
    let cache = tempfile::tempdir().expect("temp dir");
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "fiber identity suite", timed_suite("fiber", Duration::from_secs(1), || verify_fiber_identities(&s))));
    results.push((
        2,
        "curvature tables",
        timed_suite("curvature", Duration::from_secs(5), || verify_curvature_identities(&s)),
    ));
    results.push((3, "random curvature cross-check", criterion3()));
    results.push((4, "jet suite", timed_suite("jet", Duration::from_secs(10), || verify_jet_identities(&s))));
    results.push((5, "hodge model suite", timed_suite("hodge", Duration::from_secs(1), verify_hodge_model)));
    let engine = SpectralEngine::new(SpectraConfig::default(), Some(cache.path().to_path_buf()));
    match engine {
        Ok(engine) => {
            results.push((6, "spectral engine self-consistency", criterion6(&engine)));
            results.push((7, "blockwise moduli equality", criterion7(&engine)));
            results.push((8, "determinism and cache", criterion8(&engine, cache.path())));
        }
        Err(e) => {
            for (k, name) in [(6, "spectral engine self-consistency"), (7, "blockwise moduli equality"), (8, "determinism and cache")] {
                results.push((k, name, Outcome { ok: false, detail: format!("setup: {e}") }));
            }
        }
    }
    let mut failed = 0;
    for (k, name, o) in &results {
        if !o.ok {
            failed += 1;
        }
        println!("{} criterion {k} ({name}): {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
