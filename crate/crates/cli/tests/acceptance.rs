//! Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
//! any criterion fails. Run with `cargo test -p trigpos-cli --test acceptance`.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use trigpos::bounds::{l_region, two_thirds_master_bound, Region};
use trigpos::mustar::mu_star;
use trigpos::quad::{chi_reference_integral, DEFAULT_TOL};
use trigpos::verify::{self, region_target, Check, Settings, VerificationReport};

struct Outcome {
    id: String,
    pass: bool,
    detail: String,
}

fn outcome(id: impl Into<String>, pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { id: id.into(), pass, detail: detail.into() }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

/// Enclosure meets the rounding interval of a value printed to 10 decimals.
fn meets(lo: f64, hi: f64, printed: f64) -> bool {
    lo <= printed + 5e-11 && hi >= printed - 5e-11
}

fn run(case: &str) -> VerificationReport {
    verify::run(case, &Settings::default()).unwrap_or_else(|e| panic!("{case}: {e}"))
}

fn failing(checks: &[&Check]) -> String {
    let bad: Vec<_> = checks.iter().filter(|c| !c.passed()).map(|c| c.id.as_str()).collect();
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", bad.join(", "))
    }
}

fn pick<'a>(r: &'a VerificationReport, ids: &[&str]) -> Vec<&'a Check> {
    ids.iter()
        .map(|id| r.checks.iter().find(|c| c.id == *id).unwrap_or_else(|| panic!("{}: no check {id}", r.case)))
        .collect()
}

fn criterion_1() -> Outcome {
    let (m, t) = timed(|| mu_star(2.0 / 3.0, 1e-13).unwrap());
    let ok = m.width() <= 1e-9 && meets(m.lo(), m.hi(), 0.8468555683) && t.as_secs_f64() < 5.0;
    outcome("1 mu*(2/3)", ok, format!("[{:.13}, {:.13}] in {:.2} s", m.lo(), m.hi(), t.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let (m, t) = timed(|| mu_star(1.0 / 3.0, 1e-13).unwrap());
    let half = m.lo() / 2.0 <= 0.24835 && m.hi() / 2.0 >= 0.24825;
    let ok = m.width() <= 1e-9 && meets(m.lo(), m.hi(), 0.4966913651) && half && t.as_secs_f64() < 5.0;
    outcome("2 mu*(1/3)", ok, format!("[{:.13}, {:.13}], half {:.6}, {:.2} s", m.lo(), m.hi(), m.mid() / 2.0, t.as_secs_f64()))
}

fn criterion_3() -> Outcome {
    let m = mu_star(2.0 / 3.0, 1e-13).unwrap();
    let chi = chi_reference_integral(m.mid(), DEFAULT_TOL).unwrap();
    let dev = (chi.value - verify::CHI_PRINTED).abs();
    outcome("3 chi reference integral", dev <= 1e-10, format!("{:.13} ± {:.1e}, |diff| {dev:.2e}", chi.value, chi.err))
}

fn criterion_4() -> Outcome {
    let b = two_thirds_master_bound().unwrap();
    let ok = b.value - b.err > 0.2078 && (b.value - verify::MASTER_PRINTED).abs() <= 1e-4;
    outcome("4 master bound", ok, format!("{:.12} ± {:.1e}", b.value, b.err))
}

fn criterion_5() -> Vec<Outcome> {
    Region::ALL
        .iter()
        .map(|&region| {
            let b = l_region(region, 1.0 / 3.0).unwrap();
            let (target, tol) = region_target(region);
            let ok = (b.value - target).abs() <= tol && b.value > b.err;
            outcome(
                format!("5 L{}", region.name()),
                ok,
                format!("{:.10} ± {:.1e}, expected {target} ± {tol:e}", b.value, b.err),
            )
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let (reports, t) = timed(|| ["sturm:q1", "sturm:q2", "sturm:q3", "sturm:P", "sturm:Q", "sturm:R"].map(run));
    let checks: Vec<&Check> = reports.iter().flat_map(|r| r.checks.iter()).collect();
    let ok = checks.iter().all(|c| c.passed()) && t.as_secs_f64() < 30.0;
    outcome("6 Sturm certifications", ok, format!("{} checks in {:.1} s{}", checks.len(), t.as_secs_f64(), failing(&checks)))
}

fn criterion_7() -> Outcome {
    let (reports, t) = timed(|| ["grid:U", "grid:varsigma"].map(run));
    let checks: Vec<&Check> = reports.iter().flat_map(|r| r.checks.iter()).collect();
    let ok = reports.iter().all(|r| r.passed()) && t.as_secs_f64() < 600.0;
    outcome("7 grid certification n <= 100", ok, format!("{} checks in {:.1} s{}", checks.len(), t.as_secs_f64(), failing(&checks)))
}

fn criterion_8() -> Outcome {
    let reports = ["oracle:sturm", "oracle:quad"].map(run);
    let checks: Vec<&Check> = reports.iter().flat_map(|r| r.checks.iter()).collect();
    let detail: Vec<_> = checks.iter().map(|c| c.detail.as_str()).collect();
    outcome("8 oracle equivalence", checks.iter().all(|c| c.passed()), detail.join("; "))
}

fn criterion_9() -> Outcome {
    let r = run("disk");
    let checks = pick(&r, &["sector:max |arg| < pi/3", "weak:min Re > 0"]);
    let ok = checks.iter().all(|c| c.passed());
    let v: Vec<_> = checks.iter().map(|c| format!("{} = {:.6}", c.id, c.value.unwrap_or(f64::NAN))).collect();
    outcome("9 subordination sampling", ok, format!("{}{}", v.join(", "), failing(&checks)))
}

fn criterion_10() -> Outcome {
    let r = run("gegenbauer");
    let checks = pick(
        &r,
        &["generating function |z| <= 0.5", "arg bound lambda = 0.24, n <= 50", "lambda = 1 equals Chebyshev U"],
    );
    let arg = checks[1].value.unwrap_or(f64::NAN);
    outcome(
        "10 Gegenbauer",
        checks.iter().all(|c| c.passed()),
        format!("gf error {:.1e}, arg ratio {:.4}{}", checks[0].value.unwrap_or(f64::NAN), arg / (PI / 3.0), failing(&checks)),
    )
}

fn criterion_11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_trigpos");
    let (out, t) = timed(|| Command::new(bin).args(["verify", "all", "--json"]).output().unwrap());
    let reports: Vec<VerificationReport> = serde_json::from_slice(&out.stdout).unwrap_or_default();
    let all_pass = !reports.is_empty() && reports.iter().all(|r| r.passed());
    let expected = if all_pass { 0 } else { 1 };
    let code = out.status.code();
    let unknown = Command::new(bin).args(["verify", "no-such-case"]).output().unwrap().status.code();
    let ok = reports.len() == verify::CASES.len() && code == Some(expected) && unknown == Some(2) && t.as_secs_f64() < 900.0;
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.case.as_str()).collect();
    outcome(
        "11 headless suite and exit codes",
        ok,
        format!(
            "{} cases in {:.1} s, exit {code:?} (failing cases: {}), unknown case exit {unknown:?}",
            reports.len(),
            t.as_secs_f64(),
            if failed.is_empty() { "none".to_string() } else { failed.join(", ") }
        ),
    )
}

fn main() -> ExitCode {
    let mut results = vec![criterion_1(), criterion_2(), criterion_3(), criterion_4()];
    results.extend(criterion_5());
    results.extend([criterion_6(), criterion_7(), criterion_8(), criterion_9(), criterion_10(), criterion_11()]);
    for r in &results {
        println!("{} {:<34} {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.detail);
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
