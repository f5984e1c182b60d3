use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trigpos::mustar::mu_star_with_tol;
use trigpos::verify::{self, tolerance_for_digits, Settings, VerificationReport, CASES};

/// Certified positivity checks for Pochhammer-weighted trigonometric sums.
#[derive(Parser)]
#[command(name = "trigpos", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enclose mu*(rho), the root of the defect integral.
    Mustar {
        rho: f64,
        #[arg(long, default_value_t = 1e-13)]
        width: f64,
        #[arg(long)]
        json: bool,
    },
    /// Run a named verification case.
    Verify {
        /// Case name, or `all`. See `trigpos list`.
        case: String,
        #[arg(long)]
        json: bool,
        /// TOML file with the same keys as the flags below.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        flags: Flags,
    },
    /// List the case names accepted by `verify`.
    List,
}

#[derive(Args, Default)]
struct Flags {
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    theta_min: Option<f64>,
    #[arg(long)]
    quad_tol: Option<f64>,
    #[arg(long)]
    mu_width: Option<f64>,
    #[arg(long)]
    disk_nmax: Option<usize>,
    #[arg(long)]
    disk_angles: Option<usize>,
    #[arg(long)]
    gegenbauer_nmax: Option<usize>,
    #[arg(long)]
    sturm_polys: Option<usize>,
    #[arg(long)]
    sturm_intervals: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    master_tol: Option<f64>,
    #[arg(long)]
    chi_tol: Option<f64>,
    #[arg(long)]
    region_tol: Option<f64>,
}

impl Flags {
    fn apply(&self, s: &mut Settings) {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { s.$f = v; } )* };
        }
        set!(
            nmax,
            rho,
            theta_min,
            quad_tol,
            mu_width,
            disk_nmax,
            disk_angles,
            gegenbauer_nmax,
            sturm_polys,
            sturm_intervals,
            seed,
            master_tol,
            chi_tol
        );
        if self.region_tol.is_some() {
            s.region_tol = self.region_tol;
        }
    }
}

const USAGE: u8 = 2;

fn usage(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    USAGE
}

fn settings(config: Option<&PathBuf>, flags: &Flags) -> Result<Settings, String> {
    let mut s = Settings::default();
    if let Ok(digits) = std::env::var("TRIGPOS_PRECISION") {
        let d: u32 = digits.trim().parse().map_err(|_| format!("TRIGPOS_PRECISION={digits:?} is not a digit count"))?;
        s.quad_tol = tolerance_for_digits(d);
    }
    if let Some(path) = config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let from_file: Settings = toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let env_tol = s.quad_tol;
        s = from_file;
        if !text.lines().any(|l| l.trim_start().starts_with("quad-tol")) {
            s.quad_tol = env_tol;
        }
    }
    flags.apply(&mut s);
    Ok(s)
}

fn print_text(out: &mut impl Write, r: &VerificationReport) -> std::io::Result<()> {
    writeln!(out, "case    {}", r.case)?;
    writeln!(out, "claim   {}", r.claim)?;
    writeln!(out, "method  {}", r.method)?;
    writeln!(out, "status  {}", r.status)?;
    for c in &r.checks {
        let mut line = format!("  [{}{}] {}", c.status, if c.advisory { ", advisory" } else { "" }, c.id);
        if let Some(v) = c.value {
            line.push_str(&format!("  value {v:.12}"));
            if let Some(e) = c.err.filter(|e| *e > 0.0) {
                line.push_str(&format!(" ± {e:.1e}"));
            }
        }
        if let (Some(x), Some(t)) = (c.expected, c.tolerance) {
            line.push_str(&format!("  expected {x} ± {t:e}"));
        }
        if !c.detail.is_empty() {
            line.push_str(&format!("  ({})", c.detail));
        }
        writeln!(out, "{line}")?;
    }
    writeln!(out, "time    {:.1} ms", r.wall_time_ms)
}

fn execute(cli: Cli, out: &mut impl Write) -> std::io::Result<u8> {
    Ok(match cli.command {
        Command::List => {
            for c in CASES {
                writeln!(out, "{c}")?;
            }
            0
        }
        Command::Mustar { rho, width, json } => {
            let s = match settings(None, &Flags::default()) {
                Ok(s) => s,
                Err(e) => return Ok(usage(e)),
            };
            if !(rho > 0.0 && rho <= 1.0) {
                return Ok(usage(format!("rho must lie in (0, 1], got {rho}")));
            }
            if !(width > 0.0) {
                return Ok(usage(format!("width must be positive, got {width}")));
            }
            match mu_star_with_tol(rho, width, s.quad_tol) {
                Ok(r) if json => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&r).unwrap_or_default())?;
                    0
                }
                Ok(r) => {
                    writeln!(out, "rho      {rho}")?;
                    writeln!(out, "mu*      [{:.17}, {:.17}]", r.lo(), r.hi())?;
                    writeln!(out, "width    {:.3e}", r.width())?;
                    writeln!(out, "residual {:.3e} ± {:.1e}", r.residual.value, r.residual.err)?;
                    0
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
        Command::Verify { case, json, config, flags } => {
            let s = match settings(config.as_ref(), &flags) {
                Ok(s) => s,
                Err(e) => return Ok(usage(e)),
            };
            let cases: Vec<&str> = if case == "all" { CASES.to_vec() } else { vec![case.as_str()] };
            if let Some(bad) = cases.iter().find(|c| !CASES.contains(c)) {
                return Ok(usage(format!("unknown case {bad:?}; known cases: all, {}", CASES.join(", "))));
            }
            let mut ok = true;
            let mut reports = Vec::new();
            for c in cases {
                match verify::run(c, &s) {
                    Ok(r) => {
                        ok &= r.passed();
                        if !json {
                            print_text(out, &r)?;
                            writeln!(out)?;
                        }
                        reports.push(r);
                    }
                    Err(e @ trigpos::Error::Domain(_)) => return Ok(usage(e)),
                    Err(e) => {
                        eprintln!("error in {c}: {e}");
                        ok = false;
                    }
                }
            }
            if json {
                let text = if reports.len() == 1 {
                    serde_json::to_string_pretty(&reports[0])
                } else {
                    serde_json::to_string_pretty(&reports)
                };
                writeln!(out, "{}", text.unwrap_or_default())?;
            }
            if ok {
                0
            } else {
                1
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match execute(cli, &mut stdout) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (u8, String) {
        let cli = Cli::try_parse_from(std::iter::once("trigpos").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let code = execute(cli, &mut out).unwrap();
        (code, String::from_utf8(out).unwrap())
    }

    fn report(args: &[&str]) -> (u8, VerificationReport) {
        let (code, text) = run(args);
        (code, serde_json::from_str(&text).unwrap())
    }

    #[test]
    fn mustar_contains_printed_values() {
        let (code, text) = run(&["mustar", "0.6666666667"]);
        assert_eq!(code, 0);
        assert!(text.contains("0.846855568"), "{text}");
        let (code, text) = run(&["mustar", "1.0", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v.get("rho").is_some(), "{text}");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&["mustar", "1.5"]).0, 2);
        assert_eq!(run(&["mustar", "0"]).0, 2);
        assert_eq!(run(&["mustar", "0.5", "--width=-1"]).0, 2);
        assert_eq!(run(&["verify", "bounds:7"]).0, 2);
        assert_eq!(run(&["verify", "nonsense"]).0, 2);
        let missing = Cli::try_parse_from(["trigpos", "verify"]).err().unwrap();
        assert_eq!(missing.exit_code(), 2);
    }

    #[test]
    fn passing_case_exits_zero() {
        let (code, text) = run(&["verify", "sturm:q3"]);
        assert_eq!(code, 0);
        assert!(text.contains("status  pass"), "{text}");
        assert!(text.contains("0 distinct roots"), "{text}");
    }

    #[test]
    fn failing_case_exits_one_and_names_the_check() {
        let (code, r) = report(&["verify", "sturm:P", "--json"]);
        assert_eq!(code, 1);
        assert!(r.failures().any(|c| c.id == "P:P(-pi/3) > 0"));
    }

    #[test]
    fn json_report_round_trips() {
        let (code, r) = report(&["verify", "bounds:2", "--rho", "0.3333333333", "--json"]);
        assert_eq!(code, 0);
        let again: VerificationReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(r, again);
        assert_eq!(r.case, "bounds:2");
    }

    #[test]
    fn reports_are_deterministic_apart_from_time() {
        let once = || {
            let (_, mut r) = report(&["verify", "oracle:sturm", "--sturm-polys", "20", "--sturm-intervals", "10", "--json"]);
            r.wall_time_ms = 0.0;
            serde_json::to_string(&r).unwrap()
        };
        assert_eq!(once(), once());
    }

    #[test]
    fn flags_override_config_file() {
        let dir = std::env::temp_dir().join(format!("trigpos-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("settings.toml");
        std::fs::write(&path, "nmax = 3\nsturm-polys = 5\n").unwrap();
        let p = path.to_str().unwrap();

        let (_, r) = report(&["verify", "grid:U", "--config", p, "--json"]);
        assert_eq!(r.inputs.n_range, Some((0, 3)));
        let (_, r) = report(&["verify", "grid:U", "--config", p, "--nmax", "4", "--json"]);
        assert_eq!(r.inputs.n_range, Some((0, 4)));

        std::fs::write(&path, "no-such-key = 1\n").unwrap();
        assert_eq!(run(&["verify", "grid:U", "--config", p]).0, 2);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn list_prints_every_case() {
        let (code, text) = run(&["list"]);
        assert_eq!(code, 0);
        assert_eq!(text.lines().count(), CASES.len());
    }
}
