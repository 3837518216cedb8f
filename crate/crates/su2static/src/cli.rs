//! Command-line front end. Every command prints one JSON report on stdout
//! (keys sorted, so identical runs give identical bytes) and optionally
//! writes it to `--json OUT`.
//!
//! Exit codes: 0 when every checked quantity is within tolerance, 1 when
//! something exceeded it, 2 on usage or configuration errors.

use crate::abelian::{generating_field, verify_abelian_b, AbelianPotential};
use crate::ansatz::{FieldPoint, GaugeConfig, RadialLaurent};
use crate::catalog::{
    catalog, classify, completeness_scan, instantiate, max_constraint_residual, solve_profiles,
    Realness,
};
use crate::diff::{sample_points, FdScheme};
use crate::error::{Error, Result};
use crate::pauli::{re, C64};
use crate::residuals::{verify, FieldMode, ResidualReport};
use crate::vpea::{a_constraints, a_to_k, abelian_g_condition, angular_momentum_check, family_coeffs, ACoeffs, AFamily, GaussianSpinor};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::PathBuf;

/// Threshold for the exact constraint equations of catalog instances.
pub const CONSTRAINT_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(name = "su2static", version, about = "Check and classify static spin-dependent SU(2) Yang-Mills fields")]
pub struct RunSpec {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the field-equation residuals of one config.
    Verify(VerifyArgs),
    /// Report which radial profiles solve the constraints for given couplings.
    Classify(ClassifyArgs),
    /// List (and optionally verify) the solution catalog.
    Catalog(CatalogArgs),
    /// Check an angular-momentum coefficient family.
    VpeaCheck(VpeaArgs),
    /// Check an Abelian reference potential.
    Abelian(AbelianArgs),
    /// Compare the case tree with coefficient matching on random couplings.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Also write the report to this file.
    #[arg(long, value_name = "OUT")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    #[arg(long, default_value_t = 1e-7, value_parser = positive)]
    pub tol_closed: f64,
    #[arg(long, default_value_t = 1e-4, value_parser = positive)]
    pub tol_fd: f64,
}

#[derive(Debug, Args)]
pub struct FdArgs {
    /// Base finite-difference step; the step at radius r is h max(1, r).
    #[arg(long = "fd-h", default_value_t = 1e-3, value_parser = positive)]
    pub fd_h: f64,
    #[arg(long)]
    pub no_richardson: bool,
}

impl FdArgs {
    pub fn scheme(&self) -> FdScheme {
        FdScheme::new(self.fd_h, !self.no_richardson)
    }
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// JSON config file; inline flags override its fields.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Coupling as `RE` or `RE,IM`.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    /// Ansatz parameters `k1,k2,k3`, each real or complex like `0.5+1j`.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Laurent profile as `p:re,im;p:re,im;...`.
    #[arg(long, allow_hyphen_values = true)]
    pub f1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub f2: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeChoice {
    Closed,
    Fd,
    Both,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub cfg: ConfigArgs,
    #[arg(long, value_enum, default_value_t = ModeChoice::Both)]
    pub mode: ModeChoice,
    /// Include per-point residuals.
    #[arg(long)]
    pub points: bool,
    #[command(flatten)]
    pub fd: FdArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: String,
    #[arg(long, allow_hyphen_values = true)]
    pub k: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Overrides for catalog free parameters; unset ones use the row defaults.
#[derive(Debug, Args)]
pub struct FreeParamArgs {
    #[arg(long = "c1", allow_hyphen_values = true)]
    pub c1: Option<String>,
    #[arg(long = "c2", allow_hyphen_values = true)]
    pub c2: Option<String>,
    #[arg(long = "c3", allow_hyphen_values = true)]
    pub c3: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub vartheta: Option<String>,
    #[arg(long = "k1", allow_hyphen_values = true)]
    pub k1: Option<String>,
    #[arg(long = "k2", allow_hyphen_values = true)]
    pub k2: Option<String>,
    #[arg(long = "k3", allow_hyphen_values = true)]
    pub k3: Option<String>,
}

impl FreeParamArgs {
    fn overrides(&self) -> Result<Vec<(&'static str, C64)>> {
        let pairs = [
            ("C1", &self.c1),
            ("C2", &self.c2),
            ("C3", &self.c3),
            ("theta", &self.theta),
            ("vartheta", &self.vartheta),
            ("k1", &self.k1),
            ("k2", &self.k2),
            ("k3", &self.k3),
        ];
        let mut out = Vec::new();
        for (name, v) in pairs {
            if let Some(s) = v {
                out.push((name, parse_complex(s)?));
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long, default_value = "real")]
    pub realness: String,
    /// Instantiate every row and check it.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub kappa: String,
    #[command(flatten)]
    pub params: FreeParamArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VpeaArgs {
    /// `displacement`, `rotation:THETA`, `hypA:VARTHETA:SIGN` or `hypB:VARTHETA:SIGN`.
    #[arg(long, default_value = "rotation:0.8")]
    pub family: String,
    /// Explicit coefficients `a1,a2,a3`; overrides `--family`.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub kappa: String,
    /// Number of sample points for the operator check.
    #[arg(long, default_value_t = 8)]
    pub points: usize,
    #[command(flatten)]
    pub fd: FdArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AbelianArgs {
    /// One of ab-exterior, wu-yang-a, wu-yang-b, uniform, toroidal.
    #[arg(long)]
    pub kind: String,
    /// Flux, monopole strength, field strength or amplitude.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub strength: f64,
    /// Compare the finite-difference curl with the closed form.
    #[arg(long)]
    pub check_curl: bool,
    #[command(flatten)]
    pub fd: FdArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be a positive number, got {s}"))
    }
}

/// Parse `1.5`, `-2j`, `0.5+1j`, `1-0.25i`.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    t.parse::<C64>().map_err(|_| Error::ConfigParse(format!("bad complex number `{s}`")))
}

/// Parse `RE` or `RE,IM` (or any form accepted by [`parse_complex`]).
pub fn parse_kappa(s: &str) -> Result<C64> {
    match s.split_once(',') {
        Some((a, b)) => {
            let num = |x: &str| x.trim().parse::<f64>().map_err(|_| Error::ConfigParse(format!("bad kappa `{s}`")));
            Ok(C64::new(num(a)?, num(b)?))
        }
        None => parse_complex(s),
    }
}

/// Parse `k1,k2,k3`.
pub fn parse_k(s: &str) -> Result<[C64; 3]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::ConfigParse(format!("expected three comma-separated values, got `{s}`")));
    }
    Ok([parse_complex(parts[0])?, parse_complex(parts[1])?, parse_complex(parts[2])?])
}

/// Parse `p:re,im;p:re` into a Laurent profile.
pub fn parse_laurent(s: &str) -> Result<RadialLaurent> {
    let mut out = RadialLaurent::zero();
    for term in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let bad = || Error::ConfigParse(format!("bad Laurent term `{term}`"));
        let (p, c) = term.split_once(':').ok_or_else(bad)?;
        let p: i32 = p.trim().parse().map_err(|_| bad())?;
        out.add_term(p, parse_kappa(c)?)?;
    }
    Ok(out)
}

/// Build a config from a file and/or inline flags.
pub fn load_config(a: &ConfigArgs) -> Result<GaugeConfig> {
    let mut cfg = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::ConfigParse(format!("cannot read {}: {e}", path.display())))?;
            GaugeConfig::from_json(&text)?
        }
        None => {
            if a.kappa.is_none() || a.k.is_none() {
                return Err(Error::ConfigParse("need --config or both --kappa and --k".into()));
            }
            GaugeConfig::default()
        }
    };
    if let Some(s) = &a.kappa {
        cfg.kappa = parse_kappa(s)?;
    }
    if let Some(s) = &a.k {
        cfg.k = parse_k(s)?;
    }
    if let Some(s) = &a.f1 {
        cfg.f1 = parse_laurent(s)?;
    }
    if let Some(s) = &a.f2 {
        cfg.f2 = parse_laurent(s)?;
    }
    Ok(cfg)
}

/// A finished command: its JSON report and whether every check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub report: Value,
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn summary(rep: &ResidualReport, tol: f64, with_points: bool) -> Value {
    let mut v = json!({
        "gauss": rep.gauss,
        "ampere": rep.ampere,
        "faraday": rep.faraday,
        "divB": rep.div_b,
        "max": rep.max_norm(),
        "tolerance": tol,
        "pass": rep.max_norm() < tol,
    });
    if with_points {
        v["points"] = serde_json::to_value(&rep.points).expect("residual points serialize");
    }
    v
}

fn run_verify(a: &VerifyArgs) -> Result<Outcome> {
    let cfg = load_config(&a.cfg)?;
    let mut report = json!({ "command": "verify", "config": cfg });
    let mut pass = true;
    if a.mode != ModeChoice::Fd {
        let rep = verify(&cfg, &FieldMode::ClosedForm);
        pass &= rep.max_norm() < a.tol.tol_closed;
        report["closed_form"] = summary(&rep, a.tol.tol_closed, a.points);
    }
    if a.mode != ModeChoice::Closed {
        let rep = verify(&cfg, &FieldMode::FiniteDifference(a.fd.scheme()));
        pass &= rep.max_norm() < a.tol.tol_fd;
        report["finite_difference"] = summary(&rep, a.tol.tol_fd, a.points);
    }
    report["constraint_max"] = json!(max_constraint_residual(&cfg));
    report["pass"] = json!(pass);
    Ok(Outcome { pass, report })
}

fn run_classify(a: &ClassifyArgs) -> Result<Outcome> {
    let kappa = parse_kappa(&a.kappa)?;
    let k = parse_k(&a.k)?;
    let c = classify(kappa, k[0], k[1], k[2]);
    let f1 = c.admissible.first().map(|x| x.f1.to_string()).unwrap_or_else(|| "none".into());
    let report = json!({
        "command": "classify",
        "kappa": pair(kappa),
        "k": k.map(pair),
        "case": c.case,
        "case_code": c.case.code(),
        "f1": f1,
        "has_solution": c.has_solution(),
        "admissible": c.admissible,
        "coefficient_matching": solve_profiles(kappa, k),
    });
    Ok(Outcome { pass: true, report })
}

fn run_catalog(a: &CatalogArgs) -> Result<Outcome> {
    let realness: Realness = a.realness.parse()?;
    let kappa = parse_kappa(&a.kappa)?;
    let overrides = a.params.overrides()?;
    let mut entries = Vec::new();
    let mut pass = true;
    let mut verified = 0usize;
    for entry in catalog(realness) {
        let mut v = serde_json::to_value(&entry).expect("catalog entries serialize");
        if a.verify {
            if entry.has_solutions {
                let mut params = entry.default_params();
                for &(name, val) in &overrides {
                    params.insert(name.to_string(), val);
                }
                let insts = instantiate(&entry, &params, kappa)?;
                let checked: Vec<(Value, bool)> = insts
                    .par_iter()
                    .map(|inst| {
                        let cmax = max_constraint_residual(&inst.config);
                        let rep = verify(&inst.config, &FieldMode::ClosedForm);
                        let ok = cmax < CONSTRAINT_TOL && rep.max_norm() < a.tol.tol_closed;
                        let row = json!({
                            "branch": inst.branch,
                            "config": inst.config,
                            "constraint_max": cmax,
                            "closed_form_max": rep.max_norm(),
                            "pass": ok,
                        });
                        (row, ok)
                    })
                    .collect();
                let row_ok = checked.iter().all(|(_, ok)| *ok);
                verified += row_ok as usize;
                pass &= row_ok;
                v["instances"] = Value::Array(checked.into_iter().map(|(r, _)| r).collect());
                v["pass"] = json!(row_ok);
            } else {
                let (kp, k) = entry.representative(kappa)?;
                let c = classify(kp, k[0], k[1], k[2]);
                let ok = c.case == entry.case && !c.has_solution();
                pass &= ok;
                v["probe"] = json!({ "kappa": pair(kp), "k": k.map(pair), "case": c.case });
                v["pass"] = json!(ok);
            }
        }
        entries.push(v);
    }
    let mut report = json!({
        "command": "catalog",
        "realness": realness,
        "kappa": pair(kappa),
        "solution_rows": entries.iter().filter(|e| e["has_solutions"] == json!(true)).count(),
        "entries": entries,
    });
    if a.verify {
        report["verified_entries"] = json!(verified);
        report["pass"] = json!(pass);
    }
    Ok(Outcome { pass, report })
}

fn run_vpea(a: &VpeaArgs) -> Result<Outcome> {
    let kappa = parse_kappa(&a.kappa)?;
    let (label, coeffs) = match &a.a {
        Some(s) => {
            let [a1, a2, a3] = parse_k(s)?;
            ("explicit".to_string(), ACoeffs::new(a1, a2, a3))
        }
        None => {
            let fam: AFamily = a.family.parse()?;
            (fam.to_string(), family_coeffs(&fam))
        }
    };
    let residual = a_constraints(&coeffs);
    let constraint_max = residual.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scheme = a.fd.scheme();
    let psi = GaussianSpinor::default();
    let pts: Vec<FieldPoint> = sample_points().into_iter().take(a.points.max(1)).collect();
    let l_vals: Vec<f64> = pts
        .par_iter()
        .map(|p| angular_momentum_check(&coeffs, &psi, p, &scheme))
        .collect::<Result<Vec<f64>>>()?;
    let l_max = l_vals.iter().copied().fold(0.0, f64::max);
    let k = a_to_k(&coeffs, kappa)?;
    let cfg = GaugeConfig::new(kappa, k, RadialLaurent::zero(), RadialLaurent::monomial(-1, re(1.0))?);
    let field = verify(&cfg, &FieldMode::ClosedForm);
    let pass = constraint_max < a.tol.tol_closed && l_max < a.tol.tol_fd && field.max_norm() < a.tol.tol_closed;
    let report = json!({
        "command": "vpea-check",
        "family": label,
        "a": [pair(coeffs.a1), pair(coeffs.a2), pair(coeffs.a3)],
        "constraint_residuals": residual.map(pair),
        "constraint_max": constraint_max,
        "angular_momentum_max": l_max,
        "angular_momentum_points": pts.len(),
        "k": k.map(pair),
        "field_residual_max": field.max_norm(),
        "pass": pass,
    });
    Ok(Outcome { pass, report })
}

fn run_abelian(a: &AbelianArgs) -> Result<Outcome> {
    let pot = a.kind.parse::<AbelianPotential>()?.with_strength(a.strength);
    let scheme = a.fd.scheme();
    let pts = sample_points();
    let g = |q: &FieldPoint| generating_field(&pot, q);
    let mut skipped = 0usize;
    let mut curl_max = 0.0f64;
    let mut g_max = 0.0f64;
    for p in &pts {
        let cond = match abelian_g_condition(&g, p, &scheme) {
            Ok(v) => v.norm(),
            Err(Error::OnSingularLocus) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        g_max = g_max.max(cond);
        if a.check_curl {
            curl_max = curl_max.max(verify_abelian_b(&pot, p, &scheme)?.err);
        }
    }
    let pass = !a.check_curl || curl_max < a.tol.tol_fd;
    let mut report = json!({
        "command": "abelian",
        "kind": pot.to_string(),
        "strength": pot.strength(),
        "points": pts.len() - skipped,
        "skipped_singular": skipped,
        "g_condition_max": g_max,
        "g_condition_holds": g_max < a.tol.tol_fd,
        "pass": pass,
    });
    if a.check_curl {
        report["curl_max_err"] = json!(curl_max);
        report["tolerance"] = json!(a.tol.tol_fd);
    }
    Ok(Outcome { pass, report })
}

fn run_scan(a: &ScanArgs) -> Result<Outcome> {
    let rep = completeness_scan(a.samples, a.seed);
    let pass = rep.mismatches.is_empty() && rep.outside_families == 0;
    let mut report = serde_json::to_value(&rep).expect("scan report serializes");
    report["command"] = json!("scan");
    report["pass"] = json!(pass);
    Ok(Outcome { pass, report })
}

/// Execute a parsed command.
pub fn run(spec: &RunSpec) -> Result<Outcome> {
    match &spec.command {
        Command::Verify(a) => run_verify(a),
        Command::Classify(a) => run_classify(a),
        Command::Catalog(a) => run_catalog(a),
        Command::VpeaCheck(a) => run_vpea(a),
        Command::Abelian(a) => run_abelian(a),
        Command::Scan(a) => run_scan(a),
    }
}

fn output_path(spec: &RunSpec) -> Option<&PathBuf> {
    match &spec.command {
        Command::Verify(a) => a.out.json.as_ref(),
        Command::Classify(a) => a.out.json.as_ref(),
        Command::Catalog(a) => a.out.json.as_ref(),
        Command::VpeaCheck(a) => a.out.json.as_ref(),
        Command::Abelian(a) => a.out.json.as_ref(),
        Command::Scan(a) => a.out.json.as_ref(),
    }
}

/// Parse arguments, run, print, and return the process exit code.
pub fn run_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let spec = match RunSpec::try_parse_from(args) {
        Ok(s) => s,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match run(&spec) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize") + "\n";
    print!("{text}");
    if let Some(path) = output_path(&spec) {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    if outcome.pass {
        0
    } else {
        1
    }
}

pub fn main() -> i32 {
    run_with_args(std::env::args_os())
}
