//! Pointwise residuals of the static field equations.
//!
//! Two independent field constructions are available. `ClosedForm` uses the
//! closed-form E and B with exact radial derivatives; `FiniteDifference`
//! builds E and B from the potentials by finite differences and then
//! differentiates them again numerically.

use crate::ansatz::{b_form, e_form, eval_a, eval_phi, FieldPoint, GaugeConfig};
use crate::diff::{fd_curl, fd_divergence, fd_gradient, sample_points, FdScheme};
use crate::error::Result;
use crate::pauli::{cross_noncommutative, Mat2, MatVec3, C64, I};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldMode {
    ClosedForm,
    FiniteDifference(FdScheme),
}

impl FieldMode {
    pub fn fd_default() -> Self {
        FieldMode::FiniteDifference(FdScheme::default())
    }

    pub fn name(&self) -> &'static str {
        match self {
            FieldMode::ClosedForm => "closed_form",
            FieldMode::FiniteDifference(_) => "finite_difference",
        }
    }
}

impl Serialize for FieldMode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

fn minus_i_kappa(cfg: &GaugeConfig) -> C64 {
    -I * cfg.kappa
}

/// Magnetic-like field `curl A - i kappa (A x A)`.
pub fn build_b(cfg: &GaugeConfig, p: &FieldPoint, mode: &FieldMode) -> Result<MatVec3> {
    match mode {
        FieldMode::ClosedForm => crate::ansatz::eval_b_closed(cfg, p),
        FieldMode::FiniteDifference(s) => {
            let curl = fd_curl(&|q: &FieldPoint| eval_a(cfg, q), p, s)?;
            let a = eval_a(cfg, p)?;
            Ok(curl + cross_noncommutative(&a, &a) * minus_i_kappa(cfg))
        }
    }
}

/// Static electric-like field `-grad phi - i kappa [phi, A]`.
pub fn build_e(cfg: &GaugeConfig, p: &FieldPoint, mode: &FieldMode) -> Result<MatVec3> {
    match mode {
        FieldMode::ClosedForm => crate::ansatz::eval_e_closed(cfg, p),
        FieldMode::FiniteDifference(s) => {
            let grad = fd_gradient(&|q: &FieldPoint| eval_phi(cfg, q), p, s)?;
            let phi = eval_phi(cfg, p)?;
            let a = eval_a(cfg, p)?;
            Ok(-grad + MatVec3::commutator_with(phi, &a) * minus_i_kappa(cfg))
        }
    }
}

fn div_e(cfg: &GaugeConfig, p: &FieldPoint, mode: &FieldMode) -> Result<Mat2> {
    match mode {
        FieldMode::ClosedForm => Ok(e_form(cfg, p.r).divergence(p)),
        FieldMode::FiniteDifference(s) => fd_divergence(&|q: &FieldPoint| build_e(cfg, q, mode), p, s),
    }
}

fn curl_e(cfg: &GaugeConfig, p: &FieldPoint, mode: &FieldMode) -> Result<MatVec3> {
    match mode {
        FieldMode::ClosedForm => Ok(e_form(cfg, p.r).curl(p)),
        FieldMode::FiniteDifference(s) => fd_curl(&|q: &FieldPoint| build_e(cfg, q, mode), p, s),
    }
}

fn div_b(cfg: &GaugeConfig, p: &FieldPoint, mode: &FieldMode) -> Result<Mat2> {
    match mode {
        FieldMode::ClosedForm => Ok(b_form(cfg, p.r).divergence(p)),
        FieldMode::FiniteDifference(s) => fd_divergence(&|q: &FieldPoint| build_b(cfg, q, mode), p, s),
    }
}

fn curl_b(cfg: &GaugeConfig, p: &FieldPoint, mode: &FieldMode) -> Result<MatVec3> {
    match mode {
        FieldMode::ClosedForm => Ok(b_form(cfg, p.r).curl(p)),
        FieldMode::FiniteDifference(s) => fd_curl(&|q: &FieldPoint| build_b(cfg, q, mode), p, s),
    }
}

/// `div E - i kappa (A.E - E.A)`.
pub fn gauss_residual(cfg: &GaugeConfig, p: &FieldPoint, mode: &FieldMode) -> Result<Mat2> {
    let a = eval_a(cfg, p)?;
    let e = build_e(cfg, p, mode)?;
    Ok(div_e(cfg, p, mode)? + (a.dot(&e) - e.dot(&a)) * minus_i_kappa(cfg))
}

/// `curl B - i kappa ([phi, E] + A x B + B x A)`.
pub fn ampere_residual(cfg: &GaugeConfig, p: &FieldPoint, mode: &FieldMode) -> Result<MatVec3> {
    let a = eval_a(cfg, p)?;
    let phi = eval_phi(cfg, p)?;
    let e = build_e(cfg, p, mode)?;
    let b = build_b(cfg, p, mode)?;
    let source = MatVec3::commutator_with(phi, &e) + cross_noncommutative(&a, &b) + cross_noncommutative(&b, &a);
    Ok(curl_b(cfg, p, mode)? + source * minus_i_kappa(cfg))
}

/// The identities that hold for any fields derived from potentials:
/// `(-curl E - i kappa ([phi, B] - A x E - E x A), div B - i kappa (A.B - B.A))`.
pub fn bianchi_residuals(cfg: &GaugeConfig, p: &FieldPoint, mode: &FieldMode) -> Result<(MatVec3, Mat2)> {
    let a = eval_a(cfg, p)?;
    let phi = eval_phi(cfg, p)?;
    let e = build_e(cfg, p, mode)?;
    let b = build_b(cfg, p, mode)?;
    let source = MatVec3::commutator_with(phi, &b) - cross_noncommutative(&a, &e) - cross_noncommutative(&e, &a);
    let faraday = -curl_e(cfg, p, mode)? + source * minus_i_kappa(cfg);
    let div = div_b(cfg, p, mode)? + (a.dot(&b) - b.dot(&a)) * minus_i_kappa(cfg);
    Ok((faraday, div))
}

/// Residual norms at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointResidual {
    pub position: [f64; 3],
    pub gauss: f64,
    pub ampere: f64,
    pub faraday: f64,
    #[serde(rename = "divB")]
    pub div_b: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl PointResidual {
    fn at(cfg: &GaugeConfig, p: &FieldPoint, mode: &FieldMode) -> Self {
        let position = [p.position.x, p.position.y, p.position.z];
        let eval = || -> Result<[f64; 4]> {
            let g = gauss_residual(cfg, p, mode)?.frobenius_norm();
            let a = ampere_residual(cfg, p, mode)?.norm();
            let (f, d) = bianchi_residuals(cfg, p, mode)?;
            Ok([g, a, f.norm(), d.frobenius_norm()])
        };
        match eval() {
            Ok([gauss, ampere, faraday, div_b]) => PointResidual { position, gauss, ampere, faraday, div_b, error: None },
            Err(e) => PointResidual {
                position,
                gauss: f64::NAN,
                ampere: f64::NAN,
                faraday: f64::NAN,
                div_b: f64::NAN,
                error: Some(e.to_string()),
            },
        }
    }
}

/// Summary over the shared sample set. Summary norms are maxima over points;
/// a point that failed to evaluate makes every summary norm infinite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub mode: FieldMode,
    pub gauss: f64,
    pub ampere: f64,
    pub faraday: f64,
    #[serde(rename = "divB")]
    pub div_b: f64,
    pub points: Vec<PointResidual>,
}

impl ResidualReport {
    /// Largest of the four summary norms.
    pub fn max_norm(&self) -> f64 {
        self.gauss.max(self.ampere).max(self.faraday).max(self.div_b)
    }

    /// Largest of the two dynamical (non-Bianchi) norms.
    pub fn field_equation_norm(&self) -> f64 {
        self.gauss.max(self.ampere)
    }
}

/// Evaluate all residuals over [`sample_points`].
pub fn verify(cfg: &GaugeConfig, mode: &FieldMode) -> ResidualReport {
    verify_at(cfg, mode, &sample_points())
}

/// Evaluate all residuals over the given points.
pub fn verify_at(cfg: &GaugeConfig, mode: &FieldMode, points: &[FieldPoint]) -> ResidualReport {
    let points: Vec<PointResidual> = points.par_iter().map(|p| PointResidual::at(cfg, p, mode)).collect();
    let max_of = |f: fn(&PointResidual) -> f64| {
        points
            .iter()
            .map(|p| if p.error.is_some() { f64::INFINITY } else { f(p) })
            .fold(0.0, f64::max)
    };
    ResidualReport {
        mode: *mode,
        gauss: max_of(|p| p.gauss),
        ampere: max_of(|p| p.ampere),
        faraday: max_of(|p| p.faraday),
        div_b: max_of(|p| p.div_b),
        points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::RadialLaurent;
    use crate::pauli::{re, ONE};

    fn simple(kappa: f64, k1: f64) -> GaugeConfig {
        GaugeConfig::new(re(kappa), [re(k1), re(0.0), re(0.0)], RadialLaurent::zero(), RadialLaurent::zero())
    }

    #[test]
    fn zero_config_has_zero_residuals() {
        let c = GaugeConfig::default();
        for mode in [FieldMode::ClosedForm, FieldMode::fd_default()] {
            let rep = verify(&c, &mode);
            assert_eq!(rep.max_norm(), 0.0);
        }
    }

    #[test]
    fn coulomb_solves_gauss() {
        let mut c = simple(1.0, 0.0);
        c.f2 = RadialLaurent::monomial(-1, re(1.3)).unwrap();
        let rep = verify(&c, &FieldMode::ClosedForm);
        assert!(rep.gauss < 1e-9, "{}", rep.gauss);
    }

    #[test]
    fn inverse_square_scalar_gives_exact_divergence() {
        let mut c = GaugeConfig::default();
        c.f2 = RadialLaurent::monomial(-2, ONE).unwrap();
        let p = FieldPoint::xyz(0.3, 0.4, 1.2).unwrap();
        let g = gauss_residual(&c, &p, &FieldMode::ClosedForm).unwrap();
        let expected = Mat2::identity() * (-2.0 / p.r.powi(4));
        assert!((g - expected).frobenius_norm() < 1e-13);
    }

    #[test]
    fn quantized_simple_solutions() {
        for k1 in [0.5, 1.0] {
            let rep = verify(&simple(1.0, k1), &FieldMode::ClosedForm);
            assert!(rep.ampere < 1e-12 && rep.gauss < 1e-12);
        }
    }

    #[test]
    fn modes_agree_on_random_config() {
        let c = GaugeConfig::new(
            re(1.0),
            [re(0.3), re(0.2), re(-0.1)],
            RadialLaurent::monomial(-1, ONE).unwrap(),
            RadialLaurent::monomial(-1, ONE).unwrap(),
        );
        let fd = FieldMode::fd_default();
        for p in sample_points().iter().step_by(7) {
            let db = build_b(&c, p, &FieldMode::ClosedForm).unwrap() - build_b(&c, p, &fd).unwrap();
            let de = build_e(&c, p, &FieldMode::ClosedForm).unwrap() - build_e(&c, p, &fd).unwrap();
            assert!(db.norm() < 1e-5 && de.norm() < 1e-5);
        }
    }

    #[test]
    fn report_json_keys() {
        let rep = verify_at(&GaugeConfig::default(), &FieldMode::ClosedForm, &sample_points()[..1]);
        let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
        for key in ["mode", "gauss", "ampere", "faraday", "divB", "points"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["mode"], "closed_form");
    }
}
