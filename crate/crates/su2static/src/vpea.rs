//! Potentials extracted from a shifted angular momentum.
//!
//! The operator `L = -i r x grad + a1 S + a2 (S.n) n + a3 (n x S)` with
//! `S = sigma/2` closes into an angular-momentum algebra only when the
//! coefficients satisfy three polynomial constraints. The admissible
//! coefficients map onto the ansatz with `k2 + k3 = 0`.

use crate::ansatz::{FieldPoint, GaugeConfig, RadialLaurent, R_MIN};
use crate::diff::{fd_divergence_real, fd_gradient_real, partial, FdScheme, Spinor};
use crate::error::{Error, Result};
use crate::pauli::{gamma_dot_real, re, Mat2, MatVec3, C64, I, ONE, R3};
use std::fmt;
use std::str::FromStr;

/// A choice of sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "p" => Ok(Sign::Plus),
            "-" | "minus" | "m" => Ok(Sign::Minus),
            other => Err(Error::ConfigParse(format!("bad sign `{other}`"))),
        }
    }
}

/// Coefficients of the spin terms in the shifted angular momentum.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize)]
pub struct ACoeffs {
    pub a1: C64,
    pub a2: C64,
    pub a3: C64,
}

impl ACoeffs {
    pub fn new(a1: C64, a2: C64, a3: C64) -> Self {
        ACoeffs { a1, a2, a3 }
    }

    pub fn real(a1: f64, a2: f64, a3: f64) -> Self {
        ACoeffs::new(re(a1), re(a2), re(a3))
    }
}

/// Named solution families of the constraint system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AFamily {
    /// `(1, 0, 0)`.
    Displacement,
    /// `(2 sin^2 t, -2 sin^2 t, -2 sin t cos t)`.
    Rotation { theta: f64 },
    /// `(1 +- cosh t, -a1, i sinh t)`.
    HyperbolicA { vartheta: f64, sign: Sign },
    /// `a3 = +- cosh t`, `a1 = 1 + i sinh t`, `a2 = -a1`.
    HyperbolicB { vartheta: f64, sign: Sign },
}

impl fmt::Display for AFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AFamily::Displacement => write!(f, "displacement"),
            AFamily::Rotation { theta } => write!(f, "rotation:{theta}"),
            AFamily::HyperbolicA { vartheta, sign } => write!(f, "hypA:{vartheta}:{sign}"),
            AFamily::HyperbolicB { vartheta, sign } => write!(f, "hypB:{vartheta}:{sign}"),
        }
    }
}

impl FromStr for AFamily {
    type Err = Error;

    /// Parses `displacement`, `rotation:T`, `hypA:T:+`, `hypB:T:-`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |x: &str| -> Result<f64> {
            x.trim().parse().map_err(|_| Error::ConfigParse(format!("bad number `{x}` in family `{s}`")))
        };
        match parts.as_slice() {
            ["displacement"] => Ok(AFamily::Displacement),
            ["rotation", t] => Ok(AFamily::Rotation { theta: num(t)? }),
            ["hypA", t, sg] => Ok(AFamily::HyperbolicA { vartheta: num(t)?, sign: sg.parse()? }),
            ["hypB", t, sg] => Ok(AFamily::HyperbolicB { vartheta: num(t)?, sign: sg.parse()? }),
            _ => Err(Error::ConfigParse(format!("unknown family `{s}`"))),
        }
    }
}

/// Residuals of the three closure constraints.
pub fn a_constraints(a: &ACoeffs) -> [C64; 3] {
    let ACoeffs { a1, a2, a3 } = *a;
    [
        a1 * a1 + a1 * a2 - a2 - a1,
        a2 * 3.0 + a3 * a3 - a1 * a2 - a2,
        a3 + a1 * a3 + a2 * a3 - a3,
    ]
}

/// Coefficients of a named family.
pub fn family_coeffs(f: &AFamily) -> ACoeffs {
    match *f {
        AFamily::Displacement => ACoeffs::real(1.0, 0.0, 0.0),
        AFamily::Rotation { theta } => {
            let (s, c) = theta.sin_cos();
            ACoeffs::real(2.0 * s * s, -2.0 * s * s, -2.0 * s * c)
        }
        AFamily::HyperbolicA { vartheta, sign } => {
            let a1 = re(1.0 + sign.value() * vartheta.cosh());
            ACoeffs::new(a1, -a1, I * vartheta.sinh())
        }
        AFamily::HyperbolicB { vartheta, sign } => {
            // (a1 - 1)^2 + a3^2 = 1 with a3 = +-cosh forces (a1 - 1)^2 = -sinh^2
            let a1 = ONE + I * vartheta.sinh();
            ACoeffs::new(a1, -a1, re(sign.value() * vartheta.cosh()))
        }
    }
}

fn require_coupling(kappa: C64) -> Result<()> {
    if kappa.norm() == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    Ok(())
}

/// Map angular-momentum coefficients to ansatz parameters:
/// `(a1/(2 kappa), -a3/(2 kappa), a3/(2 kappa))`.
pub fn a_to_k(a: &ACoeffs, kappa: C64) -> Result<[C64; 3]> {
    require_coupling(kappa)?;
    let s = (kappa * 2.0).inv();
    Ok([a.a1 * s, -a.a3 * s, a.a3 * s])
}

/// Ansatz config for a family with the given scalar profile.
pub fn family_config(f: &AFamily, kappa: C64, f2: RadialLaurent) -> Result<GaugeConfig> {
    let k = a_to_k(&family_coeffs(f), kappa)?;
    Ok(GaugeConfig::new(kappa, k, RadialLaurent::zero(), f2))
}

/// `U = exp(i theta sigma.n)`.
pub fn gauge_element(theta: f64, p: &FieldPoint) -> Mat2 {
    let (s, c) = theta.sin_cos();
    Mat2::identity() * c + gamma_dot_real(&p.unit()) * (I * s)
}

/// The flat potential generated by [`gauge_element`]:
/// `(1/(kappa r)) [sin^2 t (n x S) + sin t cos t (S - (S.n) n)]`.
pub fn pure_gauge_a(theta: f64, kappa: C64, p: &FieldPoint) -> Result<MatVec3> {
    require_coupling(kappa)?;
    if p.r <= R_MIN {
        return Err(Error::PointTooCloseToOrigin { r: p.r, r_min: R_MIN });
    }
    let n = p.unit();
    let (s, c) = theta.sin_cos();
    let transverse = MatVec3::gamma() - MatVec3::outer(&n, gamma_dot_real(&n));
    let body = MatVec3::cross_gamma(&n) * (s * s) + transverse * (s * c);
    Ok(body * (kappa * p.r).inv())
}

/// A smooth two-component test function.
pub trait SpinorField: Sync {
    fn eval(&self, x: &R3) -> Spinor;
}

/// Gaussian envelope times a low-order polynomial times a fixed spinor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpinor {
    pub width: f64,
    pub poly: [f64; 5],
    pub chi: [C64; 2],
}

impl Default for GaussianSpinor {
    fn default() -> Self {
        GaussianSpinor {
            width: 1.0,
            poly: [1.0, 0.3, -0.2, 0.5, 0.4],
            chi: [re(0.8), C64::new(0.36, 0.48)],
        }
    }
}

impl SpinorField for GaussianSpinor {
    fn eval(&self, x: &R3) -> Spinor {
        let env = (-x.norm_squared() / (2.0 * self.width * self.width)).exp();
        let [c0, cx, cy, cz, cxy] = self.poly;
        let poly = c0 + cx * x.x + cy * x.y + cz * x.z + cxy * x.x * x.y;
        Spinor(self.chi) * (env * poly)
    }
}

/// Spin matrix part of `L_j`.
fn spin_part(a: &ACoeffs, n: &R3, j: usize) -> Mat2 {
    let s = MatVec3::gamma() * 0.5;
    let sn = s.project(n);
    let n_cross_s = MatVec3::cross_gamma(n) * 0.5;
    s.to_array()[j] * a.a1 + sn * (a.a2 * n[j]) + n_cross_s.to_array()[j] * a.a3
}

/// `(L_j psi)(p)` for a spinor field given as a closure.
fn apply_l<F>(a: &ACoeffs, j: usize, psi: &F, p: &FieldPoint, s: &FdScheme) -> Result<Spinor>
where
    F: Fn(&FieldPoint) -> Result<Spinor>,
{
    let (k, l) = ((j + 1) % 3, (j + 2) % 3);
    let x = p.position;
    let orbital = partial(psi, p, l, s)? * x[k] - partial(psi, p, k, s)? * x[l];
    let spin = Spinor::apply(&spin_part(a, &p.unit(), j), psi(p)?);
    Ok(orbital * (-I) + spin)
}

/// Largest of `|([L_i, L_j] - i L_k) psi|` over cyclic `(i, j, k)` at `p`.
pub fn angular_momentum_check(a: &ACoeffs, psi: &dyn SpinorField, p: &FieldPoint, s: &FdScheme) -> Result<f64> {
    let base = |q: &FieldPoint| -> Result<Spinor> { Ok(psi.eval(&q.position)) };
    let mut worst = 0.0f64;
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let lj = |q: &FieldPoint| apply_l(a, j, &base, q, s);
        let li = |q: &FieldPoint| apply_l(a, i, &base, q, s);
        let ij = apply_l(a, i, &lj, p, s)?;
        let ji = apply_l(a, j, &li, p, s)?;
        let lk = apply_l(a, k, &base, p, s)?;
        worst = worst.max((ij - ji - lk * I).norm());
    }
    Ok(worst)
}

/// `grad(r.G) - r div G` for a real vector field `G`; zero exactly when
/// `A = (r x G)/r^2` inherits a closed angular-momentum algebra.
pub fn abelian_g_condition<F>(g: &F, p: &FieldPoint, s: &FdScheme) -> Result<R3>
where
    F: Fn(&FieldPoint) -> Result<R3>,
{
    let radial = |q: &FieldPoint| -> Result<f64> { Ok(q.position.dot(&g(q)?)) };
    let grad = fd_gradient_real(&radial, p, s)?;
    let div = fd_divergence_real(g, p, s)?;
    Ok(grad - p.position * div)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::eval_a;

    fn small(z: [C64; 3]) -> bool {
        z.iter().all(|c| c.norm() < 1e-12)
    }

    #[test]
    fn constraint_examples() {
        assert!(small(a_constraints(&ACoeffs::real(1.0, 0.0, 0.0))));
        assert!(small(a_constraints(&ACoeffs::real(2.0, -2.0, 0.0))));
        let r = a_constraints(&ACoeffs::real(1.0, 0.0, 0.1));
        assert!((r[2] - re(0.1)).norm() < 1e-15);
    }

    #[test]
    fn family_examples() {
        let q = family_coeffs(&AFamily::Rotation { theta: std::f64::consts::FRAC_PI_4 });
        assert!((q.a1 - re(1.0)).norm() < 1e-15 && (q.a2 + re(1.0)).norm() < 1e-15 && (q.a3 + re(1.0)).norm() < 1e-15);
        let h = family_coeffs(&AFamily::Rotation { theta: std::f64::consts::FRAC_PI_2 });
        assert!((h.a1 - re(2.0)).norm() < 1e-15 && (h.a2 + re(2.0)).norm() < 1e-15 && h.a3.norm() < 1e-15);
        let a = family_coeffs(&AFamily::HyperbolicA { vartheta: 0.7, sign: Sign::Plus });
        assert!(small(a_constraints(&a)));
    }

    #[test]
    fn family_parse_round_trip() {
        for f in [
            AFamily::Displacement,
            AFamily::Rotation { theta: 0.25 },
            AFamily::HyperbolicA { vartheta: 0.5, sign: Sign::Minus },
            AFamily::HyperbolicB { vartheta: 1.5, sign: Sign::Plus },
        ] {
            assert_eq!(f.to_string().parse::<AFamily>().unwrap(), f);
        }
        assert!("spiral:1".parse::<AFamily>().is_err());
    }

    #[test]
    fn a_to_k_examples() {
        let k = a_to_k(&ACoeffs::real(1.0, 0.0, 0.0), ONE).unwrap();
        assert_eq!(k, [re(0.5), re(0.0), re(0.0)]);
        let k = a_to_k(&ACoeffs::real(2.0, -2.0, 0.0), ONE).unwrap();
        assert!((k[0] - ONE).norm() < 1e-15);
        assert_eq!(a_to_k(&ACoeffs::default(), re(0.0)), Err(Error::ZeroCoupling));
    }

    #[test]
    fn pure_gauge_matches_ansatz() {
        let p = FieldPoint::xyz(0.3, -0.8, 0.5).unwrap();
        for theta in [0.0, 0.4, 1.3, 2.9] {
            let cfg = family_config(&AFamily::Rotation { theta }, re(1.7), RadialLaurent::zero()).unwrap();
            let diff = pure_gauge_a(theta, re(1.7), &p).unwrap() - eval_a(&cfg, &p).unwrap();
            assert!(diff.norm() < 1e-12);
        }
        assert_eq!(pure_gauge_a(0.0, ONE, &p).unwrap().norm(), 0.0);
    }

    #[test]
    fn pure_gauge_sample_value() {
        let p = FieldPoint::xyz(0.0, 0.0, 1.0).unwrap();
        let a = pure_gauge_a(std::f64::consts::FRAC_PI_4, ONE, &p).unwrap();
        let (x, y) = (crate::pauli::pauli(crate::pauli::Axis::X), crate::pauli::pauli(crate::pauli::Axis::Y));
        let expected = MatVec3::new((x - y) * 0.5, (x + y) * 0.5, Mat2::zero());
        assert!((a - expected).norm() < 1e-15);
    }

    #[test]
    fn pure_gauge_is_minus_i_grad_u_u_dagger() {
        let s = FdScheme::default();
        let kappa = 1.3;
        for theta in [0.3, 1.1] {
            let p = FieldPoint::xyz(0.4, 0.9, -0.6).unwrap();
            let u = |q: &FieldPoint| Ok(gauge_element(theta, q));
            let grad = crate::diff::fd_gradient(&u, &p, &s).unwrap();
            let a = grad.right_mul(gauge_element(theta, &p).adjoint()) * (-I / kappa);
            assert!((a - pure_gauge_a(theta, re(kappa), &p).unwrap()).norm() < 1e-9);
        }
    }

    #[test]
    fn angular_momentum_closure() {
        let s = FdScheme::default();
        let psi = GaussianSpinor::default();
        let p = FieldPoint::xyz(0.5, -0.4, 0.6).unwrap();
        let good = angular_momentum_check(&family_coeffs(&AFamily::Displacement), &psi, &p, &s).unwrap();
        assert!(good < 1e-4, "{good}");
        let rot = angular_momentum_check(&family_coeffs(&AFamily::Rotation { theta: 0.6 }), &psi, &p, &s).unwrap();
        assert!(rot < 1e-4, "{rot}");
        let bad = angular_momentum_check(&ACoeffs::real(1.0, 0.0, 0.5), &psi, &p, &s).unwrap();
        assert!(bad > 1e-2, "{bad}");
    }
}
