//! The static spin ansatz and its closed-form fields.
//!
//! A potential of the family is
//! `A = (1/r)[k1 (n x S) + k2 S + k3 (S.n) n]` with `S` the Pauli vector and
//! `n` the radial unit vector, and the scalar potential is
//! `phi = f1(r) (S.n) + f2(r)`. Every field built from it is a combination of
//! four radial structures, which [`RadialForm`] captures together with exact
//! radial derivatives.

use crate::error::{Error, Result};
use crate::pauli::{gamma_dot_real, Mat2, MatVec3, C64, R3, ZERO};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

/// Default exclusion radius around the origin.
pub const R_MIN: f64 = 1e-6;

/// Lowest and highest supported Laurent powers.
pub const MIN_POWER: i32 = -2;
pub const MAX_POWER: i32 = 1;

/// `sum_p c_p r^p` over `p` in `-2..=1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RadialLaurent {
    coeffs: [C64; 4],
}

impl RadialLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Build from `(power, coefficient)` pairs; repeated powers accumulate.
    pub fn from_terms(terms: &[(i32, C64)]) -> Result<Self> {
        let mut out = Self::zero();
        for &(p, c) in terms {
            out.add_term(p, c)?;
        }
        Ok(out)
    }

    /// A single term `c r^p`.
    pub fn monomial(p: i32, c: C64) -> Result<Self> {
        Self::from_terms(&[(p, c)])
    }

    pub fn add_term(&mut self, p: i32, c: C64) -> Result<()> {
        if !(MIN_POWER..=MAX_POWER).contains(&p) {
            return Err(Error::UnsupportedPower(p));
        }
        self.coeffs[(p - MIN_POWER) as usize] += c;
        Ok(())
    }

    pub fn coeff(&self, p: i32) -> C64 {
        if (MIN_POWER..=MAX_POWER).contains(&p) {
            self.coeffs[(p - MIN_POWER) as usize]
        } else {
            ZERO
        }
    }

    /// Nonzero terms in ascending power order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, C64)> + '_ {
        (MIN_POWER..=MAX_POWER)
            .map(|p| (p, self.coeff(p)))
            .filter(|(_, c)| *c != ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms().next().is_none()
    }

    pub fn eval(&self, r: f64) -> C64 {
        self.derivative(r, 0)
    }

    /// Exact `n`-th radial derivative.
    pub fn derivative(&self, r: f64, n: u32) -> C64 {
        let mut sum = ZERO;
        for (p, c) in self.terms() {
            let mut factor = 1.0;
            for j in 0..n as i32 {
                factor *= (p - j) as f64;
            }
            if factor != 0.0 {
                sum += c * factor * r.powi(p - n as i32);
            }
        }
        sum
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = *self;
        for c in out.coeffs.iter_mut() {
            *c *= s;
        }
        out
    }
}

impl Serialize for RadialLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, C64> = self.terms().map(|(p, c)| (p.to_string(), c)).collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RadialLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<String, C64>::deserialize(d)?;
        let mut out = RadialLaurent::zero();
        for (k, c) in map {
            let p: i32 = k
                .trim()
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad power key `{k}`")))?;
            out.add_term(p, c).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

/// One member of the ansatz family.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GaugeConfig {
    pub kappa: C64,
    pub k: [C64; 3],
    #[serde(default)]
    pub f1: RadialLaurent,
    #[serde(default)]
    pub f2: RadialLaurent,
}

impl GaugeConfig {
    pub fn new(kappa: C64, k: [C64; 3], f1: RadialLaurent, f2: RadialLaurent) -> Self {
        GaugeConfig { kappa, k, f1, f2 }
    }

    pub fn k1(&self) -> C64 {
        self.k[0]
    }

    pub fn k2(&self) -> C64 {
        self.k[1]
    }

    pub fn k3(&self) -> C64 {
        self.k[2]
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::ConfigParse(e.to_string()))
    }
}

/// A point of R^3 away from the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldPoint {
    pub position: R3,
    pub r: f64,
}

impl FieldPoint {
    pub fn new(position: R3) -> Result<Self> {
        Self::with_min(position, R_MIN)
    }

    pub fn with_min(position: R3, r_min: f64) -> Result<Self> {
        let r = position.norm();
        if r.is_nan() || r <= r_min {
            return Err(Error::PointTooCloseToOrigin { r, r_min });
        }
        Ok(FieldPoint { position, r })
    }

    pub fn xyz(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new(R3::new(x, y, z))
    }

    /// `r_hat`.
    pub fn unit(&self) -> R3 {
        self.position / self.r
    }

    /// Cosine of the polar angle.
    pub fn cos_theta(&self) -> f64 {
        self.position.z / self.r
    }
}

/// A value and its radial derivative.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub v: C64,
    pub d: C64,
}

impl Jet {
    pub fn new(v: C64, d: C64) -> Self {
        Jet { v, d }
    }

    /// `c r^p` with its derivative.
    pub fn power(c: C64, r: f64, p: i32) -> Self {
        Jet::new(c * r.powi(p), c * (p as f64) * r.powi(p - 1))
    }
}

/// A matrix vector field of the form
/// `radial n I + gamma S + gamma_rr (S.n) n + r_cross (n x S)`
/// with radial coefficient functions, sampled at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RadialForm {
    pub radial: Jet,
    pub gamma: Jet,
    pub gamma_rr: Jet,
    pub r_cross: Jet,
}

impl RadialForm {
    /// The field value at `p`.
    pub fn materialize(&self, p: &FieldPoint) -> MatVec3 {
        let n = p.unit();
        let gn = gamma_dot_real(&n);
        MatVec3::outer(&n, Mat2::scalar(self.radial.v))
            + MatVec3::gamma() * self.gamma.v
            + MatVec3::outer(&n, gn) * self.gamma_rr.v
            + MatVec3::cross_gamma(&n) * self.r_cross.v
    }

    /// Exact divergence at `p`.
    pub fn divergence(&self, p: &FieldPoint) -> Mat2 {
        let r = p.r;
        let gn = gamma_dot_real(&p.unit());
        Mat2::scalar(self.radial.d + self.radial.v * (2.0 / r))
            + gn * (self.gamma.d + self.gamma_rr.d + self.gamma_rr.v * (2.0 / r))
    }

    /// Exact curl at `p`.
    pub fn curl(&self, p: &FieldPoint) -> MatVec3 {
        let r = p.r;
        let n = p.unit();
        let gn = gamma_dot_real(&n);
        let (b, c, d) = (self.gamma, self.gamma_rr, self.r_cross);
        MatVec3::cross_gamma(&n) * (b.d - c.v / r)
            + MatVec3::outer(&n, gn) * (d.d - d.v / r)
            - MatVec3::gamma() * (d.d + d.v / r)
    }
}

fn check_point(p: &FieldPoint) -> Result<()> {
    if p.r <= R_MIN {
        return Err(Error::PointTooCloseToOrigin { r: p.r, r_min: R_MIN });
    }
    Ok(())
}

/// Radial structure of `A` at radius `r`.
pub fn a_form(cfg: &GaugeConfig, r: f64) -> RadialForm {
    RadialForm {
        radial: Jet::default(),
        gamma: Jet::power(cfg.k2(), r, -1),
        gamma_rr: Jet::power(cfg.k3(), r, -1),
        r_cross: Jet::power(cfg.k1(), r, -1),
    }
}

/// Radial structure of the closed-form magnetic-like field at radius `r`.
pub fn b_form(cfg: &GaugeConfig, r: f64) -> RadialForm {
    let (kap, k1, k2, k3) = (cfg.kappa, cfg.k1(), cfg.k2(), cfg.k3());
    let rr = k1 * 2.0 * (kap * k1 - 1.0) - kap * k2 * k3 * 2.0;
    let rc = (k2 + k3) * (kap * k1 * 2.0 - 1.0);
    let g = kap * k2 * (k2 + k3) * 2.0;
    RadialForm {
        radial: Jet::default(),
        gamma: Jet::power(g, r, -2),
        gamma_rr: Jet::power(rr, r, -2),
        r_cross: Jet::power(rc, r, -2),
    }
}

/// Radial structure of the closed-form electric-like field at radius `r`.
pub fn e_form(cfg: &GaugeConfig, r: f64) -> RadialForm {
    let q = 1.0 - cfg.kappa * cfg.k1() * 2.0;
    let f = [0, 1, 2, 3].map(|n| cfg.f1.derivative(r, n));
    let f2 = [1, 2].map(|n| cfg.f2.derivative(r, n));
    // u = f1 / r and its derivative
    let u = Jet::new(f[0] / r, f[1] / r - f[0] / (r * r));
    let two_kk2 = cfg.kappa * cfg.k2() * 2.0;
    RadialForm {
        radial: Jet::new(-f2[0], -f2[1]),
        gamma: Jet::new(-u.v * q, -u.d * q),
        gamma_rr: Jet::new(-(f[1] - u.v * q), -(f[2] - u.d * q)),
        r_cross: Jet::new(-u.v * two_kk2, -u.d * two_kk2),
    }
}

/// `A` at `p`.
pub fn eval_a(cfg: &GaugeConfig, p: &FieldPoint) -> Result<MatVec3> {
    check_point(p)?;
    Ok(a_form(cfg, p.r).materialize(p))
}

/// `phi` at `p`.
pub fn eval_phi(cfg: &GaugeConfig, p: &FieldPoint) -> Result<Mat2> {
    check_point(p)?;
    let gn = gamma_dot_real(&p.unit());
    Ok(gn * cfg.f1.eval(p.r) + Mat2::scalar(cfg.f2.eval(p.r)))
}

/// Closed-form magnetic-like field at `p`.
pub fn eval_b_closed(cfg: &GaugeConfig, p: &FieldPoint) -> Result<MatVec3> {
    check_point(p)?;
    Ok(b_form(cfg, p.r).materialize(p))
}

/// Closed-form electric-like field at `p`.
pub fn eval_e_closed(cfg: &GaugeConfig, p: &FieldPoint) -> Result<MatVec3> {
    check_point(p)?;
    Ok(e_form(cfg, p.r).materialize(p))
}
