//! Abelian reference potentials with known curls.
//!
//! Each potential is written as `A = (r x G)/r^2` for a generating field `G`,
//! which makes them fixtures both for the finite-difference curl and for the
//! condition `grad(r.G) = r div G`.

use crate::ansatz::FieldPoint;
use crate::diff::{fd_curl_real, FdScheme};
use crate::error::{Error, Result};
use crate::pauli::R3;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Which Wu-Yang patch: `A` is regular away from the negative z axis on
/// patch `A`, away from the positive z axis on patch `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Patch {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum AbelianPotential {
    /// Outside an infinitely long solenoid carrying flux `flux`.
    AbExterior { flux: f64 },
    /// Monopole of strength `g` on one patch.
    WuYang { patch: Patch, g: f64 },
    /// Uniform field `b0 z_hat` in the symmetric gauge.
    UniformSymmetric { b0: f64 },
    /// Polar potential `amplitude / sin(theta)` whose curl circulates azimuthally.
    Toroidal { amplitude: f64 },
}

impl fmt::Display for AbelianPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbelianPotential::AbExterior { .. } => f.write_str("ab-exterior"),
            AbelianPotential::WuYang { patch: Patch::A, .. } => f.write_str("wu-yang-a"),
            AbelianPotential::WuYang { patch: Patch::B, .. } => f.write_str("wu-yang-b"),
            AbelianPotential::UniformSymmetric { .. } => f.write_str("uniform"),
            AbelianPotential::Toroidal { .. } => f.write_str("toroidal"),
        }
    }
}

impl FromStr for AbelianPotential {
    type Err = Error;

    /// Parses a kind name with unit strength; use [`AbelianPotential::with_strength`] to rescale.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "ab-exterior" => Ok(AbelianPotential::AbExterior { flux: 1.0 }),
            "wu-yang-a" => Ok(AbelianPotential::WuYang { patch: Patch::A, g: 1.0 }),
            "wu-yang-b" => Ok(AbelianPotential::WuYang { patch: Patch::B, g: 1.0 }),
            "uniform" => Ok(AbelianPotential::UniformSymmetric { b0: 1.0 }),
            "toroidal" => Ok(AbelianPotential::Toroidal { amplitude: 1.0 }),
            other => Err(Error::ConfigParse(format!("unknown abelian kind `{other}`"))),
        }
    }
}

impl AbelianPotential {
    pub const KINDS: [&'static str; 5] = ["ab-exterior", "wu-yang-a", "wu-yang-b", "uniform", "toroidal"];

    /// Same kind with its strength parameter replaced.
    pub fn with_strength(self, v: f64) -> Self {
        match self {
            AbelianPotential::AbExterior { .. } => AbelianPotential::AbExterior { flux: v },
            AbelianPotential::WuYang { patch, .. } => AbelianPotential::WuYang { patch, g: v },
            AbelianPotential::UniformSymmetric { .. } => AbelianPotential::UniformSymmetric { b0: v },
            AbelianPotential::Toroidal { .. } => AbelianPotential::Toroidal { amplitude: v },
        }
    }

    pub fn strength(&self) -> f64 {
        match *self {
            AbelianPotential::AbExterior { flux } => flux,
            AbelianPotential::WuYang { g, .. } => g,
            AbelianPotential::UniformSymmetric { b0 } => b0,
            AbelianPotential::Toroidal { amplitude } => amplitude,
        }
    }

    fn check(&self, p: &FieldPoint) -> Result<()> {
        let rho = p.position.xy().norm();
        let bad = match self {
            AbelianPotential::AbExterior { .. } | AbelianPotential::Toroidal { .. } => rho < 1e-3,
            AbelianPotential::WuYang { patch: Patch::A, .. } => p.cos_theta() < -0.99,
            AbelianPotential::WuYang { patch: Patch::B, .. } => p.cos_theta() > 0.99,
            AbelianPotential::UniformSymmetric { .. } => false,
        };
        if bad {
            return Err(Error::OnSingularLocus);
        }
        Ok(())
    }
}

struct Frame {
    r: f64,
    rho: f64,
    cos_t: f64,
    sin_t: f64,
    e_r: R3,
    e_theta: R3,
    e_phi: R3,
}

fn frame(p: &FieldPoint) -> Frame {
    let x = p.position;
    let r = p.r;
    let rho = x.xy().norm();
    let e_r = x / r;
    let (e_theta, e_phi) = if rho > 0.0 {
        (
            R3::new(x.x * x.z / (r * rho), x.y * x.z / (r * rho), -rho / r),
            R3::new(-x.y / rho, x.x / rho, 0.0),
        )
    } else {
        (R3::new(1.0, 0.0, 0.0), R3::new(0.0, 1.0, 0.0))
    };
    Frame { r, rho, cos_t: x.z / r, sin_t: rho / r, e_r, e_theta, e_phi }
}

/// Cartesian components of the potential at `p`.
pub fn eval_abelian_a(pot: &AbelianPotential, p: &FieldPoint) -> Result<R3> {
    pot.check(p)?;
    let f = frame(p);
    Ok(match *pot {
        AbelianPotential::AbExterior { flux } => f.e_phi * (flux / (2.0 * PI * f.rho)),
        AbelianPotential::WuYang { patch: Patch::A, g } => f.e_phi * (g * (1.0 - f.cos_t) / (f.r * f.sin_t)),
        AbelianPotential::WuYang { patch: Patch::B, g } => f.e_phi * (-g * (1.0 + f.cos_t) / (f.r * f.sin_t)),
        AbelianPotential::UniformSymmetric { b0 } => R3::new(-p.position.y, p.position.x, 0.0) * (0.5 * b0),
        AbelianPotential::Toroidal { amplitude } => f.e_theta * (amplitude / f.sin_t),
    })
}

/// The known closed-form curl at `p`.
pub fn expected_b(pot: &AbelianPotential, p: &FieldPoint) -> Result<R3> {
    pot.check(p)?;
    let f = frame(p);
    Ok(match *pot {
        AbelianPotential::AbExterior { .. } => R3::zeros(),
        AbelianPotential::WuYang { g, .. } => f.e_r * (g / (f.r * f.r)),
        AbelianPotential::UniformSymmetric { b0 } => R3::new(0.0, 0.0, b0),
        AbelianPotential::Toroidal { amplitude } => f.e_phi * (amplitude / f.rho),
    })
}

/// The generating field `G` with `A = (r x G)/r^2`.
pub fn generating_field(pot: &AbelianPotential, p: &FieldPoint) -> Result<R3> {
    pot.check(p)?;
    let f = frame(p);
    Ok(match *pot {
        AbelianPotential::AbExterior { flux } => f.e_theta * (flux / (2.0 * PI) / f.sin_t),
        AbelianPotential::WuYang { patch, g } => {
            let c = match patch {
                Patch::A => -1.0,
                Patch::B => 1.0,
            };
            let g_r = -g;
            f.e_r * g_r + f.e_theta * (g_r * (f.cos_t + c) / f.sin_t)
        }
        AbelianPotential::UniformSymmetric { b0 } => f.e_theta * (0.5 * b0 * f.r * f.r * f.sin_t),
        AbelianPotential::Toroidal { amplitude } => f.e_phi * (-amplitude * f.r / f.sin_t),
    })
}

/// Finite-difference curl against the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurlCheck {
    pub actual: [f64; 3],
    pub expected: [f64; 3],
    pub err: f64,
}

pub fn verify_abelian_b(pot: &AbelianPotential, p: &FieldPoint, s: &FdScheme) -> Result<CurlCheck> {
    let expected = expected_b(pot, p)?;
    let actual = fd_curl_real(&|q: &FieldPoint| eval_abelian_a(pot, q), p, s)?;
    Ok(CurlCheck {
        actual: [actual.x, actual.y, actual.z],
        expected: [expected.x, expected.y, expected.z],
        err: (actual - expected).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_examples() {
        let p = FieldPoint::xyz(1.0, 0.0, 0.0).unwrap();
        let a = eval_abelian_a(&AbelianPotential::UniformSymmetric { b0: 2.0 }, &p).unwrap();
        assert!((a - R3::new(0.0, 1.0, 0.0)).norm() < 1e-15);

        let a = eval_abelian_a(&AbelianPotential::WuYang { patch: Patch::A, g: 1.0 }, &p).unwrap();
        assert!((a - R3::new(0.0, 1.0, 0.0)).norm() < 1e-15);

        let q = FieldPoint::xyz(0.0, 2.0, 0.3).unwrap();
        let a = eval_abelian_a(&AbelianPotential::AbExterior { flux: 2.0 * PI }, &q).unwrap();
        assert!((a - R3::new(-0.5, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn generating_field_reproduces_potential() {
        let p = FieldPoint::xyz(0.4, -0.7, 0.5).unwrap();
        for kind in AbelianPotential::KINDS {
            let pot: AbelianPotential = kind.parse::<AbelianPotential>().unwrap().with_strength(1.7);
            let g = generating_field(&pot, &p).unwrap();
            let a = p.position.cross(&g) / (p.r * p.r);
            assert!((a - eval_abelian_a(&pot, &p).unwrap()).norm() < 1e-14, "{kind}");
        }
    }

    #[test]
    fn singular_loci_are_rejected() {
        let south = FieldPoint::xyz(0.001, 0.0, -1.0).unwrap();
        let north = FieldPoint::xyz(0.001, 0.0, 1.0).unwrap();
        let wa = AbelianPotential::WuYang { patch: Patch::A, g: 1.0 };
        let wb = AbelianPotential::WuYang { patch: Patch::B, g: 1.0 };
        assert_eq!(eval_abelian_a(&wa, &south), Err(Error::OnSingularLocus));
        assert!(eval_abelian_a(&wa, &north).is_ok());
        assert_eq!(eval_abelian_a(&wb, &north), Err(Error::OnSingularLocus));
        let axis = FieldPoint::xyz(0.0, 0.0, 2.0).unwrap();
        assert_eq!(eval_abelian_a(&AbelianPotential::Toroidal { amplitude: 1.0 }, &axis), Err(Error::OnSingularLocus));
    }

    #[test]
    fn curl_examples() {
        let s = FdScheme::default();
        let t = PI / 3.0;
        let p = FieldPoint::new(R3::new(t.sin(), 0.0, t.cos()) * 2.0).unwrap();
        let c = verify_abelian_b(&AbelianPotential::WuYang { patch: Patch::A, g: 1.0 }, &p, &s).unwrap();
        assert!(c.err < 1e-6);
        assert!((R3::from(c.expected).norm() - 0.25).abs() < 1e-15);

        let c = verify_abelian_b(&AbelianPotential::AbExterior { flux: 3.0 }, &p, &s).unwrap();
        assert!(c.err < 1e-7);
        let c = verify_abelian_b(&AbelianPotential::UniformSymmetric { b0: 3.0 }, &p, &s).unwrap();
        assert!(c.err < 1e-8);
        assert_eq!(c.expected, [0.0, 0.0, 3.0]);
    }
}
