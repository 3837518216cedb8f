//! Central finite differences for matrix-, vector-, and scalar-valued fields.
//!
//! The step at a point is `h_base * max(1, r)`. With Richardson extrapolation
//! the two central estimates at `h` and `h/2` are combined to cancel the
//! leading `h^2` error term.

use crate::ansatz::FieldPoint;
use crate::error::{Error, Result};
use crate::pauli::{Mat2, MatVec3, C64, R3};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Sub};

/// Anything that can be differenced: a real vector space.
pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl<T> Linear for T where T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdScheme {
    pub h_base: f64,
    pub richardson: bool,
}

impl Default for FdScheme {
    fn default() -> Self {
        FdScheme { h_base: 1e-3, richardson: true }
    }
}

impl FdScheme {
    pub fn new(h_base: f64, richardson: bool) -> Self {
        FdScheme { h_base, richardson }
    }

    /// Effective step at radius `r`.
    pub fn step(&self, r: f64) -> f64 {
        self.h_base * r.max(1.0)
    }
}

fn shifted(p: &FieldPoint, axis: usize, delta: f64) -> Result<FieldPoint> {
    let mut x = p.position;
    x[axis] += delta;
    FieldPoint::new(x)
}

/// Partial derivative along `axis` (0, 1, 2).
pub fn partial<T, F>(f: &F, p: &FieldPoint, axis: usize, s: &FdScheme) -> Result<T>
where
    T: Linear,
    F: Fn(&FieldPoint) -> Result<T>,
{
    let h = s.step(p.r);
    if p.r <= 2.0 * h {
        return Err(Error::StepTooLarge { h, r: p.r });
    }
    let central = |h: f64| -> Result<T> {
        let plus = f(&shifted(p, axis, h)?)?;
        let minus = f(&shifted(p, axis, -h)?)?;
        Ok((plus - minus) * (0.5 / h))
    };
    let coarse = central(h)?;
    if !s.richardson {
        return Ok(coarse);
    }
    let fine = central(0.5 * h)?;
    Ok(fine * (4.0 / 3.0) - coarse * (1.0 / 3.0))
}

/// All three partials `[d_x f, d_y f, d_z f]`.
pub fn partials<T, F>(f: &F, p: &FieldPoint, s: &FdScheme) -> Result<[T; 3]>
where
    T: Linear,
    F: Fn(&FieldPoint) -> Result<T>,
{
    Ok([partial(f, p, 0, s)?, partial(f, p, 1, s)?, partial(f, p, 2, s)?])
}

/// Gradient of a matrix-valued scalar field.
pub fn fd_gradient<F>(f: &F, p: &FieldPoint, s: &FdScheme) -> Result<MatVec3>
where
    F: Fn(&FieldPoint) -> Result<Mat2>,
{
    Ok(MatVec3::from_array(partials(f, p, s)?))
}

/// Curl of a matrix-valued vector field.
pub fn fd_curl<F>(f: &F, p: &FieldPoint, s: &FdScheme) -> Result<MatVec3>
where
    F: Fn(&FieldPoint) -> Result<MatVec3>,
{
    let [dx, dy, dz] = partials(f, p, s)?;
    Ok(MatVec3::new(dy.z - dz.y, dz.x - dx.z, dx.y - dy.x))
}

/// Divergence of a matrix-valued vector field.
pub fn fd_divergence<F>(f: &F, p: &FieldPoint, s: &FdScheme) -> Result<Mat2>
where
    F: Fn(&FieldPoint) -> Result<MatVec3>,
{
    let [dx, dy, dz] = partials(f, p, s)?;
    Ok(dx.x + dy.y + dz.z)
}

/// Curl of a real vector field.
pub fn fd_curl_real<F>(f: &F, p: &FieldPoint, s: &FdScheme) -> Result<R3>
where
    F: Fn(&FieldPoint) -> Result<R3>,
{
    let [dx, dy, dz] = partials(f, p, s)?;
    Ok(R3::new(dy.z - dz.y, dz.x - dx.z, dx.y - dy.x))
}

/// Divergence of a real vector field.
pub fn fd_divergence_real<F>(f: &F, p: &FieldPoint, s: &FdScheme) -> Result<f64>
where
    F: Fn(&FieldPoint) -> Result<R3>,
{
    let [dx, dy, dz] = partials(f, p, s)?;
    Ok(dx.x + dy.y + dz.z)
}

/// Gradient of a real scalar field.
pub fn fd_gradient_real<F>(f: &F, p: &FieldPoint, s: &FdScheme) -> Result<R3>
where
    F: Fn(&FieldPoint) -> Result<f64>,
{
    let [dx, dy, dz] = partials(f, p, s)?;
    Ok(R3::new(dx, dy, dz))
}

/// A two-component spinor, differenced componentwise.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor(pub [C64; 2]);

impl Add for Spinor {
    type Output = Spinor;
    fn add(self, o: Spinor) -> Spinor {
        Spinor([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl Sub for Spinor {
    type Output = Spinor;
    fn sub(self, o: Spinor) -> Spinor {
        Spinor([self.0[0] - o.0[0], self.0[1] - o.0[1]])
    }
}

impl Mul<f64> for Spinor {
    type Output = Spinor;
    fn mul(self, s: f64) -> Spinor {
        Spinor([self.0[0] * s, self.0[1] * s])
    }
}

impl Mul<C64> for Spinor {
    type Output = Spinor;
    fn mul(self, s: C64) -> Spinor {
        Spinor([self.0[0] * s, self.0[1] * s])
    }
}

impl Spinor {
    pub fn norm(&self) -> f64 {
        (self.0[0].norm_sqr() + self.0[1].norm_sqr()).sqrt()
    }

    pub fn apply(m: &Mat2, v: Spinor) -> Spinor {
        Spinor(m.apply(v.0))
    }
}

/// The shared deterministic sample set: 32 points on each of the shells
/// `r = 0.7` and `r = 1.6`, laid out on a Fibonacci lattice. Directions with
/// `|cos theta| > 0.99` are excluded; the 32-point lattice never reaches them.
pub fn sample_points() -> Vec<FieldPoint> {
    const SHELLS: [f64; 2] = [0.7, 1.6];
    const PER_SHELL: usize = 32;
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut out = Vec::with_capacity(SHELLS.len() * PER_SHELL);
    for (shell, &r) in SHELLS.iter().enumerate() {
        // the second shell is rotated so the two lattices do not share rays
        let offset = 0.5 * shell as f64;
        for i in 0..PER_SHELL {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / PER_SHELL as f64;
            if z.abs() > 0.99 {
                continue;
            }
            let rho = (1.0 - z * z).sqrt();
            let phi = golden * (i as f64 + offset);
            let pos = R3::new(rho * phi.cos(), rho * phi.sin(), z) * r;
            out.push(FieldPoint::new(pos).expect("sample shells lie away from the origin"));
        }
    }
    out
}
