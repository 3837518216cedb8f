//! Complex 2x2 matrices, the Pauli basis, and matrix-valued 3-vectors.
//!
//! Everything here is exact arithmetic on `Complex64`; products keep the
//! written order because matrix-valued components do not commute.

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// The universal scalar. Real inputs are carried with a zero imaginary part.
pub type C64 = Complex64;

/// Real Cartesian 3-vector used for positions and unit vectors.
pub type R3 = Vector3<f64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Shorthand for a real scalar lifted to `C64`.
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Cartesian axis selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// A 2x2 complex matrix, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub const fn zero() -> Self {
        Mat2([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    /// `s * I`.
    pub fn scalar(s: C64) -> Self {
        Mat2([[s, ZERO], [ZERO, s]])
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn scale(&self, s: C64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Apply to a two-component spinor.
    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, o: Mat2) {
        *self = *self + o;
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + (-o)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-ONE)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

impl Mul<C64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: C64) -> Mat2 {
        self.scale(s)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        self.scale(re(s))
    }
}

/// The Pauli matrix for `axis`.
pub fn pauli(axis: Axis) -> Mat2 {
    match axis {
        Axis::X => Mat2::new(ZERO, ONE, ONE, ZERO),
        Axis::Y => Mat2::new(ZERO, C64::new(0.0, -1.0), I, ZERO),
        Axis::Z => Mat2::new(ONE, ZERO, ZERO, -ONE),
    }
}

/// `ab - ba`.
pub fn commutator(a: Mat2, b: Mat2) -> Mat2 {
    a * b - b * a
}

/// `u . sigma` for a (possibly complex) vector `u`.
pub fn gamma_dot(u: &Vec3) -> Mat2 {
    pauli(Axis::X) * u.x + pauli(Axis::Y) * u.y + pauli(Axis::Z) * u.z
}

/// `u . sigma` for a real vector.
pub fn gamma_dot_real(u: &R3) -> Mat2 {
    gamma_dot(&Vec3::from_real(u))
}

/// Complex 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: C64,
    pub y: C64,
    pub z: C64,
}

impl Vec3 {
    pub fn new(x: C64, y: C64, z: C64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn from_real(v: &R3) -> Self {
        Vec3::new(re(v.x), re(v.y), re(v.z))
    }

    pub fn to_array(self) -> [C64; 3] {
        [self.x, self.y, self.z]
    }

    /// Complex bilinear dot product (no conjugation).
    pub fn dot(&self, o: &Vec3) -> C64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }
}

/// A matrix-valued 3-vector such as the sigma vector, a potential, or a field.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MatVec3 {
    pub x: Mat2,
    pub y: Mat2,
    pub z: Mat2,
}

impl MatVec3 {
    pub fn new(x: Mat2, y: Mat2, z: Mat2) -> Self {
        MatVec3 { x, y, z }
    }

    pub fn zero() -> Self {
        MatVec3::new(Mat2::zero(), Mat2::zero(), Mat2::zero())
    }

    pub fn from_array(a: [Mat2; 3]) -> Self {
        MatVec3::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [Mat2; 3] {
        [self.x, self.y, self.z]
    }

    pub fn get(&self, axis: Axis) -> Mat2 {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    /// The Pauli vector `(sigma_x, sigma_y, sigma_z)`.
    pub fn gamma() -> Self {
        MatVec3::new(pauli(Axis::X), pauli(Axis::Y), pauli(Axis::Z))
    }

    /// `v (x) m`: each component is `v_i * m`.
    pub fn outer(v: &R3, m: Mat2) -> Self {
        MatVec3::new(m * v.x, m * v.y, m * v.z)
    }

    /// `n x sigma` for a real vector `n`.
    pub fn cross_gamma(n: &R3) -> Self {
        let g = MatVec3::gamma();
        MatVec3::new(
            g.z * n.y - g.y * n.z,
            g.x * n.z - g.z * n.x,
            g.y * n.x - g.x * n.y,
        )
    }

    pub fn scale(&self, s: C64) -> Self {
        MatVec3::new(self.x * s, self.y * s, self.z * s)
    }

    /// Left-multiply every component by `m`.
    pub fn left_mul(&self, m: Mat2) -> Self {
        MatVec3::new(m * self.x, m * self.y, m * self.z)
    }

    /// Right-multiply every component by `m`.
    pub fn right_mul(&self, m: Mat2) -> Self {
        MatVec3::new(self.x * m, self.y * m, self.z * m)
    }

    /// Componentwise `[m, V_i]`.
    pub fn commutator_with(m: Mat2, v: &MatVec3) -> Self {
        MatVec3::new(commutator(m, v.x), commutator(m, v.y), commutator(m, v.z))
    }

    /// `sum_i a_i b_i` with matrix products in this order.
    pub fn dot(&self, o: &MatVec3) -> Mat2 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// Real vector dotted into a matrix vector: `sum_i n_i V_i`.
    pub fn project(&self, n: &R3) -> Mat2 {
        self.x * n.x + self.y * n.y + self.z * n.z
    }

    /// Maximum Frobenius norm over the three components.
    pub fn norm(&self) -> f64 {
        self.x
            .frobenius_norm()
            .max(self.y.frobenius_norm())
            .max(self.z.frobenius_norm())
    }
}

impl Add for MatVec3 {
    type Output = MatVec3;
    fn add(self, o: MatVec3) -> MatVec3 {
        MatVec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for MatVec3 {
    fn add_assign(&mut self, o: MatVec3) {
        *self = *self + o;
    }
}

impl Sub for MatVec3 {
    type Output = MatVec3;
    fn sub(self, o: MatVec3) -> MatVec3 {
        MatVec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for MatVec3 {
    type Output = MatVec3;
    fn neg(self) -> MatVec3 {
        MatVec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<C64> for MatVec3 {
    type Output = MatVec3;
    fn mul(self, s: C64) -> MatVec3 {
        self.scale(s)
    }
}

impl Mul<f64> for MatVec3 {
    type Output = MatVec3;
    fn mul(self, s: f64) -> MatVec3 {
        self.scale(re(s))
    }
}

/// Cross product of matrix-valued vectors with products kept in order:
/// `(a x b)_z = a_x b_y - a_y b_x`, cyclic for the other components.
/// For `a = b` this gives `(A x A)_z = [A_x, A_y]`.
pub fn cross_noncommutative(a: &MatVec3, b: &MatVec3) -> MatVec3 {
    MatVec3::new(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )
}
