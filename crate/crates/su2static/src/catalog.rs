//! Which radial profiles solve the field equations for given `(kappa, k)`.
//!
//! With `f2 = C0 + C1/r` fixed by its own radial Laplace equation, the
//! remaining field equations reduce to four scalar constraints on `f1`:
//! one linear second-order ODE (`e1`) and three algebraic equations
//! (`e2..e4`) in `f1^2`. [`classify`] walks the closed-form case tree,
//! [`solve_profiles`] solves the same constraints by Laurent coefficient
//! matching, and [`catalog`] lists every solution family with a recipe for
//! turning free parameters into concrete configs.

use crate::ansatz::{GaugeConfig, RadialLaurent, MAX_POWER, MIN_POWER};
use crate::error::{Error, Result};
use crate::pauli::{re, C64, I, ONE, ZERO};
use crate::vpea::{a_to_k, family_coeffs, AFamily, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Absolute tolerance for zero tests on parameters.
pub const EPS_CLASS: f64 = 1e-10;

/// Tolerance for the coefficient-matching solver on derived quantities.
pub const EPS_SOLVE: f64 = 1e-8;

fn zero(z: C64) -> bool {
    z.norm() < EPS_CLASS
}

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    C1_g0_k10,
    C2_g0_k1nz_NoSolution,
    C3_1_k3zero,
    C3_1_k3nz_complex,
    C3_2_complex_k2,
    C4_1_halfquant,
    C4_1_fullquant,
    C4_1_other_NoSolution,
    C4_2_vpea,
    C4_2_complexC,
    C4_3_k2zero,
    C4_3_k2nz_complex,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl CaseId {
    pub const ALL: [CaseId; 12] = [
        CaseId::C1_g0_k10,
        CaseId::C2_g0_k1nz_NoSolution,
        CaseId::C3_1_k3zero,
        CaseId::C3_1_k3nz_complex,
        CaseId::C3_2_complex_k2,
        CaseId::C4_1_halfquant,
        CaseId::C4_1_fullquant,
        CaseId::C4_1_other_NoSolution,
        CaseId::C4_2_vpea,
        CaseId::C4_2_complexC,
        CaseId::C4_3_k2zero,
        CaseId::C4_3_k2nz_complex,
    ];

    /// Stable small integer, used by the C interface.
    pub fn code(self) -> i32 {
        CaseId::ALL.iter().position(|&c| c == self).unwrap() as i32 + 1
    }
}

/// Shape of an admissible `f1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum F1Shape {
    Zero,
    /// `C2/r^2 + C3 r`, both free.
    InverseSquarePlusLinear,
    /// `C2/r + C3`, both free.
    InversePlusConstant,
    /// `C/r` with `C^2` fixed by the couplings, either sign of `C`.
    FixedInverse { c_squared: C64 },
}

impl fmt::Display for F1Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            F1Shape::Zero => f.write_str("0"),
            F1Shape::InverseSquarePlusLinear => f.write_str("C2/r^2 + C3 r"),
            F1Shape::InversePlusConstant => f.write_str("C2/r + C3"),
            F1Shape::FixedInverse { .. } => f.write_str("C/r"),
        }
    }
}

impl Serialize for F1Shape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("f1", &self.to_string())?;
        if let F1Shape::FixedInverse { c_squared } = self {
            m.serialize_entry("c_squared", &[c_squared.re, c_squared.im])?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Admissible {
    #[serde(flatten)]
    pub f1: F1Shape,
    /// Extra constraint on the couplings, empty when none.
    pub constraint: String,
}

impl Admissible {
    fn new(f1: F1Shape, constraint: &str) -> Self {
        Admissible { f1, constraint: constraint.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub case: CaseId,
    /// Empty when no `f1` solves the constraints.
    pub admissible: Vec<Admissible>,
}

impl Classification {
    fn new(case: CaseId, admissible: Vec<Admissible>) -> Self {
        Classification { case, admissible }
    }

    pub fn has_solution(&self) -> bool {
        !self.admissible.is_empty()
    }
}

/// Walk the case tree. Ties at branch boundaries go to the earlier branch.
pub fn classify(kappa: C64, k1: C64, k2: C64, k3: C64) -> Classification {
    use CaseId::*;
    let s = k2 + k3;
    if zero(kappa) {
        if zero(k1) {
            let adm = if zero(s) {
                vec![Admissible::new(F1Shape::InverseSquarePlusLinear, "k3 = -k2")]
            } else {
                vec![]
            };
            return Classification::new(C1_g0_k10, adm);
        }
        return Classification::new(C2_g0_k1nz_NoSolution, vec![]);
    }
    let kk = kappa * kappa;
    if zero(k1) {
        if zero(s) {
            if zero(k3) {
                return Classification::new(C3_1_k3zero, vec![Admissible::new(F1Shape::Zero, "")]);
            }
            let adm = if zero(ONE + kk * k2 * k2 * 4.0) {
                vec![Admissible::new(F1Shape::FixedInverse { c_squared: k3 * k3 }, "1 + 4 kappa^2 k2^2 = 0")]
            } else {
                vec![]
            };
            return Classification::new(C3_1_k3nz_complex, adm);
        }
        if !zero(ONE + kk * k2 * k2 * 4.0) {
            return Classification::new(C3_2_complex_k2, vec![]);
        }
        let c2 = k2 * k2 * 3.0 + k2 * k3 * 3.0 + k3 * k3;
        return Classification::new(C3_2_complex_k2, vec![fixed_or_zero(c2, "1 + 4 kappa^2 k2^2 = 0")]);
    }
    if zero(k2) && zero(k3) {
        if zero(kappa * k1 * 2.0 - 1.0) {
            return Classification::new(C4_1_halfquant, vec![Admissible::new(F1Shape::InversePlusConstant, "2 kappa k1 = 1")]);
        }
        if zero(kappa * k1 - 1.0) {
            return Classification::new(C4_1_fullquant, vec![Admissible::new(F1Shape::Zero, "kappa k1 = 1")]);
        }
        return Classification::new(C4_1_other_NoSolution, vec![]);
    }
    if zero(s) {
        let q = kappa * k1 * k1 + kappa * k3 * k3 - k1;
        if zero(q) {
            return Classification::new(C4_2_vpea, vec![Admissible::new(F1Shape::Zero, "kappa k1^2 + kappa k3^2 - k1 = 0")]);
        }
        if zero(q + (kappa * 4.0).inv()) {
            return Classification::new(
                C4_2_complexC,
                vec![Admissible::new(
                    F1Shape::FixedInverse { c_squared: q / kappa },
                    "kappa k1^2 + kappa k3^2 - k1 = -1/(4 kappa)",
                )],
            );
        }
        return Classification::new(C4_2_vpea, vec![]);
    }
    let factor = ONE + kappa * (kappa * k2 * k2 + kappa * k1 * k1 - k1) * 4.0;
    if zero(k2) {
        let adm = if zero(factor) {
            vec![Admissible::new(F1Shape::InversePlusConstant, "2 kappa k1 = 1")]
        } else {
            vec![]
        };
        return Classification::new(C4_3_k2zero, adm);
    }
    if !zero(factor) {
        return Classification::new(C4_3_k2nz_complex, vec![]);
    }
    let b = kappa * k1 * 2.0 - 1.0;
    let c2 = (s * b + k2 * (kk * s * s * 4.0 - 1.0)) / (kk * k2 * 4.0);
    Classification::new(C4_3_k2nz_complex, vec![fixed_or_zero(c2, "1 + 4 kappa (kappa k2^2 + kappa k1^2 - k1) = 0")])
}

fn fixed_or_zero(c2: C64, constraint: &str) -> Admissible {
    if zero(c2) {
        Admissible::new(F1Shape::Zero, constraint)
    } else {
        Admissible::new(F1Shape::FixedInverse { c_squared: c2 }, constraint)
    }
}

/// The four `f1` constraints and the `f2` equation at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintResiduals {
    pub e: [C64; 4],
    pub f2: C64,
}

impl ConstraintResiduals {
    pub fn max_norm(&self) -> f64 {
        self.e.iter().chain(std::iter::once(&self.f2)).map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Evaluate the constraint equations with exact Laurent derivatives.
pub fn constraint_residuals(cfg: &GaugeConfig, r: f64) -> ConstraintResiduals {
    let kap = cfg.kappa;
    let [k1, k2, k3] = cfg.k;
    let s = k2 + k3;
    let f = cfg.f1.eval(r);
    let df = cfg.f1.derivative(r, 1);
    let ddf = cfg.f1.derivative(r, 2);
    let r2 = r * r;
    let r3 = r2 * r;
    // recurring bracket 2 k1 (kappa k1 - 1) - 2 kappa k2 k3
    let w = k1 * (kap * k1 - 1.0) * 2.0 - kap * k2 * k3 * 2.0;
    let half = kap * k1 * 2.0 - 1.0;

    let e1 = kap * (k1 - kap * k1 * k1 * 2.0 - kap * k2 * k2 * 2.0) * f * (4.0 / r2) + ddf + df * (2.0 / r)
        - f * (-half) * (2.0 / r2);
    let e2 = -(kap * (k1 * k1 + k2 * k2 * 2.0 + k2 * k3) - k1) * (2.0 / r3) + kap * f * f * (-half) * (2.0 / r)
        + kap * (k1 * w + s * s * half + kap * k1 * k2 * s * 2.0) * (2.0 / r3);
    let e3 = s * half / r3 - kap * kap * k2 * f * f * (4.0 / r)
        + kap * (k2 * w + kap * k2 * s * (k2 * 2.0 + k3) * 2.0) * (2.0 / r3);
    let e4 = -s * half * (3.0 / r3) + kap * kap * k2 * f * f * (4.0 / r)
        + kap * (-k2 * w + k1 * s * half * 2.0 - kap * k2 * k3 * s * 2.0) * (2.0 / r3);
    let f2 = cfg.f2.derivative(r, 2) + cfg.f2.derivative(r, 1) * (2.0 / r);
    ConstraintResiduals { e: [e1, e2, e3, e4], f2 }
}

/// Result of Laurent coefficient matching for `f1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileSolution {
    /// No Laurent `f1` (not even zero) works.
    None,
    /// Only `f1 = 0`.
    Zero,
    /// `f1 = C/r` with the given `C^2`.
    FixedInverse { c_squared: [f64; 2] },
    /// Any combination of the listed powers.
    Span { powers: Vec<i32> },
}

/// Solve the constraints for `f1 = sum_p c_p r^p` by matching powers of `r`.
///
/// Multiplying `e2..e4` by `r^3` leaves `P + u F^2`, `P - v F^2`, `P + v F^2`
/// with `F = r f1`. A nonconstant Laurent `F` has a nonconstant square, so as
/// soon as `u` or `v` is nonzero `F` is a constant `C`. The ODE `e1` acts on
/// each power separately as `(p (p + 1) + lambda) c_p = 0`.
pub fn solve_profiles(kappa: C64, k: [C64; 3]) -> ProfileSolution {
    let [k1, k2, k3] = k;
    let s = k2 + k3;
    let half = kappa * k1 * 2.0 - 1.0;
    let w = k1 * (kappa * k1 - 1.0) * 2.0 - kappa * k2 * k3 * 2.0;
    let lambda = kappa * (k1 - kappa * k1 * k1 * 2.0 - kappa * k2 * k2 * 2.0) * 4.0 + half * 2.0;
    let u = -kappa * half * 2.0;
    let v = kappa * kappa * k2 * 4.0;
    let p2 = -(kappa * (k1 * k1 + k2 * k2 * 2.0 + k2 * k3) - k1) * 2.0
        + kappa * (k1 * w + s * s * half + kappa * k1 * k2 * s * 2.0) * 2.0;
    let p3 = s * half + kappa * (k2 * w + kappa * k2 * s * (k2 * 2.0 + k3) * 2.0) * 2.0;
    let p4 = -s * half * 3.0 + kappa * (-k2 * w + k1 * s * half * 2.0 - kappa * k2 * k3 * s * 2.0) * 2.0;

    let small = |z: C64| z.norm() < EPS_SOLVE;
    let mut c2: Option<C64> = None;
    for (coef, val) in [(u, p2), (-v, p3), (v, p4)] {
        if small(coef) {
            if !small(val) {
                return ProfileSolution::None;
            }
            continue;
        }
        let cand = -val / coef;
        match c2 {
            Some(prev) if (prev - cand).norm() > EPS_SOLVE * prev.norm().max(1.0) => return ProfileSolution::None,
            Some(_) => {}
            None => c2 = Some(cand),
        }
    }
    match c2 {
        None => {
            let powers: Vec<i32> = (MIN_POWER..=MAX_POWER)
                .filter(|&p| small(lambda + (p * (p + 1)) as f64))
                .collect();
            if powers.is_empty() {
                ProfileSolution::Zero
            } else {
                ProfileSolution::Span { powers }
            }
        }
        Some(c2) if small(c2) => ProfileSolution::Zero,
        Some(c2) if small(lambda) => ProfileSolution::FixedInverse { c_squared: [c2.re, c2.im] },
        Some(_) => ProfileSolution::None,
    }
}

impl ProfileSolution {
    /// Whether this agrees with the admissible list from [`classify`].
    pub fn agrees_with(&self, adm: &[Admissible]) -> bool {
        let shapes: Vec<F1Shape> = adm.iter().map(|a| a.f1).collect();
        match self {
            ProfileSolution::None => shapes.is_empty(),
            ProfileSolution::Zero => shapes == [F1Shape::Zero],
            ProfileSolution::Span { powers } => match powers.as_slice() {
                [-2, 1] => shapes == [F1Shape::InverseSquarePlusLinear],
                [-1, 0] => shapes == [F1Shape::InversePlusConstant],
                _ => false,
            },
            ProfileSolution::FixedInverse { c_squared } => match shapes.as_slice() {
                [F1Shape::FixedInverse { c_squared: c }] => {
                    let mine = C64::new(c_squared[0], c_squared[1]);
                    (mine - c).norm() <= EPS_SOLVE * mine.norm().max(1.0)
                }
                _ => false,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Realness {
    Real,
    Complex,
}

impl FromStr for Realness {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(Realness::Real),
            "complex" => Ok(Realness::Complex),
            other => Err(Error::ConfigParse(format!("realness must be `real` or `complex`, got `{other}`"))),
        }
    }
}

/// How a catalog row turns free parameters into configs. The serialized
/// name doubles as the machine-checkable predicate id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Recipe {
    UncoupledOpposite,
    UncoupledNoSolution,
    Coulomb,
    ImaginaryPair,
    ImaginaryK2,
    HalfQuant,
    FullQuant,
    Rotation,
    HyperbolicA,
    HyperbolicB,
    ImaginaryC,
    HalfQuantK3,
    CoupledImaginaryK2,
}

impl Recipe {
    fn free_params(self) -> &'static [&'static str] {
        match self {
            Recipe::UncoupledOpposite => &["k2", "C1", "C2", "C3"],
            Recipe::UncoupledNoSolution => &[],
            Recipe::Coulomb | Recipe::ImaginaryPair | Recipe::FullQuant => &["C1"],
            Recipe::ImaginaryK2 => &["k3", "C1"],
            Recipe::HalfQuant => &["C1", "C2", "C3"],
            Recipe::Rotation => &["theta", "C1"],
            Recipe::HyperbolicA | Recipe::HyperbolicB => &["vartheta", "C1"],
            Recipe::ImaginaryC => &["k1", "C1"],
            Recipe::HalfQuantK3 => &["k3", "C1", "C2", "C3"],
            Recipe::CoupledImaginaryK2 => &["k1", "k3", "C1"],
        }
    }
}

/// One row of a solution table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub case: CaseId,
    pub realness: Realness,
    /// Symbolic `(k1, k2, k3)`.
    pub k_spec: [&'static str; 3],
    pub f1_shape: &'static str,
    pub f2_shape: &'static str,
    pub constraint_note: &'static str,
    #[serde(rename = "predicate")]
    pub recipe: Recipe,
    pub free_params: &'static [&'static str],
    /// False for the no-solution marker.
    pub has_solutions: bool,
}

/// Free parameters by name.
pub type FreeParams = BTreeMap<String, C64>;

/// One concrete member of a catalog row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    pub branch: String,
    pub config: GaugeConfig,
}

struct Row {
    id: &'static str,
    case: CaseId,
    recipe: Recipe,
    k_spec: [&'static str; 3],
    f1: &'static str,
    note: &'static str,
}

const REAL_ROWS: &[Row] = &[
    Row { id: "real.case1", case: CaseId::C1_g0_k10, recipe: Recipe::UncoupledOpposite, k_spec: ["0", "k2 real", "-k2"], f1: "C2/r^2 + C3 r", note: "kappa = 0; C2, C3 real" },
    Row { id: "real.case2", case: CaseId::C2_g0_k1nz_NoSolution, recipe: Recipe::UncoupledNoSolution, k_spec: ["k1 != 0", "-", "-"], f1: "-", note: "kappa = 0, k1 != 0: no solutions" },
    Row { id: "real.case3", case: CaseId::C3_1_k3zero, recipe: Recipe::Coulomb, k_spec: ["0", "0", "0"], f1: "0", note: "A = 0, Coulomb-type scalar potential" },
    Row { id: "real.case4.halfquant", case: CaseId::C4_1_halfquant, recipe: Recipe::HalfQuant, k_spec: ["1/(2 kappa)", "0", "0"], f1: "C2/r + C3", note: "2 kappa k1 = 1" },
    Row { id: "real.case4.fullquant", case: CaseId::C4_1_fullquant, recipe: Recipe::FullQuant, k_spec: ["1/kappa", "0", "0"], f1: "0", note: "kappa k1 = 1" },
    Row { id: "real.case4.rotation", case: CaseId::C4_2_vpea, recipe: Recipe::Rotation, k_spec: ["sin^2(theta)/kappa", "-k3", "-sin(theta) cos(theta)/kappa != 0"], f1: "0", note: "kappa k1^2 + kappa k3^2 - k1 = 0" },
    Row { id: "real.case4.halfquant_k3", case: CaseId::C4_3_k2zero, recipe: Recipe::HalfQuantK3, k_spec: ["1/(2 kappa)", "0", "k3 != 0"], f1: "C2/r + C3", note: "2 kappa k1 = 1" },
];

const COMPLEX_ROWS: &[Row] = &[
    Row { id: "complex.case1", case: CaseId::C1_g0_k10, recipe: Recipe::UncoupledOpposite, k_spec: ["0", "k2 complex", "-k2"], f1: "C2/r^2 + C3 r", note: "kappa = 0; at least one of C1, C2, C3, k2 complex" },
    Row { id: "complex.case2", case: CaseId::C2_g0_k1nz_NoSolution, recipe: Recipe::UncoupledNoSolution, k_spec: ["k1 != 0", "-", "-"], f1: "-", note: "kappa = 0, k1 != 0: no solutions" },
    Row { id: "complex.case3.coulomb", case: CaseId::C3_1_k3zero, recipe: Recipe::Coulomb, k_spec: ["0", "0", "0"], f1: "0", note: "C1 complex" },
    Row { id: "complex.case3.imaginary_pair", case: CaseId::C3_1_k3nz_complex, recipe: Recipe::ImaginaryPair, k_spec: ["0", "+-i/(2|kappa|)", "-+i/(2|kappa|)"], f1: "(+-i/(2|kappa|))/r", note: "1 + 4 kappa^2 k2^2 = 0" },
    Row { id: "complex.case3.imaginary_k2", case: CaseId::C3_2_complex_k2, recipe: Recipe::ImaginaryK2, k_spec: ["0", "+-i/(2|kappa|)", "k3 != -k2"], f1: "+-sqrt(3 k2^2 + 3 k2 k3 + k3^2)/r", note: "1 + 4 kappa^2 k2^2 = 0; f1 = 0 when k3 = (-3 +- i sqrt(3)) k2/2" },
    Row { id: "complex.case4.halfquant", case: CaseId::C4_1_halfquant, recipe: Recipe::HalfQuant, k_spec: ["1/(2 kappa)", "0", "0"], f1: "C2/r + C3", note: "2 kappa k1 = 1; at least one of C1, C2, C3 complex" },
    Row { id: "complex.case4.fullquant", case: CaseId::C4_1_fullquant, recipe: Recipe::FullQuant, k_spec: ["1/kappa", "0", "0"], f1: "0", note: "kappa k1 = 1; C1 complex" },
    Row { id: "complex.case4.rotation", case: CaseId::C4_2_vpea, recipe: Recipe::Rotation, k_spec: ["sin^2(theta)/kappa", "-k3", "-sin(theta) cos(theta)/kappa != 0"], f1: "0", note: "kappa k1^2 + kappa k3^2 - k1 = 0; C1 complex" },
    Row { id: "complex.case4.hyperbolic_a", case: CaseId::C4_2_vpea, recipe: Recipe::HyperbolicA, k_spec: ["(1 +- cosh(vartheta))/(2 kappa)", "-k3", "i sinh(vartheta)/(2 kappa) != 0"], f1: "0", note: "kappa k1^2 + kappa k3^2 - k1 = 0" },
    Row { id: "complex.case4.hyperbolic_b", case: CaseId::C4_2_vpea, recipe: Recipe::HyperbolicB, k_spec: ["(1 + i sinh(vartheta))/(2 kappa)", "-k3", "+-cosh(vartheta)/(2 kappa)"], f1: "0", note: "kappa k1^2 + kappa k3^2 - k1 = 0" },
    Row { id: "complex.case4.imaginary_c", case: CaseId::C4_2_complexC, recipe: Recipe::ImaginaryC, k_spec: ["k1 (free)", "-k3", "+-sqrt((k1 - kappa k1^2 - 1/(4 kappa))/kappa) != 0"], f1: "(+-i/(2|kappa|))/r", note: "kappa k1^2 + kappa k3^2 - k1 = -1/(4 kappa)" },
    Row { id: "complex.case4.halfquant_k3", case: CaseId::C4_3_k2zero, recipe: Recipe::HalfQuantK3, k_spec: ["1/(2 kappa)", "0", "k3 != 0"], f1: "C2/r + C3", note: "2 kappa k1 = 1; at least one of C1, C2, C3 complex" },
    Row { id: "complex.case4.imaginary_k2", case: CaseId::C4_3_k2nz_complex, recipe: Recipe::CoupledImaginaryK2, k_spec: ["k1 != 1/(2 kappa)", "+-i (2 kappa k1 - 1)/(2 kappa)", "k3 (free)"], f1: "C/r", note: "C^2 = [(k2 + k3)(2 kappa k1 - 1) + k2 (-1 + 4 kappa^2 (k2 + k3)^2)]/(4 kappa^2 k2); f1 = 0 when the numerator vanishes" },
];

/// Every row of the real or complex solution table, no-solution marker included.
pub fn catalog(realness: Realness) -> Vec<CatalogEntry> {
    let rows = match realness {
        Realness::Real => REAL_ROWS,
        Realness::Complex => COMPLEX_ROWS,
    };
    rows.iter()
        .map(|r| CatalogEntry {
            id: r.id,
            case: r.case,
            realness,
            k_spec: r.k_spec,
            f1_shape: r.f1,
            f2_shape: "C1/r",
            constraint_note: r.note,
            recipe: r.recipe,
            free_params: r.recipe.free_params(),
            has_solutions: r.recipe != Recipe::UncoupledNoSolution,
        })
        .collect()
}

/// Global defaults for free parameters.
pub fn base_params() -> FreeParams {
    [("C1", 1.0), ("C2", 1.0), ("C3", 0.5), ("theta", 0.8), ("vartheta", 0.5)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), re(v)))
        .collect()
}

impl CatalogEntry {
    /// Defaults for this row: [`base_params`] plus row-specific couplings, and
    /// a complex `C1` where the row is complex only through its constants.
    pub fn default_params(&self) -> FreeParams {
        let mut p = base_params();
        let complex = self.realness == Realness::Complex;
        let mut set = |k: &str, v: C64| {
            p.insert(k.to_string(), v);
        };
        match self.recipe {
            Recipe::UncoupledOpposite => set("k2", if complex { C64::new(0.7, 0.2) } else { re(0.7) }),
            Recipe::ImaginaryK2 | Recipe::HalfQuantK3 => set("k3", re(0.3)),
            Recipe::ImaginaryC => set("k1", re(0.3)),
            Recipe::CoupledImaginaryK2 => {
                set("k1", re(0.9));
                set("k3", re(0.3));
            }
            _ => {}
        }
        if complex && matches!(self.recipe, Recipe::Coulomb | Recipe::HalfQuant | Recipe::FullQuant | Recipe::Rotation | Recipe::HalfQuantK3) {
            set("C1", C64::new(1.0, 0.5));
        }
        p
    }

    /// A coupling tuple that lies in this row's case.
    pub fn representative(&self, kappa: C64) -> Result<(C64, [C64; 3])> {
        if self.recipe == Recipe::UncoupledNoSolution {
            return Ok((ZERO, [ONE, ZERO, ZERO]));
        }
        let inst = instantiate(self, &self.default_params(), kappa)?;
        let cfg = inst[0].config;
        Ok((cfg.kappa, cfg.k))
    }
}

fn param(p: &FreeParams, name: &str) -> Result<C64> {
    p.get(name).copied().ok_or_else(|| Error::MissingFreeParam(name.to_string()))
}

fn real_param(p: &FreeParams, name: &str) -> Result<f64> {
    let v = param(p, name)?;
    if v.im.abs() > EPS_CLASS {
        return Err(Error::ConstraintViolated(format!("{name} must be real")));
    }
    Ok(v.re)
}

fn nonzero_kappa(kappa: C64) -> Result<()> {
    if zero(kappa) {
        return Err(Error::ZeroCoupling);
    }
    Ok(())
}

/// `|kappa|`, for rows written with it; these need a real coupling.
fn abs_kappa(kappa: C64) -> Result<f64> {
    nonzero_kappa(kappa)?;
    if kappa.im.abs() > EPS_CLASS {
        return Err(Error::ConstraintViolated("kappa must be real for rows involving |kappa|".into()));
    }
    Ok(kappa.re.abs())
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ConstraintViolated(what.to_string()))
    }
}

fn laurent(terms: &[(i32, C64)]) -> RadialLaurent {
    RadialLaurent::from_terms(terms).expect("catalog powers lie in the supported range")
}

/// Concrete configs for a row. Every sign choice of a square root comes back
/// as its own labeled instance. Couplings the row determines may also be
/// supplied in `params`; they must then match one of the instances.
pub fn instantiate(entry: &CatalogEntry, params: &FreeParams, kappa: C64) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let c1 = || param(params, "C1");
    let mut push = |branch: String, kappa: C64, k: [C64; 3], f1: RadialLaurent, c1: C64| {
        out.push(Instance { branch, config: GaugeConfig::new(kappa, k, f1, laurent(&[(-1, c1)])) });
    };
    let signs = Sign::BOTH;
    match entry.recipe {
        Recipe::UncoupledNoSolution => {
            return Err(Error::ConstraintViolated("kappa = 0 with k1 != 0 admits no solutions".into()));
        }
        Recipe::UncoupledOpposite => {
            // the row is defined at zero coupling whatever kappa was passed
            let k2 = param(params, "k2")?;
            let f1 = laurent(&[(-2, param(params, "C2")?), (1, param(params, "C3")?)]);
            push(String::new(), ZERO, [ZERO, k2, -k2], f1, c1()?);
        }
        Recipe::Coulomb => {
            nonzero_kappa(kappa)?;
            push(String::new(), kappa, [ZERO; 3], RadialLaurent::zero(), c1()?);
        }
        Recipe::ImaginaryPair => {
            let m = 1.0 / (2.0 * abs_kappa(kappa)?);
            for sk in signs {
                for sc in signs {
                    let k2 = I * (sk.value() * m);
                    let f1 = laurent(&[(-1, I * (sc.value() * m))]);
                    push(format!("k2={sk}, C={sc}"), kappa, [ZERO, k2, -k2], f1, c1()?);
                }
            }
        }
        Recipe::ImaginaryK2 => {
            let m = 1.0 / (2.0 * abs_kappa(kappa)?);
            let k3 = param(params, "k3")?;
            for sk in signs {
                let k2 = I * (sk.value() * m);
                require(!zero(k2 + k3), "k3 != -k2")?;
                let c2 = k2 * k2 * 3.0 + k2 * k3 * 3.0 + k3 * k3;
                push_inverse(&mut push, &format!("k2={sk}"), kappa, [ZERO, k2, k3], c2, c1()?);
                for (j, root) in [C64::new(-1.5, 0.5 * 3f64.sqrt()), C64::new(-1.5, -0.5 * 3f64.sqrt())].iter().enumerate() {
                    let sr = if j == 0 { "+" } else { "-" };
                    push(format!("k2={sk}, C=0, k3 root {sr}"), kappa, [ZERO, k2, root * k2], RadialLaurent::zero(), c1()?);
                }
            }
        }
        Recipe::HalfQuant | Recipe::HalfQuantK3 => {
            nonzero_kappa(kappa)?;
            let k3 = if entry.recipe == Recipe::HalfQuantK3 {
                let k3 = param(params, "k3")?;
                require(!zero(k3), "k3 != 0")?;
                k3
            } else {
                ZERO
            };
            let f1 = laurent(&[(-1, param(params, "C2")?), (0, param(params, "C3")?)]);
            push(String::new(), kappa, [(kappa * 2.0).inv(), ZERO, k3], f1, c1()?);
        }
        Recipe::FullQuant => {
            nonzero_kappa(kappa)?;
            push(String::new(), kappa, [kappa.inv(), ZERO, ZERO], RadialLaurent::zero(), c1()?);
        }
        Recipe::Rotation => {
            let theta = real_param(params, "theta")?;
            let k = a_to_k(&family_coeffs(&AFamily::Rotation { theta }), kappa)?;
            require(!zero(k[2]), "sin(theta) cos(theta) != 0")?;
            push(String::new(), kappa, k, RadialLaurent::zero(), c1()?);
        }
        Recipe::HyperbolicA | Recipe::HyperbolicB => {
            let vartheta = real_param(params, "vartheta")?;
            for sign in signs {
                let fam = if entry.recipe == Recipe::HyperbolicA {
                    AFamily::HyperbolicA { vartheta, sign }
                } else {
                    AFamily::HyperbolicB { vartheta, sign }
                };
                let k = a_to_k(&family_coeffs(&fam), kappa)?;
                require(!zero(k[2]), "k3 != 0")?;
                push(format!("{sign}"), kappa, k, RadialLaurent::zero(), c1()?);
            }
        }
        Recipe::ImaginaryC => {
            let m = 1.0 / (2.0 * abs_kappa(kappa)?);
            let k1 = param(params, "k1")?;
            let k3sq = (k1 - kappa * k1 * k1 - (kappa * 4.0).inv()) / kappa;
            require(!zero(k3sq), "k3 != 0")?;
            let root = k3sq.sqrt();
            for sk in signs {
                for sc in signs {
                    let k3 = root * sk.value();
                    let f1 = laurent(&[(-1, I * (sc.value() * m))]);
                    push(format!("k3={sk}, C={sc}"), kappa, [k1, -k3, k3], f1, c1()?);
                }
            }
        }
        Recipe::CoupledImaginaryK2 => {
            nonzero_kappa(kappa)?;
            let k1 = param(params, "k1")?;
            let k3 = param(params, "k3")?;
            let b = kappa * k1 * 2.0 - 1.0;
            require(!zero(b), "2 kappa k1 != 1")?;
            let kk4 = kappa * kappa * 4.0;
            for sk in signs {
                let k2 = I * b / (kappa * 2.0) * sk.value();
                let s = k2 + k3;
                let c2 = (s * b + k2 * (kk4 * s * s - 1.0)) / (kk4 * k2);
                push_inverse(&mut push, &format!("k2={sk}"), kappa, [k1, k2, k3], c2, c1()?);
                // C = 0 needs kk4 k2 s^2 + b s - k2 = 0
                let disc = (b * b + kk4 * k2 * k2 * 4.0).sqrt();
                for (sr, sq) in [("+", disc), ("-", -disc)] {
                    let s0 = (-b + sq) / (kk4 * k2 * 2.0);
                    push(format!("k2={sk}, C=0, k3 root {sr}"), kappa, [k1, k2, s0 - k2], RadialLaurent::zero(), c1()?);
                }
            }
        }
    }
    check_supplied(entry, params, &out)?;
    Ok(out)
}

fn push_inverse<F>(push: &mut F, label: &str, kappa: C64, k: [C64; 3], c2: C64, c1: C64)
where
    F: FnMut(String, C64, [C64; 3], RadialLaurent, C64),
{
    if zero(c2) {
        push(format!("{label}, C=0"), kappa, k, RadialLaurent::zero(), c1);
        return;
    }
    let c = c2.sqrt();
    for sc in Sign::BOTH {
        push(format!("{label}, C={sc}"), kappa, k, laurent(&[(-1, c * sc.value())]), c1);
    }
}

fn check_supplied(entry: &CatalogEntry, params: &FreeParams, out: &[Instance]) -> Result<()> {
    for (j, name) in ["k1", "k2", "k3"].iter().enumerate() {
        if entry.free_params.contains(name) {
            continue;
        }
        if let Some(&v) = params.get(*name) {
            if !out.iter().any(|inst| (inst.config.k[j] - v).norm() <= EPS_CLASS) {
                return Err(Error::ConstraintViolated(format!("{name} = {}", entry.k_spec[j])));
            }
        }
    }
    Ok(())
}

/// Radii used for the constraint check: 16 points evenly spaced on `[0.5, 2]`.
pub fn check_radii() -> Vec<f64> {
    (0..16).map(|i| 0.5 + 1.5 * i as f64 / 15.0).collect()
}

/// Largest constraint residual over [`check_radii`].
pub fn max_constraint_residual(cfg: &GaugeConfig) -> f64 {
    check_radii().into_iter().map(|r| constraint_residuals(cfg, r).max_norm()).fold(0.0, f64::max)
}

/// One disagreement between the classifier and coefficient matching.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanMismatch {
    pub kappa: [f64; 2],
    pub k: [[f64; 2]; 3],
    pub case: CaseId,
    pub classifier_solvable: bool,
    pub matching: ProfileSolution,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub seed: u64,
    pub tuples: usize,
    pub on_family: usize,
    pub solvable_by_matching: usize,
    pub solvable_by_classifier: usize,
    /// Solvable by matching but not inside a classified family.
    pub outside_families: usize,
    /// Every disagreement, in tuple order.
    pub mismatches: Vec<ScanMismatch>,
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn sample_tuple(rng: &mut ChaCha8Rng, rows: &[CatalogEntry]) -> (bool, C64, [C64; 3]) {
    let cplx = |rng: &mut ChaCha8Rng, span: f64| C64::new(rng.gen_range(-span..span), rng.gen_range(-span..span));
    let kind = rng.gen_range(0..4);
    if kind < 2 {
        let kappa = if rng.gen_bool(0.1) { ZERO } else { re(rng.gen_range(-2.0..2.0)) };
        let k = if kind == 0 {
            [re(rng.gen_range(-2.0..2.0)), re(rng.gen_range(-2.0..2.0)), re(rng.gen_range(-2.0..2.0))]
        } else {
            [cplx(rng, 2.0), cplx(rng, 2.0), cplx(rng, 2.0)]
        };
        return (false, kappa, k);
    }
    loop {
        let entry = &rows[rng.gen_range(0..rows.len())];
        if !entry.has_solutions {
            continue;
        }
        let mag = rng.gen_range(0.3..2.0);
        let kappa = re(if rng.gen_bool(0.5) { mag } else { -mag });
        let mut p = entry.default_params();
        p.insert("theta".into(), re(rng.gen_range(0.1..1.4)));
        p.insert("vartheta".into(), re(rng.gen_range(0.1..1.5)));
        for name in ["k1", "k2", "k3"] {
            if entry.free_params.contains(&name) {
                p.insert(name.into(), cplx(rng, 1.5));
            }
        }
        if let Ok(inst) = instantiate(entry, &p, kappa) {
            let cfg = inst[rng.gen_range(0..inst.len())].config;
            return (true, cfg.kappa, cfg.k);
        }
    }
}

/// Compare [`classify`] with [`solve_profiles`] over `n` seeded tuples. Half
/// are drawn uniformly, half from the instantiated solution families.
pub fn completeness_scan(n: usize, seed: u64) -> ScanReport {
    let rows = catalog(Realness::Complex);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuples: Vec<(bool, C64, [C64; 3])> = (0..n).map(|_| sample_tuple(&mut rng, &rows)).collect();
    let results: Vec<(bool, bool, bool, Option<ScanMismatch>)> = tuples
        .par_iter()
        .map(|&(on_family, kappa, k)| {
            let cls = classify(kappa, k[0], k[1], k[2]);
            let sol = solve_profiles(kappa, k);
            let by_matching = sol != ProfileSolution::None;
            let mismatch = (!sol.agrees_with(&cls.admissible)).then(|| ScanMismatch {
                kappa: pair(kappa),
                k: [pair(k[0]), pair(k[1]), pair(k[2])],
                case: cls.case,
                classifier_solvable: cls.has_solution(),
                matching: sol,
            });
            (on_family, by_matching, cls.has_solution(), mismatch)
        })
        .collect();
    let mut report = ScanReport {
        seed,
        tuples: n,
        on_family: 0,
        solvable_by_matching: 0,
        solvable_by_classifier: 0,
        outside_families: 0,
        mismatches: Vec::new(),
    };
    for (on_family, by_matching, by_cls, mismatch) in results {
        report.on_family += on_family as usize;
        report.solvable_by_matching += by_matching as usize;
        report.solvable_by_classifier += by_cls as usize;
        report.outside_families += (by_matching && !by_cls) as usize;
        report.mismatches.extend(mismatch);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residuals::{verify, FieldMode};

    fn k(a: f64, b: f64, c: f64) -> [C64; 3] {
        [re(a), re(b), re(c)]
    }

    fn cls(kappa: f64, kk: [C64; 3]) -> Classification {
        classify(re(kappa), kk[0], kk[1], kk[2])
    }

    #[test]
    fn classify_examples() {
        let c = cls(1.0, k(0.5, 0.0, 0.0));
        assert_eq!(c.case, CaseId::C4_1_halfquant);
        assert_eq!(c.admissible[0].f1.to_string(), "C2/r + C3");
        assert_eq!(cls(0.0, k(1.0, 0.0, 0.0)).case, CaseId::C2_g0_k1nz_NoSolution);
        let t = std::f64::consts::FRAC_PI_3;
        let (s, co) = t.sin_cos();
        let c = cls(1.0, k(s * s, s * co, -s * co));
        assert_eq!(c.case, CaseId::C4_2_vpea);
        assert_eq!(c.admissible[0].f1, F1Shape::Zero);
        let c = cls(1.0, k(0.9, 0.0, 0.0));
        assert_eq!(c.case, CaseId::C4_1_other_NoSolution);
        assert!(!c.has_solution());
    }

    #[test]
    fn simple_solution_has_vanishing_constraints() {
        let cfg = GaugeConfig::new(re(1.0), k(0.5, 0.0, 0.0), laurent(&[(-1, ONE), (0, re(2.0))]), laurent(&[(-1, ONE)]));
        assert!(constraint_residuals(&cfg, 1.3).max_norm() < 1e-14);
    }

    #[test]
    fn uncoupled_nonzero_k1_fails_e2() {
        let k1 = 1.0;
        let cfg = GaugeConfig::new(ZERO, k(k1, 0.0, 0.0), RadialLaurent::zero(), RadialLaurent::zero());
        let r: f64 = 1.7;
        let e = constraint_residuals(&cfg, r).e;
        assert!((e[1] - re(2.0 * k1 / r.powi(3))).norm() < 1e-14);
    }

    #[test]
    fn catalog_sizes() {
        let real = catalog(Realness::Real);
        let cplx = catalog(Realness::Complex);
        assert_eq!(real.iter().filter(|e| e.has_solutions).count(), 6);
        assert_eq!(cplx.iter().filter(|e| e.has_solutions).count(), 12);
        assert_eq!(real.iter().filter(|e| !e.has_solutions).count(), 1);
        assert_eq!(cplx.iter().filter(|e| !e.has_solutions).count(), 1);
    }

    #[test]
    fn default_instances_solve_everything() {
        for realness in [Realness::Real, Realness::Complex] {
            for entry in catalog(realness).iter().filter(|e| e.has_solutions) {
                let insts = instantiate(entry, &entry.default_params(), ONE).unwrap();
                for inst in insts {
                    let cfg = inst.config;
                    assert!(max_constraint_residual(&cfg) < 1e-12, "{} {}", entry.id, inst.branch);
                    assert_eq!(classify(cfg.kappa, cfg.k[0], cfg.k[1], cfg.k[2]).case, entry.case, "{}", entry.id);
                    let rep = verify(&cfg, &FieldMode::ClosedForm);
                    assert!(rep.max_norm() < 1e-7, "{} {}: {}", entry.id, inst.branch, rep.max_norm());
                }
            }
        }
    }

    #[test]
    fn instantiate_guards() {
        let rows = catalog(Realness::Real);
        let rot = rows.iter().find(|e| e.recipe == Recipe::Rotation).unwrap();
        let mut p = rot.default_params();
        p.insert("k3".into(), re(0.1));
        assert!(matches!(instantiate(rot, &p, ONE), Err(Error::ConstraintViolated(m)) if m.contains("k3")));
        let mut p = rot.default_params();
        p.remove("theta");
        assert_eq!(instantiate(rot, &p, ONE), Err(Error::MissingFreeParam("theta".into())));

        let cplx = catalog(Realness::Complex);
        let pair = cplx.iter().find(|e| e.recipe == Recipe::ImaginaryPair).unwrap();
        assert!(matches!(instantiate(pair, &pair.default_params(), C64::new(1.0, 0.3)), Err(Error::ConstraintViolated(_))));
    }

    #[test]
    fn markers_classify_as_no_solution() {
        for realness in [Realness::Real, Realness::Complex] {
            let marker = catalog(realness).into_iter().find(|e| !e.has_solutions).unwrap();
            let (kappa, kk) = marker.representative(ONE).unwrap();
            let c = classify(kappa, kk[0], kk[1], kk[2]);
            assert_eq!(c.case, CaseId::C2_g0_k1nz_NoSolution);
            assert!(!c.has_solution());
        }
    }

    #[test]
    fn small_scan_agrees() {
        let rep = completeness_scan(2000, 7);
        assert!(rep.mismatches.is_empty(), "{:?}", &rep.mismatches[..rep.mismatches.len().min(5)]);
        assert_eq!(rep.outside_families, 0);
        assert!(rep.on_family > 500);
    }
}
