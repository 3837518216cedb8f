//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines always print.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use su2static::abelian::{eval_abelian_a, expected_b, generating_field, verify_abelian_b, AbelianPotential, Patch};
use su2static::ansatz::{eval_a, eval_b_closed, FieldPoint, GaugeConfig, RadialLaurent};
use su2static::catalog::{catalog, classify, completeness_scan, instantiate, max_constraint_residual, Realness};
use su2static::diff::{fd_curl_real, sample_points, FdScheme};
use su2static::pauli::{commutator, pauli, Axis, Mat2, MatVec3, C64, I, ONE, ZERO};
use su2static::residuals::{ampere_residual, build_b, build_e, verify, FieldMode};
use su2static::vpea::{
    a_constraints, a_to_k, abelian_g_condition, angular_momentum_check, family_coeffs, gauge_element, pure_gauge_a, ACoeffs,
    AFamily, GaussianSpinor, Sign,
};
use su2static::Error;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rand_c(rng: &mut ChaCha8Rng, span: f64) -> C64 {
    c(rng.gen_range(-span..span), rng.gen_range(-span..span))
}

fn rand_laurent(rng: &mut ChaCha8Rng) -> RadialLaurent {
    let terms: Vec<(i32, C64)> = (-2..=1).map(|p| (p, rand_c(rng, 1.0))).collect();
    RadialLaurent::from_terms(&terms).unwrap()
}

fn rand_config(rng: &mut ChaCha8Rng) -> GaugeConfig {
    let mag = rng.gen_range(0.3..1.5);
    let kappa = C64::new(if rng.gen_bool(0.5) { mag } else { -mag }, 0.0);
    let k = [rand_c(rng, 1.0), rand_c(rng, 1.0), rand_c(rng, 1.0)];
    GaugeConfig::new(kappa, k, rand_laurent(rng), rand_laurent(rng))
}

fn laurent(terms: &[(i32, f64)]) -> RadialLaurent {
    let t: Vec<(i32, C64)> = terms.iter().map(|&(p, v)| (p, c(v, 0.0))).collect();
    RadialLaurent::from_terms(&t).unwrap()
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    ((i as i64 - j as i64) * (j as i64 - k as i64) * (k as i64 - i as i64)) as f64 / 2.0
}

fn rand_mat(rng: &mut ChaCha8Rng) -> Mat2 {
    Mat2::new(rand_c(rng, 1.0), rand_c(rng, 1.0), rand_c(rng, 1.0), rand_c(rng, 1.0))
}

fn pauli_algebra() -> Outcome {
    let start = Instant::now();
    let s = Axis::ALL.map(pauli);
    let mut worst_product = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let mut expected = if i == j { Mat2::identity() } else { Mat2::zero() };
            for (k, sk) in s.iter().enumerate() {
                expected = expected + *sk * (I * levi_civita(i, j, k));
            }
            worst_product = worst_product.max((s[i] * s[j] - expected).frobenius_norm());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst_jacobi = 0.0f64;
    for _ in 0..100 {
        let (a, b, cc) = (rand_mat(&mut rng), rand_mat(&mut rng), rand_mat(&mut rng));
        let j = commutator(a, commutator(b, cc)) + commutator(b, commutator(cc, a)) + commutator(cc, commutator(a, b));
        worst_jacobi = worst_jacobi.max(j.frobenius_norm());
    }
    let t = start.elapsed();
    outcome(
        worst_product < 1e-13 && worst_jacobi < 1e-13 && t < Duration::from_secs(1),
        format!("product {worst_product:.1e}, Jacobi {worst_jacobi:.1e}, {t:.2?}"),
    )
}

fn field_gap(cfg: &GaugeConfig, scheme: FdScheme) -> f64 {
    let fd = FieldMode::FiniteDifference(scheme);
    sample_points()
        .iter()
        .map(|p| {
            let db = (build_b(cfg, p, &fd).unwrap() - build_b(cfg, p, &FieldMode::ClosedForm).unwrap()).norm();
            let de = (build_e(cfg, p, &fd).unwrap() - build_e(cfg, p, &FieldMode::ClosedForm).unwrap()).norm();
            db.max(de)
        })
        .fold(0.0, f64::max)
}

fn closed_vs_fd() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_gap = 0.0f64;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..20 {
        let cfg = rand_config(&mut rng);
        worst_gap = worst_gap.max(field_gap(&cfg, FdScheme::default()));
        let coarse = field_gap(&cfg, FdScheme::new(1e-2, false));
        let fine = field_gap(&cfg, FdScheme::new(5e-3, false));
        let ratio = coarse / fine;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
    }
    let t = start.elapsed();
    outcome(
        worst_gap < 1e-4 && lo >= 3.5 && hi <= 4.5 && t < Duration::from_secs(10),
        format!("max gap {worst_gap:.1e}, halving ratio in [{lo:.3}, {hi:.3}], {t:.2?}"),
    )
}

fn quantization() -> Outcome {
    let mut worst_closed = 0.0f64;
    let mut worst_fd = 0.0f64;
    let mut worst_b = 0.0f64;
    for kappa in [1.0, -0.7, 2.3] {
        let half = GaugeConfig::new(
            c(kappa, 0.0),
            [c(0.5 / kappa, 0.0), ZERO, ZERO],
            laurent(&[(-1, 1.0), (0, 0.5)]),
            laurent(&[(-1, 1.0)]),
        );
        let full = GaugeConfig::new(c(kappa, 0.0), [c(1.0 / kappa, 0.0), ZERO, ZERO], RadialLaurent::zero(), laurent(&[(-1, 1.0)]));
        for cfg in [half, full] {
            worst_closed = worst_closed.max(verify(&cfg, &FieldMode::ClosedForm).max_norm());
            worst_fd = worst_fd.max(verify(&cfg, &FieldMode::fd_default()).max_norm());
        }
        for p in sample_points() {
            worst_b = worst_b.max(eval_b_closed(&full, &p).unwrap().norm());
        }
    }
    outcome(
        worst_closed < 1e-7 && worst_fd < 1e-4 && worst_b < 1e-12,
        format!("closed {worst_closed:.1e}, fd {worst_fd:.1e}, |B| at 2 kappa k1 = 2: {worst_b:.1e}"),
    )
}

fn negative_control() -> Outcome {
    let kappa = 1.0;
    let k1 = 0.75;
    let cfg = GaugeConfig::new(c(kappa, 0.0), [c(k1, 0.0), ZERO, ZERO], RadialLaurent::zero(), RadialLaurent::zero());
    let x = 2.0 * kappa * k1;
    let amp = (1.0 - x) * (2.0 - x) * k1;
    let mut worst = 0.0f64;
    let mut worst_fd = 0.0f64;
    let mut smallest = f64::INFINITY;
    for p in sample_points() {
        let expected = MatVec3::cross_gamma(&p.unit()) * c(amp / p.r.powi(3), 0.0);
        let got = ampere_residual(&cfg, &p, &FieldMode::ClosedForm).unwrap();
        let got_fd = ampere_residual(&cfg, &p, &FieldMode::fd_default()).unwrap();
        worst = worst.max((got - expected).norm());
        worst_fd = worst_fd.max((got_fd - expected).norm());
        smallest = smallest.min(got.norm());
    }
    outcome(
        worst < 1e-6 && worst_fd < 1e-6 && smallest > 1e-2,
        format!("closed mismatch {worst:.1e}, fd mismatch {worst_fd:.1e}, min |residual| {smallest:.2}"),
    )
}

/// The three coefficient equations written out directly.
fn coefficient_equations(a: &ACoeffs) -> [C64; 3] {
    let (a1, a2, a3) = (a.a1, a.a2, a.a3);
    [a1 * a1 + a1 * a2 - a2 - a1, a2 * 3.0 + a3 * a3 - a1 * a2 - a2, a3 + a1 * a3 + a2 * a3 - a3]
}

fn vpea_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut families = vec![AFamily::Displacement];
    for _ in 0..50 {
        families.push(AFamily::Rotation { theta: rng.gen_range(-PI..PI) });
    }
    let mut worst_alg = 0.0f64;
    let mut worst_lib = 0.0f64;
    for f in &families {
        let a = family_coeffs(f);
        let eq = coefficient_equations(&a);
        worst_alg = eq.iter().map(|z| z.norm()).fold(worst_alg, f64::max);
        let lib = a_constraints(&a);
        worst_lib = (0..3).map(|i| (lib[i] - eq[i]).norm()).fold(worst_lib, f64::max);
    }
    let psi = GaussianSpinor::default();
    let s = FdScheme::default();
    let pts: Vec<FieldPoint> = sample_points().into_iter().step_by(8).collect();
    let op_max = |a: &ACoeffs| pts.iter().map(|p| angular_momentum_check(a, &psi, p, &s).unwrap()).fold(0.0, f64::max);
    let mut valid = vec![AFamily::Displacement, AFamily::Rotation { theta: 0.8 }];
    for sign in Sign::BOTH {
        valid.push(AFamily::HyperbolicA { vartheta: 0.5, sign });
        valid.push(AFamily::HyperbolicB { vartheta: 0.5, sign });
    }
    let worst_op = valid.iter().map(|f| op_max(&family_coeffs(f))).fold(0.0, f64::max);
    let broken = op_max(&ACoeffs::new(ONE, ZERO, c(0.5, 0.0)));
    outcome(
        worst_alg < 1e-12 && worst_lib == 0.0 && worst_op < 1e-4 && broken > 1e-2,
        format!("coefficient eqs {worst_alg:.1e}, operator check valid {worst_op:.1e}, (1,0,0.5) {broken:.2}"),
    )
}

fn pure_gauge() -> Outcome {
    let kappa = c(1.3, 0.0);
    let mut worst_a = 0.0f64;
    let mut worst_u = 0.0f64;
    let mut worst_res = 0.0f64;
    let mut worst_b = 0.0f64;
    let s = FdScheme::default();
    for j in 0..10 {
        let theta = -1.4 + 0.3 * j as f64;
        let k = a_to_k(&family_coeffs(&AFamily::Rotation { theta }), kappa).unwrap();
        let cfg = GaugeConfig::new(kappa, k, RadialLaurent::zero(), RadialLaurent::zero());
        for p in sample_points() {
            let pg = pure_gauge_a(theta, kappa, &p).unwrap();
            worst_a = worst_a.max((pg - eval_a(&cfg, &p).unwrap()).norm());
            worst_b = worst_b.max(eval_b_closed(&cfg, &p).unwrap().norm());
            // -(i/kappa) (grad U) U^dagger by finite differences of U itself
            let u = gauge_element(theta, &p).adjoint();
            let grad: Vec<Mat2> = (0..3)
                .map(|ax| {
                    let f = |q: &FieldPoint| Ok(gauge_element(theta, q));
                    su2static::diff::partial(&f, &p, ax, &s).unwrap()
                })
                .collect();
            let fd = MatVec3::new(grad[0] * u, grad[1] * u, grad[2] * u) * (-I / kappa);
            worst_u = worst_u.max((fd - pg).norm());
        }
        worst_res = worst_res.max(verify(&cfg, &FieldMode::ClosedForm).max_norm());
    }
    outcome(
        worst_a < 1e-12 && worst_res < 1e-9 && worst_b < 1e-12 && worst_u < 1e-8,
        format!("A match {worst_a:.1e}, residuals {worst_res:.1e}, |B| {worst_b:.1e}, vs FD of U {worst_u:.1e}"),
    )
}

fn catalog_soundness() -> Outcome {
    let start = Instant::now();
    let mut rows = 0;
    let mut failed = Vec::new();
    let mut worst_c = 0.0f64;
    let mut worst_v = 0.0f64;
    let mut markers_ok = true;
    for realness in [Realness::Real, Realness::Complex] {
        for entry in catalog(realness) {
            if !entry.has_solutions {
                let (kp, k) = entry.representative(ONE).unwrap();
                let cls = classify(kp, k[0], k[1], k[2]);
                markers_ok &= cls.case == entry.case && !cls.has_solution();
                continue;
            }
            rows += 1;
            let insts = instantiate(&entry, &entry.default_params(), ONE).unwrap();
            let mut ok = !insts.is_empty();
            for inst in insts {
                let cm = max_constraint_residual(&inst.config);
                let vm = verify(&inst.config, &FieldMode::ClosedForm).max_norm();
                let k = inst.config.k;
                let same_case = classify(inst.config.kappa, k[0], k[1], k[2]).case == entry.case;
                worst_c = worst_c.max(cm);
                worst_v = worst_v.max(vm);
                ok &= cm < 1e-12 && vm < 1e-7 && same_case;
            }
            if !ok {
                failed.push(entry.id);
            }
        }
    }
    let t = start.elapsed();
    outcome(
        rows == 18 && failed.is_empty() && markers_ok && t < Duration::from_secs(30),
        format!("{rows} rows, failing {failed:?}, constraints {worst_c:.1e}, closed form {worst_v:.1e}, markers ok {markers_ok}, {t:.2?}"),
    )
}

fn bianchi() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    let mut non_solutions = 0;
    for _ in 0..100 {
        let cfg = rand_config(&mut rng);
        let rep = verify(&cfg, &FieldMode::fd_default());
        worst = worst.max(rep.faraday).max(rep.div_b);
        non_solutions += (rep.field_equation_norm() > 1e-3) as usize;
    }
    outcome(
        worst < 1e-5 && non_solutions == 100,
        format!("max faraday/divB {worst:.1e} over {non_solutions} non-solution configs"),
    )
}

fn abelian_fixtures() -> Outcome {
    let s = FdScheme::default();
    let pts = sample_points();
    let curl_err = |pot: AbelianPotential| -> f64 {
        pts.iter()
            .filter_map(|p| match verify_abelian_b(&pot, p, &s) {
                Err(Error::OnSingularLocus) => None,
                r => Some(r.unwrap().err),
            })
            .fold(0.0, f64::max)
    };
    let g = 1.3;
    let wa = AbelianPotential::WuYang { patch: Patch::A, g };
    let wb = AbelianPotential::WuYang { patch: Patch::B, g };
    let wy = curl_err(wa).max(curl_err(wb));
    let mut patch_gap = 0.0f64;
    for p in &pts {
        let ca = fd_curl_real(&|q: &FieldPoint| eval_abelian_a(&wa, q), p, &s);
        let cb = fd_curl_real(&|q: &FieldPoint| eval_abelian_a(&wb, q), p, &s);
        if let (Ok(ca), Ok(cb)) = (ca, cb) {
            patch_gap = patch_gap.max((ca - cb).norm());
        }
        // independent statement of the monopole field
        let direct = p.unit() * (g / (p.r * p.r));
        patch_gap = patch_gap.max((expected_b(&wa, p).unwrap() - direct).norm());
    }
    let ab = curl_err(AbelianPotential::AbExterior { flux: 2.0 });
    let b0 = 1.7;
    let uni = curl_err(AbelianPotential::UniformSymmetric { b0 });
    let toro = curl_err(AbelianPotential::Toroidal { amplitude: 0.9 });
    let g_cond = |pot: AbelianPotential| -> f64 {
        let field = |q: &FieldPoint| generating_field(&pot, q);
        pts.iter()
            .filter_map(|p| match abelian_g_condition(&field, p, &s) {
                Err(Error::OnSingularLocus) => None,
                r => Some(r.unwrap().norm()),
            })
            .fold(0.0, f64::max)
    };
    let g_good = [AbelianPotential::AbExterior { flux: 2.0 }, wa, wb, AbelianPotential::Toroidal { amplitude: 0.9 }]
        .into_iter()
        .map(g_cond)
        .fold(0.0, f64::max);
    let g_uniform = g_cond(AbelianPotential::UniformSymmetric { b0 });
    outcome(
        wy < 1e-6 && patch_gap < 1e-6 && ab < 1e-7 && uni < 1e-9 && toro < 1e-6 && g_good < 1e-6 && g_uniform > 0.1 * b0,
        format!(
            "Wu-Yang {wy:.1e} (patch gap {patch_gap:.1e}), solenoid {ab:.1e}, uniform {uni:.1e}, toroidal {toro:.1e}, G condition {g_good:.1e} vs uniform {g_uniform:.2}"
        ),
    )
}

fn completeness() -> Outcome {
    let start = Instant::now();
    let rep = completeness_scan(10_000, 2024);
    let t = start.elapsed();
    outcome(
        rep.tuples == 10_000 && rep.outside_families == 0 && rep.mismatches.is_empty() && t < Duration::from_secs(60),
        format!(
            "{} tuples ({} on families), {} outside families, {} disagreements, {t:.2?}",
            rep.tuples,
            rep.on_family,
            rep.outside_families,
            rep.mismatches.len()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Pauli algebra", pauli_algebra),
        ("closed form vs finite differences", closed_vs_fd),
        ("simple-solution quantization", quantization),
        ("negative control off quantization", negative_control),
        ("angular-momentum coefficient algebra", vpea_algebra),
        ("pure gauge", pure_gauge),
        ("catalog soundness", catalog_soundness),
        ("Bianchi universality", bianchi),
        ("Abelian fixtures", abelian_fixtures),
        ("completeness probe", completeness),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        failures += (!o.pass) as usize;
        println!("criterion {:>2} {}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
