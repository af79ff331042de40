//! Numerical verification of the algebraic and dynamical claims backing
//! the library: magma structure, the non-associativity counterexample,
//! norm and escape-radius laws, growth bounds, the slice-equivalence
//! results and the metasphere's nested-ball structure.
//!
//! Random operands are drawn componentwise (x, then y, then z) from the
//! uniform distribution on `[-2.2, 2.2)` using a ChaCha8 generator
//! seeded with the caller's seed, so every report is reproducible
//! bit-for-bit from `(seed, parameters)`.
//!
//! Checks that compare two escape computations compare iteration counts
//! exactly and accept a disagreeing pair only inside the boundary
//! rounding band: at the first iteration where the two escape decisions
//! differ, both orbit norms must lie within `1e-6` of the escape radius.
//! At most 0.5% of pairs may disagree.

use std::f64::consts::SQRT_2;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{iterate_complex, iterate_spherical_power, Engine, Unit};
use crate::quaternion::{rotate, Quaternion};
use crate::raster::{radial_profile, ProfileSample};
use crate::spherical::PureQuaternion;
use crate::Error;

/// Width of the boundary rounding band around the escape radius.
pub const BOUNDARY_BAND: f64 = 1e-6;
/// Minimum fraction of exactly agreeing pairs in equivalence checks.
pub const AGREEMENT_MIN: f64 = 0.995;

/// Every check id, in report order.
pub const CHECK_IDS: [&str; 14] = [
    "axis_extent",
    "bulbic_equivalence",
    "demoivre",
    "escape_radius",
    "growth_bounds",
    "magma_laws",
    "metasphere_gaps",
    "nonassociativity",
    "norm_laws",
    "rotation",
    "rotation_identity",
    "slice21_equivalence",
    "slice_rotation",
    "spherical_inverse",
];

/// Outcome of one verification check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check_id: &'static str,
    pub passed: bool,
    pub trials: u64,
    pub worst_error: f64,
    pub details: String,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} passed={} trials={} worst_error={:.3e} details={}",
            self.check_id, self.passed, self.trials, self.worst_error, self.details
        )
    }
}

/// Largest member found on the positive imaginary axis, `max{x : xi in M}`
/// at finite iteration depth. An outer approximation: deeper iteration
/// can only shrink it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisExtent {
    pub r: f64,
    pub max_iter: u32,
    pub resolution: f64,
}

fn sample_pure(rng: &mut ChaCha8Rng) -> PureQuaternion {
    PureQuaternion::new(
        rng.random_range(-2.2..2.2),
        rng.random_range(-2.2..2.2),
        rng.random_range(-2.2..2.2),
    )
}

fn rel_dev(got: PureQuaternion, want: PureQuaternion, scale: f64) -> f64 {
    let d = got - want;
    let m = d.x.abs().max(d.y.abs()).max(d.z.abs());
    m / scale.max(f64::MIN_POSITIVE)
}

// ---------------------------------------------------------------------
// orbit recorders and the band rule

fn complex_orbit_norms(c: Complex64, max_iter: u32) -> Vec<f64> {
    let mut z = Complex64::new(0.0, 0.0);
    let mut norms = Vec::new();
    for _ in 0..max_iter {
        z = z * z + c;
        let n = z.norm_sqr().sqrt();
        norms.push(n);
        if n > 2.0 {
            break;
        }
    }
    norms
}

fn quat_orbit_norms(c: Quaternion, max_iter: u32) -> Vec<f64> {
    let mut q = Quaternion::ZERO;
    let mut norms = Vec::new();
    for _ in 0..max_iter {
        q = q * q + c;
        let n = q.norm();
        norms.push(n);
        if n > 2.0 {
            break;
        }
    }
    norms
}

fn ab_orbit_norms(c: PureQuaternion, a: f64, b: f64, max_iter: u32) -> Vec<f64> {
    let mut q = PureQuaternion::ZERO;
    let mut norms = Vec::new();
    for _ in 0..max_iter {
        q = q.sprod_ab(a, b) + c;
        let n = q.norm();
        norms.push(n);
        if n > 2.0 {
            break;
        }
    }
    norms
}

/// `(escaped, iterations)` read off a recorded orbit.
fn outcome(norms: &[f64], radius: f64) -> (bool, u32) {
    let escaped = *norms.last().expect("max_iter >= 1") > radius;
    (escaped, norms.len() as u32)
}

/// On a disagreement, finds the first iteration where the two escape
/// decisions differ and accepts only if both norms sit inside the band.
fn divergence_within_band(n1: &[f64], n2: &[f64], radius: f64, band: f64) -> bool {
    let steps = n1.len().min(n2.len());
    for i in 0..steps {
        if (n1[i] > radius) != (n2[i] > radius) {
            return (n1[i] - radius).abs() <= band && (n2[i] - radius).abs() <= band;
        }
    }
    false
}

#[derive(Default)]
struct PairStats {
    total: u64,
    disagreements: u64,
    out_of_band: u64,
}

impl PairStats {
    fn record(&mut self, n1: &[f64], n2: &[f64], radius: f64) {
        self.total += 1;
        if outcome(n1, radius) == outcome(n2, radius) {
            return;
        }
        self.disagreements += 1;
        if !divergence_within_band(n1, n2, radius, BOUNDARY_BAND) {
            self.out_of_band += 1;
        }
    }

    fn agreement(&self) -> f64 {
        1.0 - self.disagreements as f64 / self.total.max(1) as f64
    }

    fn report(&self, check_id: &'static str) -> CheckReport {
        let passed = self.agreement() >= AGREEMENT_MIN && self.out_of_band == 0;
        CheckReport {
            check_id,
            passed,
            trials: self.total,
            worst_error: 1.0 - self.agreement(),
            details: format!(
                "agreement={:.4}% disagreements={} out_of_band={}",
                100.0 * self.agreement(),
                self.disagreements,
                self.out_of_band
            ),
        }
    }
}

// ---------------------------------------------------------------------
// algebra checks

/// Closure, commutativity and identity `k` of the spherical product
/// over seeded random operands; tolerance 1e-12 relative.
pub fn check_magma_laws(trials: u64, seed: u64) -> Result<CheckReport, Error> {
    if trials < 1 {
        return Err(Error::TooFew {
            what: "trials",
            min: 1,
            got: trials,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut closed = true;
    for _ in 0..trials {
        let a = sample_pure(&mut rng);
        let b = sample_pure(&mut rng);
        let ab = a.sprod(b);
        closed &= ab.x.is_finite() && ab.y.is_finite() && ab.z.is_finite();
        worst = worst.max(rel_dev(ab, b.sprod(a), ab.norm()));
        worst = worst.max(rel_dev(a.sprod(PureQuaternion::K), a, a.norm()));
    }
    let passed = closed && worst <= 1e-12;
    Ok(CheckReport {
        check_id: "magma_laws",
        passed,
        trials,
        worst_error: worst,
        details: format!("closure={closed} commutativity and identity k at 1e-12"),
    })
}

/// Reproduces the exact counterexample: with `q1 = (sqrt2/2)(j - k)` and
/// `q2 = j`, grouping one way gives `-k`, the other `-j`.
pub fn check_nonassociativity() -> CheckReport {
    nonassociativity_with(|a, b| a.sprod(b))
}

fn nonassociativity_with(
    prod: impl Fn(PureQuaternion, PureQuaternion) -> PureQuaternion,
) -> CheckReport {
    let q1 = PureQuaternion::new(0.0, SQRT_2 / 2.0, -SQRT_2 / 2.0);
    let q2 = PureQuaternion::J;
    let left = prod(q2, prod(q1, q1));
    let right = prod(prod(q2, q1), q1);
    let e_left = rel_dev(left, -PureQuaternion::K, 1.0);
    let e_right = rel_dev(right, -PureQuaternion::J, 1.0);
    let worst = e_left.max(e_right);
    CheckReport {
        check_id: "nonassociativity",
        passed: worst <= 1e-12,
        trials: 1,
        worst_error: worst,
        details: format!(
            "q2 x (q1 x q1) -> (-k, dev {e_left:.2e}); (q2 x q1) x q1 -> (-j, dev {e_right:.2e})"
        ),
    }
}

/// Inverses exist exactly on the k axis (`ck <-> k/c`) and nowhere else.
pub fn check_spherical_inverse(trials: u64, seed: u64) -> Result<CheckReport, Error> {
    if trials < 1 {
        return Err(Error::TooFew {
            what: "trials",
            min: 1,
            got: trials,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut passed = true;
    for _ in 0..trials {
        let c = loop {
            let c: f64 = rng.random_range(-2.2..2.2);
            if c.abs() > 1e-6 {
                break c;
            }
        };
        match (PureQuaternion::K * c).spherical_inverse() {
            Some(inv) => {
                worst = worst.max(rel_dev(
                    inv,
                    PureQuaternion::new(0.0, 0.0, 1.0 / c),
                    1.0 / c.abs(),
                ));
                worst = worst.max(rel_dev(
                    (PureQuaternion::K * c).sprod(inv),
                    PureQuaternion::K,
                    1.0,
                ));
            }
            None => passed = false,
        }
        let q = sample_pure(&mut rng);
        if q.x.abs() > 1e-14 || q.y.abs() > 1e-14 {
            passed &= q.spherical_inverse().is_none();
        }
    }
    passed &= worst <= 1e-12;
    Ok(CheckReport {
        check_id: "spherical_inverse",
        passed,
        trials,
        worst_error: worst,
        details: "k/c on the axis, none off the axis".into(),
    })
}

/// Norm laws: `|q1 x_s q2| = |q1||q2|`, `|sp_n(q)| = |q|^n` for n <= 8,
/// `|q x_s^(a,b) q| = |q|^2`; tolerance 1e-12 relative.
pub fn check_norm_laws(trials: u64, seed: u64) -> Result<CheckReport, Error> {
    if trials < 1 {
        return Err(Error::TooFew {
            what: "trials",
            min: 1,
            got: trials,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let q1 = sample_pure(&mut rng);
        let q2 = sample_pure(&mut rng);
        let e = q1.norm() * q2.norm();
        worst = worst.max((q1.sprod(q2).norm() - e).abs() / e.max(f64::MIN_POSITIVE));
        let n = rng.random_range(0..=8u32);
        let en = q1.norm().powi(n as i32);
        worst = worst.max((q1.spow(n).norm() - en).abs() / en.max(f64::MIN_POSITIVE));
        let (a, b) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let e2 = q1.norm_sqr();
        worst = worst.max((q1.sprod_ab(a, b).norm() - e2).abs() / e2.max(f64::MIN_POSITIVE));
    }
    Ok(CheckReport {
        check_id: "norm_laws",
        passed: worst <= 1e-12,
        trials,
        worst_error: worst,
        details: "sprod, spow (n <= 8) and sprod_ab norms".into(),
    })
}

/// De Moivre powers against the repeated Hamilton product, n <= 8,
/// tolerance 1e-8 relative to `|q|^n`.
pub fn check_demoivre(trials: u64, seed: u64) -> Result<CheckReport, Error> {
    if trials < 1 {
        return Err(Error::TooFew {
            what: "trials",
            min: 1,
            got: trials,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let q = Quaternion::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        );
        let mut acc = Quaternion::ONE;
        for n in 0..=8u32 {
            let scale = q.norm().powi(n as i32).max(f64::MIN_POSITIVE);
            worst = worst.max((q.powu(n) - acc).norm() / scale);
            acc = acc * q;
        }
    }
    Ok(CheckReport {
        check_id: "demoivre",
        passed: worst <= 1e-8,
        trials,
        worst_error: worst,
        details: "polar powers vs repeated product, n <= 8".into(),
    })
}

/// Rotation by conjugation against the Rodrigues rotation formula;
/// also requires norm preservation. Tolerance 1e-12 relative.
pub fn check_rotation(trials: u64, seed: u64) -> Result<CheckReport, Error> {
    if trials < 1 {
        return Err(Error::TooFew {
            what: "trials",
            min: 1,
            got: trials,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let p = sample_pure(&mut rng);
        let u = loop {
            let u = sample_pure(&mut rng);
            if u.norm() > 1e-3 {
                break u;
            }
        };
        let half = rng.random_range(0.0..std::f64::consts::PI);
        let got = rotate(p, u, half).expect("nonzero axis");
        // independent route: Rodrigues with the full angle 2*half
        let unit = u * (1.0 / u.norm());
        let (s, c) = (2.0 * half).sin_cos();
        let want = p * c + unit.cross(p) * s + unit * (unit.dot(p) * (1.0 - c));
        worst = worst.max(rel_dev(got, want, p.norm()));
        worst = worst.max((got.norm() - p.norm()).abs() / p.norm().max(f64::MIN_POSITIVE));
    }
    Ok(CheckReport {
        check_id: "rotation",
        passed: worst <= 1e-12,
        trials,
        worst_error: worst,
        details: "conjugation vs Rodrigues formula, norm preserved".into(),
    })
}

/// The two-multiplier product at (1, 2) against the quaternionic
/// conjugation expression `rho (cos(t/2) + k sin(t/2)) q (...)`; poles
/// included deliberately. Tolerance 1e-10 relative to `|q|^2`.
pub fn check_rotation_identity(trials: u64, seed: u64) -> Result<CheckReport, Error> {
    if trials < 1 {
        return Err(Error::TooFew {
            what: "trials",
            min: 1,
            got: trials,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for trial in 0..trials {
        let q = match trial {
            0 => PureQuaternion::I,
            1 => PureQuaternion::K,
            2 => PureQuaternion::K * -1.5,
            3 => PureQuaternion::ZERO,
            _ => sample_pure(&mut rng),
        };
        let lhs = q.sprod_ab(1.0, 2.0);
        let s = q.to_spherical();
        let (sn, cs) = (s.theta / 2.0).sin_cos();
        let r = Quaternion::new(cs, 0.0, 0.0, sn);
        let conj = (r * Quaternion::from(q) * r.conjugate()) * s.rho;
        let scale = q.norm_sqr().max(f64::MIN_POSITIVE);
        worst = worst.max(rel_dev(lhs, conj.vector_part(), scale));
        worst = worst.max(conj.w.abs() / scale);
    }
    Ok(CheckReport {
        check_id: "rotation_identity",
        passed: worst <= 1e-10,
        trials,
        worst_error: worst,
        details: "q x_s^(1,2) q vs k-axis conjugation".into(),
    })
}

// ---------------------------------------------------------------------
// dynamics checks

/// Escape-radius characterization for m in {2, 3, 8}: parameters beyond
/// the radius escape at iteration 1, and orbits the engine reports as
/// bounded never exceed the radius by more than 1e-9 when re-run without
/// the early exit.
pub fn check_escape_radius(trials: u64, seed: u64, max_iter: u32) -> Result<CheckReport, Error> {
    if trials < 1 {
        return Err(Error::TooFew {
            what: "trials",
            min: 1,
            got: trials,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut passed = true;
    for m in [2u32, 3, 8] {
        let radius = 2f64.powf(1.0 / f64::from(m - 1));
        for _ in 0..trials {
            let c = sample_pure(&mut rng);
            let res = iterate_spherical_power(c, m, max_iter).expect("m >= 2");
            if c.norm() > radius {
                passed &= res.escaped && res.iterations == 1;
            } else if !res.escaped {
                let mut q = PureQuaternion::ZERO;
                for _ in 0..max_iter {
                    q = q.spow(m) + c;
                    let over = q.norm() - radius;
                    worst = worst.max(over);
                    passed &= over <= 1e-9;
                }
            }
        }
    }
    Ok(CheckReport {
        check_id: "escape_radius",
        passed,
        trials: trials * 3,
        worst_error: worst.max(0.0),
        details: format!("m in {{2,3,8}}, max_iter {max_iter}, bound slack 1e-9"),
    })
}

/// Lower bounds along divergent orbits,
/// `|Q^(n)(0)| >= |c| (|c|^(m-1) - 1)^(n-1)` for n <= 10, m in {2, 3, 8}.
/// Iterate norms overflow f64 within a few steps for m >= 3; infinity
/// dominates every finite bound, so the orbit is cut there.
pub fn check_growth_bounds(seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let trials = 100u64;
    for m in [2u32, 3, 8] {
        let radius = 2f64.powf(1.0 / f64::from(m - 1));
        for _ in 0..trials {
            let dir = loop {
                let d = sample_pure(&mut rng);
                if d.norm() > 1e-3 {
                    break d * (1.0 / d.norm());
                }
            };
            let nc = rng.random_range(radius..radius + 1.0).max(radius + 1e-12);
            let c = dir * nc;
            let mut q = PureQuaternion::ZERO;
            for n in 1..=10u32 {
                q = q.spow(m) + c;
                let norm = q.norm();
                if !norm.is_finite() {
                    break;
                }
                let bound = nc * (nc.powi(m as i32 - 1) - 1.0).powi(n as i32 - 1);
                worst = worst.max((bound - norm) / bound.max(f64::MIN_POSITIVE));
            }
        }
    }
    CheckReport {
        check_id: "growth_bounds",
        passed: worst <= 1e-9,
        trials: trials * 3,
        worst_error: worst.max(0.0),
        details: "divergence lower bounds, n <= 10, m in {2,3,8}".into(),
    }
}

/// The z = 0 cut of the (1, 2) family against the complex set: grid^2
/// cells over [-2, 2]^2, exact iteration agreement outside the band.
pub fn check_bulbic_equivalence(grid: u32, max_iter: u32) -> Result<CheckReport, Error> {
    if grid < 16 {
        return Err(Error::TooFew {
            what: "grid",
            min: 16,
            got: grid as u64,
        });
    }
    let mut stats = PairStats::default();
    for row in 0..grid {
        for col in 0..grid {
            let a = -2.0 + (f64::from(col) + 0.5) * 4.0 / f64::from(grid);
            let b = -2.0 + (f64::from(row) + 0.5) * 4.0 / f64::from(grid);
            let ab = ab_orbit_norms(PureQuaternion::new(a, b, 0.0), 1.0, 2.0, max_iter);
            let cx = complex_orbit_norms(Complex64::new(a, b), max_iter);
            stats.record(&ab, &cx, 2.0);
        }
    }
    Ok(stats.report("bulbic_equivalence"))
}

/// The (2, 1) family against the slice H(1,i,j): `a k + b i + c j`
/// against `a + b i + c j`, sampled on two orthogonal planes.
pub fn check_21_slice_equivalence(grid: u32, max_iter: u32) -> Result<CheckReport, Error> {
    if grid < 16 {
        return Err(Error::TooFew {
            what: "grid",
            min: 16,
            got: grid as u64,
        });
    }
    let mut stats = PairStats::default();
    for row in 0..grid {
        for col in 0..grid {
            let alpha = -2.0 + (f64::from(col) + 0.5) * 4.0 / f64::from(grid);
            let beta = -2.0 + (f64::from(row) + 0.5) * 4.0 / f64::from(grid);
            // plane gamma = 0: a k + b i  vs  a + b i
            let q = ab_orbit_norms(PureQuaternion::new(beta, 0.0, alpha), 2.0, 1.0, max_iter);
            let p = quat_orbit_norms(Quaternion::new(alpha, beta, 0.0, 0.0), max_iter);
            stats.record(&q, &p, 2.0);
            // plane beta = 0: a k + c j  vs  a + c j
            let q = ab_orbit_norms(PureQuaternion::new(0.0, beta, alpha), 2.0, 1.0, max_iter);
            let p = quat_orbit_norms(Quaternion::new(alpha, 0.0, beta, 0.0), max_iter);
            stats.record(&q, &p, 2.0);
        }
    }
    Ok(stats.report("slice21_equivalence"))
}

/// The three slices containing the real axis against the complex
/// reduction `q0 + i sqrt(q1^2 + q2^2)`.
pub fn check_slice_rotation(trials: u64, seed: u64, max_iter: u32) -> Result<CheckReport, Error> {
    if trials < 1 {
        return Err(Error::TooFew {
            what: "trials",
            min: 1,
            got: trials,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = PairStats::default();
    for _ in 0..trials {
        let (q0, q1, q2): (f64, f64, f64) = (
            rng.random_range(-2.2..2.2),
            rng.random_range(-2.2..2.2),
            rng.random_range(-2.2..2.2),
        );
        let cx = complex_orbit_norms(Complex64::new(q0, (q1 * q1 + q2 * q2).sqrt()), max_iter);
        for units in [
            [Unit::One, Unit::I, Unit::J],
            [Unit::One, Unit::I, Unit::K],
            [Unit::One, Unit::J, Unit::K],
        ] {
            let c = crate::dynamics::slice_point_to_quaternion(q0, q1, q2, units)
                .expect("distinct units");
            let qn = quat_orbit_norms(c, max_iter);
            stats.record(&qn, &cx, 2.0);
        }
    }
    Ok(stats.report("slice_rotation"))
}

/// Scans `x in [0, 2]` for membership of `xi`, then bisects down to
/// `resolution`. The scan grid always contains `x = 1` exactly, whose
/// orbit `0, i, -1+i, -i, -1+i, ...` is eventually periodic in exact
/// f64 arithmetic.
pub fn compute_axis_extent(max_iter: u32, resolution: f64) -> Result<AxisExtent, Error> {
    if !resolution.is_finite() || resolution <= 0.0 {
        return Err(Error::NonPositive {
            what: "resolution",
            got: resolution,
        });
    }
    if max_iter < 1 {
        return Err(Error::TooFew {
            what: "max_iter",
            min: 1,
            got: 0,
        });
    }
    let member = |x: f64| !iterate_complex(Complex64::new(0.0, x), max_iter).escaped;
    let steps = {
        let wanted = (2.0 / resolution.min(1e-3)).ceil() as u64;
        wanted + wanted % 2
    };
    let mut best = 0.0;
    for i in (0..=steps).rev() {
        let x = 2.0 * i as f64 / steps as f64;
        if member(x) {
            best = x;
            break;
        }
    }
    let mut lo = best;
    let mut hi = (best + 2.0 / steps as f64).min(2.0);
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if member(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(AxisExtent {
        r: lo,
        max_iter,
        resolution,
    })
}

fn axis_extent_report(max_iter: u32, resolution: f64) -> CheckReport {
    let extent = compute_axis_extent(max_iter, resolution).expect("valid parameters");
    // bracketed by the forced orbits: x = 1 is a member, x = 1.5 escapes
    let passed = (1.0..1.5).contains(&extent.r);
    CheckReport {
        check_id: "axis_extent",
        passed,
        trials: 1,
        worst_error: (extent.r - 1.0).abs(),
        details: format!(
            "R={} at max_iter={} resolution={}",
            extent.r, extent.max_iter, extent.resolution
        ),
    }
}

/// Nested-ball structure of the metasphere: the membership scan along a
/// ray shows at least two member runs separated by a gap, and profiles
/// along i, j and (i+j+k)/sqrt3 agree cell for cell.
///
/// Membership flags must agree on every cell (radiality is a statement
/// about boundedness). Escape iteration counts additionally
/// agree on all but at most 0.5% of cells: the diagonal direction's
/// radius differs from the axis directions' by one ulp, and an orbit
/// that wanders near the set boundary for hundreds of iterations
/// amplifies that ulp into a different (finite) escape time.
pub fn check_metasphere_gaps(max_iter: u32, samples: u32) -> Result<CheckReport, Error> {
    if samples < 100 {
        return Err(Error::TooFew {
            what: "samples",
            min: 100,
            got: samples as u64,
        });
    }
    let engine = Engine::quat_slice([Unit::I, Unit::J, Unit::K]).expect("distinct units");
    let dirs = [
        PureQuaternion::I,
        PureQuaternion::J,
        PureQuaternion::new(1.0, 1.0, 1.0),
    ];
    let mut profiles = Vec::new();
    for d in dirs {
        profiles.push(radial_profile(&engine, d, 2.0, samples, max_iter)?);
    }
    let mut flag_mismatches = 0u64;
    let mut iter_mismatches = 0u64;
    for p in &profiles[1..] {
        for (a, b) in p.iter().zip(&profiles[0]) {
            if a.escaped != b.escaped {
                flag_mismatches += 1;
            }
            if a.iterations != b.iterations {
                iter_mismatches += 1;
            }
        }
    }
    let iter_rate = iter_mismatches as f64 / (2.0 * f64::from(samples));
    let runs = member_runs(&profiles[0]);
    let origin_member = !profiles[0][0].escaped;
    let passed =
        flag_mismatches == 0 && iter_rate <= 1.0 - AGREEMENT_MIN && origin_member && runs >= 2;
    Ok(CheckReport {
        check_id: "metasphere_gaps",
        passed,
        trials: u64::from(samples) * 3,
        worst_error: iter_rate,
        details: format!(
            "member_runs={runs} flag_mismatches={flag_mismatches} iter_mismatches={iter_mismatches}"
        ),
    })
}

fn member_runs(samples: &[ProfileSample]) -> u32 {
    let mut runs = 0;
    let mut inside = false;
    for s in samples {
        if !s.escaped && !inside {
            runs += 1;
        }
        inside = !s.escaped;
    }
    runs
}

// ---------------------------------------------------------------------
// suite driver

/// Runs every check with its documented default parameters, ordered by
/// check id. Defaults: 10^4 trials for the random algebra and slice
/// checks, bulbic grid 256 and slice grid 64 at max_iter 64,
/// escape-radius depth 512, axis extent at max_iter 1000 and resolution
/// 1e-4, metasphere scan of 10^4 samples at max_iter 1000.
pub fn run_all(seed: u64) -> Vec<CheckReport> {
    let mut reports = vec![
        axis_extent_report(1000, 1e-4),
        check_bulbic_equivalence(256, 64).expect("valid defaults"),
        check_demoivre(1_000, seed).expect("valid defaults"),
        check_escape_radius(10_000, seed, 512).expect("valid defaults"),
        check_growth_bounds(seed),
        check_magma_laws(10_000, seed).expect("valid defaults"),
        check_metasphere_gaps(1000, 10_000).expect("valid defaults"),
        check_nonassociativity(),
        check_norm_laws(10_000, seed).expect("valid defaults"),
        check_rotation(10_000, seed).expect("valid defaults"),
        check_rotation_identity(10_000, seed).expect("valid defaults"),
        check_21_slice_equivalence(64, 64).expect("valid defaults"),
        check_slice_rotation(10_000, seed, 256).expect("valid defaults"),
        check_spherical_inverse(1_000, seed).expect("valid defaults"),
    ];
    reports.sort_by_key(|r| r.check_id);
    reports
}

/// Runs a single check by id with the same defaults as [`run_all`].
pub fn run_check(id: &str, seed: u64) -> Result<CheckReport, Error> {
    match id {
        "axis_extent" => Ok(axis_extent_report(1000, 1e-4)),
        "bulbic_equivalence" => check_bulbic_equivalence(256, 64),
        "demoivre" => check_demoivre(1_000, seed),
        "escape_radius" => check_escape_radius(10_000, seed, 512),
        "growth_bounds" => Ok(check_growth_bounds(seed)),
        "magma_laws" => check_magma_laws(10_000, seed),
        "metasphere_gaps" => check_metasphere_gaps(1000, 10_000),
        "nonassociativity" => Ok(check_nonassociativity()),
        "norm_laws" => check_norm_laws(10_000, seed),
        "rotation" => check_rotation(10_000, seed),
        "rotation_identity" => check_rotation_identity(10_000, seed),
        "slice21_equivalence" => check_21_slice_equivalence(64, 64),
        "slice_rotation" => check_slice_rotation(10_000, seed, 256),
        "spherical_inverse" => check_spherical_inverse(1_000, seed),
        other => Err(Error::UnknownCheck {
            id: other.to_owned(),
            valid: CHECK_IDS.join(", "),
        }),
    }
}
