//! Zeta functions of the flow and their meromorphic continuations.
//!
//! Four related objects live here, all assembled per orbit and bundle line
//! from exact rational phase data before any floating-point evaluation:
//!
//! * the dynamical zeta function `zeta_v` (a Hurwitz-zeta combination with
//!   a simple pole at `s = 1`),
//! * its ideal-boundary value: the zeta-regularized torsion, in closed
//!   form and cross-evaluated through zero values of Hurwitz zeta,
//! * the spectral zeta function `zeta_rs` over the nonzero resonances of a
//!   spectral parameter `z`, its regularized determinant `big_z_rs`, and
//!   the matching closed-form product,
//! * the flat-trace zeta `zeta_flat` in both its spectral and geometric
//!   presentations, and the torsion function they exponentiate to.
//!
//! The split of each resonance progression into two Hurwitz series keeps
//! every complex power on its principal branch: with `Re z > 0` the
//! parameters stay strictly off the real axis, and the argument sums
//! involved stay inside `(-pi/2, pi/2)`.

use num_complex::Complex64 as C64;
use num_traits::One;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::flow::{orbit_multiplicity_m, ClosedOrbit, FlowSpec};
use crate::rational::{frac_mod_one, rat_to_f64, Rat};
use crate::specfun::{
    hurwitz_zeta, hurwitz_zeta_shifted, hurwitz_zeta_zero_values,
    hurwitz_zeta_zero_values_shifted, log_gamma, orbit_dirichlet_sum, PrecisionPolicy,
};

/// Orientation convention for the monodromy eigenvalues entering the
/// geometric (orbit-sum) formulas. The spectral formulas are convention
/// free; the identities relating the two sides single out `Inverse`, which
/// is therefore the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonodromyConvention {
    /// Orbit weights use `e^{-2 i pi gamma}` (holonomy of flat sections).
    #[default]
    Inverse,
    /// Orbit weights use `e^{+2 i pi gamma}` (monodromy eigenvalues).
    Direct,
}

impl MonodromyConvention {
    /// The combined weight `Delta * lambda_j` of one traversal: a unit
    /// complex number with phase `-+ 2 pi q_j` where `q_j` is the orbit's
    /// combined phase.
    pub fn delta_lambda(&self, orbit: &ClosedOrbit, j: usize) -> C64 {
        self.delta_lambda_power(orbit, j, 1)
    }

    /// `(Delta * lambda_j)^m` with the phase reduced mod 1 exactly before
    /// any trigonometry.
    pub fn delta_lambda_power(&self, orbit: &ClosedOrbit, j: usize, m: u64) -> C64 {
        let total = (orbit.twist_offset() + &orbit.holonomy_phases[j]) * Rat::from_integer(m.into());
        let theta = 2.0 * PI * rat_to_f64(&frac_mod_one(&total));
        match self {
            MonodromyConvention::Inverse => C64::new(theta.cos(), -theta.sin()),
            MonodromyConvention::Direct => C64::new(theta.cos(), theta.sin()),
        }
    }
}

fn sign_pow(exponent: usize) -> f64 {
    if exponent % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `(-1)^{n + unstable_dim}` of an orbit: the sign in front of its
/// dynamical-zeta and regularized-torsion contributions.
fn orbit_sign(spec: &FlowSpec, orbit: &ClosedOrbit) -> f64 {
    sign_pow(spec.manifold_dim + orbit.unstable_dim(spec.manifold_dim))
}

/// `-(-1)^{unstable_dim}` of an orbit: the collapsed degree weight of one
/// orbit state pair in the spectral zeta function.
fn pair_weight(spec: &FlowSpec, orbit: &ClosedOrbit) -> f64 {
    -sign_pow(orbit.unstable_dim(spec.manifold_dim))
}

// ---------------------------------------------------------------------------
// Dynamical zeta function

/// The dynamical zeta function: for every orbit and bundle line the pair
/// `zeta(s, q) + zeta(s, 1 - q)` (doubled at `q = 1`) scaled by
/// `(period / 2 pi)^s`, with the orbit sign. Meromorphic with a simple
/// pole at `s = 1`.
pub fn zeta_v(spec: &FlowSpec, s: C64, policy: &PrecisionPolicy) -> Result<C64> {
    let mut sum = C64::new(0.0, 0.0);
    for orbit in &spec.closed_orbits {
        let scale = (s * rat_to_f64(&orbit.period).ln() - s * (2.0 * PI).ln()).exp();
        let sign = orbit_sign(spec, orbit);
        for j in 0..orbit.holonomy_phases.len() {
            let q = orbit.combined_phase(j);
            let xi = if q.is_one() {
                2.0 * hurwitz_zeta(s, C64::new(1.0, 0.0), policy)?
            } else {
                let qf = rat_to_f64(&q);
                hurwitz_zeta(s, C64::new(qf, 0.0), policy)?
                    + hurwitz_zeta(s, C64::new(1.0 - qf, 0.0), policy)?
            };
            sum += sign * scale * xi;
        }
    }
    Ok(sum)
}

/// Residue of [`zeta_v`] at `s = 1`:
/// `(rank / pi) * sum over orbits of (-1)^{n + unstable_dim} * period`.
pub fn zeta_v_residue(spec: &FlowSpec) -> f64 {
    let rank = spec.bundle.rank as f64;
    let total: f64 = spec
        .closed_orbits
        .iter()
        .map(|o| orbit_sign(spec, o) * rat_to_f64(&o.period))
        .sum();
    rank * total / PI
}

// ---------------------------------------------------------------------------
// Regularized torsion

/// Zeta-regularized torsion `exp(-zeta_v'(0))`, together with its
/// `(-1)^{n+1}` power (the parity-corrected value that plays the role of
/// the Reidemeister torsion).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizedTorsion {
    pub value: f64,
    pub parity_value: f64,
    pub log_value: f64,
}

impl RegularizedTorsion {
    fn from_log(log_value: f64, manifold_dim: usize) -> Self {
        let parity_log = if manifold_dim % 2 == 1 {
            log_value
        } else {
            -log_value
        };
        RegularizedTorsion {
            value: log_value.exp(),
            parity_value: parity_log.exp(),
            log_value,
        }
    }
}

/// Closed form of the regularized torsion: a product of `2 sin(pi q)`
/// factors over the nontrivial combined phases and a `period^m` factor per
/// orbit, each raised to the orbit sign.
pub fn regularized_torsion(spec: &FlowSpec) -> RegularizedTorsion {
    let mut log_value = 0.0f64;
    for orbit in &spec.closed_orbits {
        let sign = orbit_sign(spec, orbit);
        let m = orbit_multiplicity_m(orbit, &spec.bundle);
        log_value += sign * m as f64 * rat_to_f64(&orbit.period).ln();
        for j in 0..orbit.holonomy_phases.len() {
            let q = orbit.combined_phase(j);
            if !q.is_one() {
                log_value += sign * (2.0 * (PI * rat_to_f64(&q)).sin()).ln();
            }
        }
    }
    RegularizedTorsion::from_log(log_value, spec.manifold_dim)
}

/// The same torsion assembled term by term from values and s-derivatives
/// of Hurwitz zeta at the origin; an independent evaluation route used to
/// cross-check the closed form.
pub fn regularized_torsion_via_zero_values(
    spec: &FlowSpec,
    policy: &PrecisionPolicy,
) -> Result<RegularizedTorsion> {
    let mut zeta_prime = 0.0f64;
    for orbit in &spec.closed_orbits {
        let sign = orbit_sign(spec, orbit);
        let log_scale = (rat_to_f64(&orbit.period) / (2.0 * PI)).ln();
        for j in 0..orbit.holonomy_phases.len() {
            let q = orbit.combined_phase(j);
            let (xi0, xi0_prime) = if q.is_one() {
                let (v, d) = hurwitz_zeta_zero_values(C64::new(1.0, 0.0), policy)?;
                (2.0 * v, 2.0 * d)
            } else {
                let qf = rat_to_f64(&q);
                let (v1, d1) = hurwitz_zeta_zero_values(C64::new(qf, 0.0), policy)?;
                let (v2, d2) = hurwitz_zeta_zero_values(C64::new(1.0 - qf, 0.0), policy)?;
                (v1 + v2, d1 + d2)
            };
            // d/ds [ (P/2pi)^s xi(s) ] at 0 = xi'(0) + ln(P/2pi) xi(0).
            zeta_prime += sign * (xi0_prime + log_scale * xi0).re;
        }
    }
    Ok(RegularizedTorsion::from_log(
        -zeta_prime,
        spec.manifold_dim,
    ))
}

// ---------------------------------------------------------------------------
// Spectral zeta over the resonances of z

struct PairGeometry {
    /// Principal log of `i c` with `c = 2 pi / period`.
    log_ic: C64,
    /// Principal log of `-i c`.
    log_mic: C64,
    /// Hurwitz parameter of the positive-frequency progression.
    a_plus: C64,
    /// Parameter of the negative-frequency progression, advanced by one
    /// step when `q = 1` so that the zero resonance is excluded exactly.
    a_star: C64,
}

fn pair_geometry(z: C64, q: &Rat, period: &Rat) -> PairGeometry {
    let pf = rat_to_f64(period);
    let c = 2.0 * PI / pf;
    let a_plus = C64::new(rat_to_f64(q), 0.0) - C64::i() * z * (pf / (2.0 * PI));
    let a_minus = C64::new(1.0, 0.0) - a_plus;
    let a_star = if q.is_one() { a_minus + 1.0 } else { a_minus };
    PairGeometry {
        log_ic: C64::new(c.ln(), PI / 2.0),
        log_mic: C64::new(c.ln(), -PI / 2.0),
        a_plus,
        a_star,
    }
}

fn require_right_half_plane(z: C64, what: &str) -> Result<()> {
    if z.re <= 0.0 {
        return Err(Error::domain(format!(
            "{what} needs Re z > 0, got z = {z}"
        )));
    }
    Ok(())
}

/// Spectral zeta function over the nonzero resonances:
/// `sum over z0 of weight * (z - z0)^{-s}`, each orbit pair progression
/// evaluated in closed Hurwitz form on principal branches.
pub fn zeta_rs(spec: &FlowSpec, s: C64, z: C64, policy: &PrecisionPolicy) -> Result<C64> {
    require_right_half_plane(z, "the spectral zeta function")?;
    let mut sum = C64::new(0.0, 0.0);
    for orbit in &spec.closed_orbits {
        let w = pair_weight(spec, orbit);
        for j in 0..orbit.holonomy_phases.len() {
            let q = orbit.combined_phase(j);
            let g = pair_geometry(z, &q, &orbit.period);
            let plus = (-s * g.log_ic).exp() * hurwitz_zeta_shifted(s, g.a_plus, policy)?;
            let minus = (-s * g.log_mic).exp() * hurwitz_zeta_shifted(s, g.a_star, policy)?;
            sum += w * (plus + minus);
        }
    }
    Ok(sum)
}

/// Regularized spectral determinant `exp(-d/ds zeta_rs(s, z) at s = 0)`.
/// The derivative is assembled per pair from shifted zero values; the
/// final exponential absorbs any `2 pi i` bookkeeping.
pub fn big_z_rs(spec: &FlowSpec, z: C64, policy: &PrecisionPolicy) -> Result<C64> {
    require_right_half_plane(z, "the spectral determinant")?;
    let mut derivative = C64::new(0.0, 0.0);
    for orbit in &spec.closed_orbits {
        let w = pair_weight(spec, orbit);
        for j in 0..orbit.holonomy_phases.len() {
            let q = orbit.combined_phase(j);
            let g = pair_geometry(z, &q, &orbit.period);
            let (v_plus, d_plus) = hurwitz_zeta_zero_values_shifted(g.a_plus, policy)?;
            let (v_star, d_star) = hurwitz_zeta_zero_values_shifted(g.a_star, policy)?;
            // d/ds [ (ic)^{-s} zeta(s, a) ] at 0 = -log(ic) zeta(0, a) + zeta'(0, a).
            let pair = -g.log_ic * v_plus + d_plus - g.log_mic * v_star + d_star;
            derivative += w * pair;
        }
    }
    Ok((-derivative).exp())
}

/// Closed-form counterpart of [`big_z_rs`]: the finite product
/// `prod over orbits of (z^{-m} prod_j (1 - e^{-P z} Delta lambda_j))^{-(-1)^{unstable_dim}}`.
/// Under the inverse convention this equals the spectral determinant.
pub fn z_rs_closed_form(
    spec: &FlowSpec,
    z: C64,
    convention: MonodromyConvention,
) -> Result<C64> {
    let mut result = C64::new(1.0, 0.0);
    for orbit in &spec.closed_orbits {
        let m = orbit_multiplicity_m(orbit, &spec.bundle);
        let mut inner = C64::new(1.0, 0.0);
        if m > 0 {
            if z == C64::new(0.0, 0.0) {
                return Err(Error::domain(
                    "z = 0 is a zero of this determinant (the orbit has trivial holonomy lines)",
                ));
            }
            inner *= z.powi(-(m as i32));
        }
        let decay = (-z * rat_to_f64(&orbit.period)).exp();
        for j in 0..orbit.holonomy_phases.len() {
            inner *= C64::new(1.0, 0.0) - decay * convention.delta_lambda(orbit, j);
        }
        let exponent = -sign_pow(orbit.unstable_dim(spec.manifold_dim)) as i32;
        if inner == C64::new(0.0, 0.0) && exponent < 0 {
            return Err(Error::domain(format!(
                "z = {z} is a resonance of orbit {:?}; the determinant has a pole there",
                orbit.id
            )));
        }
        result *= inner.powi(exponent);
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// Flat-trace zeta and the torsion function

/// Which presentation of the flat-trace zeta to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaFlatMethod {
    /// Resonance sum: a `z^{-s}` term for the zero line plus [`zeta_rs`].
    Spectral,
    /// Orbit sum: Dirichlet series in the periods against `1/Gamma(s)`.
    Geometric,
}

/// Total weight of the zero resonance beyond the Euler characteristic:
/// `sum over orbits of (-1)^{unstable_dim} * m`.
fn zero_line_orbit_weight(spec: &FlowSpec) -> f64 {
    spec.closed_orbits
        .iter()
        .map(|o| {
            sign_pow(o.unstable_dim(spec.manifold_dim))
                * orbit_multiplicity_m(o, &spec.bundle) as f64
        })
        .sum()
}

/// The flat-trace zeta function in either presentation. Both need
/// `Re z > 0`; the geometric route additionally needs `Re s > 0` (it
/// divides by `Gamma(s)` through `log_gamma`). The spectral route does not
/// depend on the monodromy convention; the geometric route does, and the
/// two agree under the inverse convention.
pub fn zeta_flat(
    spec: &FlowSpec,
    s: C64,
    z: C64,
    method: ZetaFlatMethod,
    convention: MonodromyConvention,
    policy: &PrecisionPolicy,
) -> Result<C64> {
    require_right_half_plane(z, "the flat-trace zeta function")?;
    let chi = spec.chi() as f64;
    let z_pow = (-s * z.ln()).exp();
    match method {
        ZetaFlatMethod::Spectral => {
            let zero_weight = chi + zero_line_orbit_weight(spec);
            Ok(-zero_weight * z_pow + zeta_rs(spec, s, z, policy)?)
        }
        ZetaFlatMethod::Geometric => {
            if s.re <= 0.0 {
                return Err(Error::domain(
                    "the geometric flat-trace assembly needs Re s > 0",
                ));
            }
            let inv_gamma = (-log_gamma(s)?).exp();
            let mut orbit_part = C64::new(0.0, 0.0);
            for orbit in &spec.closed_orbits {
                let pf = rat_to_f64(&orbit.period);
                let p_pow = (s * pf.ln()).exp();
                let decay = (-z * pf).exp();
                let sign = sign_pow(orbit.unstable_dim(spec.manifold_dim));
                for j in 0..orbit.holonomy_phases.len() {
                    let x = decay * convention.delta_lambda(orbit, j);
                    orbit_part += sign * p_pow * orbit_dirichlet_sum(s, x, policy)?;
                }
            }
            Ok(-chi * z_pow - inv_gamma * orbit_part)
        }
    }
}

/// The torsion function: `z^{-chi}` times the closed-form orbit product.
/// Defined wherever no factor vanishes; `z = 0` is allowed when the Euler
/// characteristic is zero and no orbit has trivial holonomy lines.
pub fn torsion_function(
    spec: &FlowSpec,
    z: C64,
    convention: MonodromyConvention,
) -> Result<C64> {
    let chi = spec.chi();
    let mut result = if chi == 0 {
        C64::new(1.0, 0.0)
    } else {
        if z == C64::new(0.0, 0.0) {
            return Err(Error::domain(
                "z = 0 is a zero or pole of the torsion function (nonzero Euler characteristic)",
            ));
        }
        z.powi(-(chi as i32))
    };
    for orbit in &spec.closed_orbits {
        let decay = (-z * rat_to_f64(&orbit.period)).exp();
        let exponent = -sign_pow(orbit.unstable_dim(spec.manifold_dim)) as i32;
        for j in 0..orbit.holonomy_phases.len() {
            let factor = C64::new(1.0, 0.0) - decay * convention.delta_lambda(orbit, j);
            if factor == C64::new(0.0, 0.0) && exponent < 0 {
                return Err(Error::domain(format!(
                    "z = {z} is a resonance of orbit {:?}; the torsion function has a pole there",
                    orbit.id
                )));
            }
            result *= factor.powi(exponent);
        }
    }
    Ok(result)
}

/// The torsion function assembled from the spectral side:
/// `z^{-(chi + zero-line weight)} * big_z_rs(z)`. Cross-checks
/// [`torsion_function`] under the inverse convention.
pub fn torsion_function_spectral(
    spec: &FlowSpec,
    z: C64,
    policy: &PrecisionPolicy,
) -> Result<C64> {
    require_right_half_plane(z, "the spectral torsion function")?;
    let exponent = spec.chi() + zero_line_orbit_weight(spec).round() as i64;
    Ok(z.powi(-(exponent as i32)) * big_z_rs(spec, z, policy)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{builtin_example, FlatBundleData, FixedPoint};
    use crate::rational::rat_int;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn assert_close(got: C64, want: C64, tol: f64) {
        assert!(
            (got - want).norm() <= tol,
            "got {got}, want {want}, diff {:.3e}",
            (got - want).norm()
        );
    }

    #[test]
    fn residues_of_the_dynamical_zeta() {
        let spec_c = builtin_example("s1-rotation").unwrap();
        let spec_d = builtin_example("s3-seifert").unwrap();
        assert!((zeta_v_residue(&spec_c) - 3.0 / PI).abs() < 1e-15);
        assert!((zeta_v_residue(&spec_d) - 3.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn dynamical_zeta_pole_behaviour() {
        let spec = builtin_example("s1-rotation").unwrap();
        let policy = PrecisionPolicy::default();
        assert!(zeta_v(&spec, c(1.0, 0.0), &policy).is_err());
        // Near the pole, (s - 1) * zeta approximates the residue.
        let eps = 1e-6;
        let near = zeta_v(&spec, c(1.0 + eps, 0.0), &policy).unwrap();
        let residue = (near * eps).re;
        assert!(
            (residue - zeta_v_residue(&spec)).abs() < 1e-4,
            "{residue}"
        );
    }

    #[test]
    fn regularized_torsion_closed_values() {
        let spec = builtin_example("s1-rotation").unwrap();
        let t = regularized_torsion(&spec);
        let sqrt2 = 2.0f64.sqrt();
        assert!((t.value - sqrt2).abs() < 1e-14, "{}", t.value);
        assert!((t.parity_value - sqrt2).abs() < 1e-14);

        let spec_e = builtin_example("twisted-orbit").unwrap();
        let te = regularized_torsion(&spec_e);
        assert!((te.value - 2.0).abs() < 1e-14, "{}", te.value);
        assert!((te.parity_value - 0.5).abs() < 1e-14, "{}", te.parity_value);
    }

    #[test]
    fn trivial_holonomy_line_contributes_the_period() {
        // One orbit with q = 1 on a surface, even sign: the torsion is the
        // period itself.
        let spec = crate::flow::FlowSpec {
            manifold_dim: 2,
            bundle: FlatBundleData { rank: 1 },
            fixed_points: vec![FixedPoint { id: "p".into(), stable_dim: 0 }],
            closed_orbits: vec![ClosedOrbit {
                id: "o".into(),
                period: rat_int(5),
                stable_dim: 1,
                twisted: false,
                holonomy_phases: vec![rat_int(0)],
            }],
            smale_order: None,
            betti: None,
        };
        let t = regularized_torsion(&spec);
        assert!((t.value - 5.0).abs() < 1e-12, "{}", t.value);
    }

    #[test]
    fn zero_value_route_agrees_with_closed_form() {
        let policy = PrecisionPolicy::default();
        for name in ["s1-rotation", "s3-seifert", "twisted-orbit"] {
            let spec = builtin_example(name).unwrap();
            let closed = regularized_torsion(&spec);
            let via = regularized_torsion_via_zero_values(&spec, &policy).unwrap();
            assert!(
                (closed.log_value - via.log_value).abs() < 1e-12,
                "{name}: {} vs {}",
                closed.log_value,
                via.log_value
            );
        }
    }

    #[test]
    fn spectral_zeta_matches_a_direct_resonance_sum() {
        let spec = builtin_example("s1-rotation").unwrap();
        let policy = PrecisionPolicy::default();
        let s = c(3.0, 0.0);
        let z = c(1.0, 0.5);
        let fast = zeta_rs(&spec, s, z, &policy).unwrap();
        // Brute force over windings: nu = (k + 1/4)/3, weight
        // -(-1)^{unstable_dim} = +1.
        let mut brute = c(0.0, 0.0);
        let half_width = 200_000i64;
        for k in -half_width..=half_width {
            let nu = (k as f64 + 0.25) / 3.0;
            let z0 = c(0.0, -2.0 * PI * nu);
            brute += (-s * (z - z0).ln()).exp();
        }
        // Tail of sum |k|^{-3} beyond the cutoff.
        let tail = 2.0 / (2.0 * PI / 3.0).powi(3) / (half_width as f64).powi(2);
        assert_close(fast, brute, tail + 1e-9);
    }

    #[test]
    fn spectral_determinant_equals_closed_product() {
        let policy = PrecisionPolicy::default();
        for name in ["s1-rotation", "s3-seifert"] {
            let spec = builtin_example(name).unwrap();
            for z in [c(1.0, 0.0), c(0.3, 0.0), c(2.0, 2.0)] {
                let spectral = big_z_rs(&spec, z, &policy).unwrap();
                let closed =
                    z_rs_closed_form(&spec, z, MonodromyConvention::Inverse).unwrap();
                assert_close(spectral, closed, 1e-10);
            }
        }
    }

    #[test]
    fn rotation_determinant_known_values() {
        let policy = PrecisionPolicy::default();
        let spec = builtin_example("s1-rotation").unwrap();
        // q = 1/4 gives Delta lambda = -i, so Z(z) = 1 + i e^{-3z}.
        let z1 = big_z_rs(&spec, c(1.0, 0.0), &policy).unwrap();
        assert_close(z1, c(1.0, (-3.0f64).exp()), 1e-12);
        let z3 = big_z_rs(&spec, c(3.0, 0.0), &policy).unwrap();
        assert_close(z3, c(1.0, (-9.0f64).exp()), 1e-12);
    }

    #[test]
    fn flat_zeta_methods_agree_on_the_rotation_example() {
        let policy = PrecisionPolicy::default();
        let spec = builtin_example("s1-rotation").unwrap();
        for (s, z) in [(c(2.0, 0.0), c(1.0, 0.0)), (c(0.5, 0.0), c(2.0, 0.0))] {
            let spectral = zeta_flat(
                &spec,
                s,
                z,
                ZetaFlatMethod::Spectral,
                MonodromyConvention::Inverse,
                &policy,
            )
            .unwrap();
            let geometric = zeta_flat(
                &spec,
                s,
                z,
                ZetaFlatMethod::Geometric,
                MonodromyConvention::Inverse,
                &policy,
            )
            .unwrap();
            assert_close(spectral, geometric, 1e-8);
        }
    }

    #[test]
    fn torsion_function_values_and_limits() {
        let conv = MonodromyConvention::Inverse;
        // Sphere: no orbits, so the function is z^{-chi}.
        let sphere = builtin_example("s2-height").unwrap();
        assert_close(
            torsion_function(&sphere, c(2.0, 0.0), conv).unwrap(),
            c(0.25, 0.0),
            1e-15,
        );
        assert!(torsion_function(&sphere, c(0.0, 0.0), conv).is_err());

        // Rotation: Z(z) = 1 + i e^{-3z}, |Z| increases to sqrt(2) as z
        // shrinks to zero.
        let rotation = builtin_example("s1-rotation").unwrap();
        let mut previous = 0.0f64;
        for z in [1.0, 0.1, 0.01, 0.001] {
            let v = torsion_function(&rotation, c(z, 0.0), conv).unwrap().norm();
            assert!(v > previous, "|Z({z})| = {v} did not increase");
            previous = v;
        }
        assert!((previous - 2.0f64.sqrt()).abs() < 1e-2);
        // z = 0 is fine here: chi = 0 and the orbit has no trivial lines.
        let at_zero = torsion_function(&rotation, c(0.0, 0.0), conv).unwrap();
        assert_close(at_zero, c(1.0, 1.0), 1e-15);
    }

    #[test]
    fn torsion_function_spectral_route_agrees() {
        let policy = PrecisionPolicy::default();
        let conv = MonodromyConvention::Inverse;
        for name in ["s1-rotation", "s3-seifert", "twisted-orbit"] {
            let spec = builtin_example(name).unwrap();
            for z in [c(0.7, 0.3), c(1.5, 0.0)] {
                let direct = torsion_function(&spec, z, conv).unwrap();
                let spectral = torsion_function_spectral(&spec, z, &policy).unwrap();
                assert_close(direct, spectral, 1e-9);
            }
        }
    }

    #[test]
    fn conventions_are_conjugate_at_real_arguments() {
        let spec = builtin_example("s3-seifert").unwrap();
        let z = c(0.8, 0.0);
        let inv = torsion_function(&spec, z, MonodromyConvention::Inverse).unwrap();
        let dir = torsion_function(&spec, z, MonodromyConvention::Direct).unwrap();
        assert_close(dir, inv.conj(), 1e-14);
    }

    #[test]
    fn left_half_plane_is_rejected_where_required() {
        let policy = PrecisionPolicy::default();
        let spec = builtin_example("s1-rotation").unwrap();
        assert!(zeta_rs(&spec, c(2.0, 0.0), c(-1.0, 0.0), &policy).is_err());
        assert!(big_z_rs(&spec, c(0.0, 1.0), &policy).is_err());
        assert!(zeta_flat(
            &spec,
            c(-2.0, 0.0),
            c(1.0, 0.0),
            ZetaFlatMethod::Geometric,
            MonodromyConvention::Inverse,
            &policy
        )
        .is_err());
    }
}
