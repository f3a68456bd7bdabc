//! Distributional trace pairings against Gaussian test functions.
//!
//! The flat trace of the transfer semigroup is paired with a Gaussian bump
//! in two independent ways: geometrically, as a sum over periodic orbit
//! traversals plus a fixed-point term, and spectrally, as a sum of Fourier
//! transforms over the resonance lines. Both sums are truncated with
//! certified tail bounds, so a reported pair of values comes with the
//! radius inside which the true values are guaranteed to lie. The identity
//! check then compares the two values against the combined radii.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::flow::FlowSpec;
use crate::rational::{rat_to_f64, Rat};
use crate::specfun::PrecisionPolicy;
use crate::spectrum::resonances;
use crate::zeta::MonodromyConvention;

/// Largest number of orbit traversals the geometric sum will walk before
/// refusing the horizon as unreasonable.
const MAX_TRAVERSALS: u64 = 10_000_000;

/// A Gaussian bump `phi(t) = exp(-(t - t0)^2 / (2 sigma^2))` used as the
/// test function of the pairing. The center must sit at least six standard
/// deviations above zero so that the mass on the negative axis is
/// negligible and certifiable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction {
    t0: f64,
    sigma: f64,
}

impl TestFunction {
    pub fn new(t0: f64, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::domain(format!("sigma must be positive, got {sigma}")));
        }
        if !(t0 - 6.0 * sigma > 0.0) || !t0.is_finite() {
            return Err(Error::domain(format!(
                "the bump must be centered well inside t > 0: need t0 - 6 sigma > 0, got t0 = {t0}, sigma = {sigma}"
            )));
        }
        Ok(TestFunction { t0, sigma })
    }

    pub fn center(&self) -> f64 {
        self.t0
    }

    pub fn width(&self) -> f64 {
        self.sigma
    }

    pub fn value(&self, t: f64) -> f64 {
        let u = (t - self.t0) / self.sigma;
        (-0.5 * u * u).exp()
    }

    /// Total mass `integral of phi = sigma sqrt(2 pi)`.
    pub fn mass(&self) -> f64 {
        self.sigma * (2.0 * PI).sqrt()
    }

    /// Two-sided Laplace transform `integral of phi(t) e^{z0 t} dt`,
    /// which for `z0 = -2 i pi nu` is the Fourier transform on a
    /// resonance line.
    pub fn transform(&self, z0: C64) -> C64 {
        self.mass() * (z0 * self.t0 + z0 * z0 * (self.sigma * self.sigma / 2.0)).exp()
    }

    /// Certified bound on the mass of `phi` on the negative half line.
    pub fn below_zero_mass_bound(&self) -> f64 {
        let s2 = self.sigma * self.sigma;
        (s2 / self.t0) * (-self.t0 * self.t0 / (2.0 * s2)).exp()
    }
}

/// A truncated pairing value together with a certified radius: the exact
/// pairing lies within `truncation_bound` of `value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pairing {
    pub value: C64,
    pub truncation_bound: f64,
}

/// Geometric side of the trace pairing: the fixed-point term
/// `-rank * sum of (-1)^{unstable_dim}` times the mass of `phi`, minus for
/// every orbit traversal `m` with `m * period <= horizon` the weighted
/// holonomy trace times `phi(m * period)`. Traversal phases are reduced
/// mod 1 exactly before any trigonometry. Only the inverse convention
/// matches the spectral side; the direct one is exposed for comparison.
pub fn geometric_pairing(
    spec: &FlowSpec,
    phi: &TestFunction,
    horizon: f64,
    convention: MonodromyConvention,
) -> Result<Pairing> {
    if !(horizon >= phi.center() + 6.0 * phi.width()) {
        return Err(Error::domain(format!(
            "horizon {horizon} is too small: need at least t0 + 6 sigma = {}",
            phi.center() + 6.0 * phi.width()
        )));
    }
    let rank = spec.bundle.rank as f64;

    let fixed_weight: f64 = spec
        .fixed_points
        .iter()
        .map(|p| {
            if p.unstable_dim(spec.manifold_dim) % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        })
        .sum();
    let mut value = C64::new(-rank * fixed_weight * phi.mass(), 0.0);
    // The fixed-point term should only integrate phi over t > 0; using the
    // full mass is off by at most the below-zero mass.
    let mut bound = rank * fixed_weight.abs() * phi.below_zero_mass_bound();

    for orbit in &spec.closed_orbits {
        let pf = rat_to_f64(&orbit.period);
        let sign = if orbit.unstable_dim(spec.manifold_dim) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        if horizon / pf > MAX_TRAVERSALS as f64 {
            return Err(Error::domain(format!(
                "horizon {horizon} asks for more than {MAX_TRAVERSALS} traversals of orbit {:?}",
                orbit.id
            )));
        }
        let mut m = 1u64;
        while m as f64 * pf <= horizon {
            let holonomy_trace: C64 = (0..orbit.holonomy_phases.len())
                .map(|j| convention.delta_lambda_power(orbit, j, m))
                .sum();
            value -= sign * pf * holonomy_trace * phi.value(m as f64 * pf);
            m += 1;
        }
        // Tail beyond the first omitted traversal: the Gaussian decays
        // monotonically past its center, so the sum is dominated by the
        // first term plus the integral comparison.
        let first_omitted = m as f64 * pf;
        let line_count = orbit.holonomy_phases.len() as f64;
        let tail_scale = 1.0 + phi.width() * phi.width() / (pf * (first_omitted - phi.center()));
        bound += pf * line_count * phi.value(first_omitted) * tail_scale;
    }
    Ok(Pairing {
        value,
        truncation_bound: bound,
    })
}

/// Spectral side of the trace pairing: over every resonance line with
/// `|nu| <= window`, the alternating sum of kernel dimensions times the
/// transform of `phi` at `z0 = -2 i pi nu`.
pub fn spectral_pairing(
    spec: &FlowSpec,
    phi: &TestFunction,
    window: &Rat,
    _policy: &PrecisionPolicy,
) -> Result<Pairing> {
    let window_f = rat_to_f64(window);
    if !(window_f > 0.0) {
        return Err(Error::domain("the spectral window must be positive"));
    }
    let n = spec.manifold_dim;
    let mut value = C64::new(0.0, 0.0);
    for line in resonances(spec, window)? {
        let weight: f64 = line
            .per_degree_kernel_dim
            .iter()
            .enumerate()
            .map(|(k, &dim)| {
                let sign = if (n - k + 1) % 2 == 0 { 1.0 } else { -1.0 };
                sign * dim as f64
            })
            .sum();
        if weight == 0.0 {
            continue;
        }
        let z0 = C64::new(0.0, -2.0 * PI * rat_to_f64(&line.frequency));
        value += weight * phi.transform(z0);
    }

    // Lines beyond the window: each orbit contributes one unit weight per
    // bundle line on an arithmetic progression with gap 1/period, and the
    // transform decays like exp(-alpha nu^2) with alpha = 2 pi^2 sigma^2.
    let alpha = 2.0 * PI * PI * phi.width() * phi.width();
    let mut bound = 0.0;
    for orbit in &spec.closed_orbits {
        let pf = rat_to_f64(&orbit.period);
        let lines = orbit.holonomy_phases.len() as f64;
        bound += 2.0
            * lines
            * phi.mass()
            * (-alpha * window_f * window_f).exp()
            * (1.0 + pf / (2.0 * alpha * window_f));
    }
    Ok(Pairing {
        value,
        truncation_bound: bound,
    })
}

/// Outcome of comparing the two pairings: the identity is declared to hold
/// when the distance between the values is within the combined certified
/// radii plus the comparison tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullerReport {
    pub geometric: Pairing,
    pub spectral: Pairing,
    pub difference: f64,
    pub allowed: f64,
    pub pass: bool,
}

/// Evaluate both sides of the trace identity and compare them.
pub fn fuller_identity_check(
    spec: &FlowSpec,
    phi: &TestFunction,
    window: &Rat,
    horizon: f64,
    convention: MonodromyConvention,
    policy: &PrecisionPolicy,
) -> Result<FullerReport> {
    let geometric = geometric_pairing(spec, phi, horizon, convention)?;
    let spectral = spectral_pairing(spec, phi, window, policy)?;
    let difference = (geometric.value - spectral.value).norm();
    let allowed = geometric.truncation_bound + spectral.truncation_bound + policy.compare_tol;
    Ok(FullerReport {
        geometric,
        spectral,
        difference,
        allowed,
        pass: difference <= allowed,
    })
}
