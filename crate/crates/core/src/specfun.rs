//! Special functions underlying the zeta assemblies: Hurwitz zeta by
//! Euler-Maclaurin summation, its value and s-derivative at the origin,
//! log-gamma by a Lanczos approximation, and the orbit Dirichlet series.
//!
//! All evaluation is double-precision complex with principal branches.
//! Accuracy is steered by a [`PrecisionPolicy`]: the Euler-Maclaurin
//! remainder is estimated by the first omitted correction term and the
//! direct-sum length is doubled until that estimate clears the series
//! tolerance, so results do not silently degrade for awkward arguments.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Accuracy knobs shared by every analytic routine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionPolicy {
    /// Baseline number of directly summed terms in Euler-Maclaurin.
    pub em_terms: usize,
    /// Number of Bernoulli correction terms (at most 14).
    pub em_order: usize,
    /// Relative tolerance for series truncation.
    pub series_tol: f64,
    /// Tolerance used when two evaluation routes are compared.
    pub compare_tol: f64,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            em_terms: 16,
            em_order: 8,
            series_tol: 1e-14,
            compare_tol: 1e-9,
        }
    }
}

/// Bernoulli numbers B_2, B_4, ..., B_30 as (numerator, denominator).
const BERNOULLI: [(i64, i64); 15] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
];

fn bernoulli(two_j: usize) -> f64 {
    let (num, den) = BERNOULLI[two_j / 2 - 1];
    num as f64 / den as f64
}

const LN_TWO_PI: f64 = 1.8378770664093453; // ln(2 pi)

/// Compensated (Kahan) complex accumulator.
#[derive(Debug, Default, Clone, Copy)]
struct Kahan {
    sum: C64,
    carry: C64,
}

impl Kahan {
    fn add(&mut self, term: C64) {
        let y = term - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> C64 {
        self.sum
    }
}

/// Principal-branch complex power `base^exponent`.
fn cpow(base: C64, exponent: C64) -> C64 {
    (exponent * base.ln()).exp()
}

/// Hurwitz zeta `zeta(s, a)` for `Re a > 0`, by Euler-Maclaurin.
///
/// Errors at the pole `s = 1`, for `Re a <= 0` (shift first; see
/// [`hurwitz_zeta_shifted`]), and when the remainder estimate will not
/// clear the series tolerance.
pub fn hurwitz_zeta(s: C64, a: C64, policy: &PrecisionPolicy) -> Result<C64> {
    if s == C64::new(1.0, 0.0) {
        return Err(Error::domain("hurwitz zeta has its pole at s = 1"));
    }
    if a.re <= 0.0 {
        return Err(Error::domain(format!(
            "hurwitz zeta parameter {a} must have positive real part; apply the shift recursion first"
        )));
    }
    let order = policy.em_order.clamp(1, 14);
    let mut m = policy.em_terms.max(2 * s.norm().ceil() as usize + 2).max(2);
    loop {
        let (value, remainder) = euler_maclaurin(s, a, m, order);
        if remainder <= policy.series_tol * (value.norm() + 1.0) {
            return Ok(value);
        }
        m *= 2;
        if m > 4_000_000 {
            return Err(Error::numerical(format!(
                "hurwitz zeta did not reach tolerance {} at s={s}, a={a} (remainder {remainder:.3e})",
                policy.series_tol
            )));
        }
    }
}

/// One Euler-Maclaurin evaluation with `m` direct terms and `order`
/// Bernoulli corrections; returns the value and the magnitude of the first
/// omitted correction term as the remainder estimate.
fn euler_maclaurin(s: C64, a: C64, m: usize, order: usize) -> (C64, f64) {
    let mut direct = Kahan::default();
    for k in 0..m {
        direct.add(cpow(a + k as f64, -s));
    }
    let w = a + m as f64;

    let mut tail = Kahan::default();
    // Integral term (m+a)^{1-s}/(s-1) and boundary term (m+a)^{-s}/2.
    tail.add(cpow(w, C64::new(1.0, 0.0) - s) / (s - 1.0));
    tail.add(0.5 * cpow(w, -s));

    // Correction terms B_{2j}/(2j)! * rising(s, 2j-1) * (m+a)^{-s-2j+1}.
    let mut rising = s; // rising factorial (s)_{2j-1}, starts at (s)_1
    let mut factorial = 2.0f64; // (2j)!
    let w_pow_s = cpow(w, -s);
    let inv_w = C64::new(1.0, 0.0) / w;
    let mut w_shift = C64::new(1.0, 0.0); // runs through w^{-2j} below
    for j in 1..=order {
        if j > 1 {
            rising *= (s + (2 * j - 3) as f64) * (s + (2 * j - 2) as f64);
            factorial *= ((2 * j - 1) * (2 * j)) as f64;
        }
        w_shift *= inv_w * inv_w;
        tail.add((bernoulli(2 * j) / factorial) * rising * w_pow_s * w_shift * w);
        // w_pow_s * w_shift * w = w^{-s} * w^{1-2j}
    }
    // First omitted term, j = order + 1, as the remainder estimate.
    let j = order + 1;
    let rising_next = rising * (s + (2 * j - 3) as f64) * (s + (2 * j - 2) as f64);
    let factorial_next = factorial * (((2 * j - 1) * (2 * j)) as f64);
    let remainder = (bernoulli(2 * j) / factorial_next).abs()
        * rising_next.norm()
        * (w_pow_s * w_shift * inv_w * inv_w * w).norm();

    (direct.value() + tail.value(), remainder)
}

/// Hurwitz zeta extended to any parameter off the nonpositive real
/// integers, by the shift recursion
/// `zeta(s, a) = a^{-s} + zeta(s, a + 1)` applied until `Re a >= 1/2`.
pub fn hurwitz_zeta_shifted(s: C64, a: C64, policy: &PrecisionPolicy) -> Result<C64> {
    let (front, shifted) = shift_points(a)?;
    let mut sum = Kahan::default();
    for b in &front {
        sum.add(cpow(*b, -s));
    }
    sum.add(hurwitz_zeta(s, shifted, policy)?);
    Ok(sum.value())
}

/// The shift points `a, a+1, ..` consumed before the parameter reaches
/// `Re >= 1/2`, plus the final parameter. Errors when a shift point hits
/// zero (the recursion would divide by zero there).
fn shift_points(a: C64) -> Result<(Vec<C64>, C64)> {
    let mut front = Vec::new();
    let mut b = a;
    while b.re < 0.5 {
        if b == C64::new(0.0, 0.0) {
            return Err(Error::domain(
                "hurwitz zeta parameter lies on a nonpositive integer",
            ));
        }
        front.push(b);
        b += 1.0;
        if front.len() > 1_000_000 {
            return Err(Error::numerical("hurwitz shift recursion ran away"));
        }
    }
    Ok((front, b))
}

/// Value and s-derivative of `zeta(s, a)` at `s = 0`, for `Re a > 0`:
/// `zeta(0, a) = 1/2 - a` and `d/ds zeta(0, a) = log Gamma(a) - ln(2 pi)/2`.
pub fn hurwitz_zeta_zero_values(a: C64, _policy: &PrecisionPolicy) -> Result<(C64, C64)> {
    if a.re <= 0.0 {
        return Err(Error::domain(format!(
            "hurwitz zeta parameter {a} must have positive real part; apply the shift recursion first"
        )));
    }
    let value = C64::new(0.5, 0.0) - a;
    let derivative = log_gamma(a)? - 0.5 * LN_TWO_PI;
    Ok((value, derivative))
}

/// Zero values through the shift recursion: each consumed shift point `b`
/// contributes `1` to the value and `-Log b` to the derivative.
pub fn hurwitz_zeta_zero_values_shifted(a: C64, policy: &PrecisionPolicy) -> Result<(C64, C64)> {
    let (front, shifted) = shift_points(a)?;
    let (mut value, mut derivative) = hurwitz_zeta_zero_values(shifted, policy)?;
    for b in &front {
        value += 1.0;
        derivative -= b.ln();
    }
    Ok((value, derivative))
}

/// Lanczos coefficients (g = 607/128, 15 terms).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_C: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// Principal branch of `log Gamma(z)` for `Re z > 0`, by the Lanczos
/// approximation. In the right half-plane the Lanczos series does not
/// wind, so taking principal logarithms term by term is branch-safe.
pub fn log_gamma(z: C64) -> Result<C64> {
    if z.re <= 0.0 {
        return Err(Error::domain(format!(
            "log_gamma requires positive real part, got {z}"
        )));
    }
    let zp = z - 1.0;
    let t = zp + LANCZOS_G + 0.5;
    let mut series = C64::new(LANCZOS_C[0], 0.0);
    for (k, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        series += c / (zp + k as f64);
    }
    Ok(0.5 * LN_TWO_PI + (zp + 0.5) * t.ln() - t + series.ln())
}

/// The orbit Dirichlet series `sum over m >= 1 of x^m m^{s-1}` for
/// `|x| < 1`, summed with compensation until the terms are negligible.
pub fn orbit_dirichlet_sum(s: C64, x: C64, policy: &PrecisionPolicy) -> Result<C64> {
    let modulus = x.norm();
    if modulus >= 1.0 {
        return Err(Error::domain(format!(
            "orbit Dirichlet series needs |x| < 1, got |x| = {modulus}"
        )));
    }
    if modulus == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let mut sum = Kahan::default();
    let mut x_pow = C64::new(1.0, 0.0);
    let mut quiet_run = 0;
    for m in 1..=10_000_000u32 {
        x_pow *= x;
        let term = x_pow * cpow(C64::new(m as f64, 0.0), s - 1.0);
        sum.add(term);
        if term.norm() <= policy.series_tol * (sum.value().norm() + 1.0) {
            quiet_run += 1;
            if quiet_run >= 3 {
                return Ok(sum.value());
            }
        } else {
            quiet_run = 0;
        }
    }
    Err(Error::numerical(
        "orbit Dirichlet series did not converge within the term budget",
    ))
}
