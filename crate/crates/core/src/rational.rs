//! Exact rational arithmetic helpers.
//!
//! All combinatorial quantities (periods, holonomy phases, frequencies) are
//! kept as arbitrary-precision rationals so that line coincidences and mod-1
//! phase reductions are decided exactly, never by floating-point comparison.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The rational number type used throughout the crate.
pub type Rat = BigRational;

/// Largest denominator accepted when converting a decimal literal to an
/// exact rational.
pub const MAX_DECIMAL_DENOMINATOR: u64 = 1_000_000_000_000;

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand constructor for an integer rational.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// Parse a rational from text.
///
/// Accepted forms: `"p/q"` with integer `p`, positive integer `q`;
/// a plain integer `"p"`; or a decimal literal such as `"0.25"` or
/// `"-1.5e-3"`. Decimal literals are converted to the nearest rational
/// with denominator at most 10^12.
pub fn parse_rational(text: &str) -> Result<Rat> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::parse("empty rational literal"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let p: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad numerator in rational {s:?}")))?;
        let q: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad denominator in rational {s:?}")))?;
        if q <= BigInt::zero() {
            return Err(Error::parse(format!(
                "denominator must be positive in rational {s:?}"
            )));
        }
        return Ok(Rat::new(p, q));
    }
    if let Ok(p) = s.parse::<BigInt>() {
        return Ok(Rat::from_integer(p));
    }
    parse_decimal(s)
}

/// Parse a decimal literal (optionally in scientific notation) into an
/// exact rational, rounding to the nearest rational with denominator at
/// most 10^12 when the literal is deeper than that.
pub fn parse_decimal(text: &str) -> Result<Rat> {
    let s = text.trim();
    let bad = || Error::parse(format!("not a rational or decimal literal: {s:?}"));

    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|_| bad())?;
            (m, exp)
        }
        None => (s, 0),
    };

    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }

    let joined = format!("{int_part}{frac_part}");
    let digits_value: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| bad())?
    };
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut value = Rat::from_integer(digits_value * BigInt::from(sign));
    if scale >= 0 {
        value *= Rat::from_integer(ten.pow(scale as u32));
    } else {
        value /= Rat::from_integer(ten.pow((-scale) as u32));
    }
    Ok(limit_denominator(&value, MAX_DECIMAL_DENOMINATOR))
}

/// Best rational approximation with bounded denominator, via the
/// continued-fraction expansion. Returns `x` itself when its denominator
/// already fits.
pub fn limit_denominator(x: &Rat, max_den: u64) -> Rat {
    let bound = BigInt::from(max_den);
    if *x.denom() <= bound {
        return x.clone();
    }
    if x.numer().sign() == num_bigint::Sign::Minus {
        // The convergent recursion below assumes nonnegative partial
        // quotients, so handle the sign outside it.
        return -limit_denominator(&-x, max_den);
    }
    // Convergents p/q of the continued fraction of x, with the final
    // semiconvergent refinement; the best approximation is either the last
    // convergent with denominator within bound or that semiconvergent.
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    loop {
        let a = num.clone() / den.clone();
        let q2 = &q0 + &a * &q1;
        if q2 > bound {
            // Largest k with q0 + k*q1 <= bound gives the semiconvergent.
            let k = (&bound - &q0) / &q1;
            let cand1 = Rat::new(&p0 + &k * &p1, &q0 + &k * &q1);
            let cand2 = Rat::new(p1, q1);
            return if (x - &cand1).abs() < (x - &cand2).abs() {
                cand1
            } else {
                cand2
            };
        }
        let p2 = &p0 + &a * &p1;
        let rem = num - &a * &den;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        if rem.is_zero() {
            return Rat::new(p1, q1);
        }
        num = den;
        den = rem;
    }
}

/// Format a rational in lowest terms, as `"p"` when it is an integer and
/// `"p/q"` otherwise.
pub fn format_rational(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Convert to double precision.
pub fn rat_to_f64(x: &Rat) -> f64 {
    // BigRational::to_f64 handles huge numerators/denominators gracefully.
    x.to_f64().unwrap_or(f64::NAN)
}

/// Fractional part in `[0, 1)`.
pub fn frac_mod_one(x: &Rat) -> Rat {
    let f = x - x.floor();
    debug_assert!(!f.is_negative() && f < Rat::one());
    f
}

/// True when `x` is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}
