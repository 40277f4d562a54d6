//! Exact rational scalars and the few high-precision numerics built on them.
//!
//! Everything exact in this crate is carried by [`Rational`]
//! (arbitrary-precision, always reduced, positive denominator). The
//! high-precision helpers here (`rational_sqrt`, `pi_rational`, decimal
//! formatting) stay inside rational arithmetic so that published constants
//! can be rounded safely at any requested number of digits.

use num::bigint::BigInt;
use num::traits::{Signed, ToPrimitive, Zero};

pub type Rational = num::BigRational;

/// `p/q` as an exact rational. Panics on `q = 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as an exact rational.
pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// First 80 significant digits of pi (one integer digit, 79 decimals).
const PI_DIGITS: &str =
    "31415926535897932384626433832795028841971693993751058209749445923078164062862089";

/// Pi as a rational accurate to 79 decimal digits.
pub fn pi_rational() -> Rational {
    let num: BigInt = PI_DIGITS.parse().expect("pi digit literal");
    let den = BigInt::from(10u32).pow(PI_DIGITS.len() as u32 - 1);
    Rational::new(num, den)
}

/// Square root of a non-negative rational, accurate to `digits` decimal
/// digits, computed with integer square roots only.
pub fn rational_sqrt(x: &Rational, digits: u32) -> Rational {
    assert!(!x.is_negative(), "rational_sqrt of negative value");
    if x.is_zero() {
        return Rational::zero();
    }
    // sqrt(p/q) = isqrt(p*q*10^(2d)) / (q*10^d)
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = x.numer() * x.denom() * scale.pow(2);
    Rational::new(scaled.sqrt(), x.denom() * scale)
}

/// Round a rational to `sig` significant digits and print it in plain or
/// scientific decimal notation. Exact integer arithmetic throughout, so the
/// output is stable and rounding-safe.
pub fn to_decimal_string(x: &Rational, sig: usize) -> String {
    assert!(sig > 0);
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let ax = x.abs();

    // Decimal exponent e with 10^e <= ax < 10^(e+1).
    let mut e = ax.numer().to_string().len() as i64 - ax.denom().to_string().len() as i64;
    let pow10 = |k: i64| -> Rational {
        let p = BigInt::from(10u32).pow(k.unsigned_abs() as u32);
        if k >= 0 {
            Rational::from_integer(p)
        } else {
            Rational::new(BigInt::from(1), p)
        }
    };
    if ax < pow10(e) {
        e -= 1;
    } else if ax >= pow10(e + 1) {
        e += 1;
    }

    // Mantissa digits: round ax * 10^(sig-1-e) to nearest (half away from zero).
    let scaled = &ax * pow10(sig as i64 - 1 - e);
    let mut mant: BigInt = (scaled.numer() * 2 + scaled.denom()) / (scaled.denom() * 2);
    let mut digits = mant.to_string();
    if digits.len() > sig {
        // Rounding carried over (e.g. 9.99 -> 10.0): drop the extra digit.
        mant /= BigInt::from(10);
        digits = mant.to_string();
        e += 1;
    }
    debug_assert_eq!(digits.len(), sig);

    let body = if (-4..=14).contains(&e) {
        if e >= 0 {
            let e = e as usize;
            if e + 1 >= digits.len() {
                let zeros = "0".repeat(e + 1 - digits.len());
                format!("{digits}{zeros}")
            } else {
                let s = format!("{}.{}", &digits[..e + 1], &digits[e + 1..]);
                trim_zeros(s)
            }
        } else {
            let zeros = "0".repeat((-e - 1) as usize);
            trim_zeros(format!("0.{zeros}{digits}"))
        }
    } else {
        let head = &digits[..1];
        let tail = trim_zeros(format!("0.{}", &digits[1..]));
        let tail = tail.strip_prefix("0").unwrap_or(&tail);
        format!("{head}{tail}e{e}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0');
    t.trim_end_matches('.').to_string()
}

/// Format a float at `sig` significant digits through the exact decimal
/// path (stable, locale-free, no trailing noise digits).
pub fn format_f64(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    match Rational::from_float(x) {
        Some(r) => to_decimal_string(&r, sig),
        None => "nan".to_string(),
    }
}
