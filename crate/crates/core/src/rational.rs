//! Exact rational scalars.
//!
//! `Rational` is the coefficient field: arbitrary-precision, always reduced,
//! denominator positive, zero stored as 0/1. `num_rational::BigRational`
//! maintains exactly those invariants, so we use it directly.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact string form: "7", "-1/2". Round-trips through [`parse_rational`].
pub fn format_exact(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `digits`-digit decimal rendering, truncated toward zero and marked
/// approximate unless the expansion is exact.
pub fn format_decimal(x: &Rational, digits: usize) -> String {
    let neg = x.is_negative();
    let num = x.numer().abs();
    let den = x.denom().clone();
    let int_part = &num / &den;
    let mut rem = &num % &den;
    let mut frac = String::with_capacity(digits);
    for _ in 0..digits {
        if rem.is_zero() {
            break;
        }
        rem *= 10;
        frac.push_str(&(&rem / &den).to_string());
        rem %= &den;
    }
    let exact = rem.is_zero();
    let sign = if neg { "-" } else { "" };
    let body = if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    };
    if exact {
        body
    } else {
        format!("~{body}")
    }
}

/// Parses "7", "-3/4", "+1/2". Whitespace is not accepted.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Total bit size of the reduced representation; used by iteration size caps.
pub fn bit_size(x: &Rational) -> u64 {
    biguint_bits(x.numer().magnitude()) + biguint_bits(x.denom().magnitude())
}

fn biguint_bits(x: &BigUint) -> u64 {
    x.bits()
}

/// Signed integer from a residue in `[0, modulus)`, mapping the upper half to
/// negative values.
pub fn symmetric_residue(residue: BigUint, modulus: &BigUint) -> BigInt {
    if &residue * 2u32 >= *modulus {
        BigInt::from_biguint(Sign::Minus, modulus - residue)
    } else {
        BigInt::from_biguint(Sign::Plus, residue)
    }
}
