//! Arbitrary-precision integer and exact-rational arithmetic plus the
//! combinatorial primitives shared by every other module.
//!
//! Counts are `ExactInteger` (unbounded, no silent overflow anywhere) and
//! ratios are `ExactRational` (always in lowest terms, positive denominator).
//! Both round-trip through plain decimal strings, which is the only integer
//! serialization used by the output formats.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Unbounded signed integer; holds every count in the library.
pub type ExactInteger = BigInt;

/// Exact rational, stored in lowest terms with positive denominator
/// (`num_rational` normalizes on construction).
pub type ExactRational = BigRational;

/// Binomial coefficient `C(a, b)` with the zero-extension convention:
/// the result is 0 whenever `b < 0` or `a < b` (including negative `a`
/// with `b >= 0`). Sums over vanishing terms then self-truncate.
///
/// Computed by the multiplicative formula with running division, which is
/// exact at every step and keeps intermediates no larger than the result.
pub fn binomial(a: i64, b: i64) -> ExactInteger {
    if b < 0 || a < b {
        return BigInt::zero();
    }
    // C(a, b) = C(a, a - b); use the smaller upper index.
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// `k!` as an exact integer.
pub fn factorial(k: u64) -> ExactInteger {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    acc
}

/// Correctly rounded decimal expansion of `q` with `digits` significant
/// digits, round-half-even at the final digit. Plain positional notation,
/// never exponent form.
///
/// Zero is rendered as `0.` followed by `digits` zeros.
pub fn decimal_expansion(q: &ExactRational, digits: usize) -> String {
    assert!(digits >= 1, "digits must be >= 1");
    if q.is_zero() {
        return format!("0.{}", "0".repeat(digits));
    }
    let neg = q.is_negative();
    let num = q.numer().abs();
    let den = q.denom().clone();

    // Decimal exponent e with |q| in [10^e, 10^(e+1)).
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    loop {
        // |q| >= 10^e  <=>  num >= den * 10^e
        let lower_ok = ge_scaled(&num, &den, e);
        let upper_ok = !ge_scaled(&num, &den, e + 1);
        if lower_ok && upper_ok {
            break;
        }
        if !lower_ok {
            e -= 1;
        } else {
            e += 1;
        }
    }

    // Round |q| * 10^(digits - 1 - e) half-even to an integer mantissa.
    let shift = digits as i64 - 1 - e;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (num * pow10(shift as u64), den)
    } else {
        (num, den * pow10((-shift) as u64))
    };
    let (mut mantissa, rem) = scaled_num.div_rem(&scaled_den);
    let twice = &rem * BigInt::from(2);
    if twice > scaled_den || (twice == scaled_den && mantissa.is_odd()) {
        mantissa += 1;
    }
    // Rounding may carry into the next decade (e.g. 0.999... -> 1.00).
    if mantissa == pow10(digits as u64) {
        mantissa = pow10(digits as u64 - 1);
        e += 1;
    }

    let body = render_fixed(&mantissa.to_string(), e, digits);
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// True iff `num >= den * 10^e` (comparing |q| against 10^e).
fn ge_scaled(num: &BigInt, den: &BigInt, e: i64) -> bool {
    if e >= 0 {
        *num >= den * pow10(e as u64)
    } else {
        num * pow10((-e) as u64) >= *den
    }
}

fn pow10(e: u64) -> BigInt {
    BigInt::from(10u32).pow(e.to_u32().expect("decimal exponent overflow"))
}

fn render_fixed(mantissa: &str, e: i64, digits: usize) -> String {
    debug_assert_eq!(mantissa.len(), digits);
    if e < 0 {
        let leading_zeros = (-e - 1) as usize;
        format!("0.{}{}", "0".repeat(leading_zeros), mantissa)
    } else {
        let int_len = (e + 1) as usize;
        if int_len >= digits {
            format!("{}{}", mantissa, "0".repeat(int_len - digits))
        } else {
            format!("{}.{}", &mantissa[..int_len], &mantissa[int_len..])
        }
    }
}

/// Fixed-point approximation of pi as `floor(pi * 10^scale_digits)`,
/// by Machin's formula 4*(4*atan(1/5) - atan(1/239)).
pub(crate) fn pi_fixed(scale_digits: u64) -> BigInt {
    let guard = 10;
    let scale = pow10(scale_digits + guard);
    let pi = (atan_inv_fixed(5, &scale) * 16u32) - (atan_inv_fixed(239, &scale) * 4u32);
    pi / pow10(guard)
}

/// `floor(atan(1/x) * scale)` by the alternating Gregory series.
fn atan_inv_fixed(x: u64, scale: &BigInt) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut term = scale / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        let contrib = &term / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += contrib;
        } else {
            sum -= contrib;
        }
        term /= &x2;
        k += 1;
    }
    sum
}

/// `floor(sqrt(v))` for non-negative `v`, by Newton iteration.
pub(crate) fn isqrt(v: &BigInt) -> BigInt {
    assert!(!v.is_negative());
    if v.is_zero() {
        return BigInt::zero();
    }
    let bits = v.bits();
    let mut x = BigInt::one() << ((bits / 2) + 1);
    loop {
        let next = (&x + v / &x) / BigInt::from(2);
        if next >= x {
            return x;
        }
        x = next;
    }
}
