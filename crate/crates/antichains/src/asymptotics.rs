//! Exact-rational evaluation of the asymptotic constant
//! `g(n) = lim_{m->inf} S(m,n)/m^(n-1)` and generation of convergence data.
//!
//! Everything here stays in exact rationals. The published decimal table for
//! `g(n)` was evidently produced in machine floating point and its printed
//! digits drift from the exact values from `n = 8` on (severely by `n = 100`,
//! where cancellation in the alternating sums costs most of the mantissa);
//! this module reports the exact values. See the tests for the
//! interpolation oracle that settles the disagreement.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::closed_forms::sander_homogeneous;
use crate::numeric::{decimal_expansion, factorial, ExactRational};
use crate::{Error, Result};

/// One sample of the convergence of `S(m,n)/m^(n-1)` toward `g(n)`.
#[derive(Debug, Clone)]
pub struct ConvergencePoint {
    pub m: u32,
    /// `S(m,n) / m^(n-1)`, exact.
    pub ratio: ExactRational,
    /// `|ratio - g(n)|`, exact.
    pub deviation: ExactRational,
}

fn half(k: i64) -> ExactRational {
    ExactRational::new(BigInt::from(k), BigInt::from(2))
}

/// Exact value of `g(n)` for `n >= 2`.
///
/// Even `n`: `1 - 2 sum_{j=0}^{(n-4)/2} sum_{i=0}^{j} (-1)^i
/// ((1+j-i)^(n-1) - (j-i)^(n-1)) / (i!(n-1-i)!)`. Odd `n` adds a trailing
/// sum over half-integer bases `(n/2 - 1 - i)` and `((n-3)/2 - i)`,
/// evaluated as exact rationals. Empty sums at the `n = 2, 3` boundary
/// contribute nothing.
pub fn g_exact(n: u32) -> Result<ExactRational> {
    if n < 2 {
        return Err(Error::UnsupportedParameter(format!(
            "g(n) is defined for n >= 2, got n={n}"
        )));
    }
    let n = n as i64;
    let fact: Vec<BigInt> = (0..n).map(|k| factorial(k as u64)).collect();
    let power = (n - 1) as i32;

    let mut acc = ExactRational::one();

    let j_max = if n % 2 == 0 { (n - 4) / 2 } else { (n - 5) / 2 };
    let mut inner = ExactRational::zero();
    for j in 0..=j_max {
        for i in 0..=j {
            let hi = ExactRational::from(BigInt::from(1 + j - i)).pow(power);
            let lo = ExactRational::from(BigInt::from(j - i)).pow(power);
            let denom = &fact[i as usize] * &fact[(n - 1 - i) as usize];
            let term = (hi - lo) / ExactRational::from(denom);
            if i % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
    }
    acc -= ExactRational::from(BigInt::from(2)) * inner;

    if n % 2 != 0 {
        let mut trailing = ExactRational::zero();
        for i in 0..=(n - 3) / 2 {
            let hi = half(n - 2 - 2 * i).pow(power);
            let lo = half(n - 3 - 2 * i).pow(power);
            let denom = &fact[i as usize] * &fact[(n - 1 - i) as usize];
            let term = (hi - lo) / ExactRational::from(denom);
            if i % 2 == 0 {
                trailing += term;
            } else {
                trailing -= term;
            }
        }
        acc -= ExactRational::from(BigInt::from(2)) * trailing;
    }
    Ok(acc)
}

/// `g(n)` rendered at `digits` significant digits.
pub fn g_decimal(n: u32, digits: usize) -> Result<String> {
    Ok(decimal_expansion(&g_exact(n)?, digits))
}

/// For each `m`, the exact ratio `S(m,n)/m^(n-1)` and its deviation from
/// `g(n)`. Output order follows input order.
pub fn convergence_series(n: u32, m_values: &[u32]) -> Result<Vec<ConvergencePoint>> {
    let g = g_exact(n)?;
    m_values
        .iter()
        .map(|&m| {
            if m < 2 {
                return Err(Error::UnsupportedParameter(format!(
                    "convergence series requires m >= 2, got m={m}"
                )));
            }
            let s = sander_homogeneous(m, n)?;
            let ratio = ExactRational::new(s, BigInt::from(m).pow(n - 1));
            let deviation = (&ratio - &g).abs();
            Ok(ConvergencePoint { m, ratio, deviation })
        })
        .collect()
}

/// Writes the convergence CSV:
/// `m,log2_m,ratio_decimal,g_decimal,deviation_decimal`.
pub fn write_convergence_csv<W: Write>(
    out: &mut W,
    n: u32,
    points: &[ConvergencePoint],
    digits: usize,
) -> std::io::Result<()> {
    let g = g_exact(n).expect("caller validated n");
    writeln!(out, "m,log2_m,ratio_decimal,g_decimal,deviation_decimal")?;
    let g_str = decimal_expansion(&g, digits);
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{}",
            p.m,
            format_log2(p.m),
            decimal_expansion(&p.ratio, digits),
            g_str,
            decimal_expansion(&p.deviation, digits),
        )?;
    }
    Ok(())
}

fn format_log2(m: u32) -> String {
    if m.is_power_of_two() {
        m.trailing_zeros().to_string()
    } else {
        format!("{:.6}", (m as f64).log2())
    }
}
