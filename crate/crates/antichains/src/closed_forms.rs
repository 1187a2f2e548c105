//! Closed-form expressions for the size of the largest antichain, each
//! independently evaluable so they can be cross-checked against one another
//! and against the enumeration oracles.
//!
//! Two of the published formulas carry defects that the oracles expose:
//! the heterogeneous subset sum must use a non-strict bound (`m_I <= h-n`),
//! and the odd-parity trailing sum of the two-sided formula needs its rank
//! argument shifted. Both the corrected and the literal evaluations are
//! available; see [`Eq5Mode`].

use num_bigint::BigInt;
use num_traits::Zero;

use crate::numeric::{binomial, decimal_expansion, isqrt, pi_fixed, ExactInteger, ExactRational};
use crate::rank::{median_rank, signed_subset_sums, ShapeVector};
use crate::{Error, Result};

/// Sander's single-sum formula for the homogeneous product `[m]^n`:
/// `S(m,n) = sum_j (-1)^j C(n,j) C(n-1+g-mj, n-1)` with `g = floor(n(m-1)/2)`.
pub fn sander_homogeneous(m: u32, n: u32) -> Result<ExactInteger> {
    if m < 1 || n < 1 {
        return Err(Error::UnsupportedParameter(format!(
            "sander_homogeneous requires m >= 1 and n >= 1, got m={m}, n={n}"
        )));
    }
    let (m, n) = (m as i64, n as i64);
    let g = n * (m - 1) / 2;
    let mut acc = BigInt::zero();
    for j in 0..=g / m {
        let term = binomial(n, j) * binomial(n - 1 + g - m * j, n - 1);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Largest antichain of a heterogeneous chain product:
/// `s(shape) = sum_{I: m_I <= h-n} (-1)^|I| C(h - m_I - 1, n-1)` with
/// `h` the median rank.
///
/// The bound is deliberately non-strict. With a strict bound the boundary
/// subset `m_I = h-n` is dropped and shapes such as `(1,3)` come out wrong
/// (2 instead of the true 1); the enumeration oracle settles the question.
/// Subsets are grouped by their sum over distinct chain lengths, so shapes
/// with many equal entries stay cheap.
pub fn hetero_largest_antichain(shape: &ShapeVector) -> ExactInteger {
    hetero_sum(shape, false)
}

/// Same sum with the strict bound `m_I < h-n`, as printed in the published
/// statement. Kept only as evidence: it drops the boundary subset and
/// disagrees with brute force on shapes like `(1,3)`.
pub fn hetero_largest_antichain_strict(shape: &ShapeVector) -> ExactInteger {
    hetero_sum(shape, true)
}

fn hetero_sum(shape: &ShapeVector, strict: bool) -> ExactInteger {
    let n = shape.n() as i64;
    let h = median_rank(shape);
    let bound = if strict { h - n - 1 } else { h - n };
    signed_subset_sums(shape)
        .range(..=bound)
        .map(|(t, w)| w * binomial(h - t - 1, n - 1))
        .sum()
}

/// How to evaluate the trailing sum of the odd-parity case of the
/// two-sided homogeneous formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eq5Mode {
    /// Trailing term taken as the count of `(n-1)`-tuples at rank `h - m`,
    /// i.e. the printed sum with `h` replaced by `h - m` throughout. This
    /// agrees with the reflection argument and with brute force.
    Corrected,
    /// Trailing sum exactly as printed (rank argument `h - im`, upper limit
    /// `floor((h-m-n+1)/(m-1))`). Disagrees with brute force, e.g. gives 1
    /// instead of 3 at `(m,n) = (2,3)`; kept for documentation.
    PaperLiteral,
}

/// `|A_r|`: tuples in `[m]^(n-1)` with coordinate sum `r`.
fn homogeneous_slice_count(m: i64, n: i64, r: i64) -> ExactInteger {
    let mut acc = BigInt::zero();
    let mut i = 0;
    while i * (m - 1) <= r - n + 1 {
        let term = binomial(n - 1, i) * binomial(r - i * m - 1, r - i * m - n + 1);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        i += 1;
    }
    acc
}

/// Two-sided homogeneous formula: `S(m,n) = m^(n-1) - 2 * sum_{r=n-1}^{h-m-1} |A_r|`
/// when `n(m+1)` is even, with an extra boundary term when `n(m+1)` is odd.
pub fn theorem2_homogeneous(m: u32, n: u32, mode: Eq5Mode) -> Result<ExactInteger> {
    if m < 2 {
        return Err(Error::UnsupportedParameter(format!(
            "theorem2_homogeneous requires m >= 2 (inner limits divide by m-1), got m={m}"
        )));
    }
    if n < 2 {
        return Err(Error::UnsupportedParameter(format!(
            "theorem2_homogeneous requires n >= 2, got n={n}"
        )));
    }
    let (m, n) = (m as i64, n as i64);
    let h = n * (m + 1) / 2;
    let mut acc = BigInt::from(m).pow(n as u32 - 1);
    for r in n - 1..=h - m - 1 {
        acc -= BigInt::from(2) * homogeneous_slice_count(m, n, r);
    }
    if n * (m + 1) % 2 != 0 {
        match mode {
            Eq5Mode::Corrected => {
                acc -= homogeneous_slice_count(m, n, h - m);
            }
            Eq5Mode::PaperLiteral => {
                let mut trailing = BigInt::zero();
                for i in 0..=(h - m - n + 1) / (m - 1) {
                    let term =
                        binomial(n - 1, i) * binomial(h - i * m - 1, h - i * m - n + 1);
                    if i % 2 == 0 {
                        trailing += term;
                    } else {
                        trailing -= term;
                    }
                }
                acc -= trailing;
            }
        }
    }
    Ok(acc)
}

/// The `n <= 4` specializations: `S(m,2) = m`, `S(m,3) = 3m^2/4` (even `m`)
/// or `(3m^2+1)/4` (odd `m`), `S(m,4) = (2m^3+m)/3`. All divisions exact.
pub fn corollary_small_n(m: u32, n: u32) -> Result<ExactInteger> {
    if m < 1 {
        return Err(Error::UnsupportedParameter("corollary requires m >= 1".into()));
    }
    let mb = BigInt::from(m);
    match n {
        2 => Ok(mb),
        3 => {
            let sq = &mb * &mb * BigInt::from(3);
            if m.is_multiple_of(2) {
                Ok(sq / BigInt::from(4))
            } else {
                Ok((sq + 1) / BigInt::from(4))
            }
        }
        4 => Ok((BigInt::from(2) * &mb * &mb * &mb + &mb) / BigInt::from(3)),
        _ => Err(Error::UnsupportedParameter(format!(
            "corollary_small_n is defined for n in {{2,3,4}}, got n={n}"
        ))),
    }
}

/// Sperner's theorem for the Boolean cube: `S(2,n) = C(n, floor(n/2))`.
pub fn sperner_binary(n: u32) -> Result<ExactInteger> {
    if n < 1 {
        return Err(Error::UnsupportedParameter("sperner_binary requires n >= 1".into()));
    }
    Ok(binomial(n as i64, n as i64 / 2))
}

/// High-precision value of the Stirling approximation `2^n sqrt(2/(pi n))`,
/// as an exact rational `N / 10^d` carrying `working_digits` decimal places
/// (plus 30 guard digits internally).
pub fn sperner_approximation_value(n: u32, working_digits: u64) -> Result<ExactRational> {
    if n < 1 {
        return Err(Error::UnsupportedParameter(
            "sperner_approximation requires n >= 1".into(),
        ));
    }
    let d = working_digits + 30;
    let pi_scale = d;
    let pi = pi_fixed(pi_scale);
    // value^2 = 4^n * 2 / (pi * n);  value * 10^d = sqrt(4^n * 2 * 10^(pi_scale + 2d) / (pi_fixed * n))
    let numerator = BigInt::from(4u32).pow(n) * BigInt::from(2u32)
        * BigInt::from(10u32).pow((pi_scale + 2 * d) as u32);
    let scaled = isqrt(&(numerator / (pi * BigInt::from(n))));
    Ok(ExactRational::new(scaled, BigInt::from(10u32).pow(d as u32)))
}

/// Decimal rendering of the Stirling approximation at `digits` significant
/// digits (round-half-even, like every decimal emitted by this crate).
pub fn sperner_approximation(n: u32, digits: usize) -> Result<String> {
    let v = sperner_approximation_value(n, digits as u64)?;
    Ok(decimal_expansion(&v, digits))
}
