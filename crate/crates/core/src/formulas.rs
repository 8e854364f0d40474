//! Closed-form counts as exact integer evaluations at a given `q`.
//!
//! Every function takes `q` as a plain integer `>= 2` so identities can be
//! checked at non-prime-power values too. Quotients of q-polynomials are
//! evaluated as exact divisions; a nonzero remainder panics, since it can
//! only come from a wrong formula.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub type QInt = BigUint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("width must be at least 1, got {0}")]
    InvalidWidth(usize),
    #[error("signed configuration counts need even n, got {0}")]
    OddN(usize),
    #[error("n must be at least 2, got {0}")]
    TooSmall(usize),
}

fn big(q: u64) -> BigUint {
    BigUint::from(q)
}

fn exact_div(num: &BigUint, den: &BigUint) -> BigUint {
    let (quo, rem) = num.div_rem(den);
    assert!(rem.is_zero(), "{num} is not divisible by {den}");
    quo
}

/// `[m]_Q = 1 + Q + ... + Q^{m-1}`.
pub fn q_int(m: u32, base: u64) -> QInt {
    let b = big(base);
    let mut acc = BigUint::zero();
    let mut pw = BigUint::one();
    for _ in 0..m {
        acc += &pw;
        pw *= &b;
    }
    acc
}

/// `C(m, 2)_q = (q^m - 1)(q^{m-1} - 1) / ((q - 1)(q^2 - 1))`.
pub fn q_binom2(m: u32, q: u64) -> QInt {
    if m < 2 {
        return QInt::zero();
    }
    let one = BigUint::one();
    let qb = big(q);
    let num = (qb.pow(m) - &one) * (qb.pow(m - 1) - &one);
    let den = (&qb - &one) * (qb.pow(2) - &one);
    exact_div(&num, &den)
}

/// Number of tame friezes of width `w` over `F_q`.
///
/// Even `w = 2m - 2` gives `[m]_{q^2}`. Odd `w = 2m - 3` gives
/// `(q - 1) C(m, 2)_q`, plus `q^{m-1}` unless the characteristic is odd and
/// `m` is even.
pub fn count_friezes(q: u64, char_is_2: bool, w: usize) -> Result<QInt, FormulaError> {
    if w < 1 {
        return Err(FormulaError::InvalidWidth(w));
    }
    if w.is_multiple_of(2) {
        let m = (w + 2) / 2;
        return Ok(q_int(m as u32, q * q));
    }
    let m = ((w + 3) / 2) as u32;
    let base = big(q - 1) * q_binom2(m, q);
    if !char_is_2 && m.is_multiple_of(2) {
        Ok(base)
    } else {
        Ok(base + big(q).pow(m - 1))
    }
}

/// `c_n = q^n + (-1)^n q`, the number of n-point configurations on `P^1(F_q)`
/// with no two cyclically adjacent points equal.
pub fn count_configurations(q: u64, n: usize) -> QInt {
    let qn = big(q).pow(n as u32);
    if n.is_multiple_of(2) {
        qn + big(q)
    } else {
        qn - big(q)
    }
}

/// Checks `c_{n+2} = (q - 1) c_{n+1} + q c_n` on the closed form.
pub fn configuration_recursion_holds(q: u64, n: usize) -> bool {
    count_configurations(q, n + 2)
        == big(q - 1) * count_configurations(q, n + 1) + big(q) * count_configurations(q, n)
}

/// Points of the completed moduli space of `n >= 2` points on `P^1(F_q)`:
/// `[m]_{q^2}` for `n = 2m + 1`, `1 + q [m - 1]_{q^2}` for `n = 2m`.
pub fn count_moduli(q: u64, n: usize) -> Result<QInt, FormulaError> {
    if n < 2 {
        return Err(FormulaError::TooSmall(n));
    }
    let m = (n / 2) as u32;
    if n % 2 == 1 {
        Ok(q_int(m, q * q))
    } else {
        Ok(BigUint::one() + big(q) * q_int(m - 1, q * q))
    }
}

/// Orbit count derived from `c_n`: every orbit of a configuration with three
/// distinct points has `q^3 - q` elements, and for even `n` the alternating
/// configurations form one extra orbit of size `q(q + 1)`.
pub fn moduli_from_configurations(q: u64, n: usize) -> QInt {
    let group = big(q * q * q - q);
    let cn = count_configurations(q, n);
    if n % 2 == 1 {
        exact_div(&cn, &group)
    } else {
        exact_div(&(cn - big(q * (q + 1))), &group) + BigUint::one()
    }
}

/// `(c_n^+, c_n^-)` for even `n`, from `c_n^{+-} = c_{n-1} + q c_{n-2}^{-+}`
/// with `c_2^+ = q(q + 1)` and `c_2^- = 0` (or `q(q + 1)` in characteristic 2).
pub fn count_signed_configurations(
    q: u64,
    char_is_2: bool,
    n: usize,
) -> Result<(QInt, QInt), FormulaError> {
    if n % 2 == 1 {
        return Err(FormulaError::OddN(n));
    }
    if n < 2 {
        return Err(FormulaError::TooSmall(n));
    }
    let c2 = big(q * (q + 1));
    let mut plus = c2.clone();
    let mut minus = if char_is_2 { c2 } else { BigUint::zero() };
    for k in (4..=n).step_by(2) {
        let c_odd = count_configurations(q, k - 1);
        let next_plus = &c_odd + big(q) * &minus;
        let next_minus = &c_odd + big(q) * &plus;
        plus = next_plus;
        minus = next_minus;
    }
    Ok((plus, minus))
}

/// `sum_{k=1}^{m-1} q^{k-1} [m - k]_{q^2}`.
pub fn moduli_plus_sum_form(q: u64, m: u32) -> QInt {
    (1..m)
        .map(|k| big(q).pow(k - 1) * q_int(m - k, q * q))
        .sum()
}

/// Points of `C_{2m}^+ / PGL_2(F_q)`: `C(m, 2)_q` when the characteristic is
/// odd and `m` is even, otherwise `C(m, 2)_q + [m - 1]_q + 1`.
pub fn count_moduli_plus(q: u64, char_is_2: bool, m: u32) -> QInt {
    assert!(m >= 1, "m must be at least 1");
    let binom = q_binom2(m, q);
    assert_eq!(
        moduli_plus_sum_form(q, m),
        binom,
        "sum form disagrees with the q-binomial at q = {q}, m = {m}"
    );
    if !char_is_2 && m.is_multiple_of(2) {
        binom
    } else {
        binom + q_int(m - 1, q) + BigUint::one()
    }
}

/// `(q - 1) C(m, 2)_q` as odd powers of `q` minus even powers of `q`.
pub fn alternating_power_sum(q: u64, m: u32) -> BigInt {
    let qb = BigInt::from(q);
    let m = m as i64;
    let (pos_low, neg_high) = if m % 2 == 0 {
        (m - 1, m - 2)
    } else {
        (m, m - 3)
    };
    let mut total = BigInt::zero();
    let mut e = 2 * m - 3;
    while e >= pos_low && e >= 0 {
        total += qb.pow(e as u32);
        e -= 2;
    }
    let mut e = neg_high;
    while e >= 0 {
        total -= qb.pow(e as u32);
        e -= 2;
    }
    total
}
