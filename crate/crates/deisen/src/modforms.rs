//! Eisenstein series, the discriminant form, and the normalized Hecke
//! eigenforms of the weights with a one-dimensional cusp space.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::Error;
use crate::qseries::{qs_pow, QSeries};
use crate::rat::{divisor_sigma, factorial, zeta_tilde_even, Rat};
use crate::zetapoly::{zeta_symbol, ZetaPoly};

/// The even weights k >= 12 with dim S_k = 1; exactly where the normalized
/// eigenform has rational (in fact integral) coefficients.
pub const SUPPORTED_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

pub fn is_supported_weight(k: u32) -> bool {
    SUPPORTED_WEIGHTS.contains(&k)
}

pub fn require_supported_weight(k: u32) -> Result<(), Error> {
    if is_supported_weight(k) {
        Ok(())
    } else {
        Err(Error::UnsupportedWeight { weight: k, supported: &SUPPORTED_WEIGHTS })
    }
}

/// G_k(q) = zeta~(k) + ((-1)^k/(k-1)!) sum_n sigma_{k-1}(n) q^n.
pub fn eisenstein(k: u32, order: usize) -> Result<QSeries, Error> {
    if k < 1 {
        return Err(Error::Domain(format!("eisenstein requires k >= 1, got {k}")));
    }
    let mut s = QSeries::constant(zeta_symbol(k)?, order);
    let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let fact = factorial(k - 1);
    for n in 1..=order {
        let sigma = divisor_sigma(k - 1, n as u64)?;
        let c = Rat::new(&sign * sigma, fact.clone());
        s.set_coeff(n, ZetaPoly::from_rat(c));
    }
    Ok(s)
}

/// Delta(q) = q prod_{n>0} (1 - q^n)^24, the normalized cusp form of
/// weight 12. Symbol-free with integer coefficients.
pub fn delta(order: usize) -> QSeries {
    let mut euler = QSeries::constant(ZetaPoly::one(), order);
    for n in 1..=order {
        // multiply by (1 - q^n) in place
        let shifted = euler.shift(n);
        euler = euler.sub(&shifted);
    }
    qs_pow(&euler, 24).shift(1)
}

/// The normalized Hecke eigenform of a supported weight k, built as
/// Delta * E_{k-12} with E_m = G_m / beta_m (and E_0 = 1).
pub fn eigenform(k: u32, order: usize) -> Result<QSeries, Error> {
    require_supported_weight(k)?;
    let d = delta(order);
    let m = k - 12;
    if m == 0 {
        return Ok(d);
    }
    let e = eisenstein(m, order)?.scale_rat(&zeta_tilde_even(m)?.recip());
    Ok(d.mul(&e))
}

/// The Hecke operator T_p on a cuspidal q-series of weight k: the n-th
/// coefficient of T_p f is a(pn) + p^{k-1} a(n/p), the second term only
/// when p divides n. The result is truncated at floor(order/p).
pub fn hecke_tp(f: &QSeries, p: u64, k: u32) -> Result<QSeries, Error> {
    if !f.coeff(0).is_zero() {
        return Err(Error::NonCuspidal);
    }
    let out_order = f.order() / p as usize;
    let pk = BigRational::from_integer(BigInt::from(p).pow(k - 1));
    let mut out = QSeries::zero(out_order);
    for n in 1..=out_order {
        let mut c = f.coeff(n * p as usize).clone();
        if n % p as usize == 0 {
            c = &c + &f.coeff(n / p as usize).scale(&pk);
        }
        out.set_coeff(n, c);
    }
    Ok(out)
}

/// First coefficient of T_p f when f is an eigenform: the Hecke eigenvalue a(p).
pub fn hecke_eigenvalue(f: &QSeries, p: u64) -> Result<Rat, Error> {
    f.rational_coeff(p as usize)
}

/// Checks that every coefficient of a symbol-free series is an integer.
pub fn has_integer_coeffs(f: &QSeries) -> bool {
    f.coeffs().iter().all(|c| {
        c.is_rational() && c.rational_part().denom().abs() == BigInt::one()
    })
}
