//! Exact rational scalars and the combinatorial numbers used throughout:
//! Bernoulli numbers, binomial coefficients, factorials and divisor sums.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// The base scalar of the whole crate: an arbitrary-precision rational,
/// always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// n! as a big integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient with the out-of-range-is-zero convention:
/// `binom(n, k) = 0` for `k < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> Rat {
    if k < 0 || k > n || n < 0 {
        return Rat::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    Rat::new(num, den)
}

/// Bernoulli number B_n with the convention B_1 = -1/2, via the standard
/// recurrence B_n = -(1/(n+1)) * sum_{j<n} C(n+1, j) B_j.
pub fn bernoulli(n: u32) -> Rat {
    let mut b: Vec<Rat> = Vec::with_capacity(n as usize + 1);
    for m in 0..=n {
        let mut acc = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += binom(m as i64 + 1, j as i64) * bj;
        }
        let bm = if m == 0 {
            Rat::one()
        } else {
            -acc / rat_int(m as i64 + 1)
        };
        b.push(bm);
    }
    b.pop().unwrap()
}

/// Bernoulli numbers by the Akiyama–Tanigawa algorithm; an independent
/// route used only as a cross-check oracle in tests.
pub fn bernoulli_akiyama_tanigawa(n: u32) -> Rat {
    let n = n as usize;
    let mut row: Vec<Rat> = vec![Rat::zero(); n + 1];
    for m in 0..=n {
        row[m] = Rat::new(BigInt::one(), BigInt::from(m as i64 + 1));
        for j in (1..=m).rev() {
            let diff = row[j - 1].clone() - row[j].clone();
            row[j - 1] = rat_int(j as i64) * diff;
        }
    }
    // Akiyama-Tanigawa yields B_n with B_1 = +1/2; flip to match B_1 = -1/2.
    if n == 1 {
        -row[0].clone()
    } else {
        row[0].clone()
    }
}

/// beta_k = zeta~(k) = -B_k / (2 * k!) for even k >= 2, the rational value
/// of the normalized even zeta.
pub fn zeta_tilde_even(k: u32) -> Result<Rat, Error> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::Domain(format!(
            "zeta_tilde_even requires even k >= 2, got {k}"
        )));
    }
    Ok(-bernoulli(k) / (Rat::from_integer(BigInt::from(2)) * factorial(k)))
}

/// sigma_m(n) = sum of d^m over divisors d of n.
pub fn divisor_sigma(m: u32, n: u64) -> Result<BigInt, Error> {
    if n < 1 {
        return Err(Error::Domain(format!("divisor_sigma requires n >= 1, got {n}")));
    }
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            acc += BigInt::from(d).pow(m);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(m);
            }
        }
        d += 1;
    }
    Ok(acc)
}

/// Formats a rational as "p/q", or just "p" when the denominator is 1.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Least common multiple of two positive big integers.
pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

/// Prime factors of |n| by trial division, without multiplicity.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n = &n / &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Inverse of a modulo p (p prime, a not divisible by p).
pub fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = ((a % p) + p) % p;
    if a.is_zero() {
        return None;
    }
    // extended Euclid
    let (mut r0, mut r1) = (p.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_one() {
        Some(((t0 % p) + p) % p)
    } else {
        None
    }
}

/// Residue of a rational modulo a prime p, provided its denominator is
/// p-integral. Returns None when the denominator is divisible by p.
pub fn rat_mod_p(x: &Rat, p: &BigInt) -> Option<BigInt> {
    let inv = mod_inverse(x.denom(), p)?;
    Some((((x.numer() * inv) % p) + p) % p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_base_cases() {
        assert_eq!(bernoulli(0), rat_int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(3), Rat::zero());
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_odd_vanishes() {
        for n in (3..=29).step_by(2) {
            assert_eq!(bernoulli(n), Rat::zero(), "B_{n} should vanish");
        }
    }

    #[test]
    fn bernoulli_matches_akiyama_tanigawa() {
        for n in 0..=24 {
            assert_eq!(
                bernoulli(n),
                bernoulli_akiyama_tanigawa(n),
                "B_{n} mismatch between recurrence and Akiyama-Tanigawa"
            );
        }
    }

    #[test]
    fn zeta_tilde_even_values() {
        assert_eq!(zeta_tilde_even(2).unwrap(), rat(-1, 24));
        assert_eq!(zeta_tilde_even(4).unwrap(), rat(1, 1440));
        let b12 = rat(-691, 2730);
        let expect = rat(-1, 2) * b12 / Rat::from_integer(factorial(12));
        assert_eq!(zeta_tilde_even(12).unwrap(), expect);
        assert!(zeta_tilde_even(3).is_err());
        assert!(zeta_tilde_even(0).is_err());
    }

    #[test]
    fn zeta_tilde_even_formula_range() {
        for k in (2..=30).step_by(2) {
            let expect = -bernoulli(k) / (rat_int(2) * Rat::from_integer(factorial(k)));
            assert_eq!(zeta_tilde_even(k).unwrap(), expect);
        }
    }

    #[test]
    fn binom_values() {
        assert_eq!(binom(8, 2), rat_int(28));
        assert_eq!(binom(8, 10), Rat::zero());
        assert_eq!(binom(0, 0), rat_int(1));
        assert_eq!(binom(5, -1), Rat::zero());
    }

    #[test]
    fn binom_pascal() {
        for n in 1..=30i64 {
            for k in 0..=n {
                assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
            }
        }
    }

    #[test]
    fn divisor_sigma_values() {
        assert_eq!(divisor_sigma(3, 2).unwrap(), BigInt::from(9));
        assert_eq!(divisor_sigma(0, 6).unwrap(), BigInt::from(4));
        assert_eq!(divisor_sigma(11, 1).unwrap(), BigInt::from(1));
        assert!(divisor_sigma(1, 0).is_err());
    }

    #[test]
    fn mod_arith() {
        let p = BigInt::from(691);
        let x = rat(22680, 1);
        assert_eq!(rat_mod_p(&x, &p).unwrap(), BigInt::from(568));
        let y = rat(13006, 22680);
        // denominator 22680 is invertible mod 691
        assert!(rat_mod_p(&y, &p).is_some());
        let z = rat(1, 691);
        assert!(rat_mod_p(&z, &p).is_none());
    }

    #[test]
    fn prime_factors_bernoulli_numerators() {
        let b20 = bernoulli(20);
        let fs = prime_factors(b20.numer());
        assert!(fs.contains(&BigInt::from(283)));
        assert!(fs.contains(&BigInt::from(617)));
    }
}
