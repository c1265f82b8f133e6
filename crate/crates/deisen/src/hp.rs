//! High-precision numeric evaluation of zeta values and zeta polynomials.
//!
//! Single zetas and Hurwitz zetas go through Euler-Maclaurin summation;
//! double zetas use a direct outer sum with a Hurwitz-zeta inner tail, and
//! the outer tail is resummed through the asymptotic expansion of the
//! Hurwitz zeta. Everything is carried in complex form because the
//! normalized odd single zetas are purely imaginary.

use std::collections::BTreeMap;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::rat::{binom, rat_int, Rat};
use crate::zetapoly::{Gen, ZetaPoly};

const RM: RoundingMode = RoundingMode::ToEven;

/// a < b for finite BigFloats.
fn bf_lt(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.cmp(b), Some(c) if c < 0)
}

/// A complex number at the context's working precision.
#[derive(Debug, Clone)]
pub struct HPComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

/// Evaluation context: working precision plus caches for constants and
/// previously computed zeta values.
pub struct NumericCtx {
    /// requested precision in decimal digits
    pub prec: u32,
    /// working precision in bits (includes guard bits)
    bits: usize,
    cc: Consts,
    bernoulli: Vec<Rat>,
    /// Euler-Maclaurin shift target: series are pushed out to arguments
    /// >= base_point before the asymptotic expansion is applied
    base_point: u32,
    hurwitz_at_base: BTreeMap<u32, BigFloat>,
    zeta_tilde_cache: BTreeMap<u32, HPComplex>,
    dzeta_tilde_cache: BTreeMap<(u32, u32), HPComplex>,
}

impl NumericCtx {
    pub fn new(prec: u32) -> Self {
        let bits = (prec as usize) * 7 / 2 + 96;
        NumericCtx {
            prec,
            bits,
            cc: Consts::new().expect("constants cache"),
            bernoulli: vec![Rat::from_integer(BigInt::from(1))],
            base_point: prec.max(40),
            hurwitz_at_base: BTreeMap::new(),
            zeta_tilde_cache: BTreeMap::new(),
            dzeta_tilde_cache: BTreeMap::new(),
        }
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_i32(0, self.bits)
    }

    pub fn from_i64(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.bits)
    }

    pub fn from_bigint(&mut self, v: &BigInt) -> BigFloat {
        let (sign, digits) = v.to_radix_be(16);
        let mut s = String::new();
        if sign == Sign::Minus {
            s.push('-');
        }
        if digits.is_empty() {
            return self.zero();
        }
        for d in digits {
            s.push(char::from_digit(d as u32, 16).unwrap());
        }
        BigFloat::parse(&s, Radix::Hex, self.bits, RM, &mut self.cc)
    }

    pub fn from_rat(&mut self, v: &Rat) -> BigFloat {
        let n = self.from_bigint(v.numer());
        let d = self.from_bigint(v.denom());
        n.div(&d, self.bits, RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.bits, RM)
    }

    pub fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(self.bits, RM, &mut self.cc)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn powi(&self, a: &BigFloat, e: usize) -> BigFloat {
        a.powi(e, self.bits, RM)
    }

    /// 10^(-digits), the absolute working epsilon.
    pub fn eps(&mut self, digits: u32) -> BigFloat {
        let one = self.from_i64(1);
        let p = self.powi(&self.from_i64(10), digits as usize);
        one.div(&p, self.bits, RM)
    }

    fn bernoulli_rat(&mut self, n: usize) -> Rat {
        while self.bernoulli.len() <= n {
            let m = self.bernoulli.len();
            let mut acc = Rat::zero();
            for (j, bj) in self.bernoulli.iter().enumerate() {
                acc += binom(m as i64 + 1, j as i64) * bj;
            }
            self.bernoulli.push(-acc / rat_int(m as i64 + 1));
        }
        self.bernoulli[n].clone()
    }

    /// Hurwitz zeta(s, a) for integer s >= 2 and rational a > 0, by direct
    /// summation out to the base point followed by the Euler-Maclaurin
    /// asymptotic expansion.
    pub fn hurwitz(&mut self, s: u32, a: &Rat) -> Result<BigFloat, Error> {
        if s < 2 {
            return Err(Error::Domain(format!("hurwitz requires s >= 2, got {s}")));
        }
        if !a.is_positive() {
            return Err(Error::Domain("hurwitz requires a > 0".into()));
        }
        let base = self.from_i64(self.base_point as i64);
        let eps = self.eps(self.prec + 12);

        // direct part: (a+j)^{-s} until a + j >= base_point
        let mut direct = self.zero();
        let mut aj = self.from_rat(a);
        let one = self.from_i64(1);
        while bf_lt(&aj, &base) {
            let p = self.powi(&aj, s as usize);
            let term = self.div(&one, &p);
            direct = self.add(&direct, &term);
            aj = self.add(&aj, &one);
        }

        // asymptotic tail at A = aj:
        // A^{1-s}/(s-1) + A^{-s}/2 + sum_v B_{2v}/(2v)! (s)_{2v-1} A^{1-s-2v}
        let a_pow_s = self.powi(&aj, s as usize);
        let inv_a = self.div(&one, &aj);
        let inv_a2 = self.mul(&inv_a, &inv_a);

        let sm1 = self.from_i64(s as i64 - 1);
        let lead = {
            let x = self.mul(&a_pow_s, &inv_a); // A^{s-1}
            let x = self.mul(&x, &sm1);
            self.div(&one, &x)
        };
        let half_term = {
            let two = self.from_i64(2);
            let x = self.mul(&a_pow_s, &two);
            self.div(&one, &x)
        };
        let mut tail = self.add(&lead, &half_term);

        // incremental: pochhammer (s)_{2v-1} and A^{1-s-2v}
        let mut poch = Rat::from_integer(BigInt::from(s)); // (s)_1 after v=1 needs s*(s+1)*... ; built below
        let mut a_factor = {
            let x = self.mul(&a_pow_s, &inv_a); // A^{s-1}
            self.div(&one, &x) // A^{1-s}
        };
        let mut fact2v = Rat::from_integer(BigInt::from(2)); // (2v)! at v=1
        let mut v = 1u32;
        loop {
            // at v: poch = s(s+1)...(s+2v-2), fact2v = (2v)!, a_factor = A^{1-s-2v}
            if v > 1 {
                poch *= rat_int((s + 2 * v - 3) as i64) * rat_int((s + 2 * v - 2) as i64);
                fact2v *= rat_int((2 * v - 1) as i64) * rat_int((2 * v) as i64);
            }
            a_factor = self.mul(&a_factor, &inv_a2);
            let b2v = self.bernoulli_rat(2 * v as usize);
            let coef = b2v * &poch / &fact2v;
            let coef_bf = self.from_rat(&coef);
            let term = self.mul(&coef_bf, &a_factor);
            tail = self.add(&tail, &term);
            if bf_lt(&term.abs(), &eps) {
                break;
            }
            v += 1;
            if v > 4 * self.prec {
                return Err(Error::PrecisionTooLow(format!(
                    "Euler-Maclaurin tail did not converge for hurwitz({s}, {a})"
                )));
            }
        }

        Ok(self.add(&direct, &tail))
    }

    /// zeta(s) for integer s >= 2.
    pub fn zeta(&mut self, s: u32) -> Result<BigFloat, Error> {
        self.hurwitz(s, &rat_int(1))
    }

    fn hurwitz_at_base_point(&mut self, s: u32) -> Result<BigFloat, Error> {
        if let Some(v) = self.hurwitz_at_base.get(&s) {
            return Ok(v.clone());
        }
        let a = rat_int(self.base_point as i64 + 1);
        let v = self.hurwitz(s, &a)?;
        self.hurwitz_at_base.insert(s, v.clone());
        Ok(v)
    }

    /// sum_{n > N0} n^{-r} (n+1)^{-b} with N0 the base point, by binomial
    /// expansion of (n+1)^{-b} into shifted single zetas.
    fn cross_tail(&mut self, r: u32, b: u32) -> Result<BigFloat, Error> {
        let eps = self.eps(self.prec + 12);
        let mut acc = self.zero();
        let mut coef = Rat::from_integer(BigInt::from(1)); // binom(-b, i) * (-1)^i = C(b+i-1, i)
        let mut i = 0u32;
        loop {
            let z = self.hurwitz_at_base_point(r + b + i)?;
            let coef_signed = if i % 2 == 0 { coef.clone() } else { -coef.clone() };
            let c = self.from_rat(&coef_signed);
            let term = self.mul(&c, &z);
            acc = self.add(&acc, &term);
            if i > b && bf_lt(&term.abs(), &eps) {
                break;
            }
            coef = coef * rat_int((b + i) as i64) / rat_int((i + 1) as i64);
            i += 1;
            if i > 200 * (self.prec / 10 + 1) {
                return Err(Error::PrecisionTooLow(format!(
                    "cross tail did not converge for (r, b) = ({r}, {b})"
                )));
            }
        }
        Ok(acc)
    }

    /// Double zeta zeta(r, s) = sum_{0 < n < m} n^{-r} m^{-s} for r >= 1,
    /// s >= 2.
    pub fn dzeta(&mut self, r: u32, s: u32) -> Result<BigFloat, Error> {
        if r < 1 || s < 2 {
            return Err(Error::Domain(format!(
                "dzeta requires r >= 1 and s >= 2, got ({r},{s})"
            )));
        }
        let n0 = self.base_point;
        let _one = self.from_i64(1);

        // direct outer sum: n^{-r} * hurwitz(s, n+1) for n = 1..N0
        let mut direct = self.zero();
        for n in 1..=n0 {
            let inner = self.hurwitz(s, &rat_int(n as i64 + 1))?;
            let np = self.powi(&self.from_i64(n as i64), r as usize);
            let term = self.div(&inner, &np);
            direct = self.add(&direct, &term);
        }

        // outer tail: expand hurwitz(s, n+1) asymptotically in (n+1) and
        // resum each resulting sum_{n>N0} n^{-r} (n+1)^{-b} exactly
        let eps = self.eps(self.prec + 12);
        let mut tail = self.zero();

        // leading term (n+1)^{1-s}/(s-1)
        {
            let t = self.cross_tail(r, s - 1)?;
            let c = self.from_rat(&Rat::new(BigInt::from(1), BigInt::from(s as i64 - 1)));
            let t = self.mul(&t, &c);
            tail = self.add(&tail, &t);
        }
        // half term (n+1)^{-s}/2
        {
            let t = self.cross_tail(r, s)?;
            let half = self.from_rat(&Rat::new(BigInt::from(1), BigInt::from(2)));
            let t = self.mul(&t, &half);
            tail = self.add(&tail, &t);
        }
        // Bernoulli corrections (n+1)^{1-s-2v}
        let mut poch = Rat::from_integer(BigInt::from(s));
        let mut fact2v = Rat::from_integer(BigInt::from(2));
        let mut v = 1u32;
        loop {
            if v > 1 {
                poch *= rat_int((s + 2 * v - 3) as i64) * rat_int((s + 2 * v - 2) as i64);
                fact2v *= rat_int((2 * v - 1) as i64) * rat_int((2 * v) as i64);
            }
            let b2v = self.bernoulli_rat(2 * v as usize);
            let coef = b2v * &poch / &fact2v;
            let t = self.cross_tail(r, s + 2 * v - 1)?;
            let c = self.from_rat(&coef);
            let term = self.mul(&t, &c);
            tail = self.add(&tail, &term);
            if bf_lt(&term.abs(), &eps) {
                break;
            }
            v += 1;
            if v > 4 * self.prec {
                return Err(Error::PrecisionTooLow(format!(
                    "outer tail did not converge for dzeta({r},{s})"
                )));
            }
        }

        Ok(self.add(&direct, &tail))
    }

    /// zeta~(k) = zeta(k) / (2 pi i)^k as a complex value; zeta~(1) = 0.
    pub fn zeta_tilde(&mut self, k: u32) -> Result<HPComplex, Error> {
        if let Some(v) = self.zeta_tilde_cache.get(&k) {
            return Ok(v.clone());
        }
        if k < 1 {
            return Err(Error::Domain(format!("zeta_tilde requires k >= 1, got {k}")));
        }
        let out = if k == 1 {
            HPComplex { re: self.zero(), im: self.zero() }
        } else {
            let z = self.zeta(k)?;
            let two_pi = {
                let pi = self.pi();
                let two = self.from_i64(2);
                self.mul(&pi, &two)
            };
            let denom = self.powi(&two_pi, k as usize);
            let mag = self.div(&z, &denom);
            // divide by i^k
            match k % 4 {
                0 => HPComplex { re: mag, im: self.zero() },
                1 => HPComplex { re: self.zero(), im: mag.neg() },
                2 => HPComplex { re: mag.neg(), im: self.zero() },
                _ => HPComplex { re: self.zero(), im: mag },
            }
        };
        self.zeta_tilde_cache.insert(k, out.clone());
        Ok(out)
    }

    /// zeta~(r,s) = zeta(r,s) / (2 pi i)^{r+s}, with the regularized cases
    /// zeta~(r,1) = -zeta~(1,r) - zeta~(r+1) and zeta~(1,1) = -zeta~(2)/2.
    pub fn dzeta_tilde(&mut self, r: u32, s: u32) -> Result<HPComplex, Error> {
        if let Some(v) = self.dzeta_tilde_cache.get(&(r, s)) {
            return Ok(v.clone());
        }
        if r < 1 || s < 1 {
            return Err(Error::Domain(format!(
                "dzeta_tilde requires r, s >= 1, got ({r},{s})"
            )));
        }
        let out = if s >= 2 {
            let z = self.dzeta(r, s)?;
            let k = r + s;
            let two_pi = {
                let pi = self.pi();
                let two = self.from_i64(2);
                self.mul(&pi, &two)
            };
            let denom = self.powi(&two_pi, k as usize);
            let mag = self.div(&z, &denom);
            match k % 4 {
                0 => HPComplex { re: mag, im: self.zero() },
                1 => HPComplex { re: self.zero(), im: mag.neg() },
                2 => HPComplex { re: mag.neg(), im: self.zero() },
                _ => HPComplex { re: self.zero(), im: mag },
            }
        } else if r >= 2 {
            let a = self.dzeta_tilde(1, r)?;
            let b = self.zeta_tilde(r + 1)?;
            HPComplex {
                re: self.add(&a.re, &b.re).neg(),
                im: self.add(&a.im, &b.im).neg(),
            }
        } else {
            // zeta~(1,1) = -zeta~(2)/2 = 1/48
            let v = self.from_rat(&crate::rat::rat(1, 48));
            HPComplex { re: v, im: self.zero() }
        };
        self.dzeta_tilde_cache.insert((r, s), out.clone());
        Ok(out)
    }

    /// Evaluates a zeta polynomial by substituting numeric values for the
    /// generators. Rejects double symbols of odd weight.
    pub fn eval_zeta_poly(&mut self, x: &ZetaPoly) -> Result<HPComplex, Error> {
        let mut acc = HPComplex { re: self.zero(), im: self.zero() };
        for (mono, coef) in x.terms() {
            let mut term = HPComplex { re: self.from_rat(coef), im: self.zero() };
            for (gen, e) in mono.generators() {
                let val = match gen {
                    Gen::Z(p) => self.zeta_tilde(p)?,
                    Gen::D(r, s) => {
                        if (r + s) % 2 != 0 {
                            return Err(Error::OddWeightSymbol { r, s });
                        }
                        self.dzeta_tilde(r, s)?
                    }
                };
                for _ in 0..e {
                    term = self.cmul(&term, &val);
                }
            }
            acc = HPComplex {
                re: self.add(&acc.re, &term.re),
                im: self.add(&acc.im, &term.im),
            };
        }
        Ok(acc)
    }

    pub fn cmul(&self, a: &HPComplex, b: &HPComplex) -> HPComplex {
        let rr = self.mul(&a.re, &b.re);
        let ii = self.mul(&a.im, &b.im);
        let ri = self.mul(&a.re, &b.im);
        let ir = self.mul(&a.im, &b.re);
        HPComplex { re: self.sub(&rr, &ii), im: self.add(&ri, &ir) }
    }

    /// Exact conversion of a finite BigFloat to a rational.
    pub fn to_rat(x: &BigFloat) -> Option<Rat> {
        if x.is_zero() {
            return Some(Rat::zero());
        }
        let (words, nbits, sign, exp, _inexact) = x.as_raw_parts()?;
        let mut bytes = Vec::with_capacity(words.len() * 8);
        for w in words {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        let mut m = BigInt::from_bytes_le(Sign::Plus, &bytes);
        if sign == astro_float::Sign::Neg {
            m = -m;
        }
        // value = m * 2^(exp - nbits)
        let shift = exp as i64 - nbits as i64;
        if shift >= 0 {
            Some(Rat::from_integer(m << shift as usize))
        } else {
            Some(Rat::new(m, BigInt::from(1) << (-shift) as usize))
        }
    }

    /// Approximate magnitude as f64 (for residual reporting).
    pub fn to_f64(x: &BigFloat) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        match x.as_raw_parts() {
            None => f64::NAN,
            Some((words, _nbits, sign, exp, _)) => {
                let top = words.last().copied().unwrap_or(0);
                let mut v = (top as f64 / 2f64.powi(64)) * 2f64.powi(exp);
                if sign == astro_float::Sign::Neg {
                    v = -v;
                }
                v
            }
        }
    }

    /// Decimal string rendering at roughly the context precision.
    pub fn format(&mut self, x: &BigFloat) -> String {
        x.format(Radix::Dec, RM, &mut self.cc)
            .unwrap_or_else(|_| "<fmt error>".into())
    }
}
