//! Truncated q-expansions with zeta-symbol coefficients.

use std::fmt::Write as _;

use crate::error::Error;
use crate::rat::{rat_int, Rat};
use crate::zetapoly::ZetaPoly;

/// A q-series truncated at some order N: coefficients of q^0 .. q^N.
/// Equality of two series is only meaningful up to the smaller order;
/// use [`QSeries::agrees_with`] for that comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<ZetaPoly>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![ZetaPoly::zero(); order + 1] }
    }

    pub fn constant(c: ZetaPoly, order: usize) -> Self {
        let mut s = QSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(coeffs: Vec<ZetaPoly>) -> Self {
        assert!(!coeffs.is_empty());
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &ZetaPoly {
        &self.coeffs[n]
    }

    pub fn set_coeff(&mut self, n: usize, c: ZetaPoly) {
        self.coeffs[n] = c;
    }

    pub fn coeffs(&self) -> &[ZetaPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Structural equality up to the smaller of the two orders.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        let n = self.order().min(other.order());
        (0..=n).all(|i| self.coeffs[i] == other.coeffs[i])
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        QSeries { coeffs }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        QSeries { coeffs }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.order().min(other.order());
        let mut out = QSeries::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &other.coeffs[j];
                out.coeffs[i + j] = &out.coeffs[i + j] + &prod;
            }
        }
        out
    }

    /// q d/dq: multiplies the coefficient of q^n by n.
    pub fn q_derivative(&self) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&rat_int(n as i64)))
            .collect();
        QSeries { coeffs }
    }

    pub fn scale(&self, c: &ZetaPoly) -> QSeries {
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        QSeries { coeffs }
    }

    pub fn scale_rat(&self, c: &Rat) -> QSeries {
        let coeffs = self.coeffs.iter().map(|x| x.scale(c)).collect();
        QSeries { coeffs }
    }

    /// Multiplies by q^k, truncating at the same order.
    pub fn shift(&self, k: usize) -> QSeries {
        let mut out = QSeries::zero(self.order());
        for n in k..=self.order() {
            out.coeffs[n] = self.coeffs[n - k].clone();
        }
        out
    }

    /// The rational coefficient of q^n, failing if symbols are present.
    pub fn rational_coeff(&self, n: usize) -> Result<Rat, Error> {
        self.coeffs[n].as_rat()
    }

    /// One line per coefficient: "n<TAB><coefficient>".
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "{n}\t{c}");
        }
        out
    }
}

/// Raises a series to an integer power >= 0 by repeated squaring.
pub fn qs_pow(base: &QSeries, mut e: u32) -> QSeries {
    let mut result = QSeries::constant(ZetaPoly::one(), base.order());
    let mut power = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&power);
        }
        e >>= 1;
        if e > 0 {
            power = power.mul(&power);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    
    use crate::zetapoly::{Gen, ZetaPoly};

    fn z(p: u32) -> ZetaPoly {
        ZetaPoly::generator(Gen::Z(p))
    }

    fn series(vals: &[i64]) -> QSeries {
        QSeries::from_coeffs(vals.iter().map(|&v| ZetaPoly::from_int(v)).collect())
    }

    #[test]
    fn add_basics() {
        let a = series(&[1, 1, 0]);
        let b = series(&[1, -1, 0]);
        assert!(a.add(&b).agrees_with(&series(&[2, 0, 0])));
        let zero = QSeries::zero(2);
        assert!(a.add(&zero).agrees_with(&a));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn mul_basics() {
        let a = series(&[1, 1, 0]);
        let b = series(&[1, -1, 0]);
        assert!(a.mul(&b).agrees_with(&series(&[1, 0, -1])));

        // (z3 + q)(z5 + q) = z3*z5 + (z3+z5) q + q^2
        let mut x = QSeries::constant(z(3), 2);
        x.set_coeff(1, ZetaPoly::one());
        let mut y = QSeries::constant(z(5), 2);
        y.set_coeff(1, ZetaPoly::one());
        let p = x.mul(&y);
        assert_eq!(*p.coeff(0), &z(3) * &z(5));
        assert_eq!(*p.coeff(1), &z(3) + &z(5));
        assert_eq!(*p.coeff(2), ZetaPoly::one());

        let q = series(&[0, 1, 0, 0]);
        let qq = q.mul(&q);
        assert!(qq.agrees_with(&series(&[0, 0, 1, 0])));
    }

    #[test]
    fn mixed_order_truncates() {
        let a = series(&[1, 2, 3, 4, 5]);
        let b = series(&[1, 0]);
        assert_eq!(a.add(&b).order(), 1);
        assert_eq!(a.mul(&b).order(), 1);
    }

    #[test]
    fn q_derivative_basics() {
        let c = QSeries::constant(z(3), 3);
        assert!(c.q_derivative().is_zero());
        let s = series(&[0, 1, 0, 1]);
        assert!(s.q_derivative().agrees_with(&series(&[0, 1, 0, 3])));
    }

    #[test]
    fn scale_basics() {
        let a = series(&[1, 1]);
        assert!(a.scale(&ZetaPoly::zero()).is_zero());
        assert!(a.scale(&ZetaPoly::one()).agrees_with(&a));
        let scaled = a.scale(&z(3));
        assert_eq!(*scaled.coeff(0), z(3));
        assert_eq!(*scaled.coeff(1), z(3));
    }

    #[test]
    fn leibniz_rule() {
        let mut a = series(&[2, 3, 0, 5, 1]);
        a.set_coeff(2, z(3));
        let mut b = series(&[1, 0, 7, 2, 0]);
        b.set_coeff(4, z(5));
        let lhs = a.mul(&b).q_derivative();
        let rhs = a.q_derivative().mul(&b).add(&a.mul(&b.q_derivative()));
        assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn pow_by_squaring() {
        let a = series(&[1, -1, 0, 0, 0, 0]);
        let p3 = qs_pow(&a, 3);
        let direct = a.mul(&a).mul(&a);
        assert!(p3.agrees_with(&direct));
        let p0 = qs_pow(&a, 0);
        assert_eq!(*p0.coeff(0), ZetaPoly::one());
        assert!(p0.coeff(1).is_zero());
    }

    #[test]
    fn dump_format() {
        let s = series(&[0, 1]);
        assert_eq!(s.dump(), "0\t0\n1\t1\n");
    }
}
