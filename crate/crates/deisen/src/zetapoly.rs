//! The formal zeta-symbol coefficient ring.
//!
//! Polynomials over `Rat` in generators `z_p` (normalized single zetas of odd
//! weight p >= 3) and `D{r,s}` (normalized double zetas). The normalization
//! conventions are baked into the constructors: zeta~(1) = 0, even single
//! zetas reduce to rationals, and D{r,1} / D{1,1} are rewritten at
//! construction so they never occur as stored generators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::Error;
use crate::rat::{format_rat, zeta_tilde_even, Rat};

/// A formal generator of the coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    /// z_p: the normalized single zeta of odd weight p >= 3.
    Z(u32),
    /// D{r,s}: the normalized double zeta of indices (r, s), s >= 2.
    D(u32, u32),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Z(p) => write!(f, "z{p}"),
            Gen::D(r, s) => write!(f, "D{{{r},{s}}}"),
        }
    }
}

/// A monomial: sorted list of (generator, exponent) with positive exponents.
/// The empty monomial is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Gen, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn gen(g: Gen) -> Self {
        Monomial(vec![(g, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = (Gen, u32)> + '_ {
        self.0.iter().copied()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Gen, u32> = BTreeMap::new();
        for &(g, e) in self.0.iter().chain(other.0.iter()) {
            *map.entry(g).or_insert(0) += e;
        }
        Monomial(map.into_iter().collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| if e == 1 { format!("{g}") } else { format!("{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A sparse polynomial over `Rat` in the formal zeta symbols. Zero
/// coefficients are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZetaPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl ZetaPoly {
    pub fn zero() -> Self {
        ZetaPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        ZetaPoly::from_rat(Rat::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        ZetaPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        ZetaPoly::from_rat(crate::rat::rat_int(n))
    }

    pub fn generator(g: Gen) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::gen(g), Rat::one());
        ZetaPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the polynomial is a rational constant (possibly zero).
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The coefficient of the empty monomial.
    pub fn rational_part(&self) -> Rat {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rat::zero)
    }

    /// The polynomial minus its rational part.
    pub fn symbolic_part(&self) -> ZetaPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| !m.is_one())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        ZetaPoly { terms }
    }

    /// The rational constant, or an error if symbols are present.
    pub fn as_rat(&self) -> Result<Rat, Error> {
        if self.is_rational() {
            Ok(self.rational_part())
        } else {
            Err(Error::Domain(format!("expected a rational constant, got {self}")))
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rat) -> ZetaPoly {
        if c.is_zero() {
            return ZetaPoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), v * c))
            .collect();
        ZetaPoly { terms }
    }

    fn add_assign_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }
}

impl Add for &ZetaPoly {
    type Output = ZetaPoly;
    fn add(self, rhs: &ZetaPoly) -> ZetaPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ZetaPoly {
    type Output = ZetaPoly;
    fn sub(self, rhs: &ZetaPoly) -> ZetaPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &ZetaPoly {
    type Output = ZetaPoly;
    fn neg(self) -> ZetaPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        ZetaPoly { terms }
    }
}

impl Mul for &ZetaPoly {
    type Output = ZetaPoly;
    fn mul(self, rhs: &ZetaPoly) -> ZetaPoly {
        let mut out = ZetaPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_assign_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for ZetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format_rat(c)
                } else {
                    format!("{}*{}", format_rat(c), m)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// zeta~(k): 0 for k = 1, the rational beta_k for even k, and the formal
/// generator z_k for odd k >= 3.
pub fn zeta_symbol(k: u32) -> Result<ZetaPoly, Error> {
    if k < 1 {
        return Err(Error::Domain(format!("zeta_symbol requires k >= 1, got {k}")));
    }
    if k == 1 {
        Ok(ZetaPoly::zero())
    } else if k % 2 == 0 {
        Ok(ZetaPoly::from_rat(zeta_tilde_even(k)?))
    } else {
        Ok(ZetaPoly::generator(Gen::Z(k)))
    }
}

/// zeta~(r,s) as an element of the symbol ring.
///
/// For s >= 2 this stays formal. The regularized cases reduce at
/// construction: zeta~(r,1) = -zeta~(1,r) - zeta~(r+1) for r >= 2, and
/// zeta~(1,1) = -zeta~(2)/2.
pub fn dzeta_symbol(r: u32, s: u32) -> Result<ZetaPoly, Error> {
    if r < 1 || s < 1 {
        return Err(Error::Domain(format!(
            "dzeta_symbol requires r, s >= 1, got ({r},{s})"
        )));
    }
    if s >= 2 {
        Ok(ZetaPoly::generator(Gen::D(r, s)))
    } else if r >= 2 {
        let d1r = ZetaPoly::generator(Gen::D(1, r));
        let z = zeta_symbol(r + 1)?;
        Ok(&(-&d1r) - &z)
    } else {
        // zeta~(1,1) = -zeta~(2)/2 = 1/48
        let half = crate::rat::rat(-1, 2);
        Ok(ZetaPoly::from_rat(zeta_tilde_even(2)?.clone() * half))
    }
}
