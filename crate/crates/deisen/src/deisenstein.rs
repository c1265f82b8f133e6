//! Double Eisenstein series and their building blocks: the combinatorial
//! coefficients C^p_{r,s}, the auxiliary series g_h, g*_m, g_{r,s} and
//! epsilon, the assembled G_{r,s}, the interpolation G^1/2_{r,s}, and the
//! product series P_{r,s}.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;
use crate::qseries::QSeries;
use crate::rat::{binom, divisor_sigma, factorial, rat, rat_int, Rat};
use crate::zetapoly::{dzeta_symbol, zeta_symbol, ZetaPoly};

/// C^p_{r,s} = delta_{r,p} + (-1)^r C(p-1, r-1) + (-1)^{p-s} C(p-1, s-1).
pub fn ccoef(r: u32, s: u32, p: u32) -> Rat {
    let delta = if r == p { rat_int(1) } else { rat_int(0) };
    let sign_r = if r % 2 == 0 { rat_int(1) } else { rat_int(-1) };
    let sign_ps = if (p as i64 - s as i64) % 2 == 0 { rat_int(1) } else { rat_int(-1) };
    delta
        + sign_r * binom(p as i64 - 1, r as i64 - 1)
        + sign_ps * binom(p as i64 - 1, s as i64 - 1)
}

/// g_h(q) = ((-1)^h/(h-1)!) sum_{c,d>0} c^{h-1} q^{cd}; the coefficient of
/// q^n is (-1)^h sigma_{h-1}(n)/(h-1)!.
pub fn g(h: u32, order: usize) -> Result<QSeries, Error> {
    if h < 1 {
        return Err(Error::Domain(format!("g requires h >= 1, got {h}")));
    }
    let mut s = QSeries::zero(order);
    let sign = if h % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let fact = factorial(h - 1);
    for n in 1..=order {
        let sigma = divisor_sigma(h - 1, n as u64)?;
        s.set_coeff(n, ZetaPoly::from_rat(Rat::new(&sign * sigma, fact.clone())));
    }
    Ok(s)
}

/// g*_m(q) = ((-1)^m/m!) sum_{c,d>0} d c^m q^{cd}.
pub fn gstar(m: u32, order: usize) -> QSeries {
    let mut s = QSeries::zero(order);
    let sign = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let fact = factorial(m);
    for n in 1..=order {
        let mut acc = BigInt::from(0);
        for c in 1..=n as u64 {
            if n as u64 % c == 0 {
                let d = n as u64 / c;
                acc += BigInt::from(d) * BigInt::from(c).pow(m);
            }
        }
        s.set_coeff(n, ZetaPoly::from_rat(Rat::new(&sign * acc, fact.clone())));
    }
    s
}

/// g_{r,s}(q) = ((-1)^{r+s}/((r-1)!(s-1)!)) sum c_1^{r-1} c_2^{s-1}
/// q^{c_1 d_1 + c_2 d_2} over 0 < d_1 < d_2 and c_1, c_2 > 0.
pub fn gdouble(r: u32, s: u32, order: usize) -> Result<QSeries, Error> {
    if r < 1 || s < 1 {
        return Err(Error::Domain(format!("gdouble requires r, s >= 1, got ({r},{s})")));
    }
    let n = order as u64;
    // powers c^{r-1} and c^{s-1} for c = 1..order
    let pow_r: Vec<BigInt> = (0..=n).map(|c| BigInt::from(c).pow(r - 1)).collect();
    let pow_s: Vec<BigInt> = (0..=n).map(|c| BigInt::from(c).pow(s - 1)).collect();

    let mut acc: Vec<BigInt> = vec![BigInt::from(0); order + 1];
    for d1 in 1..n {
        for c1 in 1..=(n - 1) / d1 {
            let e1 = c1 * d1;
            for d2 in (d1 + 1)..=(n - e1) {
                for c2 in 1..=(n - e1) / d2 {
                    let e = (e1 + c2 * d2) as usize;
                    acc[e] += &pow_r[c1 as usize] * &pow_s[c2 as usize];
                }
            }
        }
    }

    let sign = if (r + s) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let fact = factorial(r - 1) * factorial(s - 1);
    let mut out = QSeries::zero(order);
    for (e, v) in acc.into_iter().enumerate() {
        out.set_coeff(e, ZetaPoly::from_rat(Rat::new(&sign * v, fact.clone())));
    }
    Ok(out)
}

/// The boundary correction entering G_{r,s}:
/// epsilon(r,s) = delta_{s,2} g*_r - delta_{s,1} g*_{r-1}
///              + delta_{r,1} (g*_{s-1} + g_s) + delta_{r,1} delta_{s,1} g_2.
///
/// The index convention (which slot drives which Kronecker delta, and which
/// index the lone g term carries) is fixed so that the double shuffle
/// relation for P_{r,s} holds exactly on all positive q-powers; that
/// relation doubles as the consistency oracle for this constructor.
pub fn epsilon(r: u32, s: u32, order: usize) -> Result<QSeries, Error> {
    if r < 1 || s < 1 {
        return Err(Error::Domain(format!("epsilon requires r, s >= 1, got ({r},{s})")));
    }
    let mut out = QSeries::zero(order);
    if s == 2 {
        out = out.add(&gstar(r, order));
    }
    if s == 1 {
        out = out.sub(&gstar(r - 1, order));
    }
    if r == 1 {
        out = out.add(&gstar(s - 1, order));
        out = out.add(&g(s, order)?);
    }
    if r == 1 && s == 1 {
        out = out.add(&g(2, order)?);
    }
    Ok(out)
}

/// The double Eisenstein series
/// G_{r,s}(q) = zeta~(r,s) + sum_{h+p=r+s} C^p_{r,s} g_h(q) zeta~(p)
///            + g_{r,s}(q) + epsilon(r,s)(q)/2.
pub fn double_eisenstein(r: u32, s: u32, order: usize) -> Result<QSeries, Error> {
    if r < 1 || s < 1 {
        return Err(Error::Domain(format!(
            "double_eisenstein requires r, s >= 1, got ({r},{s})"
        )));
    }
    let k = r + s;
    let mut out = QSeries::constant(dzeta_symbol(r, s)?, order);
    for h in 1..k {
        let p = k - h;
        let zp = zeta_symbol(p)?;
        if zp.is_zero() {
            continue;
        }
        let c = ccoef(r, s, p);
        if num_traits::Zero::is_zero(&c) {
            continue;
        }
        out = out.add(&g(h, order)?.scale(&zp.scale(&c)));
    }
    out = out.add(&gdouble(r, s, order)?);
    out = out.add(&epsilon(r, s, order)?.scale_rat(&rat(1, 2)));
    Ok(out)
}

/// G^1/2_{r,s}(q) = G_{r,s}(q) + G_{r+s}(q)/2.
pub fn g_half(r: u32, s: u32, order: usize) -> Result<QSeries, Error> {
    let gk = crate::modforms::eisenstein(r + s, order)?;
    Ok(double_eisenstein(r, s, order)?.add(&gk.scale_rat(&rat(1, 2))))
}

/// P_{r,s}(q) = G_r(q) G_s(q)
///            + (delta_{r,2} + delta_{s,2}) G'_{r+s-2}(q) / (2(r+s-2)).
pub fn p_series(r: u32, s: u32, order: usize) -> Result<QSeries, Error> {
    if r + s < 3 {
        return Err(Error::Domain(format!(
            "p_series requires r + s >= 3, got ({r},{s})"
        )));
    }
    let gr = crate::modforms::eisenstein(r, order)?;
    let gs = crate::modforms::eisenstein(s, order)?;
    let mut out = gr.mul(&gs);
    let deltas = (r == 2) as i64 + (s == 2) as i64;
    if deltas > 0 {
        let deriv = crate::modforms::eisenstein(r + s - 2, order)?.q_derivative();
        let c = rat_int(deltas) / rat_int(2 * (r + s - 2) as i64);
        out = out.add(&deriv.scale_rat(&c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zetapoly::Gen;
    use num_traits::Zero;

    #[test]
    fn ccoef_direct_values() {
        // direct substitution into the defining formula
        assert_eq!(ccoef(1, 1, 1), rat_int(1));
        // delta = 1, (-1)^2 C(1,1) = 1, (-1)^1 C(1,0) = -1
        assert_eq!(ccoef(2, 1, 2), rat_int(1));
        // both binomials vanish when p-1 < r-1 and p-1 < s-1
        assert_eq!(ccoef(5, 5, 3), rat_int(0));
        assert_eq!(ccoef(3, 3, 3), rat_int(1) + binom(2, 2) * rat_int(-1) + binom(2, 2));
    }

    #[test]
    fn g_matches_eisenstein_tail() {
        for h in 1..=26 {
            let gh = g(h, 12).unwrap();
            let mut eis = crate::modforms::eisenstein(h, 12).unwrap();
            eis.set_coeff(0, ZetaPoly::zero());
            assert!(gh.agrees_with(&eis), "g_{h} mismatch");
        }
    }

    #[test]
    fn g_low_coefficients() {
        let g1 = g(1, 4).unwrap();
        assert_eq!(g1.rational_coeff(1).unwrap(), rat_int(-1));
        let g2 = g(2, 4).unwrap();
        assert_eq!(g2.rational_coeff(2).unwrap(), rat_int(3));
        assert!(g2.coeff(0).is_zero());
    }

    #[test]
    fn gstar_enumeration() {
        let g0 = gstar(0, 6);
        assert_eq!(g0.rational_coeff(1).unwrap(), rat_int(1));
        for n in 1..=6u64 {
            // sum_{dc=n} d = sigma_1(n)
            let expect = Rat::from_integer(divisor_sigma(1, n).unwrap());
            assert_eq!(g0.rational_coeff(n as usize).unwrap(), expect);
        }
        // m = 1, q^2: -(1*2 + 2*1)/1! = -4 by enumerating {(d,c) : dc = 2}
        let g1 = gstar(1, 4);
        assert_eq!(g1.rational_coeff(2).unwrap(), rat_int(-4));
    }

    #[test]
    fn gdouble_small_cases() {
        for (r, s) in [(1, 1), (2, 1), (3, 4)] {
            let gd = gdouble(r, s, 8).unwrap();
            for n in 0..=2 {
                assert!(gd.coeff(n).is_zero(), "({r},{s}) q^{n} should vanish");
            }
        }
        // q^3: unique tuple d1=1, c1=1, d2=2, c2=1
        assert_eq!(gdouble(1, 1, 4).unwrap().rational_coeff(3).unwrap(), rat_int(1));
        assert_eq!(gdouble(2, 1, 4).unwrap().rational_coeff(3).unwrap(), rat_int(-1));
    }

    #[test]
    fn gdouble_matches_brute_force() {
        // independent quadruple-loop oracle, ordered the naive way
        let order = 10usize;
        for (r, s) in [(1u32, 1u32), (2, 3), (4, 2)] {
            let gd = gdouble(r, s, order).unwrap();
            for n in 0..=order {
                let mut acc = BigInt::from(0);
                for d1 in 1..=n as u64 {
                    for d2 in (d1 + 1)..=n as u64 {
                        for c1 in 1..=n as u64 {
                            for c2 in 1..=n as u64 {
                                if c1 * d1 + c2 * d2 == n as u64 {
                                    acc += BigInt::from(c1).pow(r - 1) * BigInt::from(c2).pow(s - 1);
                                }
                            }
                        }
                    }
                }
                let sign = if (r + s) % 2 == 0 { 1 } else { -1 };
                let expect = Rat::new(
                    BigInt::from(sign) * acc,
                    factorial(r - 1) * factorial(s - 1),
                );
                assert_eq!(gd.rational_coeff(n).unwrap(), expect, "({r},{s}) at q^{n}");
            }
        }
    }

    #[test]
    fn epsilon_cases() {
        let order = 8;
        assert!(epsilon(3, 5, order).unwrap().is_zero());
        assert!(epsilon(3, 2, order).unwrap().agrees_with(&gstar(3, order)));
        let e13 = epsilon(1, 3, order).unwrap();
        let expect = gstar(2, order).add(&g(3, order).unwrap());
        assert!(e13.agrees_with(&expect));
        let e41 = epsilon(4, 1, order).unwrap();
        let minus_gstar3 = QSeries::zero(order).sub(&gstar(3, order));
        assert!(e41.agrees_with(&minus_gstar3));
    }

    #[test]
    fn zero_constant_terms() {
        let order = 6;
        assert!(g(3, order).unwrap().coeff(0).is_zero());
        assert!(gstar(2, order).coeff(0).is_zero());
        assert!(gdouble(2, 2, order).unwrap().coeff(0).is_zero());
        assert!(epsilon(1, 1, order).unwrap().coeff(0).is_zero());
    }

    #[test]
    fn double_eisenstein_constant_term() {
        let de = double_eisenstein(3, 9, 6).unwrap();
        assert_eq!(*de.coeff(0), ZetaPoly::generator(Gen::D(3, 9)));
    }

    #[test]
    fn double_eisenstein_symbol_content() {
        // only z_p with odd 3 <= p <= r+s-1 appear, each multiplying
        // C^p_{r,s} * (coefficient of g_{r+s-p})
        let (r, s, order) = (9u32, 3u32, 8usize);
        let de = double_eisenstein(r, s, order).unwrap();
        for n in 1..=order {
            for (m, _) in de.coeff(n).terms() {
                for (gen, _) in m.generators() {
                    match gen {
                        Gen::Z(p) => {
                            assert!(p % 2 == 1 && p >= 3 && p <= r + s - 1);
                        }
                        Gen::D(..) => panic!("double symbol in a q^{n} coefficient"),
                    }
                }
            }
        }
    }

    #[test]
    fn double_eisenstein_assembled_twice() {
        // assemble G_{9,3} a second time from independently built parts
        let (r, s, order) = (9u32, 3u32, 10usize);
        let de = double_eisenstein(r, s, order).unwrap();
        let mut other = QSeries::constant(dzeta_symbol(r, s).unwrap(), order);
        for p in 1..(r + s) {
            let h = r + s - p;
            let zp = zeta_symbol(p).unwrap();
            let scaled = g(h, order).unwrap().scale(&zp).scale_rat(&ccoef(r, s, p));
            other = other.add(&scaled);
        }
        other = other.add(&gdouble(r, s, order).unwrap());
        other = other.add(&epsilon(r, s, order).unwrap().scale_rat(&rat(1, 2)));
        assert!(de.agrees_with(&other));
    }

    #[test]
    fn g_half_defining_identity() {
        let (r, s, order) = (3u32, 9u32, 6usize);
        let gh = g_half(r, s, order).unwrap();
        let de = double_eisenstein(r, s, order).unwrap();
        let gk = crate::modforms::eisenstein(r + s, order).unwrap();
        let diff = gh.sub(&de).sub(&gk.scale_rat(&rat(1, 2)));
        assert!(diff.is_zero());
        // constant term: D{3,9} + beta_12 / 2
        let expect = &dzeta_symbol(r, s).unwrap()
            + &ZetaPoly::from_rat(crate::rat::zeta_tilde_even(12).unwrap() * rat(1, 2));
        assert_eq!(*gh.coeff(0), expect);
    }

    #[test]
    fn g_half_q1_shift() {
        let order = 4;
        let gh = g_half(1, 11, order).unwrap();
        let de = double_eisenstein(1, 11, order).unwrap();
        let diff = &gh.coeff(1).rational_part() - &de.coeff(1).rational_part();
        // half the q-coefficient of G_12: sigma_11(1)/11! / 2
        assert_eq!(diff, Rat::new(BigInt::one(), BigInt::from(2) * factorial(11)));
    }

    #[test]
    fn double_shuffle_small_weights() {
        // both expressions for P_{r,s}, exactly on q^1..q^N
        let order = 12usize;
        for k in [4u32, 6] {
            for r in 1..k {
                let s = k - r;
                let p = p_series(r, s, order).unwrap();

                let lhs1 = double_eisenstein(r, s, order)
                    .unwrap()
                    .add(&double_eisenstein(s, r, order).unwrap())
                    .add(&crate::modforms::eisenstein(k, order).unwrap());

                let mut lhs2 = QSeries::zero(order);
                for i in 1..k {
                    let j = k - i;
                    let c = binom(j as i64 - 1, r as i64 - 1) + binom(j as i64 - 1, s as i64 - 1);
                    if c.is_zero() {
                        continue;
                    }
                    lhs2 = lhs2.add(&double_eisenstein(i, j, order).unwrap().scale_rat(&c));
                }

                for n in 1..=order {
                    assert_eq!(
                        p.coeff(n),
                        lhs1.coeff(n),
                        "stuffle form fails at ({r},{s}), q^{n}"
                    );
                    assert_eq!(
                        p.coeff(n),
                        lhs2.coeff(n),
                        "shuffle form fails at ({r},{s}), q^{n}"
                    );
                }
            }
        }
    }

    #[test]
    fn p_series_cases() {
        let p39 = p_series(3, 9, 4).unwrap();
        assert_eq!(
            *p39.coeff(0),
            &ZetaPoly::generator(Gen::Z(3)) * &ZetaPoly::generator(Gen::Z(9))
        );

        let p12 = p_series(1, 2, 4).unwrap();
        assert!(p12.coeff(0).is_zero());

        let p22 = p_series(2, 2, 4).unwrap();
        let plain = crate::modforms::eisenstein(2, 4)
            .unwrap()
            .mul(&crate::modforms::eisenstein(2, 4).unwrap());
        let correction = p22.sub(&plain);
        let expect = crate::modforms::eisenstein(2, 4)
            .unwrap()
            .q_derivative()
            .scale_rat(&rat(2, 4));
        assert!(correction.agrees_with(&expect));

        assert!(p_series(1, 1, 4).is_err());
    }
}
