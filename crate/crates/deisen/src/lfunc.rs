//! Completed L-values of the supported eigenforms, exact period ratios
//! reconstructed from high-precision numerics, and the coefficient vectors
//! q_{r,s} built from them.
//!
//! The completed value L*(s) is computed by the rapidly convergent
//! incomplete-gamma series; ratios L*(s)/L*(k-1) are then snapped to exact
//! rationals by continued-fraction reconstruction. Two independent exact
//! validators (functional-equation symmetry and the Kohnen-Zagier
//! relation) guard the reconstruction.

use std::collections::BTreeMap;
use std::path::Path;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::hp::NumericCtx;
use crate::modforms::{eigenform, require_supported_weight};
use crate::rat::{binom, factorial, format_rat, lcm_big, rat_int, zeta_tilde_even, Rat};

/// Denominator bound for continued-fraction reconstruction.
pub fn denominator_bound() -> BigInt {
    BigInt::from(10).pow(12)
}

/// Number of q-coefficients needed so the tail of the completed-L series
/// is below 10^(-(prec+10)). Uses the crude bound |a(n)| <= n^k purely as
/// a stopping heuristic; each retained term is exact.
fn lstar_terms(k: u32, prec: u32) -> usize {
    let target = -((prec as f64 + 10.0) * std::f64::consts::LN_10);
    let mut n = (k as usize / 3).max(4);
    loop {
        let x = 2.0 * std::f64::consts::PI * n as f64;
        let log_bound = k as f64 * (n as f64).ln() - x + 4f64.ln() - x.ln();
        if log_bound < target {
            return n;
        }
        n += 1;
    }
}

/// Gamma(m, x) / x^m for integer m >= 1, via the finite expansion
/// Gamma(m, x) = (m-1)! e^{-x} sum_{j<m} x^j / j!.
fn incomplete_gamma_ratio(ctx: &mut NumericCtx, m: u32, x: &BigFloat, ex: &BigFloat) -> BigFloat {
    let mut partial = ctx.from_i64(1);
    let mut term = ctx.from_i64(1);
    for j in 1..m {
        let t = ctx.mul(&term, x);
        let jf = ctx.from_i64(j as i64);
        term = ctx.div(&t, &jf);
        partial = ctx.add(&partial, &term);
    }
    let fact = ctx.from_bigint(&factorial(m - 1));
    let xm = ctx.powi(x, m as usize);
    let num = ctx.mul(&fact, ex);
    let num = ctx.mul(&num, &partial);
    ctx.div(&num, &xm)
}

fn lstar_with_coeffs(ctx: &mut NumericCtx, k: u32, s: u32, coeffs: &[Rat]) -> BigFloat {
    let pi = ctx.pi();
    let two = ctx.from_i64(2);
    let two_pi = ctx.mul(&pi, &two);
    let neg_two_pi = two_pi.neg();
    let e1 = ctx.exp(&neg_two_pi);
    let flip = (k / 2) % 2 == 1;
    let mut acc = ctx.zero();
    for (idx, a) in coeffs.iter().enumerate() {
        let n = idx + 1;
        let nf = ctx.from_i64(n as i64);
        let x = ctx.mul(&two_pi, &nf);
        let ex = ctx.powi(&e1, n);
        let t1 = incomplete_gamma_ratio(ctx, s, &x, &ex);
        let mut t2 = incomplete_gamma_ratio(ctx, k - s, &x, &ex);
        if flip {
            t2 = t2.neg();
        }
        let both = ctx.add(&t1, &t2);
        let abf = ctx.from_rat(a);
        let term = ctx.mul(&abf, &both);
        acc = ctx.add(&acc, &term);
    }
    acc
}

fn eigenform_coeffs(k: u32, n: usize) -> Result<Vec<Rat>, Error> {
    let f = eigenform(k, n)?;
    (1..=n).map(|i| f.rational_coeff(i)).collect()
}

/// The completed L-value L*(s) = integral_0^infty f(it) t^{s-1} dt of the
/// weight-k eigenform, real-valued, at the context precision.
pub fn lstar(ctx: &mut NumericCtx, k: u32, s: u32) -> Result<BigFloat, Error> {
    require_supported_weight(k)?;
    if s < 1 || s > k - 1 {
        return Err(Error::Domain(format!(
            "lstar requires 1 <= s <= k-1, got s = {s} at weight {k}"
        )));
    }
    let n = lstar_terms(k, ctx.prec);
    let coeffs = eigenform_coeffs(k, n)?;
    Ok(lstar_with_coeffs(ctx, k, s, &coeffs))
}

/// Continued-fraction reconstruction: the first convergent of `x` with
/// denominator below `den_bound` and residual |x - p/q| below `threshold`.
/// Returns the convergent and the residual.
pub fn reconstruct_rat(x: &Rat, den_bound: &BigInt, threshold: &Rat) -> Option<(Rat, Rat)> {
    let mut rest = x.clone();
    let (mut h2, mut h1) = (BigInt::one(), x.floor().to_integer());
    let (mut k2, mut k1) = (BigInt::zero(), BigInt::one());
    loop {
        let cand = Rat::new(h1.clone(), k1.clone());
        let resid = (x - &cand).abs();
        if &resid < threshold {
            return Some((cand, resid));
        }
        let frac = &rest - rest.floor();
        if frac.is_zero() {
            return None;
        }
        rest = frac.recip();
        let a = rest.floor().to_integer();
        let h = &a * &h1 + &h2;
        let kk = &a * &k1 + &k2;
        if &kk > den_bound {
            return None;
        }
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, kk);
    }
}

/// Exact period ratios L*(s)/L*(k-1) for odd s, with the reconstruction
/// residuals that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioTable {
    pub weight: u32,
    pub prec: u32,
    /// odd s -> exact ratio
    pub ratios: BTreeMap<u32, Rat>,
    /// odd s -> |float ratio - reconstructed rational|
    pub residuals: BTreeMap<u32, f64>,
}

impl RatioTable {
    pub fn ratio(&self, s: u32) -> Result<&Rat, Error> {
        self.ratios
            .get(&s)
            .ok_or_else(|| Error::Domain(format!("no ratio stored for s = {s}")))
    }

    /// Checks ratio(k-1) = 1 and the functional-equation symmetry
    /// ratio(s) = (-1)^{k/2} ratio(k-s).
    pub fn validate(&self) -> Result<(), Error> {
        let k = self.weight;
        if !self.ratio(k - 1)?.is_one() {
            return Err(Error::ReconstructionFailed {
                weight: k,
                s: k - 1,
                reason: "self-ratio is not 1".into(),
            });
        }
        let flip = (k / 2) % 2 == 1;
        for (&s, v) in &self.ratios {
            let mirror = self.ratio(k - s)?;
            let expect = if flip { -mirror } else { mirror.clone() };
            if *v != expect {
                return Err(Error::ReconstructionFailed {
                    weight: k,
                    s,
                    reason: "functional-equation symmetry violated".into(),
                });
            }
        }
        Ok(())
    }

    /// Deterministic text serialization (the cache format).
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("deisen-ratio-table v1\n");
        out.push_str(&format!("weight {}\n", self.weight));
        out.push_str(&format!("prec {}\n", self.prec));
        for (s, v) in &self.ratios {
            let r = self.residuals.get(s).copied().unwrap_or(0.0);
            out.push_str(&format!("ratio {} {} {:e}\n", s, format_rat(v), r));
        }
        out
    }

    pub fn parse(text: &str) -> Result<RatioTable, Error> {
        let bad = |m: &str| Error::Config(format!("malformed ratio-table cache: {m}"));
        let mut lines = text.lines();
        if lines.next() != Some("deisen-ratio-table v1") {
            return Err(bad("bad header"));
        }
        let weight = lines
            .next()
            .and_then(|l| l.strip_prefix("weight "))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad("bad weight line"))?;
        let prec = lines
            .next()
            .and_then(|l| l.strip_prefix("prec "))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad("bad prec line"))?;
        let mut ratios = BTreeMap::new();
        let mut residuals = BTreeMap::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split(' ');
            if parts.next() != Some("ratio") {
                return Err(bad("bad ratio line"));
            }
            let s: u32 = parts
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad("bad s"))?;
            let rat_str = parts.next().ok_or_else(|| bad("missing value"))?;
            let value = parse_rat(rat_str).ok_or_else(|| bad("bad rational"))?;
            let resid: f64 = parts
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad("bad residual"))?;
            ratios.insert(s, value);
            residuals.insert(s, resid);
        }
        Ok(RatioTable { weight, prec, ratios, residuals })
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => Some(Rat::new(n.parse().ok()?, d.parse().ok()?)),
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Computes the ratio table at the given precision, reconstructing each
/// ratio to an exact rational and validating the result.
pub fn ratio_table(k: u32, prec: u32) -> Result<RatioTable, Error> {
    require_supported_weight(k)?;
    let mut ctx = NumericCtx::new(prec);
    let n = lstar_terms(k, prec);
    let coeffs = eigenform_coeffs(k, n)?;
    let denom = lstar_with_coeffs(&mut ctx, k, k - 1, &coeffs);
    if denom.is_zero() {
        return Err(Error::PrecisionTooLow(format!(
            "L*(k-1) evaluated to zero at weight {k}"
        )));
    }
    let bound = denominator_bound();
    let threshold = Rat::new(BigInt::one(), BigInt::from(10).pow(prec / 2));

    let mut ratios = BTreeMap::new();
    let mut residuals = BTreeMap::new();
    for s in (1..k).step_by(2) {
        let num = lstar_with_coeffs(&mut ctx, k, s, &coeffs);
        let q = ctx.div(&num, &denom);
        let exact = NumericCtx::to_rat(&q).ok_or_else(|| Error::PrecisionTooLow(
            format!("non-finite ratio at weight {k}, s = {s}"),
        ))?;
        let (value, resid) =
            reconstruct_rat(&exact, &bound, &threshold).ok_or_else(|| Error::ReconstructionFailed {
                weight: k,
                s,
                reason: format!(
                    "no convergent with denominator <= 10^12 within 10^-{}",
                    prec / 2
                ),
            })?;
        ratios.insert(s, value);
        residuals.insert(s, resid.to_f64().unwrap_or(f64::NAN));
    }
    let table = RatioTable { weight: k, prec, ratios, residuals };
    table.validate()?;
    Ok(table)
}

/// Like `ratio_table`, but persisted under `cache_dir` keyed by
/// (weight, prec). Cache hits are returned byte-identically; returns the
/// table and whether it was served from cache.
pub fn ratio_table_cached(
    k: u32,
    prec: u32,
    cache_dir: Option<&Path>,
) -> Result<(RatioTable, bool), Error> {
    let Some(dir) = cache_dir else {
        return Ok((ratio_table(k, prec)?, false));
    };
    let path = dir.join(format!("ratios_w{k}_p{prec}.txt"));
    if path.is_file() {
        let text = std::fs::read_to_string(&path)?;
        let table = RatioTable::parse(&text)?;
        if table.weight != k || table.prec != prec {
            return Err(Error::Config(format!(
                "cache file {} does not match requested (weight, prec)",
                path.display()
            )));
        }
        table.validate()?;
        return Ok((table, true));
    }
    let table = ratio_table(k, prec)?;
    std::fs::create_dir_all(dir)?;
    std::fs::write(&path, table.serialize())?;
    Ok((table, false))
}

/// q_{i,j}(f) / L*(k-1) = sum over odd s of
/// (-1)^{(s-1)/2} ratio(s) binom(i-1, s-1), for any i + j = weight.
pub fn qcoef(i: u32, j: u32, table: &RatioTable) -> Result<Rat, Error> {
    if i < 1 || j < 1 || i + j != table.weight {
        return Err(Error::Domain(format!(
            "qcoef requires i, j >= 1 with i + j = {}, got ({i},{j})",
            table.weight
        )));
    }
    let mut acc = Rat::zero();
    for (&s, ratio) in &table.ratios {
        let sign = if ((s - 1) / 2) % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        acc += sign * ratio * binom(i as i64 - 1, s as i64 - 1);
    }
    Ok(acc)
}

/// The q_{r,s} coefficients over all odd pairs, normalized by L*(k-1),
/// together with the minimal integer scaling that clears denominators.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector {
    pub weight: u32,
    /// odd r -> q_{r, k-r}
    pub entries: BTreeMap<u32, Rat>,
    /// LCM of the entry denominators
    pub integer_scale: BigInt,
    /// odd r -> integer_scale * q_{r, k-r}
    pub scaled_entries: BTreeMap<u32, BigInt>,
}

pub fn coeff_vector(k: u32, table: &RatioTable) -> Result<CoeffVector, Error> {
    require_supported_weight(k)?;
    if table.weight != k {
        return Err(Error::Domain(format!(
            "table weight {} does not match requested weight {k}",
            table.weight
        )));
    }
    let mut entries = BTreeMap::new();
    for r in (1..k).step_by(2) {
        entries.insert(r, qcoef(r, k - r, table)?);
    }
    let mut scale = BigInt::one();
    for v in entries.values() {
        scale = lcm_big(&scale, v.denom());
    }
    let scaled_entries = entries
        .iter()
        .map(|(&r, v)| {
            let x = v * Rat::from_integer(scale.clone());
            debug_assert!(x.denom().is_one());
            (r, x.to_integer())
        })
        .collect();
    Ok(CoeffVector { weight: k, entries, integer_scale: scale, scaled_entries })
}

/// Left-hand side of the extra linear relation among critical L-values:
/// sum over even pairs of q_{r,s} (beta_r beta_s / beta_k + 1) plus the
/// sum over odd pairs of q_{r,s}; must be exactly 0.
pub fn kz_check(k: u32, table: &RatioTable) -> Result<Rat, Error> {
    require_supported_weight(k)?;
    let bk = zeta_tilde_even(k)?;
    let mut acc = Rat::zero();
    for r in (2..k).step_by(2) {
        let s = k - r;
        let q = qcoef(r, s, table)?;
        let w = zeta_tilde_even(r)? * zeta_tilde_even(s)? / &bk + rat_int(1);
        acc += q * w;
    }
    for r in (1..k).step_by(2) {
        acc += qcoef(r, k - r, table)?;
    }
    Ok(acc)
}

/// The scalar on the right-hand side of the main decomposition, in units
/// of L*(k-1): (-1)^{k/2} / (4 (k-2)!).
pub fn theorem_scalar(k: u32) -> Result<Rat, Error> {
    require_supported_weight(k)?;
    let sign = if (k / 2) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    Ok(Rat::new(sign, BigInt::from(4) * factorial(k - 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn k12_table() -> RatioTable {
        ratio_table(12, 60).unwrap()
    }

    #[test]
    fn lstar_dirichlet_region_oracle() {
        // Independent slowly convergent evaluation of L*(11) for weight 12:
        // L*(s) = Gamma(s)/(2 pi)^s * sum a(n)/n^s in the convergent region.
        let mut ctx = NumericCtx::new(60);
        let fast = lstar(&mut ctx, 12, 11).unwrap();

        let n = 400;
        let coeffs = eigenform_coeffs(12, n).unwrap();
        let mut dir = ctx.zero();
        for (idx, a) in coeffs.iter().enumerate() {
            let m = idx as i64 + 1;
            let mf = ctx.from_i64(m);
            let mp = ctx.powi(&mf, 11);
            let abf = ctx.from_rat(a);
            let t = ctx.div(&abf, &mp);
            dir = ctx.add(&dir, &t);
        }
        let pi = ctx.pi();
        let two = ctx.from_i64(2);
        let two_pi = ctx.mul(&pi, &two);
        let tp11 = ctx.powi(&two_pi, 11);
        let g11 = ctx.from_bigint(&factorial(10));
        let pref = ctx.div(&g11, &tp11);
        let slow = ctx.mul(&pref, &dir);

        let diff = ctx.sub(&fast, &slow);
        let rel = ctx.div(&diff, &fast);
        assert!(
            NumericCtx::to_f64(&rel).abs() < 1e-8,
            "fast and Dirichlet-region evaluations disagree: {}",
            NumericCtx::to_f64(&rel)
        );
    }

    #[test]
    fn lstar_symmetry_is_exact_by_construction() {
        let mut ctx = NumericCtx::new(50);
        let a = lstar(&mut ctx, 12, 3).unwrap();
        let b = lstar(&mut ctx, 12, 9).unwrap();
        let d = ctx.sub(&a, &b);
        assert!(NumericCtx::to_f64(&d).abs() < 1e-45);
        // weight 18: (-1)^{k/2} = -1
        let a = lstar(&mut ctx, 18, 5).unwrap();
        let b = lstar(&mut ctx, 18, 13).unwrap();
        let s = ctx.add(&a, &b);
        assert!(NumericCtx::to_f64(&s).abs() < 1e-45);
    }

    #[test]
    fn lstar_domain_errors() {
        let mut ctx = NumericCtx::new(40);
        assert!(matches!(
            lstar(&mut ctx, 14, 3),
            Err(Error::UnsupportedWeight { weight: 14, .. })
        ));
        assert!(lstar(&mut ctx, 12, 0).is_err());
        assert!(lstar(&mut ctx, 12, 12).is_err());
    }

    #[test]
    fn ratio_table_weight_12_exact() {
        let t = k12_table();
        assert_eq!(*t.ratio(1).unwrap(), rat(1, 1));
        assert_eq!(*t.ratio(3).unwrap(), rat(691, 1620));
        assert_eq!(*t.ratio(5).unwrap(), rat(691, 2520));
        assert_eq!(*t.ratio(7).unwrap(), rat(691, 2520));
        assert_eq!(*t.ratio(9).unwrap(), rat(691, 1620));
        assert_eq!(*t.ratio(11).unwrap(), rat(1, 1));
        for (&s, &r) in &t.residuals {
            assert!(r.abs() < 1e-30, "residual too large at s = {s}");
        }
    }

    #[test]
    fn ratio_tables_validate_for_all_supported_weights() {
        for &k in &crate::modforms::SUPPORTED_WEIGHTS {
            let t = ratio_table(k, 60).unwrap();
            t.validate().unwrap();
            assert!(t.ratio(k - 1).unwrap().is_one());
        }
    }

    #[test]
    fn reconstruction_stable_under_precision_doubling() {
        let lo = ratio_table(12, 60).unwrap();
        let hi = ratio_table(12, 120).unwrap();
        assert_eq!(lo.ratios, hi.ratios);
    }

    #[test]
    fn qcoef_weight_12_values() {
        let t = k12_table();
        assert_eq!(qcoef(1, 11, &t).unwrap(), rat(1, 1));
        assert_eq!(qcoef(3, 9, &t).unwrap(), rat(929, 1620));
        assert_eq!(qcoef(5, 7, &t).unwrap(), rat(-1943, 1512));
        assert_eq!(qcoef(7, 5, &t).unwrap(), rat(-421, 270));
        assert_eq!(qcoef(9, 3, &t).unwrap(), rat(1, 1));
        assert_eq!(qcoef(11, 1, &t).unwrap(), rat(0, 1));
        assert!(qcoef(6, 5, &t).is_err());
    }

    #[test]
    fn coeff_vector_weight_12() {
        let t = k12_table();
        let v = coeff_vector(12, &t).unwrap();
        assert_eq!(v.integer_scale, BigInt::from(22680));
        let expect: Vec<(u32, i64)> =
            vec![(1, 22680), (3, 13006), (5, -29145), (7, -35364), (9, 22680), (11, 0)];
        for (r, e) in expect {
            assert_eq!(v.scaled_entries[&r], BigInt::from(e), "entry ({r},{})", 12 - r);
        }
        // minimality: no common factor shared by the scale and all entries
        use num_integer::Integer;
        let mut g = v.integer_scale.clone();
        for e in v.scaled_entries.values() {
            g = g.gcd(e);
        }
        assert!(g.is_one());
    }

    #[test]
    fn kz_check_zero_for_all_supported_weights() {
        for &k in &crate::modforms::SUPPORTED_WEIGHTS {
            let t = ratio_table(k, 60).unwrap();
            assert!(kz_check(k, &t).unwrap().is_zero(), "weight {k}");
        }
    }

    #[test]
    fn kz_check_detects_perturbation() {
        let mut t = k12_table();
        let r3 = t.ratios[&3].clone();
        t.ratios.insert(3, r3 + Rat::new(BigInt::one(), BigInt::from(1_000_000)));
        assert!(!kz_check(12, &t).unwrap().is_zero());
    }

    #[test]
    fn theorem_scalar_values() {
        assert_eq!(theorem_scalar(12).unwrap(), rat(1, 14515200));
        assert!(matches!(
            theorem_scalar(14),
            Err(Error::UnsupportedWeight { weight: 14, .. })
        ));
        let scaled = theorem_scalar(12).unwrap() * rat_int(22680);
        assert_eq!(scaled, rat(1, 640));
    }

    #[test]
    fn reconstruct_rat_basic() {
        let bound = denominator_bound();
        let thr = Rat::new(BigInt::one(), BigInt::from(10).pow(20));
        // a float-like approximation of 691/1620
        let approx = rat(691, 1620) + Rat::new(BigInt::one(), BigInt::from(10).pow(45));
        let (v, resid) = reconstruct_rat(&approx, &bound, &thr).unwrap();
        assert_eq!(v, rat(691, 1620));
        assert!(resid < thr);
        // worst-approximable negative control: a deep Fibonacci ratio has
        // all partial quotients 1, so every convergent with denominator
        // q <= 10^12 misses by about 1/(sqrt(5) q^2) >> 10^-30
        let tight = Rat::new(BigInt::one(), BigInt::from(10).pow(30));
        let (mut a, mut b) = (BigInt::one(), BigInt::one());
        for _ in 0..200 {
            let c = &a + &b;
            a = std::mem::replace(&mut b, c);
        }
        let golden = Rat::new(b, a);
        assert!(reconstruct_rat(&golden, &bound, &tight).is_none());
    }

    #[test]
    fn cache_roundtrip_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let (t1, hit1) = ratio_table_cached(12, 60, Some(dir.path())).unwrap();
        assert!(!hit1);
        let stored = std::fs::read_to_string(dir.path().join("ratios_w12_p60.txt")).unwrap();
        let (t2, hit2) = ratio_table_cached(12, 60, Some(dir.path())).unwrap();
        assert!(hit2);
        assert_eq!(t1.ratios, t2.ratios);
        assert_eq!(stored, t2.serialize());
        assert_eq!(stored, t1.serialize());
    }

    #[test]
    fn serialize_parse_roundtrip() {
        let t = k12_table();
        let parsed = RatioTable::parse(&t.serialize()).unwrap();
        assert_eq!(t, parsed);
    }
}
