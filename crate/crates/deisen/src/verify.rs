//! End-to-end verification of the identities satisfied by the double
//! Eisenstein decomposition: the main decomposition, the double shuffle
//! relation, the period-polynomial identities, the extra L-value relation,
//! the constant-term corollary, the congruences, and linear independence
//! of the basis series.
//!
//! Positive q-powers are compared exactly in the symbol ring; constant
//! terms are checked numerically, since the free symbol ring deliberately
//! does not encode relations among double zeta values.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::deisenstein::{double_eisenstein, g_half, p_series};
use crate::error::Error;
use crate::hp::NumericCtx;
use crate::lfunc::{
    coeff_vector, kz_check, qcoef, ratio_table, theorem_scalar, CoeffVector, RatioTable,
};
use crate::modforms::{eigenform, eisenstein, require_supported_weight, SUPPORTED_WEIGHTS};
use crate::qseries::QSeries;
use crate::rat::{bernoulli, format_rat, prime_factors, rat, rat_mod_p, zeta_tilde_even, Rat};
use crate::zetapoly::ZetaPoly;

/// Shared knobs for all verification runs.
#[derive(Debug, Clone, Copy)]
pub struct VerifyParams {
    /// q-series truncation order
    pub order: usize,
    /// numeric precision in decimal digits
    pub prec: u32,
    /// absolute bound a numeric residual must stay below
    pub tolerance: f64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams { order: 40, prec: 60, tolerance: 1e-25 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIP")]
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub label: String,
    pub magnitude: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub check: String,
    pub weight: u32,
    pub order: usize,
    pub prec: u32,
    pub verdict: Verdict,
    pub residuals: Vec<Residual>,
    pub details: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// One human-readable block per report.
    pub fn render_human(&self, tolerance: f64) -> String {
        let mut out = format!(
            "{:4} {} weight={} order={} prec={}\n",
            match self.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Skip => "SKIP",
            },
            self.check,
            self.weight,
            self.order,
            self.prec
        );
        if !self.residuals.is_empty() {
            let worst = self
                .residuals
                .iter()
                .max_by(|a, b| a.magnitude.abs().total_cmp(&b.magnitude.abs()))
                .unwrap();
            out.push_str(&format!(
                "     residuals: {} checked, worst |{}| = {:e} (tolerance {:e})\n",
                self.residuals.len(),
                worst.label,
                worst.magnitude.abs(),
                tolerance
            ));
        }
        for d in &self.details {
            out.push_str(&format!("     detail: {d}\n"));
        }
        out
    }
}

fn check_tolerance(params: &VerifyParams) -> Result<(), Error> {
    let achievable = 10f64.powi(-((params.prec as i32) - 10));
    if params.tolerance < achievable {
        return Err(Error::Config(format!(
            "tolerance {:e} is below what prec {} can certify ({:e}); raise --prec or the tolerance",
            params.tolerance, params.prec, achievable
        )));
    }
    Ok(())
}

fn finish(
    check: &str,
    weight: u32,
    params: &VerifyParams,
    residuals: Vec<Residual>,
    details: Vec<String>,
) -> VerifyReport {
    let ok = details.is_empty()
        && residuals.iter().all(|r| r.magnitude.abs() < params.tolerance);
    VerifyReport {
        check: check.to_string(),
        weight,
        order: params.order,
        prec: params.prec,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        residuals,
        details,
    }
}

/// Numeric evaluation of a symbol-ring constant, pushed as a pair of
/// residuals (real and imaginary part).
fn push_eval(
    ctx: &mut NumericCtx,
    value: &ZetaPoly,
    label: &str,
    out: &mut Vec<Residual>,
) -> Result<(), Error> {
    let v = ctx.eval_zeta_poly(value)?;
    out.push(Residual {
        label: format!("{label} re"),
        magnitude: NumericCtx::to_f64(&v.re).abs(),
    });
    out.push(Residual {
        label: format!("{label} im"),
        magnitude: NumericCtx::to_f64(&v.im).abs(),
    });
    Ok(())
}

/// Exact comparison of two series on q^1..q^order; mismatches are
/// reported as details naming the first offending power.
fn compare_positive_powers(a: &QSeries, b: &QSeries, label: &str, details: &mut Vec<String>) {
    let order = a.order().min(b.order());
    for n in 1..=order {
        if a.coeff(n) != b.coeff(n) {
            details.push(format!("{label}: first mismatch at q^{n}"));
            return;
        }
    }
}

/// The main decomposition: the odd-indexed q_{r,s} combination of the
/// interpolated double Eisenstein series reproduces the eigenform, with
/// scalar (-1)^{k/2}/(4 (k-2)!), exactly on positive q-powers and
/// numerically on the constant term.
pub fn verify_theorem_main(k: u32, params: &VerifyParams) -> Result<VerifyReport, Error> {
    require_supported_weight(k)?;
    check_tolerance(params)?;
    let table = ratio_table(k, params.prec)?;
    let v = coeff_vector(k, &table)?;
    let order = params.order;

    let mut lhs = QSeries::zero(order);
    for (&r, e) in &v.entries {
        lhs = lhs.add(&g_half(r, k - r, order)?.scale_rat(e));
    }
    let f = eigenform(k, order)?;
    let scalar = theorem_scalar(k)?;

    let mut details = Vec::new();
    for n in 1..=order {
        let got = lhs.coeff(n);
        let expect = ZetaPoly::from_rat(&scalar * f.rational_coeff(n)?);
        if !got.symbolic_part().is_zero() {
            details.push(format!("q^{n}: zeta-symbol part does not cancel"));
            break;
        }
        if *got != expect {
            details.push(format!(
                "q^{n}: rational part {} differs from scalar * a({n}) = {}",
                format_rat(&got.rational_part()),
                format_rat(&expect.rational_part())
            ));
            break;
        }
    }

    let mut residuals = Vec::new();
    let mut ctx = NumericCtx::new(params.prec);
    push_eval(&mut ctx, lhs.coeff(0), "constant", &mut residuals)?;

    Ok(finish("theorem", k, params, residuals, details))
}

/// Both expressions for the product series P_{r,s}: the stuffle form
/// G_{r,s} + G_{s,r} + G_{r+s} and the shuffle form
/// sum binom-weighted G_{i,j}; exact on positive powers, numeric on
/// constants (real and imaginary parts).
pub fn verify_double_shuffle(k: u32, params: &VerifyParams) -> Result<VerifyReport, Error> {
    if k % 2 != 0 || k < 4 || k > 26 {
        return Err(Error::Domain(format!(
            "double shuffle verification covers even k in [4,26], got {k}"
        )));
    }
    check_tolerance(params)?;
    let order = params.order;
    let gk = eisenstein(k, order)?;
    let de: Vec<QSeries> = (1..k)
        .map(|i| double_eisenstein(i, k - i, order))
        .collect::<Result<_, _>>()?;
    let de_at = |i: u32| &de[i as usize - 1];

    let mut details = Vec::new();
    let mut residuals = Vec::new();
    let mut ctx = NumericCtx::new(params.prec);

    for r in 1..k {
        let s = k - r;
        let p = p_series(r, s, order)?;

        let stuffle = de_at(r).add(de_at(s)).add(&gk);
        compare_positive_powers(&p, &stuffle, &format!("({r},{s}) stuffle"), &mut details);

        let mut shuffle = QSeries::zero(order);
        for i in 1..k {
            let j = k - i;
            let c = crate::rat::binom(j as i64 - 1, r as i64 - 1)
                + crate::rat::binom(j as i64 - 1, s as i64 - 1);
            if c.is_zero() {
                continue;
            }
            shuffle = shuffle.add(&de_at(i).scale_rat(&c));
        }
        compare_positive_powers(&p, &shuffle, &format!("({r},{s}) shuffle"), &mut details);

        let d0 = p.coeff(0) - stuffle.coeff(0);
        push_eval(&mut ctx, &d0, &format!("({r},{s}) stuffle constant"), &mut residuals)?;
        let d0 = p.coeff(0) - shuffle.coeff(0);
        push_eval(&mut ctx, &d0, &format!("({r},{s}) shuffle constant"), &mut residuals)?;
    }

    Ok(finish("doubleshuffle", k, params, residuals, details))
}

/// The two period-polynomial identities: the even/odd coefficient
/// identity sum_even q G_{r,s} = 3 sum_odd q G_{r,s} + c G_k with
/// c = sum over all pairs of (-1)^{r-1} q_{r,s}, and its product form
/// sum_even q (P_{r,s} - G_k) = 6 sum_odd q G_{r,s} + 2 c G_k.
pub fn verify_gkz_theorem3(k: u32, params: &VerifyParams) -> Result<VerifyReport, Error> {
    require_supported_weight(k)?;
    check_tolerance(params)?;
    let table = ratio_table(k, params.prec)?;
    verify_gkz_with_table(k, params, &table)
}

fn verify_gkz_with_table(
    k: u32,
    params: &VerifyParams,
    table: &RatioTable,
) -> Result<VerifyReport, Error> {
    let order = params.order;
    let gk = eisenstein(k, order)?;

    let mut even_g = QSeries::zero(order);
    let mut even_pg = QSeries::zero(order);
    let mut odd_g = QSeries::zero(order);
    let mut c_all = Rat::zero();
    for r in 1..k {
        let s = k - r;
        let q = qcoef(r, s, table)?;
        let sign = if r % 2 == 1 { Rat::one() } else { -Rat::one() };
        c_all += sign * &q;
        if r % 2 == 0 {
            even_g = even_g.add(&double_eisenstein(r, s, order)?.scale_rat(&q));
            even_pg = even_pg.add(&p_series(r, s, order)?.sub(&gk).scale_rat(&q));
        } else {
            odd_g = odd_g.add(&double_eisenstein(r, s, order)?.scale_rat(&q));
        }
    }

    let mut details = Vec::new();
    let mut residuals = Vec::new();
    let mut ctx = NumericCtx::new(params.prec);

    // identity 1: even combination = 3 * odd combination + c_all * G_k
    let rhs1 = odd_g.scale_rat(&rat(3, 1)).add(&gk.scale_rat(&c_all));
    compare_positive_powers(&even_g, &rhs1, "coefficient identity", &mut details);
    let d0 = even_g.coeff(0) - rhs1.coeff(0);
    push_eval(&mut ctx, &d0, "coefficient identity constant", &mut residuals)?;

    // identity 2: even product combination = 6 * odd + 2 c_all * G_k
    let rhs2 = odd_g
        .scale_rat(&rat(6, 1))
        .add(&gk.scale_rat(&(Rat::from_integer(BigInt::from(2)) * &c_all)));
    compare_positive_powers(&even_pg, &rhs2, "product identity", &mut details);
    let d0 = even_pg.coeff(0) - rhs2.coeff(0);
    push_eval(&mut ctx, &d0, "product identity constant", &mut residuals)?;

    Ok(finish("gkz3", k, params, residuals, details))
}

/// The even-indexed product identity: sum over even pairs of
/// q_{r,s} (P_{r,s} - (beta_r beta_s / beta_k) G_k) equals
/// (3/2) (-1)^{k/2} / (k-2)! times the eigenform. Exact on all powers;
/// the constant term cancels exactly in the rationals.
pub fn verify_popa(k: u32, params: &VerifyParams) -> Result<VerifyReport, Error> {
    require_supported_weight(k)?;
    let table = ratio_table(k, params.prec)?;
    let order = params.order;
    let gk = eisenstein(k, order)?;
    let bk = zeta_tilde_even(k)?;

    let mut lhs = QSeries::zero(order);
    for r in (2..k).step_by(2) {
        let s = k - r;
        let q = qcoef(r, s, &table)?;
        let w = zeta_tilde_even(r)? * zeta_tilde_even(s)? / &bk;
        let term = p_series(r, s, order)?.sub(&gk.scale_rat(&w));
        lhs = lhs.add(&term.scale_rat(&q));
    }

    let f = eigenform(k, order)?;
    let scalar = theorem_scalar(k)? * rat(6, 1); // (3/2) (-1)^{k/2} / (k-2)!

    let mut details = Vec::new();
    for n in 1..=order {
        let got = lhs.coeff(n);
        let expect = ZetaPoly::from_rat(&scalar * f.rational_coeff(n)?);
        if *got != expect {
            details.push(format!("q^{n}: coefficient differs from scalar * a({n})"));
            break;
        }
    }
    // the constant term is rational on both sides and must vanish exactly
    let residuals = vec![Residual {
        label: "constant (exact rational)".into(),
        magnitude: if lhs.coeff(0).is_zero() { 0.0 } else { 1.0 },
    }];

    Ok(finish("popa", k, params, residuals, details))
}

/// The extra linear relation among critical L-values, as an exact-zero check.
pub fn verify_kz(k: u32, params: &VerifyParams) -> Result<VerifyReport, Error> {
    require_supported_weight(k)?;
    let table = ratio_table(k, params.prec)?;
    let value = kz_check(k, &table)?;
    let mut details = Vec::new();
    if !value.is_zero() {
        details.push(format!("relation value is {} instead of 0", format_rat(&value)));
    }
    Ok(finish("kz", k, params, Vec::new(), details))
}

/// Constant-term corollary: the odd-indexed q_{r,s} combination of the
/// interpolated double zeta values vanishes. Checked numerically in the
/// normalized (division by (2 pi i)^k) form, which is equivalent by
/// homogeneity.
pub fn verify_corollary(k: u32, params: &VerifyParams) -> Result<VerifyReport, Error> {
    require_supported_weight(k)?;
    check_tolerance(params)?;
    let table = ratio_table(k, params.prec)?;
    let v = coeff_vector(k, &table)?;
    let mut ctx = NumericCtx::new(params.prec);

    let zk = ctx.zeta_tilde(k)?;
    let mut re = ctx.zero();
    let mut im = ctx.zero();
    let half = rat(1, 2);
    for (&r, e) in &v.entries {
        let d = ctx.dzeta_tilde(r, k - r)?;
        let ebf = ctx.from_rat(e);
        let hbf = ctx.from_rat(&half);
        let half_zk_re = ctx.mul(&hbf, &zk.re);
        let half_zk_im = ctx.mul(&hbf, &zk.im);
        let tre = ctx.add(&d.re, &half_zk_re);
        let tim = ctx.add(&d.im, &half_zk_im);
        let tre = ctx.mul(&ebf, &tre);
        let tim = ctx.mul(&ebf, &tim);
        re = ctx.add(&re, &tre);
        im = ctx.add(&im, &tim);
    }
    let residuals = vec![
        Residual { label: "sum re".into(), magnitude: NumericCtx::to_f64(&re).abs() },
        Residual { label: "sum im".into(), magnitude: NumericCtx::to_f64(&im).abs() },
    ];
    Ok(finish("corollary", k, params, residuals, Vec::new()))
}

/// Primes p > k dividing the numerator of the Bernoulli number B_k.
pub fn qualifying_primes(k: u32) -> Vec<BigInt> {
    prime_factors(bernoulli(k).numer())
        .into_iter()
        .filter(|p| *p > BigInt::from(k))
        .collect()
}

/// Congruence check: for every prime p > k dividing the numerator of B_k,
/// the normalized coefficients q_{r,s} with (r,s) odd and (r,s) != (k-1,1)
/// are p-integral, pairwise congruent, and nonzero mod p.
pub fn verify_congruence(k: u32, params: &VerifyParams) -> Result<VerifyReport, Error> {
    require_supported_weight(k)?;
    let primes = qualifying_primes(k);
    if primes.is_empty() {
        return Ok(VerifyReport {
            check: "congruence".into(),
            weight: k,
            order: params.order,
            prec: params.prec,
            verdict: Verdict::Skip,
            residuals: Vec::new(),
            details: vec![format!(
                "no prime p > {k} divides the numerator of B_{k}; nothing to check"
            )],
        });
    }
    let table = ratio_table(k, params.prec)?;
    let v = coeff_vector(k, &table)?;

    let mut details = Vec::new();
    let mut notes = Vec::new();
    for p in &primes {
        let mut common: Option<BigInt> = None;
        for (&r, e) in &v.entries {
            if r == k - 1 {
                continue; // q_{k-1,1} = 0 by the functional equation
            }
            let Some(res) = rat_mod_p(e, p) else {
                details.push(format!("p={p}: entry ({r},{}) is not p-integral", k - r));
                continue;
            };
            if res.is_zero() {
                details.push(format!("p={p}: entry ({r},{}) vanishes mod p", k - r));
            }
            match &common {
                None => common = Some(res),
                Some(c) if *c != res => details.push(format!(
                    "p={p}: entry ({r},{}) has residue {res}, expected {c}",
                    k - r
                )),
                _ => {}
            }
        }
        if let Some(c) = common {
            // residue of the integer-scaled entries, when the scale is
            // invertible mod p
            let scaled = rat_mod_p(&Rat::from_integer(v.integer_scale.clone()), p)
                .map(|s| (s * &c) % p);
            match scaled {
                Some(s) => notes.push(format!("p={p}: residue {c} (scaled entries: {s})")),
                None => notes.push(format!("p={p}: residue {c}")),
            }
        }
    }

    let mut report = finish("congruence", k, params, Vec::new(), details);
    report.details.extend(notes);
    Ok(report)
}

/// Exact rank over the rationals by Gaussian elimination.
pub fn rational_rank(mut m: Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        if rank >= rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].clone().recip();
        for j in col..cols {
            m[rank][j] = &m[rank][j] * &inv;
        }
        for i in 0..rows {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..cols {
                    let t = &m[rank][j] * &f;
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Linear independence of the odd-pair interpolated series: the matrix of
/// rational parts of their q^1..q^N coefficients has full rank k/2.
pub fn verify_independence(k: u32, params: &VerifyParams) -> Result<VerifyReport, Error> {
    require_supported_weight(k)?;
    let order = params.order;
    if order < (k / 2) as usize {
        return Err(Error::Domain(format!(
            "independence check needs order >= k/2 = {}, got {order}",
            k / 2
        )));
    }
    let mut rows = Vec::new();
    for r in (1..k).step_by(2) {
        let s = g_half(r, k - r, order)?;
        rows.push((1..=order).map(|n| s.coeff(n).rational_part()).collect());
    }
    let rank = rational_rank(rows);
    let mut details = Vec::new();
    if rank != (k / 2) as usize {
        details.push(format!("rank {} instead of {}", rank, k / 2));
    }
    Ok(finish("independence", k, params, Vec::new(), details))
}

/// Runs every check for one weight, in a fixed order.
pub fn verify_all(k: u32, params: &VerifyParams) -> Result<Vec<VerifyReport>, Error> {
    Ok(vec![
        verify_theorem_main(k, params)?,
        verify_double_shuffle(k, params)?,
        verify_gkz_theorem3(k, params)?,
        verify_popa(k, params)?,
        verify_kz(k, params)?,
        verify_corollary(k, params)?,
        verify_congruence(k, params)?,
        verify_independence(k, params)?,
    ])
}

/// Everything the `decompose` output needs, precomputed.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub weight: u32,
    pub prec: u32,
    /// odd s -> L*(s)/L*(k-1), rendered exactly
    pub ratios: Vec<(u32, String)>,
    pub reconstruction_residuals: Vec<(u32, f64)>,
    /// (r, s, normalized entry, integer-scaled entry)
    pub entries: Vec<(u32, u32, String, String)>,
    pub integer_scale: String,
    pub theorem_scalar: String,
    /// C = integer_scale * theorem_scalar: the scalar multiplying the
    /// eigenform once the combination is integer-scaled
    pub scaled_scalar: String,
    pub congruences: Vec<String>,
    pub note: String,
}

pub fn decompose(k: u32, table: &RatioTable) -> Result<Decomposition, Error> {
    require_supported_weight(k)?;
    let v: CoeffVector = coeff_vector(k, table)?;
    let scalar = theorem_scalar(k)?;
    let scaled = &scalar * Rat::from_integer(v.integer_scale.clone());

    let mut congruences = Vec::new();
    for p in qualifying_primes(k) {
        let mut residues = Vec::new();
        for (&r, e) in &v.scaled_entries {
            if r == k - 1 {
                continue;
            }
            residues.push((((e % &p) + &p) % &p).to_string());
        }
        congruences.push(format!(
            "mod {p}: scaled entries have residues [{}]",
            residues.join(", ")
        ));
    }

    let note = if k == 12 {
        format!(
            "computed scalar C = {} = 22680/(4*10!); the prefactor 1/680 \
             sometimes quoted for this decomposition does not match this \
             exact value",
            format_rat(&scaled)
        )
    } else {
        String::new()
    };

    Ok(Decomposition {
        weight: k,
        prec: table.prec,
        ratios: table.ratios.iter().map(|(&s, r)| (s, format_rat(r))).collect(),
        reconstruction_residuals: table.residuals.iter().map(|(&s, &r)| (s, r)).collect(),
        entries: v
            .entries
            .iter()
            .map(|(&r, e)| {
                (r, k - r, format_rat(e), v.scaled_entries[&r].to_string())
            })
            .collect(),
        integer_scale: v.integer_scale.to_string(),
        theorem_scalar: format_rat(&scalar),
        scaled_scalar: format_rat(&scaled),
        congruences,
        note,
    })
}

/// All weights with a one-dimensional cusp space, for `--weight all` style
/// iteration.
pub fn supported_weights() -> &'static [u32] {
    &SUPPORTED_WEIGHTS
}

#[allow(dead_code)]
fn _assert_reports_serialize(r: &VerifyReport) -> String {
    serde_json::to_string(r).unwrap()
}
