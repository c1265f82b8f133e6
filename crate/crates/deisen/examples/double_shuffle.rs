//! The double shuffle relation for double Eisenstein series.
//!
//! For each pair r + s = k the product series P_{r,s} has two expansions:
//! the stuffle form G_{r,s} + G_{s,r} + G_k and the binomial-weighted
//! shuffle form. Both are checked exactly on positive q-powers here; the
//! constant terms involve genuine double zeta values and are compared
//! numerically via the verification module.
//!
//! Usage: cargo run --example double_shuffle [weight]

use deisen::deisenstein::{double_eisenstein, p_series};
use deisen::modforms::eisenstein;
use deisen::qseries::QSeries;
use deisen::rat::binom;
use deisen::verify::{verify_double_shuffle, VerifyParams};

fn main() -> Result<(), deisen::Error> {
    let k: u32 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(12);
    let order = 16;

    // spell one pair out by hand
    let (r, s) = (3u32, k - 3);
    let p = p_series(r, s, order)?;
    let stuffle = double_eisenstein(r, s, order)?
        .add(&double_eisenstein(s, r, order)?)
        .add(&eisenstein(k, order)?);
    let mut shuffle = QSeries::zero(order);
    for i in 1..k {
        let j = k - i;
        let c = binom(j as i64 - 1, r as i64 - 1) + binom(j as i64 - 1, s as i64 - 1);
        if !num_traits::Zero::is_zero(&c) {
            shuffle = shuffle.add(&double_eisenstein(i, j, order)?.scale_rat(&c));
        }
    }
    for n in 1..=order {
        assert_eq!(p.coeff(n), stuffle.coeff(n), "stuffle mismatch at q^{n}");
        assert_eq!(p.coeff(n), shuffle.coeff(n), "shuffle mismatch at q^{n}");
    }
    println!("pair ({r},{s}): both expansions of P_({r},{s}) agree on q^1..q^{order}");
    println!("  q^1 coefficient: {}", p.coeff(1));

    // and run the full check, constant terms included
    let params = VerifyParams { order, prec: 50, tolerance: 1e-22 };
    let report = verify_double_shuffle(k, &params)?;
    print!("{}", report.render_human(params.tolerance));
    assert!(report.passed());
    Ok(())
}
