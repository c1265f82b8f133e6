//! Decompose a Hecke eigenform into interpolated double Eisenstein series.
//!
//! Builds the period-ratio table for a supported weight (default 12),
//! assembles the coefficient vector q_{r,s}, and checks the decomposition
//! against the eigenform coefficient by coefficient.
//!
//! Usage: cargo run --example eigenform_decomposition [weight]

use deisen::deisenstein::g_half;
use deisen::lfunc::{coeff_vector, ratio_table, theorem_scalar};
use deisen::modforms::eigenform;
use deisen::qseries::QSeries;
use deisen::rat::format_rat;
use deisen::zetapoly::ZetaPoly;

fn main() -> Result<(), deisen::Error> {
    let k: u32 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(12);
    let order = 20;

    let table = ratio_table(k, 60)?;
    println!("period ratios for weight {k}:");
    for (s, v) in &table.ratios {
        println!("  L*({s})/L*({}) = {}", k - 1, format_rat(v));
    }

    let v = coeff_vector(k, &table)?;
    println!("\ncoefficients q_(r,s) and their integer-scaled form (scale {}):", v.integer_scale);
    for (&r, e) in &v.entries {
        println!("  ({r},{}): {}  ->  {}", k - r, format_rat(e), v.scaled_entries[&r]);
    }

    // rebuild the left-hand side and compare with scalar * f
    let mut lhs = QSeries::zero(order);
    for (&r, e) in &v.entries {
        lhs = lhs.add(&g_half(r, k - r, order)?.scale_rat(e));
    }
    let f = eigenform(k, order)?;
    let c = theorem_scalar(k)?;
    println!("\ndecomposition scalar: {}", format_rat(&c));

    for n in 1..=order {
        let expect = ZetaPoly::from_rat(&c * f.rational_coeff(n)?);
        assert_eq!(*lhs.coeff(n), expect, "mismatch at q^{n}");
    }
    println!("verified: sum q_(r,s) * Ghalf_(r,s) = scalar * f on q^1..q^{order}");
    Ok(())
}
