//! Run the complete verification suite for one weight.
//!
//! Executes every check — the main decomposition, double shuffle, the
//! period-polynomial identities, the extra L-value relation, the
//! constant-term corollary, the congruences, and linear independence —
//! and prints one report per check.
//!
//! Usage: cargo run --example verify_everything [weight]

use deisen::verify::{verify_all, VerifyParams};

fn main() -> Result<(), deisen::Error> {
    let k: u32 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(12);
    let params = VerifyParams { order: 20, prec: 50, tolerance: 1e-22 };
    let mut ok = true;
    for report in verify_all(k, &params)? {
        print!("{}", report.render_human(params.tolerance));
        ok &= report.passed();
    }
    assert!(ok, "some checks failed");
    Ok(())
}
