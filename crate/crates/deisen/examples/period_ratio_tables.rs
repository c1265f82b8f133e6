//! Exact period-ratio tables for every supported weight.
//!
//! For each weight with a one-dimensional cusp space, computes the
//! completed L-values numerically, reconstructs the exact rational ratios
//! L*(s)/L*(k-1), and validates them with the extra linear relation among
//! critical L-values (which must vanish identically).
//!
//! Usage: cargo run --example period_ratio_tables

use deisen::lfunc::{kz_check, ratio_table};
use deisen::rat::format_rat;
use deisen::verify::supported_weights;

fn main() -> Result<(), deisen::Error> {
    for &k in supported_weights() {
        let table = ratio_table(k, 60)?;
        println!("weight {k}:");
        for (s, v) in &table.ratios {
            println!("  L*({s})/L*({}) = {}", k - 1, format_rat(v));
        }
        let kz = kz_check(k, &table)?;
        println!("  extra-relation value: {} (must be 0)", format_rat(&kz));
        assert!(num_traits::Zero::is_zero(&kz));
    }
    Ok(())
}
