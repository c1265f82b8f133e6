//! Congruences among decomposition coefficients.
//!
//! For each supported weight and each prime p > k dividing the numerator
//! of the Bernoulli number B_k, the normalized coefficients q_{r,s}
//! (excluding the vanishing (k-1,1) entry) share a single nonzero residue
//! modulo p. At weight 12 the integer-scaled entries are all congruent to
//! 568 mod 691.
//!
//! Usage: cargo run --example congruences

use deisen::lfunc::{coeff_vector, ratio_table};
use deisen::rat::rat_mod_p;
use deisen::verify::{qualifying_primes, supported_weights};

fn main() -> Result<(), deisen::Error> {
    for &k in supported_weights() {
        let primes = qualifying_primes(k);
        println!(
            "weight {k}: qualifying primes {:?}",
            primes.iter().map(|p| p.to_string()).collect::<Vec<_>>()
        );
        let table = ratio_table(k, 60)?;
        let v = coeff_vector(k, &table)?;
        for p in &primes {
            let mut residues = Vec::new();
            for (&r, e) in &v.entries {
                if r == k - 1 {
                    continue;
                }
                let res = rat_mod_p(e, p).expect("denominator invertible mod p");
                residues.push(res);
            }
            assert!(residues.windows(2).all(|w| w[0] == w[1]));
            assert!(!num_traits::Zero::is_zero(&residues[0]));
            let scaled = (&v.integer_scale * &residues[0]) % p;
            println!(
                "  mod {p}: normalized residue {}, scaled residue {}",
                residues[0], scaled
            );
        }
    }
    Ok(())
}
