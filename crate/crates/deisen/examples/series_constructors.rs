//! Tour of the q-series constructors.
//!
//! Shows the Eisenstein series, the discriminant cusp form, an eigenform
//! of higher weight, a double Eisenstein series with its symbolic zeta
//! coefficients, and the interpolated series entering the decomposition.
//!
//! Usage: cargo run --example series_constructors

use deisen::deisenstein::{double_eisenstein, g_half};
use deisen::modforms::{delta, eigenform, eisenstein, hecke_tp};

fn main() -> Result<(), deisen::Error> {
    let order = 8;

    let g4 = eisenstein(4, order)?;
    println!("G_4 up to q^{order}:");
    print!("{}", g4.dump());

    let d = delta(order);
    println!("\ndiscriminant form (tau coefficients):");
    print!("{}", d.dump());

    // Hecke eigen-check: T_2 f = a(2) f
    let f = eigenform(16, order)?;
    let t2 = hecke_tp(&f, 2, 16)?;
    let a2 = f.rational_coeff(2)?;
    assert!(t2.agrees_with(&f.scale_rat(&a2)));
    println!("\nweight-16 eigenform: a(2) = {} and T_2 f = a(2) f holds", a2);

    let de = double_eisenstein(3, 9, 5)?;
    println!("\ndouble Eisenstein G_(3,9) (note the symbolic zeta coefficients):");
    print!("{}", de.dump());

    let gh = g_half(1, 11, 5)?;
    println!("\ninterpolated Ghalf_(1,11) = G_(1,11) + G_12/2:");
    print!("{}", gh.dump());
    Ok(())
}
