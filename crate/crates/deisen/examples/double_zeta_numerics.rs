//! High-precision double zeta values and their normalized forms.
//!
//! Evaluates zeta(r,s), the (2 pi i)^{r+s}-normalized zeta~(r,s), checks
//! the stuffle identity numerically, and shows the regularized values at
//! s = 1.
//!
//! Usage: cargo run --example double_zeta_numerics

use deisen::hp::NumericCtx;
use deisen::zetapoly::{dzeta_symbol, zeta_symbol};

fn main() -> Result<(), deisen::Error> {
    let mut ctx = NumericCtx::new(50);

    let (r, s) = (3u32, 9u32);
    let z = ctx.dzeta(r, s)?;
    println!("zeta({r},{s})    = {}", ctx.format(&z));
    let t = ctx.dzeta_tilde(r, s)?;
    println!("zeta~({r},{s}) re = {}", ctx.format(&t.re));
    println!("zeta~({r},{s}) im = {}", ctx.format(&t.im));

    // stuffle: zeta(r,s) + zeta(s,r) + zeta(r+s) = zeta(r) zeta(s),
    // evaluated through the symbol ring
    let stuffle = &(&(&dzeta_symbol(r, s)? + &dzeta_symbol(s, r)?) + &zeta_symbol(r + s)?)
        - &(&zeta_symbol(r)? * &zeta_symbol(s)?);
    let v = ctx.eval_zeta_poly(&stuffle)?;
    println!(
        "stuffle residual ({r},{s}): re {:e}, im {:e}",
        NumericCtx::to_f64(&v.re),
        NumericCtx::to_f64(&v.im)
    );
    assert!(NumericCtx::to_f64(&v.re).abs() < 1e-40);

    // regularized boundary values
    let reg = ctx.dzeta_tilde(1, 1)?;
    println!("zeta~(1,1)   = {} (exactly 1/48)", ctx.format(&reg.re));
    let reg = ctx.dzeta_tilde(11, 1)?;
    println!("zeta~(11,1) re = {}", ctx.format(&reg.re));
    Ok(())
}
