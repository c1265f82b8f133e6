//! Command-line front end: series constructors, L-value tables, double
//! zeta numerics, the eigenform decomposition, and the verification
//! checks, with human-readable or JSON-lines output.
//!
//! Exit codes: 0 all checks pass, 1 any check fails, 2 usage or domain
//! error, 3 precision or reconstruction failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use deisen::deisenstein::{double_eisenstein, epsilon, g, g_half, gdouble, gstar, p_series};
use deisen::hp::NumericCtx;
use deisen::lfunc::{kz_check, ratio_table_cached};
use deisen::modforms::{delta, eigenform, eisenstein};
use deisen::verify::{
    decompose, supported_weights, verify_all, verify_congruence, verify_corollary,
    verify_double_shuffle, verify_gkz_theorem3, verify_independence, verify_kz, verify_popa,
    verify_theorem_main, VerifyParams, VerifyReport,
};
use deisen::Error;

#[derive(Parser)]
#[command(
    name = "deisen",
    version,
    about = "Double Eisenstein series, eigenform decompositions, and identity verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// q-series truncation order
    #[arg(long, global = true, default_value_t = 40)]
    order: usize,

    /// numeric precision in decimal digits
    #[arg(long, global = true, default_value_t = 60)]
    prec: u32,

    /// absolute tolerance for numeric residuals
    #[arg(long, global = true, default_value_t = 1e-25)]
    tolerance: f64,

    /// emit JSON lines instead of human-readable text
    #[arg(long, global = true)]
    json: bool,

    /// cache directory for L-value tables (overrides DEISEN_CACHE)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the eigenform decomposition into interpolated double
    /// Eisenstein series (ratios, coefficients, scalar, congruences)
    Decompose {
        #[arg(long)]
        weight: u32,
    },
    /// Print the period-ratio table, reconstruction residuals, and the
    /// extra-relation check value
    Lvalues {
        #[arg(long)]
        weight: u32,
    },
    /// Dump a named series constructor as "n<TAB>coefficient" lines
    Series {
        /// one of: eisenstein, delta, eigenform, g, gstar, gdouble,
        /// epsilon, double, ghalf, p
        #[arg(long)]
        kind: SeriesKind,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        weight: Option<u32>,
    },
    /// Print the double zeta value and its normalized form
    Mzv {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
    },
    /// Run verification checks
    Verify {
        check: Check,
        /// restrict to one weight (default: every applicable weight)
        #[arg(long)]
        weight: Option<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Eisenstein,
    Delta,
    Eigenform,
    G,
    Gstar,
    Gdouble,
    Epsilon,
    Double,
    Ghalf,
    P,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Theorem,
    Doubleshuffle,
    Gkz3,
    Popa,
    Kz,
    Corollary,
    Congruence,
    Independence,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::PrecisionTooLow(_) | Error::ReconstructionFailed { .. } => {
                    ExitCode::from(3)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    cli.cache_dir
        .clone()
        .or_else(|| std::env::var_os("DEISEN_CACHE").map(PathBuf::from))
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let params = VerifyParams {
        order: cli.order,
        prec: cli.prec,
        tolerance: cli.tolerance,
    };
    match &cli.cmd {
        Cmd::Decompose { weight } => cmd_decompose(cli, *weight),
        Cmd::Lvalues { weight } => cmd_lvalues(cli, *weight),
        Cmd::Series { kind, r, s, weight } => cmd_series(cli, *kind, *r, *s, *weight),
        Cmd::Mzv { r, s } => cmd_mzv(cli, *r, *s),
        Cmd::Verify { check, weight } => cmd_verify(cli, &params, *check, *weight),
    }
}

fn cmd_decompose(cli: &Cli, weight: u32) -> Result<ExitCode, Error> {
    let dir = cache_dir(cli);
    let (table, _) = ratio_table_cached(weight, cli.prec, dir.as_deref())?;
    let d = decompose(weight, &table)?;
    if cli.json {
        for (r, s, entry, scaled) in &d.entries {
            println!(
                "{}",
                serde_json::json!({
                    "weight": d.weight, "r": r, "s": s,
                    "entry": entry, "scaled": scaled,
                })
            );
        }
        println!(
            "{}",
            serde_json::json!({
                "weight": d.weight, "prec": d.prec,
                "integer_scale": d.integer_scale,
                "theorem_scalar": d.theorem_scalar,
                "scaled_scalar": d.scaled_scalar,
                "congruences": d.congruences,
                "note": d.note,
            })
        );
    } else {
        println!("weight {} decomposition (prec {})", d.weight, d.prec);
        println!("period ratios L*(s)/L*(k-1):");
        for (s, v) in &d.ratios {
            println!("  s={s}: {v}");
        }
        println!("coefficients q_(r,s) (normalized by L*(k-1)):");
        for (r, s, entry, scaled) in &d.entries {
            println!("  ({r},{s}): {entry}   scaled: {scaled}");
        }
        println!("integer scale: {}", d.integer_scale);
        println!("theorem scalar: {}", d.theorem_scalar);
        println!(
            "integer-scaled identity: sum c_(r,s) * Ghalf_(r,s) = {} * f",
            d.scaled_scalar
        );
        for c in &d.congruences {
            println!("{c}");
        }
        if !d.note.is_empty() {
            println!("note: {}", d.note);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_lvalues(cli: &Cli, weight: u32) -> Result<ExitCode, Error> {
    let dir = cache_dir(cli);
    let (table, hit) = ratio_table_cached(weight, cli.prec, dir.as_deref())?;
    let kz = kz_check(weight, &table)?;
    if cli.json {
        for (s, v) in &table.ratios {
            println!(
                "{}",
                serde_json::json!({
                    "weight": weight, "s": s,
                    "ratio": deisen::rat::format_rat(v),
                    "residual": table.residuals.get(s).copied().unwrap_or(0.0),
                })
            );
        }
        println!(
            "{}",
            serde_json::json!({
                "weight": weight,
                "kz_check": deisen::rat::format_rat(&kz),
                "cache_hit": hit,
            })
        );
    } else {
        println!("weight {} period ratios (prec {}):", weight, table.prec);
        for (s, v) in &table.ratios {
            let r = table.residuals.get(s).copied().unwrap_or(0.0);
            println!("  L*({s})/L*({}) = {}   residual {:e}", weight - 1, deisen::rat::format_rat(v), r);
        }
        println!("extra-relation check: {}", deisen::rat::format_rat(&kz));
        if hit {
            println!("(served from cache)");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_series(
    cli: &Cli,
    kind: SeriesKind,
    r: Option<u32>,
    s: Option<u32>,
    weight: Option<u32>,
) -> Result<ExitCode, Error> {
    let order = cli.order;
    let need = |v: Option<u32>, name: &str| {
        v.ok_or_else(|| Error::Config(format!("this series kind requires --{name}")))
    };
    let series = match kind {
        SeriesKind::Eisenstein => eisenstein(need(r.or(weight), "r")?, order)?,
        SeriesKind::Delta => delta(order),
        SeriesKind::Eigenform => eigenform(need(weight.or(r), "weight")?, order)?,
        SeriesKind::G => g(need(r, "r")?, order)?,
        SeriesKind::Gstar => gstar(need(r, "r")?, order),
        SeriesKind::Gdouble => gdouble(need(r, "r")?, need(s, "s")?, order)?,
        SeriesKind::Epsilon => epsilon(need(r, "r")?, need(s, "s")?, order)?,
        SeriesKind::Double => double_eisenstein(need(r, "r")?, need(s, "s")?, order)?,
        SeriesKind::Ghalf => g_half(need(r, "r")?, need(s, "s")?, order)?,
        SeriesKind::P => p_series(need(r, "r")?, need(s, "s")?, order)?,
    };
    print!("{}", series.dump());
    Ok(ExitCode::SUCCESS)
}

fn cmd_mzv(cli: &Cli, r: u32, s: u32) -> Result<ExitCode, Error> {
    let mut ctx = NumericCtx::new(cli.prec);
    let plain = if s >= 2 { Some(ctx.dzeta(r, s)?) } else { None };
    let tilde = ctx.dzeta_tilde(r, s)?;
    if cli.json {
        println!(
            "{}",
            serde_json::json!({
                "r": r, "s": s, "prec": cli.prec,
                "zeta": plain.as_ref().map(|v| ctx.format(v)),
                "zeta_tilde_re": ctx.format(&tilde.re),
                "zeta_tilde_im": ctx.format(&tilde.im),
            })
        );
    } else {
        match &plain {
            Some(v) => println!("zeta({r},{s}) = {}", ctx.format(v)),
            None => println!("zeta({r},{s}): regularized value (s = 1), plain sum diverges"),
        }
        println!("zeta~({r},{s}) re = {}", ctx.format(&tilde.re));
        println!("zeta~({r},{s}) im = {}", ctx.format(&tilde.im));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_check(
    check: Check,
    k: u32,
    params: &VerifyParams,
) -> Result<Vec<VerifyReport>, Error> {
    Ok(match check {
        Check::Theorem => vec![verify_theorem_main(k, params)?],
        Check::Doubleshuffle => vec![verify_double_shuffle(k, params)?],
        Check::Gkz3 => vec![verify_gkz_theorem3(k, params)?],
        Check::Popa => vec![verify_popa(k, params)?],
        Check::Kz => vec![verify_kz(k, params)?],
        Check::Corollary => vec![verify_corollary(k, params)?],
        Check::Congruence => vec![verify_congruence(k, params)?],
        Check::Independence => vec![verify_independence(k, params)?],
        Check::All => verify_all(k, params)?,
    })
}

fn cmd_verify(
    cli: &Cli,
    params: &VerifyParams,
    check: Check,
    weight: Option<u32>,
) -> Result<ExitCode, Error> {
    let weights: Vec<u32> = match (weight, check) {
        (Some(k), _) => vec![k],
        // the double shuffle relation holds for every even weight, not
        // just the dimension-one ones
        (None, Check::Doubleshuffle) => (4..=26).step_by(2).collect(),
        (None, _) => supported_weights().to_vec(),
    };

    let mut all_ok = true;
    for k in weights {
        for report in run_check(check, k, params)? {
            all_ok &= report.passed();
            if cli.json {
                println!("{}", serde_json::to_string(&report).expect("report serializes"));
            } else {
                print!("{}", report.render_human(params.tolerance));
            }
        }
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
