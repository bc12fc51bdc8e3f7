mod cli;
mod grid;
mod numfmt;

use std::io;
use std::process::ExitCode;

use clap::Parser;
use conemetric::verify::{self, Fault, Level};
use conemetric::{
    asymptotic_constants, geodesic_distance, k_a_half, radial_lower_bound, rho_eval, rho_half, ConeDensityQuery,
    InfinityBehavior, SignatureParam,
};

use cli::{Cli, Command, FaultArg, GridArgs, VerifyLevel};
use grid::GridLayout;
use numfmt::{fmt_complex, fmt_sig};

enum Failure {
    Verification,
    Library(conemetric::Error),
    Io(io::Error),
}

impl From<conemetric::Error> for Failure {
    fn from(e: conemetric::Error) -> Self {
        Failure::Library(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let digits = cli.digits;
    match cli.command {
        Command::Density { alpha, z } => {
            let s = SignatureParam::from_alpha(alpha)?;
            let r = rho_eval(&ConeDensityQuery::new(s, z.0)?)?;
            println!("alpha       {}", fmt_sig(alpha, digits));
            println!("z           {}", fmt_complex(z.0.re, z.0.im, digits));
            println!("rho         {}", fmt_sig(r.value, digits));
            println!("method      {}+{}", r.method, r.method_star);
            println!("est_rel_err {:.2e}", r.est_rel_err);
        }
        Command::Distance { alpha, z1, z2 } => {
            let s = SignatureParam::from_alpha(alpha)?;
            let d = geodesic_distance(&s, z1.0, z2.0)?;
            let lb = radial_lower_bound(&s, z1.0, z2.0)?;
            println!("distance    {}", fmt_sig(d, digits));
            println!("lower_bound {}", fmt_sig(lb, digits));
        }
        Command::Grid(args) => grid(args, digits)?,
        Command::Verify { level, inject_fault } => {
            let level = match level {
                VerifyLevel::Quick => Level::Quick,
                VerifyLevel::Full => Level::Full,
            };
            let fault = match inject_fault {
                None => Fault::None,
                Some(FaultArg::ElliottSign) => Fault::ElliottSign,
            };
            let outcomes = verify::run_all(level, fault);
            println!("{:<38} {:>8} {:>10} {:>10} {:>9}  result", "check", "samples", "worst", "tolerance", "time");
            for o in &outcomes {
                println!(
                    "{:<38} {:>8} {:>10.2e} {:>10.0e} {:>8.2}s  {}",
                    o.name,
                    o.samples,
                    o.worst,
                    o.tolerance,
                    o.elapsed.as_secs_f64(),
                    if o.passed { "PASS" } else { "FAIL" }
                );
                if let Some(err) = &o.error {
                    println!("  {err}");
                }
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Err(Failure::Verification);
            }
        }
        Command::Constants { alpha } => {
            let s = SignatureParam::from_alpha(alpha)?;
            let c = asymptotic_constants(&s);
            println!("a           {}", fmt_sig(s.a(), digits));
            println!("alpha       {}", fmt_sig(s.alpha(), digits));
            println!("c0          {}", fmt_sig(c.c0, digits));
            println!("c1          {}", fmt_sig(c.c1, digits));
            match c.at_infinity {
                InfinityBehavior::Cone { c_inf, exponent } => {
                    println!("c_inf       {}", fmt_sig(c_inf, digits));
                    println!("exponent    {}", fmt_sig(exponent, digits));
                }
                InfinityBehavior::Cusp => println!("c_inf       cusp"),
            }
            println!("rho(1/2)    {}", fmt_sig(rho_half(&s), digits));
            println!("K_a(1/2)    {}", fmt_sig(k_a_half(&s), digits));
        }
    }
    Ok(())
}

fn grid(args: GridArgs, digits: u8) -> Result<(), Failure> {
    let layout = GridLayout {
        re_min: args.re_min,
        re_max: args.re_max,
        im_min: args.im_min,
        im_max: args.im_max,
        nx: args.nx,
        ny: args.ny,
        alpha: args.alpha,
    };
    let (records, skipped) = grid::evaluate(&layout, digits)?;
    for z in skipped {
        eprintln!("warning: skipping singular node z={}", fmt_complex(z.re, z.im, digits));
    }
    let bytes = grid::render(&records, args.format)?;
    grid::write_output(&args.out, &bytes)?;
    Ok(())
}
