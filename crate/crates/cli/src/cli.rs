use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(name = "conemetric", version, about = "Hyperbolic metric with a cone point at infinity on the sphere punctured at 0 and 1")]
pub struct Cli {
    /// Significant digits in numeric output (17 round-trips every f64).
    #[arg(long, global = true, default_value_t = 15, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub digits: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density of the metric at one point.
    Density {
        #[arg(long)]
        alpha: f64,
        /// Point as `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        z: ComplexArg,
    },
    /// Geodesic distance between two points, with the radial lower bound.
    Distance {
        #[arg(long)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        z1: ComplexArg,
        #[arg(long, allow_hyphen_values = true)]
        z2: ComplexArg,
    },
    /// Density on a rectangular grid, written as CSV or JSON.
    Grid(GridArgs),
    /// Run the numerical self-checks.
    Verify {
        #[arg(value_enum, default_value_t = VerifyLevel::Quick)]
        level: VerifyLevel,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
    /// Asymptotic constants and closed-form values for a cone parameter.
    Constants {
        #[arg(long)]
        alpha: f64,
    },
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub re_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub re_max: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub im_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub im_max: f64,
    #[arg(long)]
    pub nx: usize,
    #[arg(long)]
    pub ny: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyLevel {
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    ElliottSign,
}

/// A complex number given as `re,im` (or a bare real).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(pub Complex64);

impl FromStr for ComplexArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("expected `re,im`, got `{s}`"))
        };
        let (re, im) = match s.split_once(',') {
            Some((re, im)) => (parse(re)?, parse(im)?),
            None => (parse(s)?, 0.0),
        };
        if !(re.is_finite() && im.is_finite()) {
            return Err(format!("non-finite coordinate in `{s}`"));
        }
        Ok(ComplexArg(Complex64::new(re, im)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_complex_pairs() {
        assert_eq!("0.5,0".parse::<ComplexArg>().unwrap().0, Complex64::new(0.5, 0.0));
        assert_eq!("-1, -2.5".parse::<ComplexArg>().unwrap().0, Complex64::new(-1.0, -2.5));
        assert_eq!("3".parse::<ComplexArg>().unwrap().0, Complex64::new(3.0, 0.0));
        assert!("1,x".parse::<ComplexArg>().is_err());
        assert!("nan,0".parse::<ComplexArg>().is_err());
    }

    #[test]
    fn negative_points_parse_as_values() {
        let cli = Cli::try_parse_from(["conemetric", "density", "--alpha", "0.5", "--z", "-1,0"]).unwrap();
        match cli.command {
            Command::Density { z, .. } => assert_eq!(z.0, Complex64::new(-1.0, 0.0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn digits_are_bounded() {
        assert!(Cli::try_parse_from(["conemetric", "--digits", "18", "constants", "--alpha", "0"]).is_err());
        assert!(Cli::try_parse_from(["conemetric", "constants", "--alpha", "0", "--digits", "17"]).is_ok());
    }
}
