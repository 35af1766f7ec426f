//! `free-meixner`: evaluate, classify, convolve and verify free Meixner laws
//! from the shell, emitting JSON or plot-ready CSV.
//!
//! Numbers written as `p/q` or integers select exact rational arithmetic;
//! decimals select floating point. Exit codes: 0 success, 1 verification
//! failure, 2 usage or domain error.

mod commands;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use input::Number;
use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "free-meixner",
    version,
    about = "Free Meixner laws: densities, moments, cumulants and identity checks"
)]
struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

/// Parameters `(a, b)` of a free Meixner law; `b >= -1`.
#[derive(Debug, Clone, Args)]
pub struct Law {
    #[arg(long, allow_hyphen_values = true)]
    a: Number,
    #[arg(long, allow_hyphen_values = true)]
    b: Number,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Regression,
    Recursion,
    Orthogonality,
    Levy,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Density of the continuous part on a grid, with support and atoms in the header.
    Density {
        #[command(flatten)]
        law: Law,
        /// Defaults to the left support endpoint.
        #[arg(long, allow_hyphen_values = true)]
        xmin: Option<f64>,
        /// Defaults to the right support endpoint.
        #[arg(long, allow_hyphen_values = true)]
        xmax: Option<f64>,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
    /// Moments m_0..m_N.
    Moments {
        #[command(flatten)]
        law: Law,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Free cumulants R_1..R_N.
    Cumulants {
        #[command(flatten)]
        law: Law,
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// nc_le2, semicircle or from_moments.
        #[arg(long, default_value = "from_moments")]
        method: String,
        /// Use the q-deformed cumulant recurrence with this q in (-1, 1].
        #[arg(long, allow_hyphen_values = true)]
        q: Option<Number>,
    },
    /// Type of the law and the region predicates that select it.
    Classify {
        #[command(flatten)]
        law: Law,
    },
    /// Point masses of the law.
    Atoms {
        #[command(flatten)]
        law: Law,
    },
    /// Moments of the free convolution power mu^{boxplus t}, t >= 1, optionally dilated.
    ConvolvePower {
        #[command(flatten)]
        law: Law,
        #[arg(long, allow_hyphen_values = true)]
        t: Number,
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Dilation factor applied after the power.
        #[arg(long, allow_hyphen_values = true)]
        dilation: Option<Number>,
    },
    /// Check identities order by order; exit code 1 on any failure.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<Number>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<Number>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<Number>,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<Number>,
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<Number>,
        /// Earlier time of the process.
        #[arg(long, allow_hyphen_values = true)]
        s: Option<Number>,
        /// Later time of the process.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<Number>,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Marginal of the free Levy process with parameters (eta, sigma) at time t.
    Levy {
        #[arg(long, allow_hyphen_values = true)]
        eta: Number,
        #[arg(long, allow_hyphen_values = true)]
        sigma: Number,
        #[arg(long, allow_hyphen_values = true)]
        t: Number,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Cauchy transform G(z) and R-transform r(z) at a complex point such as 3+0.5i.
    Transform {
        #[command(flatten)]
        law: Law,
        #[arg(long, allow_hyphen_values = true)]
        z: Complex64,
        /// Also report -(1/pi) Im G(Re z + i eps) next to the density at Re z.
        #[arg(long)]
        eps: Option<f64>,
    },
}

fn run(command: Command) -> commands::Outcome {
    match command {
        Command::Density {
            law,
            xmin,
            xmax,
            points,
        } => commands::density(&law, xmin, xmax, points),
        Command::Moments { law, n } => commands::moments(&law, n),
        Command::Cumulants { law, n, method, q } => {
            commands::cumulants(&law, n, &method, q.as_ref())
        }
        Command::Classify { law } => commands::classify(&law),
        Command::Atoms { law } => commands::atoms(&law),
        Command::ConvolvePower {
            law,
            t,
            n,
            dilation,
        } => commands::convolve_power(&law, &t, n, dilation.as_ref()),
        Command::Verify {
            suite,
            a,
            b,
            alpha,
            eta,
            sigma,
            s,
            u,
            n,
        } => commands::verify(
            suite,
            &commands::VerifyInputs {
                a,
                b,
                alpha,
                eta,
                sigma,
                s,
                u,
                n,
            },
        ),
        Command::Levy { eta, sigma, t, n } => commands::levy(&eta, &sigma, &t, n),
        Command::Transform { law, z, eps } => commands::transform(&law, z, eps),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((output, passed)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(output.render(cli.format).as_bytes())
                .is_err()
            {
                return ExitCode::from(2);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
