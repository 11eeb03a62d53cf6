//! `intdiff`: an equational prover and toolbox for integro-differential
//! operators.
//!
//! Exit codes: `0` success or equal, `1` unequal or a failed verification,
//! `2` usage, parse or elaboration error.

mod commands;
mod ring_tag;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use intdiff::tenred::SystemName;
use intdiff::Error;

use ring_tag::RingTag;

/// Integro-differential operators with exact arithmetic.
#[derive(Parser, Debug)]
#[command(name = "intdiff", version, about)]
pub struct Cli {
    /// Coefficient ring: qx, laurentlog, exppoly:rec, exppoly:eval0,
    /// hurwitz:p,N (p ∈ {0,2,3,5,7}), shifted:c, matrix:n,<ring>.
    #[arg(long, global = true, default_value = "qx")]
    pub ring: RingTag,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print every rewrite step.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Named ring element, `name=expression`; may be repeated.
    #[arg(long = "let", global = true, value_name = "NAME=EXPR", allow_hyphen_values = true)]
    pub lets: Vec<String>,
    /// Functional `φ(f) = E(g·f)`, `name=g`; may be repeated.
    #[arg(long = "phi", global = true, value_name = "NAME=G")]
    pub phis: Vec<String>,
    /// Treat `E` as multiplicative (`E·f = (Ef)·E`); sound only for
    /// multiplicative evaluations.
    #[arg(long, global = true)]
    pub multiplicative: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Subcommands.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Prints the normal form of an operator expression.
    Normalize {
        /// Operator expression, e.g. `i*x*d`.
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Decides the equality of two operator expressions.
    Prove {
        /// Left side.
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        /// Right side.
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Checks confluence of a tensor reduction system.
    Confluence {
        /// diff, ido-defining, ido, ido-phi-defining, ido-phi, ido-phi-mult,
        /// ido-phi-mult-e.
        system: SystemName,
        /// Also compare irreducible words up to this length with their
        /// closed-form description.
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Expands the product of two nested integrals by the generalized
    /// shuffle relation.
    Shuffle {
        /// Letters of the first word, `∫f₁∫f₂…`.
        #[arg(long = "f", required = true, allow_hyphen_values = true)]
        f: Vec<String>,
        /// Letters of the second word.
        #[arg(long = "g", required = true, allow_hyphen_values = true)]
        g: Vec<String>,
    },
    /// Splits an element by the Taylor formula with integral remainder.
    Taylor {
        /// The element.
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// Order.
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Repeated integrals `x_k = ∫ᵏ1` and the constants `E(x_m·x_k)`.
    Xn {
        /// Largest index.
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Right inverse of `∂ + a` (one solution) or of a monic scalar
    /// operator by variation of constants.
    Voc(OdeArgs),
    /// Green's operator with homogeneous initial conditions.
    Green(OdeArgs),
}

/// Arguments shared by `voc` and `green`.
#[derive(clap::Args, Debug)]
pub struct OdeArgs {
    /// Coefficients `a₀, …, a_{n−1}` of `L = ∂ⁿ + Σ aₖ∂ᵏ`, in order.
    #[arg(long = "a", required = true, allow_hyphen_values = true)]
    pub a: Vec<String>,
    /// Fundamental system `z₁, …, zₙ`.
    #[arg(long = "z", required = true, allow_hyphen_values = true)]
    pub z: Vec<String>,
    /// Right inverse of `z` (first order) or of the Wronskian (order n);
    /// found by the ring otherwise.
    #[arg(long, allow_hyphen_values = true)]
    pub inv: Option<String>,
    /// Initial-condition matrix `c`, e.g. `[[1,0],[0,1]]`.
    #[arg(long)]
    pub c: Option<String>,
    /// Cross-check a scalar right inverse through the companion system.
    #[arg(long)]
    pub companion: bool,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Elaborate(_) | Error::UnknownFunctional(_) | Error::SizeMismatch(_) | Error::InvalidProblem(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialize"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
