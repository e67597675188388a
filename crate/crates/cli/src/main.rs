use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "flagorbits", version, about = "Orbit calculus on flag manifolds and the Sp(2,R) laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the roots of a B or C root system.
    Roots(SystemArgs),
    /// Enumerate W_Theta, or inspect one Weyl element given by --w.
    Weyl {
        #[command(flatten)]
        system: SystemArgs,
        /// Signed permutation, e.g. "-2,1" (one-based images).
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
    },
    /// Operations on orbit descriptors (gammas, w, theta).
    Descriptor {
        #[arg(value_enum)]
        op: DescriptorOp,
        #[command(flatten)]
        descriptor: DescriptorArgs,
    },
    /// The Sp(2,R) laboratory.
    Sp2 {
        #[command(subcommand)]
        command: Sp2Command,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DescriptorOp {
    Normalize,
    Certify,
    Boundary,
    Inequality,
}

#[derive(Args, Clone)]
struct SystemArgs {
    #[arg(long, default_value = "C")]
    family: String,
    #[arg(long, default_value_t = 2)]
    rank: usize,
    /// Comma-separated simple roots, e.g. "e1-e2".
    #[arg(long, default_value = "")]
    theta: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct DescriptorArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Comma-separated noncompact positive roots, e.g. "2e1,e1+e2".
    #[arg(long, default_value = "")]
    gamma: String,
    #[arg(long, default_value = "e", allow_hyphen_values = true)]
    w: String,
    /// Real form for the beta-system choice: sp, so2odd or equalLength.
    #[arg(long)]
    form: Option<String>,
}

#[derive(Subcommand)]
enum Sp2Command {
    /// Classify the flag stored in a JSON file on both sides.
    Classify {
        #[arg(long)]
        flag: std::path::PathBuf,
        #[arg(long, default_value_t = flagorbits::sp2::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Check every representative against its K_C and G_R orbit.
    VerifyTable {
        #[arg(long, default_value_t = flagorbits::sp2::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Tangent ranks of the K_C-orbits through the representatives.
    Dims {
        #[arg(long)]
        json: bool,
    },
    /// Emit the closure diagram as DOT, optionally with saturation sampling.
    Diagram {
        /// Write the DOT text to this file instead of standard output.
        #[arg(long)]
        dot: Option<std::path::PathBuf>,
        /// Random P_k samples per edge (0 disables the check).
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = flagorbits::sp2::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Strata of gU+ and gU- for g = t1(s1) t2(s2), optionally moved by a random element of Sp(2,R).
    Strata {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        s1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        s2: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = flagorbits::sp2::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Search for a witness of an intersection claim at the boundary point x(s2).
    Search {
        #[arg(long)]
        claim: String,
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        s2: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest accepted violation.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Objective evaluations per start.
        #[arg(long, default_value_t = 2000)]
        budget: usize,
        #[arg(long, default_value_t = 32)]
        starts: usize,
        #[arg(long)]
        json: bool,
    },
    /// Parabolic indices lifting an orbit to S_op along the diagram.
    Lift {
        /// K_C orbit label, e.g. S1 or Sop.
        #[arg(long)]
        orbit: String,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.verified { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
