//! `uqcenter`: batch front end for the orbit, block, character ring and `u_q(sl2)` computations.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors or inadmissible `l`.

mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use uqcenter::affine_orbits::{Action, DEFAULT_BUDGET};
use uqcenter::RootType;

use commands::Outcome;
use config::{Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "uqcenter", version, about = "Exact computations for small quantum groups at odd roots of unity")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Cartan type: A, D or E
    #[arg(long = "type", global = true, default_value = "A", value_parser = parse_type)]
    root_type: RootType,
    #[arg(long, global = true, default_value_t = 1)]
    rank: usize,
    /// Order of the root of unity
    #[arg(long, global = true, default_value_t = 3)]
    l: u32,
    /// bullet, circ or circ-q
    #[arg(long, global = true, default_value = "bullet", value_parser = parse_action)]
    action: Action,
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    #[arg(long, global = true)]
    csv: bool,
    /// Largest number of lattice points an enumeration may visit
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Admissibility of l for the root datum
    CheckL,
    /// Weyl orbits on the restricted weights
    Orbits,
    /// Block dimensions of the central subalgebras
    Blocks,
    /// Enumerated block totals against the closed forms for every odd l up to --max-l
    Crosscheck {
        #[arg(long, default_value_t = 13)]
        max_l: u32,
    },
    /// The rank-one character ring at --l
    Charring {
        #[command(subcommand)]
        op: CharOp,
    },
    /// The small quantum group u_q(sl2) at --l
    Sl2 {
        #[command(subcommand)]
        op: Sl2Op,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum CharOp {
    /// xi(i) expanded in the Laurent basis of monomials
    Xi { i: usize },
    /// xi(i) * xi(j)
    Product { i: usize, j: usize },
    Radical,
    Socle,
    /// Characters of the tilting modules T(l+i), 0 <= i <= l-2
    Tilting,
    /// The Steinberg identities of the character ring
    Steinberg,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Sl2Op {
    /// Every Hopf, duality, center and Fourier identity
    VerifyAll,
    /// Basis of the center in PBW coordinates
    Center,
    /// The normalized two-sided integral
    Integral,
    /// Dimensions of Z~, Z', their sum and intersection, and the block idempotents
    Subalgebras,
}

fn parse_type(s: &str) -> Result<RootType, String> {
    s.parse().map_err(|e: uqcenter::Error| e.to_string())
}

fn parse_action(s: &str) -> Result<Action, String> {
    s.parse().map_err(|e: uqcenter::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global;
    let config = RunConfig {
        root_type: g.root_type,
        rank: g.rank,
        l: g.l,
        action: g.action,
        format: match (g.json, g.csv) {
            (true, _) => Format::Json,
            (_, true) => Format::Csv,
            _ => Format::Text,
        },
        budget: g.budget,
    };
    let result = match cli.command {
        Command::CheckL => commands::check_l(&config),
        Command::Orbits => commands::orbits(&config),
        Command::Blocks => commands::blocks(&config),
        Command::Crosscheck { max_l } => commands::crosscheck(&config, max_l),
        Command::Charring { op } => commands::charring(&config, &op),
        Command::Sl2 { op } => commands::sl2(&config, &op),
    };
    match result {
        Ok(Outcome { text, code }) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
