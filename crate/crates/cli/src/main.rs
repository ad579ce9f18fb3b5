use std::process::ExitCode;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::{Args, Parser, Subcommand};

mod commands;

use burnside_core::ring::RingSpec;
use burnside_core::{Config, Error};

#[derive(Parser)]
#[command(name = "burnside", version, about = "Burnside rings, bisets and separability of small finite groups")]
struct Cli {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest group order accepted, including product groups built internally.
    #[arg(long, global = true, env = "BURNSIDE_MAX_ORDER", default_value_t = Config::default().max_order)]
    max_order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArg {
    /// Group, e.g. `S3`, `D8`, `Q8`, `prod(C2,C2)` or `perm:(1,2,3);(1,2)`.
    spec: String,
}

#[derive(Args)]
struct RingArgs {
    /// Group, e.g. `S3` or `prod(C2,C2)`.
    spec: String,
    /// Coefficient ring: `Z`, `Q` or `Z/<m>`.
    #[arg(long, value_parser = parse_ring)]
    ring: RingSpec,
}

#[derive(Subcommand)]
enum Command {
    /// Basic facts about a group.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Conjugacy classes of subgroups.
    Subgroups(GroupArg),
    /// Table of marks.
    Tom(GroupArg),
    /// Primitive idempotents of the Burnside algebra.
    Idempotents(RingArgs),
    /// The conjugation G-set, optionally inverted.
    Gamma {
        #[command(flatten)]
        args: RingArgs,
        #[arg(long)]
        invert: bool,
    },
    /// Checks diagonal restriction after diagonal induction against multiplication by Gamma.
    MackeyCheck(GroupArg),
    /// Separability verdicts with witnesses or certificates.
    Separable {
        #[command(subcommand)]
        claim: Claim,
    },
    /// Commutant of the shifted Burnside functor inside that of G x G.
    Commutant(RingArgs),
    /// Derivations of the Burnside algebra into itself.
    Derivations(RingArgs),
}

#[derive(Subcommand)]
enum GroupCommand {
    Info(GroupArg),
}

#[derive(Subcommand)]
enum Claim {
    /// Separability of the algebra.
    Ring(RingArgs),
    /// Separability of the shifted Green biset functor.
    Functor(RingArgs),
}

fn parse_ring(text: &str) -> Result<RingSpec, String> {
    RingSpec::parse(text).map_err(|e| e.to_string())
}

fn fail(code: &str, message: &str) -> ExitCode {
    eprintln!("{code}: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let message = text.lines().next().unwrap_or("bad arguments").trim_start_matches("error: ");
            let ring_arg = e.kind() == ErrorKind::ValueValidation
                && matches!(e.get(ContextKind::InvalidArg), Some(ContextValue::String(a)) if a.starts_with("--ring"));
            let code = if ring_arg { "E_RING" } else { "E_PARSE" };
            return fail(code, message);
        }
    };
    let config = Config { max_order: cli.max_order, ..Config::default() };
    match commands::run(&cli.command, &config) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(e.code(), &error_message(&e)),
    }
}

fn error_message(e: &Error) -> String {
    e.to_string().replace('\n', " ")
}
