use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use confmach::counter::{self, Acm, Urcm};
use confmach::differential::{self, Bounds, DiffMachine, DIFF_TM_MAX_BITS};
use confmach::machine::{self, Evaluation, InstructionSource, DEFAULT_FUEL};
use confmach::pairing::DEFAULT_MAX_BITS;
use confmach::turing::{self, Tcm};
use confmach::{Assembled, Codec, Error, Machine, Nat, Program};

const EXIT_DIFF_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_FUEL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "confmach",
    version,
    about = "Configuration machines over Cantor-paired codes"
)]
struct Cli {
    /// Largest bit length allowed for any pair result.
    #[arg(long, global = true)]
    max_bits: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MachineKind {
    Urcm,
    Acm,
    Tcm,
}

#[derive(Subcommand)]
enum Command {
    /// Cantor pair of two naturals.
    Pair {
        #[arg(value_parser = parse_nat)]
        a: Nat,
        #[arg(value_parser = parse_nat)]
        b: Nat,
    },
    /// Both projections of a code.
    Unpair {
        #[arg(value_parser = parse_nat)]
        z: Nat,
    },
    /// List code of a sequence.
    Encode {
        #[arg(value_parser = parse_nat)]
        items: Vec<Nat>,
    },
    /// Components of a list code, trailing zeros dropped.
    Decode {
        #[arg(value_parser = parse_nat)]
        code: Nat,
    },
    /// Assemble a source file into a program map and code number.
    Asm {
        #[arg(long, value_enum)]
        machine: MachineKind,
        #[arg(long = "file", value_name = "FILE")]
        file_flag: Option<PathBuf>,
        file: Option<PathBuf>,
    },
    /// Evaluate a program on arguments.
    #[command(alias = "eval")]
    Run(RunArgs),
    /// Print every configuration of a run.
    Trace(RunArgs),
    /// Compare coded machines with direct interpreters on random programs.
    Diff {
        #[arg(long, value_enum, default_value_t = MachineKind::Urcm)]
        machine: MachineKind,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    machine: MachineKind,
    /// Program given as a single code number.
    #[arg(long, value_parser = parse_nat, conflicts_with = "file", required_unless_present = "file")]
    code: Option<Nat>,
    /// Program given as assembly source.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_FUEL)]
    fuel: u64,
    #[arg(value_parser = parse_nat, required = true)]
    args: Vec<Nat>,
}

fn parse_nat(s: &str) -> Result<Nat, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("`{s}` is not a natural number"));
    }
    s.parse().map_err(|e| format!("{e}"))
}

enum Failure {
    Usage(String),
    Lib(Error),
    Exit(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn machine_for(kind: MachineKind, codec: Codec) -> Box<dyn Machine> {
    match kind {
        MachineKind::Urcm => Box::new(Urcm::new(codec)),
        MachineKind::Acm => Box::new(Acm::new(codec)),
        MachineKind::Tcm => Box::new(Tcm::new(codec)),
    }
}

fn assemble(kind: MachineKind, codec: &Codec, path: &PathBuf) -> Result<Assembled, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(match kind {
        MachineKind::Urcm => counter::assemble_urm(codec, &counter::parse_urm(&text)?)?,
        MachineKind::Acm => counter::encode_abacus(codec, &counter::parse_abacus(&text)?)?,
        MachineKind::Tcm => turing::compile_tm(codec, &turing::parse_tm(&text)?)?,
    })
}

fn print_assembled(asm: &Assembled, format: Format) {
    match format {
        Format::Text => {
            for (s, p) in asm.program.iter() {
                println!("{s} {p}");
            }
            match &asm.code {
                Some(code) => println!("code {code}"),
                None => println!("code suppressed (exceeds max-bits)"),
            }
        }
        Format::Json => {
            let map: Vec<_> = asm
                .program
                .iter()
                .map(|(s, p)| serde_json::json!([s.to_string(), p.to_string()]))
                .collect();
            let code = asm.code.as_ref().map(|c| c.to_string());
            println!("{}", serde_json::json!({ "map": map, "code": code }));
        }
    }
}

fn evaluate(
    machine: &dyn Machine,
    source: &dyn InstructionSource,
    run: &RunArgs,
    format: Format,
) -> Result<(), Failure> {
    let eval = machine::compute(machine, source, &run.args, run.fuel)?;
    match (&eval, format) {
        (Evaluation::Value(v), Format::Text) => println!("{v}"),
        (Evaluation::Value(v), Format::Json) => {
            println!("{}", serde_json::json!({ "value": v.to_string() }))
        }
        (Evaluation::Diverged(f), Format::Text) => println!("DIVERGED({f})"),
        (Evaluation::Diverged(f), Format::Json) => {
            println!("{}", serde_json::json!({ "diverged": f }))
        }
    }
    match eval {
        Evaluation::Value(_) => Ok(()),
        Evaluation::Diverged(_) => Err(Failure::Exit(EXIT_FUEL)),
    }
}

fn trace(
    machine: &dyn Machine,
    source: &dyn InstructionSource,
    run: &RunArgs,
    format: Format,
) -> Result<(), Failure> {
    let start = machine.input(&run.args)?;
    for entry in machine::trace(machine, source, &start, run.fuel)? {
        match format {
            Format::Text => println!("{entry}"),
            Format::Json => println!("{}", entry.to_json()),
        }
    }
    Ok(())
}

type Action = fn(&dyn Machine, &dyn InstructionSource, &RunArgs, Format) -> Result<(), Failure>;

fn with_source(
    run: &RunArgs,
    codec: &Codec,
    format: Format,
    action: Action,
) -> Result<(), Failure> {
    let m = machine_for(run.machine, codec.clone());
    match (&run.code, &run.file) {
        (Some(e), _) => action(m.as_ref(), e, run, format),
        (None, Some(path)) => {
            let program: Program = assemble(run.machine, codec, path)?.program;
            action(m.as_ref(), &program, run, format)
        }
        (None, None) => Err(Failure::Usage("give --code or --file".into())),
    }
}

fn execute(cli: Cli) -> Result<(), Failure> {
    let codec = Codec::new(cli.max_bits.unwrap_or(DEFAULT_MAX_BITS));
    match cli.command {
        Command::Pair { a, b } => {
            println!("{}", codec.pair(&a, &b)?);
        }
        Command::Unpair { z } => {
            let (a, b) = codec.unpair(&z);
            println!("{a} {b}");
        }
        Command::Encode { items } => println!("{}", codec.encode_list(&items)?),
        Command::Decode { code } => println!("{}", codec.decode_list(&code)),
        Command::Asm {
            machine,
            file_flag,
            file,
        } => {
            let path = file_flag
                .or(file)
                .ok_or_else(|| Failure::Usage("asm needs a source file".into()))?;
            print_assembled(&assemble(machine, &codec, &path)?, cli.format);
        }
        Command::Run(run) => with_source(&run, &codec, cli.format, evaluate)?,
        Command::Trace(run) => with_source(&run, &codec, cli.format, trace)?,
        Command::Diff {
            machine,
            count,
            seed,
        } => {
            let (kind, default_bits) = match machine {
                MachineKind::Urcm => (DiffMachine::Urcm, DEFAULT_MAX_BITS),
                MachineKind::Acm => (DiffMachine::Acm, DEFAULT_MAX_BITS),
                MachineKind::Tcm => (DiffMachine::Tcm, DIFF_TM_MAX_BITS),
            };
            let codec = Codec::new(cli.max_bits.unwrap_or(default_bits));
            let reports = differential::run_suite(kind, count, seed, &Bounds::default(), &codec);
            let mut failed = 0;
            for r in &reports {
                if r.pass {
                    println!("case {}: PASS", r.index);
                } else {
                    failed += 1;
                    println!("case {}: FAIL {}", r.index, r.detail);
                }
            }
            let passed = reports.len() - failed;
            if failed == 0 {
                println!("{passed} PASS");
            } else {
                println!("{passed} PASS {failed} FAIL");
                return Err(Failure::Exit(EXIT_DIFF_FAILURE));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Exit(code)) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() {
                EXIT_RESOURCE
            } else {
                EXIT_USAGE
            })
        }
    }
}
