//! Generic run semantics for arithmetic configuration machines.
//!
//! A machine supplies the situation map `τ`, the instruction action `∘`, and
//! the input/output maps. A program is either a single code number `e`,
//! read through `e □ s`, or an explicit finite [`Program`] map. Instruction
//! `0` never acts: a configuration whose situation fetches `0` is terminal.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::pairing::{Codec, Nat};

/// Step budget used when the caller does not pick one.
pub const DEFAULT_FUEL: u64 = 100_000;

/// A configuration `(head, body)`; every concrete machine here uses pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Config {
    pub head: Nat,
    pub body: Nat,
}

impl Config {
    pub fn new(head: impl Into<Nat>, body: impl Into<Nat>) -> Self {
        Config {
            head: head.into(),
            body: body.into(),
        }
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.head, self.body)
    }
}

pub trait Machine {
    fn name(&self) -> &'static str;

    fn codec(&self) -> &Codec;

    /// `τ(c)`: the part of the configuration instructions are keyed on.
    fn situation(&self, config: &Config) -> Nat;

    /// `p ∘ c`. Implementations must return `c` unchanged for `p = 0`.
    fn apply(&self, instruction: &Nat, config: &Config) -> Result<Config>;

    /// `Iᵏ(a₁, ..., a_k)` with `k = args.len() ≥ 1`.
    fn input(&self, args: &[Nat]) -> Result<Config>;

    fn output(&self, config: &Config) -> Nat;
}

/// A finite map from situations to nonzero instructions. Situations outside
/// the map fetch `0`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program(BTreeMap<Nat, Nat>);

impl Program {
    pub fn new() -> Self {
        Program::default()
    }

    /// Sets `situation ↦ instruction`; an instruction of `0` clears the entry.
    pub fn insert(&mut self, situation: Nat, instruction: Nat) {
        if instruction.is_zero() {
            self.0.remove(&situation);
        } else {
            self.0.insert(situation, instruction);
        }
    }

    pub fn get(&self, situation: &Nat) -> Nat {
        self.0.get(situation).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Nat, &Nat)> {
        self.0.iter()
    }
}

impl FromIterator<(Nat, Nat)> for Program {
    fn from_iter<I: IntoIterator<Item = (Nat, Nat)>>(iter: I) -> Self {
        let mut program = Program::new();
        for (s, p) in iter {
            program.insert(s, p);
        }
        program
    }
}

/// Where instructions are fetched from during a run.
pub trait InstructionSource {
    fn fetch(&self, codec: &Codec, situation: &Nat) -> Nat;
}

/// A machine element `e`, read as `e □ s`.
impl InstructionSource for Nat {
    fn fetch(&self, codec: &Codec, situation: &Nat) -> Nat {
        codec.component(self, situation)
    }
}

impl InstructionSource for Program {
    fn fetch(&self, _codec: &Codec, situation: &Nat) -> Nat {
        self.get(situation)
    }
}

pub fn fetch(codec: &Codec, e: &Nat, situation: &Nat) -> Nat {
    e.fetch(codec, situation)
}

/// `ν(e)`: the map `{s ↦ e □ s : e □ s ≠ 0}`.
pub fn program_of_code(codec: &Codec, e: &Nat) -> Program {
    codec
        .decode_list(e)
        .into_vec()
        .into_iter()
        .enumerate()
        .map(|(s, p)| (Nat::from(s), p))
        .collect()
}

/// Inverse of [`program_of_code`]: the list code of `(p(0), ..., p(s_max))`.
pub fn code_of_program(codec: &Codec, program: &Program) -> Result<Nat> {
    let zero = Nat::zero();
    let mut code = Nat::zero();
    // Position of the innermost already-encoded slot.
    let mut next: Option<Nat> = None;
    for (situation, instruction) in program.0.iter().rev() {
        if let Some(above) = &next {
            let mut gap = above - situation - 1u32;
            while !gap.is_zero() {
                code = codec.pair(&zero, &code)?;
                gap -= 1u32;
            }
        }
        code = codec.pair(instruction, &code)?;
        next = Some(situation.clone());
    }
    if let Some(lowest) = next {
        let mut gap = lowest;
        while !gap.is_zero() {
            code = codec.pair(&zero, &code)?;
            gap -= 1u32;
        }
    }
    Ok(code)
}

pub fn is_terminal<M, S>(machine: &M, program: &S, config: &Config) -> bool
where
    M: Machine + ?Sized,
    S: InstructionSource + ?Sized,
{
    program
        .fetch(machine.codec(), &machine.situation(config))
        .is_zero()
}

/// `ρ(e, c) = (e • τ(c)) ∘ c`.
pub fn step<M, S>(machine: &M, program: &S, config: &Config) -> Result<Config>
where
    M: Machine + ?Sized,
    S: InstructionSource + ?Sized,
{
    let instruction = program.fetch(machine.codec(), &machine.situation(config));
    machine.apply(&instruction, config)
}

/// `δ(e, c, n)`: `n` successive steps.
pub fn iterate<M, S>(machine: &M, program: &S, config: &Config, n: u64) -> Result<Config>
where
    M: Machine + ?Sized,
    S: InstructionSource + ?Sized,
{
    let mut current = config.clone();
    for _ in 0..n {
        current = step(machine, program, &current)?;
    }
    Ok(current)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    /// `steps` is the least `i` with `δ(e, c, i)` terminal.
    Halted { config: Config, steps: u64 },
    /// No terminal configuration among `δ(e, c, 0..=fuel)`.
    OutOfFuel { config: Config, fuel: u64 },
}

impl RunOutcome {
    pub fn config(&self) -> &Config {
        match self {
            RunOutcome::Halted { config, .. } | RunOutcome::OutOfFuel { config, .. } => config,
        }
    }

    pub fn is_halted(&self) -> bool {
        matches!(self, RunOutcome::Halted { .. })
    }
}

fn run_from<M, S>(machine: &M, program: &S, config: &Config, fuel: u64) -> Result<RunOutcome>
where
    M: Machine + ?Sized,
    S: InstructionSource + ?Sized,
{
    let codec = machine.codec();
    let mut current = config.clone();
    for i in 0..=fuel {
        let instruction = program.fetch(codec, &machine.situation(&current));
        if instruction.is_zero() {
            return Ok(RunOutcome::Halted {
                config: current,
                steps: i,
            });
        }
        if i == fuel {
            break;
        }
        current = machine.apply(&instruction, &current)?;
    }
    Ok(RunOutcome::OutOfFuel {
        config: current,
        fuel,
    })
}

/// Searches for the halting time `h(e, c)` within `fuel` steps and returns
/// `φ(e, c) = δ(e, c, h)`.
pub fn run<M: Machine + ?Sized>(
    machine: &M,
    e: &Nat,
    config: &Config,
    fuel: u64,
) -> Result<RunOutcome> {
    run_from(machine, e, config, fuel)
}

/// [`run`] fetching from an explicit map instead of a code number.
pub fn run_program<M: Machine + ?Sized>(
    machine: &M,
    program: &Program,
    config: &Config,
    fuel: u64,
) -> Result<RunOutcome> {
    run_from(machine, program, config, fuel)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluation {
    Value(Nat),
    /// Fuel ran out; the function may be undefined here or merely slow.
    Diverged(u64),
}

/// `ψᵏ(e, a₁, ..., a_k) = O(φ(e, I(a₁, ..., a_k)))` under a step budget.
pub fn compute<M, S>(machine: &M, program: &S, args: &[Nat], fuel: u64) -> Result<Evaluation>
where
    M: Machine + ?Sized,
    S: InstructionSource + ?Sized,
{
    let start = machine.input(args)?;
    Ok(match run_from(machine, program, &start, fuel)? {
        RunOutcome::Halted { config, .. } => Evaluation::Value(machine.output(&config)),
        RunOutcome::OutOfFuel { fuel, .. } => Evaluation::Diverged(fuel),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceStatus {
    Running,
    Terminal,
    OutOfFuel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: u64,
    pub config: Config,
    pub situation: Nat,
    pub instruction: Nat,
    pub status: TraceStatus,
}

impl TraceEntry {
    pub fn is_terminal(&self) -> bool {
        self.status == TraceStatus::Terminal
    }

    /// One trace record; naturals are decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "step": self.step,
            "head": self.config.head.to_string(),
            "body": self.config.body.to_string(),
            "situation": self.situation.to_string(),
            "instruction": self.instruction.to_string(),
            "terminal": self.is_terminal(),
        })
    }
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:>6}  {}  s={} i={}",
            self.step, self.config, self.situation, self.instruction
        )?;
        match self.status {
            TraceStatus::Running => Ok(()),
            TraceStatus::Terminal => f.write_str("  terminal"),
            TraceStatus::OutOfFuel => f.write_str("  out-of-fuel"),
        }
    }
}

/// The configurations `δ(·, c, 0..=min(h, fuel))` with the situation and
/// fetched instruction at each.
pub fn trace<M, S>(machine: &M, program: &S, config: &Config, fuel: u64) -> Result<Vec<TraceEntry>>
where
    M: Machine + ?Sized,
    S: InstructionSource + ?Sized,
{
    let codec = machine.codec();
    let mut entries = Vec::new();
    let mut current = config.clone();
    for i in 0..=fuel {
        let situation = machine.situation(&current);
        let instruction = program.fetch(codec, &situation);
        let status = if instruction.is_zero() {
            TraceStatus::Terminal
        } else if i == fuel {
            TraceStatus::OutOfFuel
        } else {
            TraceStatus::Running
        };
        let next = match status {
            TraceStatus::Running => Some(machine.apply(&instruction, &current)?),
            _ => None,
        };
        entries.push(TraceEntry {
            step: i,
            config: current,
            situation,
            instruction,
            status,
        });
        match next {
            Some(c) => current = c,
            None => break,
        }
    }
    Ok(entries)
}

pub(crate) fn require_args(args: &[Nat]) -> Result<()> {
    if args.is_empty() {
        Err(Error::EmptyInput)
    } else {
        Ok(())
    }
}
