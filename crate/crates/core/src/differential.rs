//! Seeded differential testing of the coded machines against the direct
//! interpreters in [`crate::oracle`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counter::{
    abacus_map, encode_abacus, encode_urm, AbacusInstruction, Acm, Urcm, UrmInstruction,
};
use crate::error::{Error, Result};
use crate::machine::{compute, is_terminal, step, Evaluation};
use crate::oracle::bridge::{tape_decode, tape_encode};
use crate::oracle::{oracle_abacus_run, oracle_tm_step, oracle_urm_run, SymbolicTape, TmStep};
use crate::pairing::{Codec, Nat};
use crate::turing::{tcm_input, tm_program, Action, Tcm, TmRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffMachine {
    Urcm,
    Acm,
    Tcm,
}

/// Size limits for generated programs and runs.
#[derive(Debug, Clone)]
pub struct Bounds {
    pub max_instructions: usize,
    pub registers: u64,
    pub max_input: u64,
    pub fuel: u64,
    pub tm_states: u64,
    pub tm_max_input: u64,
    pub tm_steps: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_instructions: 6,
            registers: 3,
            max_input: 5,
            fuel: 200,
            tm_states: 3,
            tm_max_input: 3,
            tm_steps: 40,
        }
    }
}

/// Resource guard used for Turing differential runs unless overridden.
/// Tape codes square with every blank the head passes, so larger guards
/// mostly buy slower bignum arithmetic rather than extra steps.
pub const DIFF_TM_MAX_BITS: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub index: u64,
    pub pass: bool,
    /// The run stopped because the tape code outgrew the resource guard on
    /// both sides.
    pub guard: bool,
    pub detail: String,
}

pub fn random_urm_program<R: Rng>(rng: &mut R, bounds: &Bounds) -> Vec<UrmInstruction> {
    let len = rng.random_range(0..=bounds.max_instructions);
    let reg_hi = bounds.registers.max(1);
    (0..len)
        .map(|_| {
            let mut reg = || rng.random_range(1..=reg_hi);
            let (a, b) = (reg(), reg());
            match rng.random_range(0..4) {
                0 => UrmInstruction::Z(a),
                1 => UrmInstruction::S(a),
                2 => UrmInstruction::T(a, b),
                _ => UrmInstruction::J(a, b, rng.random_range(1..=len as u64 + 2)),
            }
        })
        .collect()
}

pub fn random_abacus_program<R: Rng>(
    rng: &mut R,
    bounds: &Bounds,
) -> Vec<(Nat, AbacusInstruction)> {
    let nodes = rng.random_range(0..=bounds.max_instructions as u64);
    let reg_hi = bounds.registers.max(1);
    (0..nodes)
        .map(|label| {
            let reg = Nat::from(rng.random_range(0..reg_hi));
            let next = Nat::from(rng.random_range(0..=nodes));
            let instr = if rng.random_bool(0.5) {
                AbacusInstruction::Inc { reg, next }
            } else {
                let on_zero = Nat::from(rng.random_range(0..=nodes));
                AbacusInstruction::DecOrJump { reg, next, on_zero }
            };
            (Nat::from(label), instr)
        })
        .collect()
}

/// A random deterministic table over symbols {0, 1}. State `states` has no
/// rules and acts as a halting state.
pub fn random_tm_rules<R: Rng>(rng: &mut R, bounds: &Bounds) -> Vec<TmRule> {
    let states = rng.random_range(1..=bounds.tm_states.max(1));
    let mut rules = Vec::new();
    for state in 0..states {
        for scanned in 0..=1 {
            if rng.random_bool(0.8) {
                let action = match rng.random_range(0..4) {
                    0 => Action::MoveRight,
                    1 => Action::MoveLeft,
                    w => Action::Write(Nat::from(w - 2u32)),
                };
                rules.push(TmRule::new(
                    state,
                    scanned,
                    action,
                    rng.random_range(0..=states),
                ));
            }
        }
    }
    rules
}

fn random_args<R: Rng>(rng: &mut R, arity_hi: usize, max: u64) -> Vec<u64> {
    let arity = rng.random_range(1..=arity_hi);
    (0..arity).map(|_| rng.random_range(0..=max)).collect()
}

fn nats(xs: &[u64]) -> Vec<Nat> {
    xs.iter().copied().map(Nat::from).collect()
}

fn show_eval(e: &Result<Evaluation>) -> String {
    match e {
        Ok(Evaluation::Value(v)) => v.to_string(),
        Ok(Evaluation::Diverged(f)) => format!("DIVERGED({f})"),
        Err(err) => format!("error: {err}"),
    }
}

/// `ψ` on the URCM through the program code versus the register-file URM.
pub fn compare_urm(
    codec: &Codec,
    prog: &[UrmInstruction],
    args: &[u64],
    fuel: u64,
) -> std::result::Result<Evaluation, String> {
    let inputs = nats(args);
    let expected = oracle_urm_run(prog, &inputs, fuel);
    let coded =
        encode_urm(codec, prog).and_then(|e| compute(&Urcm::new(codec.clone()), &e, &inputs, fuel));
    if coded.as_ref() == Ok(&expected) {
        Ok(expected)
    } else {
        Err(format!(
            "urcm {} vs oracle {}",
            show_eval(&coded),
            show_eval(&Ok(expected))
        ))
    }
}

/// `ψ` on the ACM versus the direct abacus interpreter.
pub fn compare_abacus(
    codec: &Codec,
    prog: &[(Nat, AbacusInstruction)],
    args: &[u64],
    fuel: u64,
) -> std::result::Result<Evaluation, String> {
    let inputs = nats(args);
    let graph: BTreeMap<_, _> = abacus_map(prog).map_err(|e| e.to_string())?;
    let expected = oracle_abacus_run(&graph, &inputs, fuel);
    let acm = Acm::new(codec.clone());
    let coded = encode_abacus(codec, prog).and_then(|asm| match &asm.code {
        Some(e) => compute(&acm, e, &inputs, fuel),
        None => compute(&acm, &asm.program, &inputs, fuel),
    });
    if coded.as_ref() == Ok(&expected) {
        Ok(expected)
    } else {
        Err(format!(
            "acm {} vs oracle {}",
            show_eval(&coded),
            show_eval(&Ok(expected))
        ))
    }
}

/// How a lock-step Turing comparison ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmEnd {
    /// Both sides halted after this many steps.
    Halted(u64),
    /// Both sides were still running at the step limit.
    StepLimit,
    /// Both sides could not encode the tape reached after this many steps.
    Guard(u64),
}

/// Runs the TCM and the symbolic-tape interpreter in lock step, comparing
/// the decoded configuration after every step.
pub fn compare_tm(
    codec: &Codec,
    rules: &[TmRule],
    args: &[u64],
    max_steps: u64,
) -> std::result::Result<TmEnd, String> {
    let tcm = Tcm::new(codec.clone());
    let program = tm_program(codec, rules).map_err(|e| e.to_string())?;
    let mut state = Nat::from(0u32);
    let mut tape = SymbolicTape::unary_input(args);
    let mut config = match tcm_input(codec, &nats(args)) {
        Ok(c) => c,
        Err(e) => return guard_agrees(codec, &tape, e, 0),
    };

    for i in 0..=max_steps {
        let decoded = tape_decode(codec, &config.body);
        if config.head != state || decoded != tape {
            return Err(format!(
                "step {i}: tcm state {} tape {decoded} vs oracle state {state} tape {tape}",
                config.head
            ));
        }
        let terminal = is_terminal(&tcm, &program, &config);
        match (terminal, oracle_tm_step(rules, &state, &tape)) {
            (true, TmStep::Halted) => return Ok(TmEnd::Halted(i)),
            (false, TmStep::Next(..)) if i == max_steps => return Ok(TmEnd::StepLimit),
            (false, TmStep::Next(next_state, next_tape)) => {
                match step(&tcm, &program, &config) {
                    Ok(c) => config = c,
                    Err(e) => return guard_agrees(codec, &next_tape, e, i + 1),
                }
                state = next_state;
                tape = next_tape;
            }
            (terminal, _) => {
                return Err(format!(
                    "step {i}: tcm terminal={terminal} but oracle disagrees"
                ))
            }
        }
    }
    unreachable!("loop returns by the step limit")
}

fn guard_agrees(
    codec: &Codec,
    tape: &SymbolicTape,
    err: Error,
    at: u64,
) -> std::result::Result<TmEnd, String> {
    if !err.is_resource() {
        return Err(format!("step {at}: {err}"));
    }
    match tape_encode(codec, tape) {
        Err(e) if e.is_resource() => Ok(TmEnd::Guard(at)),
        Err(e) => Err(format!("step {at}: tcm {err}, oracle encode {e}")),
        Ok(_) => Err(format!(
            "step {at}: tcm hit the guard but the oracle tape encodes"
        )),
    }
}

fn urm_text(prog: &[UrmInstruction]) -> String {
    prog.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Generates and checks `count` cases from `seed`. `codec` is used as given;
/// callers pick the guard.
pub fn run_suite(
    machine: DiffMachine,
    count: u64,
    seed: u64,
    bounds: &Bounds,
    codec: &Codec,
) -> Vec<CaseReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|index| {
            let mut detail = String::new();
            let (outcome, guard) = match machine {
                DiffMachine::Urcm => {
                    let prog = random_urm_program(&mut rng, bounds);
                    let args = random_args(&mut rng, 3, bounds.max_input);
                    let _ = write!(detail, "[{}] {args:?}", urm_text(&prog));
                    (
                        compare_urm(codec, &prog, &args, bounds.fuel).map(|e| show_eval(&Ok(e))),
                        false,
                    )
                }
                DiffMachine::Acm => {
                    let prog = random_abacus_program(&mut rng, bounds);
                    let args = random_args(&mut rng, 3, bounds.max_input);
                    let text: Vec<_> = prog.iter().map(|(l, i)| format!("{l}: {i}")).collect();
                    let _ = write!(detail, "[{}] {args:?}", text.join("; "));
                    (
                        compare_abacus(codec, &prog, &args, bounds.fuel).map(|e| show_eval(&Ok(e))),
                        false,
                    )
                }
                DiffMachine::Tcm => {
                    let rules = random_tm_rules(&mut rng, bounds);
                    let args = random_args(&mut rng, 2, bounds.tm_max_input);
                    let text: Vec<_> = rules.iter().map(|r| r.to_string()).collect();
                    let _ = write!(detail, "[{}] {args:?}", text.join("; "));
                    let outcome = compare_tm(codec, &rules, &args, bounds.tm_steps);
                    let guard = matches!(outcome, Ok(TmEnd::Guard(_)));
                    (outcome.map(|end| format!("{end:?}")), guard)
                }
            };
            let pass = outcome.is_ok();
            let _ = write!(
                detail,
                " => {}",
                match outcome {
                    Ok(s) | Err(s) => s,
                }
            );
            CaseReport {
                index,
                pass,
                guard,
                detail,
            }
        })
        .collect()
}
