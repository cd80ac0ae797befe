//! Direct interpreters used as independent references for the arithmetized
//! machines. Registers and tapes are plain containers here; no pairing is
//! involved except in the [`bridge`] between symbolic tapes and tape codes.
//!
//! Step counting matches the run semantics of the coded machines: one
//! executed instruction is one step, and a run with fuel `f` may execute at
//! most `f` instructions before it is reported as diverged.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::counter::{AbacusInstruction, UrmInstruction};
use crate::machine::Evaluation;
use crate::turing::{Action, TmRule};

/// Registers indexed from 0; unwritten registers read 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RegisterFile(BTreeMap<BigUint, BigUint>);

impl RegisterFile {
    pub fn with_inputs(inputs: &[BigUint]) -> Self {
        let mut regs = RegisterFile::default();
        for (i, x) in inputs.iter().enumerate() {
            regs.set(BigUint::from(i), x.clone());
        }
        regs
    }

    pub fn get(&self, reg: &BigUint) -> BigUint {
        self.0.get(reg).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, reg: BigUint, value: BigUint) {
        if value.is_zero() {
            self.0.remove(&reg);
        } else {
            self.0.insert(reg, value);
        }
    }
}

/// Runs a URM program on `inputs` loaded into `R1..Rk`; returns `R1` once
/// control leaves the program.
pub fn oracle_urm_run(prog: &[UrmInstruction], inputs: &[BigUint], fuel: u64) -> Evaluation {
    let mut regs = RegisterFile::with_inputs(inputs);
    let reg = |i: u64| BigUint::from(i.saturating_sub(1));
    let mut pc = 0usize;
    for i in 0..=fuel {
        let Some(instr) = prog.get(pc) else {
            return Evaluation::Value(regs.get(&BigUint::zero()));
        };
        if i == fuel {
            break;
        }
        pc += 1;
        match *instr {
            UrmInstruction::Z(n) => regs.set(reg(n), BigUint::zero()),
            UrmInstruction::S(n) => {
                let v = regs.get(&reg(n)) + 1u32;
                regs.set(reg(n), v);
            }
            UrmInstruction::T(m, n) => {
                let v = regs.get(&reg(m));
                regs.set(reg(n), v);
            }
            UrmInstruction::J(m, n, q) => {
                if regs.get(&reg(m)) == regs.get(&reg(n)) {
                    pc = q
                        .checked_sub(1)
                        .and_then(|t| usize::try_from(t).ok())
                        .unwrap_or(usize::MAX);
                }
            }
        }
    }
    Evaluation::Diverged(fuel)
}

/// Runs an abacus graph from node 0 until control reaches an unlabeled node;
/// returns register 0.
pub fn oracle_abacus_run(
    prog: &BTreeMap<BigUint, AbacusInstruction>,
    inputs: &[BigUint],
    fuel: u64,
) -> Evaluation {
    let mut regs = RegisterFile::with_inputs(inputs);
    let mut node = BigUint::zero();
    for i in 0..=fuel {
        let Some(instr) = prog.get(&node) else {
            return Evaluation::Value(regs.get(&BigUint::zero()));
        };
        if i == fuel {
            break;
        }
        match instr {
            AbacusInstruction::Inc { reg, next } => {
                let v = regs.get(reg) + 1u32;
                regs.set(reg.clone(), v);
                node = next.clone();
            }
            AbacusInstruction::DecOrJump { reg, next, on_zero } => {
                let v = regs.get(reg);
                if v.is_zero() {
                    node = on_zero.clone();
                } else {
                    regs.set(reg.clone(), v - 1u32);
                    node = next.clone();
                }
            }
        }
    }
    Evaluation::Diverged(fuel)
}

/// A two-way tape: cells left of the head (nearest first), the scanned cell,
/// and cells right of the head (nearest first). Blank is 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SymbolicTape {
    left: Vec<BigUint>,
    scanned: BigUint,
    right: Vec<BigUint>,
}

fn trim(cells: &mut Vec<BigUint>) {
    while cells.last().is_some_and(Zero::is_zero) {
        cells.pop();
    }
}

impl SymbolicTape {
    pub fn new(left: Vec<BigUint>, scanned: BigUint, right: Vec<BigUint>) -> Self {
        let mut tape = SymbolicTape {
            left,
            scanned,
            right,
        };
        trim(&mut tape.left);
        trim(&mut tape.right);
        tape
    }

    pub fn blank() -> Self {
        SymbolicTape::default()
    }

    /// The start tape for arguments `x₁, ..., x_k`: blocks of `xᵢ + 1` ones
    /// separated by single blanks, head on the first cell.
    pub fn unary_input(args: &[u64]) -> Self {
        let mut cells = Vec::new();
        for (i, &x) in args.iter().enumerate() {
            if i > 0 {
                cells.push(BigUint::zero());
            }
            cells.extend(std::iter::repeat_n(BigUint::from(1u32), x as usize + 1));
        }
        let mut cells = cells.into_iter();
        let scanned = cells.next().unwrap_or_default();
        SymbolicTape::new(Vec::new(), scanned, cells.collect())
    }

    pub fn left(&self) -> &[BigUint] {
        &self.left
    }

    pub fn scanned(&self) -> &BigUint {
        &self.scanned
    }

    pub fn right(&self) -> &[BigUint] {
        &self.right
    }

    pub fn write(&mut self, symbol: BigUint) {
        self.scanned = symbol;
    }

    pub fn move_right(&mut self) {
        let old = std::mem::take(&mut self.scanned);
        self.left.insert(0, old);
        self.scanned = if self.right.is_empty() {
            BigUint::zero()
        } else {
            self.right.remove(0)
        };
        trim(&mut self.left);
    }

    pub fn move_left(&mut self) {
        let old = std::mem::take(&mut self.scanned);
        self.right.insert(0, old);
        self.scanned = if self.left.is_empty() {
            BigUint::zero()
        } else {
            self.left.remove(0)
        };
        trim(&mut self.right);
    }

    pub fn count_ones(&self) -> usize {
        self.left
            .iter()
            .chain(std::iter::once(&self.scanned))
            .chain(&self.right)
            .filter(|c| **c == BigUint::from(1u32))
            .count()
    }
}

impl fmt::Display for SymbolicTape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.left.iter().rev() {
            write!(f, "{c} ")?;
        }
        write!(f, "[{}]", self.scanned)?;
        for c in &self.right {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TmStep {
    Next(BigUint, SymbolicTape),
    Halted,
}

/// Applies the rule for `(state, scanned)`, or reports a halt if none exists.
pub fn oracle_tm_step(rules: &[TmRule], state: &BigUint, tape: &SymbolicTape) -> TmStep {
    let Some(rule) = rules
        .iter()
        .find(|r| &r.state == state && &r.scanned == tape.scanned())
    else {
        return TmStep::Halted;
    };
    let mut next = tape.clone();
    match &rule.action {
        Action::MoveRight => next.move_right(),
        Action::MoveLeft => next.move_left(),
        Action::Write(a) => next.write(a.clone()),
    }
    TmStep::Next(rule.next_state.clone(), next)
}

/// Conversions between symbolic tapes and tape codes `[L, [s, R]]`.
pub mod bridge {
    use super::SymbolicTape;
    use crate::error::Result;
    use crate::pairing::{Codec, Nat};

    pub fn tape_encode(codec: &Codec, tape: &SymbolicTape) -> Result<Nat> {
        let left = codec.encode_list(tape.left())?;
        let right = codec.encode_list(tape.right())?;
        codec.pair(&left, &codec.pair(tape.scanned(), &right)?)
    }

    pub fn tape_decode(codec: &Codec, u: &Nat) -> SymbolicTape {
        let (left, rest) = codec.unpair(u);
        let (scanned, right) = codec.unpair(&rest);
        SymbolicTape::new(
            codec.decode_list(&left).into_vec(),
            scanned,
            codec.decode_list(&right).into_vec(),
        )
    }
}
