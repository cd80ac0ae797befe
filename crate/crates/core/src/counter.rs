//! Counter machines: configurations `(a, u)` with `a` the instruction
//! counter and `u` the code of a one-way register tape, so register `r` holds
//! `(u)_r`. Input places the arguments in registers `0..k`; output is
//! register 0.
//!
//! Two instruction sets share this layout:
//!
//! * URCM, four instruction kinds selected by `p mod 4`
//!   (`4r+1` zero, `4r+2` increment, `4[r,s]+3` copy, `4[r,s,t]+4` jump-if-equal);
//! * ACM, the abacus: `2[r,s]+1` increments and `2[r,s,t]+2` decrements or
//!   branches on zero.
//!
//! URM source (Cutland style, 1-based registers and lines) assembles into
//! URCM codes; abacus source assembles into ACM codes.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::asm::{self, Assembled};
use crate::error::{Error, Result};
use crate::machine::{require_args, Config, Machine, Program};
use crate::pairing::{Codec, Nat};

pub type CounterConfig = Config;

/// `Iᵏ(a₁, ..., a_k) = (0, [a₁, ..., a_k, 0, ...])`.
pub fn counter_input(codec: &Codec, args: &[Nat]) -> Result<CounterConfig> {
    require_args(args)?;
    Ok(Config {
        head: Nat::zero(),
        body: codec.encode_list(args)?,
    })
}

/// `O(a, u) = (u)_0`.
pub fn counter_output(codec: &Codec, config: &CounterConfig) -> Nat {
    codec.component_at(&config.body, 0)
}

fn split_quad(codec: &Codec, z: &Nat) -> (Nat, Nat, Nat) {
    let (r, rest) = codec.unpair(z);
    let (s, t) = codec.unpair(&rest);
    (r, s, t)
}

fn quad(codec: &Codec, r: &Nat, s: &Nat, t: &Nat) -> Result<Nat> {
    codec.pair(r, &codec.pair(s, t)?)
}

/// A decoded URCM instruction, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UrcmOp {
    Zero { reg: Nat },
    Succ { reg: Nat },
    Copy { from: Nat, to: Nat },
    JumpEq { left: Nat, right: Nat, target: Nat },
}

impl UrcmOp {
    /// `None` for the terminal marker `0`.
    pub fn decode(codec: &Codec, p: &Nat) -> Option<UrcmOp> {
        if p.is_zero() {
            return None;
        }
        let (q, kind) = (p - 1u32).div_rem(&Nat::from(4u32));
        Some(match kind.to_u8() {
            Some(0) => UrcmOp::Zero { reg: q },
            Some(1) => UrcmOp::Succ { reg: q },
            Some(2) => {
                let (from, to) = codec.unpair(&q);
                UrcmOp::Copy { from, to }
            }
            _ => {
                let (left, right, target) = split_quad(codec, &q);
                UrcmOp::JumpEq {
                    left,
                    right,
                    target,
                }
            }
        })
    }

    pub fn encode(&self, codec: &Codec) -> Result<Nat> {
        let (q, kind) = match self {
            UrcmOp::Zero { reg } => (reg.clone(), 1u32),
            UrcmOp::Succ { reg } => (reg.clone(), 2),
            UrcmOp::Copy { from, to } => (codec.pair(from, to)?, 3),
            UrcmOp::JumpEq {
                left,
                right,
                target,
            } => (quad(codec, left, right, target)?, 4),
        };
        Ok(q * 4u32 + kind)
    }
}

/// The unlimited register configuration machine.
#[derive(Debug, Clone, Default)]
pub struct Urcm {
    codec: Codec,
}

impl Urcm {
    pub fn new(codec: Codec) -> Self {
        Urcm { codec }
    }
}

/// `p ∘ (a, u)` for the URCM.
pub fn urcm_apply(codec: &Codec, p: &Nat, config: &CounterConfig) -> Result<CounterConfig> {
    let Some(op) = UrcmOp::decode(codec, p) else {
        return Ok(config.clone());
    };
    let u = &config.body;
    let next = &config.head + 1u32;
    Ok(match op {
        UrcmOp::Zero { reg } => Config {
            head: next,
            body: codec.replace_component(u, &reg, &Nat::zero())?,
        },
        UrcmOp::Succ { reg } => {
            let value = codec.component(u, &reg) + 1u32;
            Config {
                head: next,
                body: codec.replace_component(u, &reg, &value)?,
            }
        }
        UrcmOp::Copy { from, to } => {
            let value = codec.component(u, &from);
            Config {
                head: next,
                body: codec.replace_component(u, &to, &value)?,
            }
        }
        UrcmOp::JumpEq {
            left,
            right,
            target,
        } => {
            let head = if codec.component(u, &left) == codec.component(u, &right) {
                target
            } else {
                next
            };
            Config {
                head,
                body: u.clone(),
            }
        }
    })
}

impl Machine for Urcm {
    fn name(&self) -> &'static str {
        "urcm"
    }

    fn codec(&self) -> &Codec {
        &self.codec
    }

    fn situation(&self, config: &Config) -> Nat {
        config.head.clone()
    }

    fn apply(&self, instruction: &Nat, config: &Config) -> Result<Config> {
        urcm_apply(&self.codec, instruction, config)
    }

    fn input(&self, args: &[Nat]) -> Result<Config> {
        counter_input(&self.codec, args)
    }

    fn output(&self, config: &Config) -> Nat {
        counter_output(&self.codec, config)
    }
}

/// An abacus instruction, 0-based registers, explicit successor nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbacusInstruction {
    Inc { reg: Nat, next: Nat },
    DecOrJump { reg: Nat, next: Nat, on_zero: Nat },
}

impl AbacusInstruction {
    pub fn decode(codec: &Codec, p: &Nat) -> Option<AbacusInstruction> {
        if p.is_zero() {
            return None;
        }
        let (q, is_dec) = (p - 1u32).div_rem(&Nat::from(2u32));
        Some(if is_dec.is_zero() {
            let (reg, next) = codec.unpair(&q);
            AbacusInstruction::Inc { reg, next }
        } else {
            let (reg, next, on_zero) = split_quad(codec, &q);
            AbacusInstruction::DecOrJump { reg, next, on_zero }
        })
    }

    pub fn encode(&self, codec: &Codec) -> Result<Nat> {
        Ok(match self {
            AbacusInstruction::Inc { reg, next } => codec.pair(reg, next)? * 2u32 + 1u32,
            AbacusInstruction::DecOrJump { reg, next, on_zero } => {
                quad(codec, reg, next, on_zero)? * 2u32 + 2u32
            }
        })
    }
}

impl fmt::Display for AbacusInstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbacusInstruction::Inc { reg, next } => write!(f, "INC {reg} -> {next}"),
            AbacusInstruction::DecOrJump { reg, next, on_zero } => {
                write!(f, "DEC {reg} -> {next} / {on_zero}")
            }
        }
    }
}

/// The abacus configuration machine.
#[derive(Debug, Clone, Default)]
pub struct Acm {
    codec: Codec,
}

impl Acm {
    pub fn new(codec: Codec) -> Self {
        Acm { codec }
    }
}

/// `p ∘ (a, u)` for the ACM.
pub fn acm_apply(codec: &Codec, p: &Nat, config: &CounterConfig) -> Result<CounterConfig> {
    let u = &config.body;
    Ok(match AbacusInstruction::decode(codec, p) {
        None => config.clone(),
        Some(AbacusInstruction::Inc { reg, next }) => {
            let value = codec.component(u, &reg) + 1u32;
            Config {
                head: next,
                body: codec.replace_component(u, &reg, &value)?,
            }
        }
        Some(AbacusInstruction::DecOrJump { reg, next, on_zero }) => {
            let value = codec.component(u, &reg);
            if value.is_zero() {
                Config {
                    head: on_zero,
                    body: u.clone(),
                }
            } else {
                Config {
                    head: next,
                    body: codec.replace_component(u, &reg, &(value - 1u32))?,
                }
            }
        }
    })
}

impl Machine for Acm {
    fn name(&self) -> &'static str {
        "acm"
    }

    fn codec(&self) -> &Codec {
        &self.codec
    }

    fn situation(&self, config: &Config) -> Nat {
        config.head.clone()
    }

    fn apply(&self, instruction: &Nat, config: &Config) -> Result<Config> {
        acm_apply(&self.codec, instruction, config)
    }

    fn input(&self, args: &[Nat]) -> Result<Config> {
        counter_input(&self.codec, args)
    }

    fn output(&self, config: &Config) -> Nat {
        counter_output(&self.codec, config)
    }
}

/// A URM instruction with 1-based register and line indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UrmInstruction {
    Z(u64),
    S(u64),
    T(u64, u64),
    J(u64, u64, u64),
}

impl UrmInstruction {
    /// The URCM code: `4(n−1)+1`, `4(n−1)+2`, `4[m−1,n−1]+3`,
    /// `4[m−1,n−1,q−1]+4`.
    pub fn code(&self, codec: &Codec) -> Result<Nat> {
        let shift = |i: u64| {
            i.checked_sub(1)
                .map(Nat::from)
                .ok_or(Error::ZeroIndex(*self))
        };
        let op = match *self {
            UrmInstruction::Z(n) => UrcmOp::Zero { reg: shift(n)? },
            UrmInstruction::S(n) => UrcmOp::Succ { reg: shift(n)? },
            UrmInstruction::T(m, n) => UrcmOp::Copy {
                from: shift(m)?,
                to: shift(n)?,
            },
            UrmInstruction::J(m, n, q) => UrcmOp::JumpEq {
                left: shift(m)?,
                right: shift(n)?,
                target: shift(q)?,
            },
        };
        op.encode(codec)
    }
}

impl fmt::Display for UrmInstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UrmInstruction::Z(n) => write!(f, "Z {n}"),
            UrmInstruction::S(n) => write!(f, "S {n}"),
            UrmInstruction::T(m, n) => write!(f, "T {m} {n}"),
            UrmInstruction::J(m, n, q) => write!(f, "J {m} {n} {q}"),
        }
    }
}

/// The map `i ↦ code(I_{i+1})` for a URM program.
pub fn urm_program(codec: &Codec, prog: &[UrmInstruction]) -> Result<Program> {
    prog.iter()
        .enumerate()
        .map(|(i, instr)| Ok((Nat::from(i), instr.code(codec)?)))
        .collect()
}

/// `code(P) = [code(I₁), ..., code(I_d), 0]`.
pub fn encode_urm(codec: &Codec, prog: &[UrmInstruction]) -> Result<Nat> {
    let codes = prog
        .iter()
        .map(|instr| instr.code(codec))
        .collect::<Result<Vec<_>>>()?;
    codec.encode_list(&codes)
}

pub fn assemble_urm(codec: &Codec, prog: &[UrmInstruction]) -> Result<Assembled> {
    Assembled::new(codec, urm_program(codec, prog)?)
}

/// Collects a labeled abacus program into a map, rejecting repeated labels.
pub fn abacus_map(prog: &[(Nat, AbacusInstruction)]) -> Result<BTreeMap<Nat, AbacusInstruction>> {
    let mut map = BTreeMap::new();
    for (label, instr) in prog {
        if map.insert(label.clone(), instr.clone()).is_some() {
            return Err(Error::DuplicateLabel(label.clone()));
        }
    }
    Ok(map)
}

/// Node `ℓ ↦ code(instruction at ℓ)` and the code of that map.
pub fn encode_abacus(codec: &Codec, prog: &[(Nat, AbacusInstruction)]) -> Result<Assembled> {
    let program = abacus_map(prog)?
        .into_iter()
        .map(|(label, instr)| Ok((label, instr.encode(codec)?)))
        .collect::<Result<Program>>()?;
    Assembled::new(codec, program)
}

fn index_1based(token: &asm::Token<'_>, line: usize) -> Result<u64> {
    let value = asm::nat(token, line)?;
    match value.to_u64() {
        Some(0) => Err(Error::parse(
            line,
            token.column,
            "URM registers and lines are numbered from 1",
        )),
        Some(v) => Ok(v),
        None => Err(Error::parse(line, token.column, "index too large")),
    }
}

/// Parses `Z n | S n | T m n | J m n q`, one per line.
pub fn parse_urm(text: &str) -> Result<Vec<UrmInstruction>> {
    let mut prog = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens = asm::lex(raw);
        let Some(op) = tokens.first() else { continue };
        let eol = raw.len() + 1;
        let arity = match op.text.to_ascii_uppercase().as_str() {
            "Z" | "S" => 1,
            "T" => 2,
            "J" => 3,
            other => {
                return Err(Error::parse(
                    line,
                    op.column,
                    format!("unknown URM instruction `{other}`"),
                ))
            }
        };
        let mut args = [0u64; 3];
        for (k, slot) in args.iter_mut().take(arity).enumerate() {
            *slot = index_1based(asm::operand(&tokens, k + 1, line, eol)?, line)?;
        }
        asm::no_trailing(&tokens, arity + 1, line)?;
        prog.push(match op.text.to_ascii_uppercase().as_str() {
            "Z" => UrmInstruction::Z(args[0]),
            "S" => UrmInstruction::S(args[0]),
            "T" => UrmInstruction::T(args[0], args[1]),
            _ => UrmInstruction::J(args[0], args[1], args[2]),
        });
    }
    Ok(prog)
}

/// Parses `label: INC r -> next` and `label: DEC r -> succ / zero`.
pub fn parse_abacus(text: &str) -> Result<Vec<(Nat, AbacusInstruction)>> {
    let mut prog = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens = asm::lex(raw);
        if tokens.is_empty() {
            continue;
        }
        let eol = raw.len() + 1;
        let label = asm::nat(&tokens[0], line)?;
        asm::expect(tokens.get(1), ":", line, eol)?;
        let op = asm::operand(&tokens, 2, line, eol)?;
        let reg = asm::nat(asm::operand(&tokens, 3, line, eol)?, line)?;
        asm::expect(tokens.get(4), "->", line, eol)?;
        let next = asm::nat(asm::operand(&tokens, 5, line, eol)?, line)?;
        let instr = match op.text.to_ascii_uppercase().as_str() {
            "INC" => {
                asm::no_trailing(&tokens, 6, line)?;
                AbacusInstruction::Inc { reg, next }
            }
            "DEC" => {
                asm::expect(tokens.get(6), "/", line, eol)?;
                let on_zero = asm::nat(asm::operand(&tokens, 7, line, eol)?, line)?;
                asm::no_trailing(&tokens, 8, line)?;
                AbacusInstruction::DecOrJump { reg, next, on_zero }
            }
            other => {
                return Err(Error::parse(
                    line,
                    op.column,
                    format!("unknown abacus instruction `{other}`"),
                ))
            }
        };
        prog.push((label, instr));
    }
    Ok(prog)
}

/// Whether `p` re-encodes to itself after decoding; true for every `p ≥ 1`.
pub fn urcm_roundtrips(codec: &Codec, p: &Nat) -> bool {
    UrcmOp::decode(codec, p).is_some_and(|op| op.encode(codec).ok().as_ref() == Some(p))
}

pub fn acm_roundtrips(codec: &Codec, p: &Nat) -> bool {
    AbacusInstruction::decode(codec, p).is_some_and(|op| op.encode(codec).ok().as_ref() == Some(p))
}
