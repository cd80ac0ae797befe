//! The Turing configuration machine.
//!
//! A tape code `u = [L, [s, R]]` holds the left part `L` (nearest cell
//! first), the scanned symbol `s = (u)_1` and the right part `R = β²u`.
//! Configurations are `(state, u)`; the situation is `[state, s]`.
//!
//! An instruction `P > 0` decodes as `P − 1 = [q′, r]`: enter state `q′` and
//! perform act `r`, where `0` moves right, `1` moves left and `a + 2` writes
//! symbol `a`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::asm::{self, Assembled};
use crate::error::{Error, Result};
use crate::machine::{require_args, Config, Machine, Program};
use crate::pairing::{Codec, Nat};

pub type TcmConfig = Config;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Action {
    MoveRight,
    MoveLeft,
    Write(Nat),
}

impl Action {
    pub fn code(&self) -> Nat {
        match self {
            Action::MoveRight => Nat::zero(),
            Action::MoveLeft => Nat::one(),
            Action::Write(a) => a + 2u32,
        }
    }

    pub fn from_code(r: Nat) -> Action {
        if r.is_zero() {
            Action::MoveRight
        } else if r.is_one() {
            Action::MoveLeft
        } else {
            Action::Write(r - 2u32)
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::MoveRight => f.write_str("R"),
            Action::MoveLeft => f.write_str("L"),
            Action::Write(a) => write!(f, "W{a}"),
        }
    }
}

/// In `state` scanning `scanned`: perform `action`, then enter `next_state`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TmRule {
    pub state: Nat,
    pub scanned: Nat,
    pub action: Action,
    pub next_state: Nat,
}

impl TmRule {
    pub fn new(state: u64, scanned: u64, action: Action, next_state: u64) -> Self {
        TmRule {
            state: state.into(),
            scanned: scanned.into(),
            action,
            next_state: next_state.into(),
        }
    }

    pub fn situation(&self, codec: &Codec) -> Result<Nat> {
        codec.pair(&self.state, &self.scanned)
    }

    /// `1 + [next_state, act code]`.
    pub fn instruction(&self, codec: &Codec) -> Result<Nat> {
        Ok(codec.pair(&self.next_state, &self.action.code())? + 1u32)
    }
}

impl fmt::Display for TmRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} -> {} {}",
            self.state, self.scanned, self.action, self.next_state
        )
    }
}

struct TapeParts {
    left: Nat,
    scanned: Nat,
    right: Nat,
}

fn split_tape(codec: &Codec, u: &Nat) -> TapeParts {
    let (left, rest) = codec.unpair(u);
    let (scanned, right) = codec.unpair(&rest);
    TapeParts {
        left,
        scanned,
        right,
    }
}

/// `S_a u = [(u)_0, [a, β²u]]`.
pub fn act_write(codec: &Codec, u: &Nat, a: &Nat) -> Result<Nat> {
    let t = split_tape(codec, u);
    codec.pair(&t.left, &codec.pair(a, &t.right)?)
}

/// `R u = [[(u)_1, (u)_0], β²u]`.
pub fn act_right(codec: &Codec, u: &Nat) -> Result<Nat> {
    let t = split_tape(codec, u);
    codec.pair(&codec.pair(&t.scanned, &t.left)?, &t.right)
}

/// `L u = [β((u)_0), [(u)_{0,0}, βu]]`.
pub fn act_left(codec: &Codec, u: &Nat) -> Result<Nat> {
    let (left, rest) = codec.unpair(u);
    let (nearest, further) = codec.unpair(&left);
    codec.pair(&further, &codec.pair(&nearest, &rest)?)
}

/// `P − 1 = [q′, r]` as `(q′, act)`; `None` for `P = 0`.
pub fn decode_instruction(codec: &Codec, p: &Nat) -> Option<(Nat, Action)> {
    if p.is_zero() {
        return None;
    }
    let (state, act) = codec.unpair(&(p - 1u32));
    Some((state, Action::from_code(act)))
}

pub fn tcm_apply(codec: &Codec, p: &Nat, config: &TcmConfig) -> Result<TcmConfig> {
    let Some((state, action)) = decode_instruction(codec, p) else {
        return Ok(config.clone());
    };
    let u = &config.body;
    let tape = match action {
        Action::MoveRight => act_right(codec, u)?,
        Action::MoveLeft => act_left(codec, u)?,
        Action::Write(a) => act_write(codec, u, &a)?,
    };
    Ok(Config {
        head: state,
        body: tape,
    })
}

/// `τ(q, u) = [q, (u)_1]`.
pub fn tcm_situation(codec: &Codec, config: &TcmConfig) -> Nat {
    let scanned = codec.component_at(&config.body, 1);
    codec.scheme().pair(&config.head, &scanned)
}

/// `J_k(x₁, ..., x_k)`: `x₁+1` ones, a zero, `x₂+1` ones, ... as a list code.
pub fn unary_code(codec: &Codec, args: &[Nat]) -> Result<Nat> {
    require_args(args)?;
    let (zero, one) = (Nat::zero(), Nat::one());
    let mut remaining: Nat = args.iter().map(|x| x + 1u32).sum::<Nat>() + (args.len() - 1);
    let mut code = Nat::zero();
    let mut wrap = |code: &mut Nat, item: &Nat| -> Result<()> {
        codec.check_nesting(code, remaining.to_u64().unwrap_or(u64::MAX))?;
        *code = codec.pair(item, code)?;
        remaining -= 1u32;
        Ok(())
    };
    for (i, x) in args.iter().rev().enumerate() {
        if i > 0 {
            wrap(&mut code, &zero)?;
        }
        let mut ones = x + 1u32;
        while !ones.is_zero() {
            wrap(&mut code, &one)?;
            ones -= 1u32;
        }
    }
    Ok(code)
}

/// `Iᵏ(x₁, ..., x_k) = (0, [0, J_k(x₁, ..., x_k)])`.
pub fn tcm_input(codec: &Codec, args: &[Nat]) -> Result<TcmConfig> {
    let right = unary_code(codec, args)?;
    Ok(Config {
        head: Nat::zero(),
        body: codec.pair(&Nat::zero(), &right)?,
    })
}

/// Number of cells holding `1` on the whole tape.
pub fn tcm_output(codec: &Codec, config: &TcmConfig) -> Nat {
    let (left, rest) = codec.unpair(&config.body);
    codec.count_ones(&left) + codec.count_ones(&rest)
}

/// The Turing configuration machine.
#[derive(Debug, Clone, Default)]
pub struct Tcm {
    codec: Codec,
}

impl Tcm {
    pub fn new(codec: Codec) -> Self {
        Tcm { codec }
    }
}

impl Machine for Tcm {
    fn name(&self) -> &'static str {
        "tcm"
    }

    fn codec(&self) -> &Codec {
        &self.codec
    }

    fn situation(&self, config: &Config) -> Nat {
        tcm_situation(&self.codec, config)
    }

    fn apply(&self, instruction: &Nat, config: &Config) -> Result<Config> {
        tcm_apply(&self.codec, instruction, config)
    }

    fn input(&self, args: &[Nat]) -> Result<Config> {
        tcm_input(&self.codec, args)
    }

    fn output(&self, config: &Config) -> Nat {
        tcm_output(&self.codec, config)
    }
}

fn parse_action(token: &asm::Token<'_>, line: usize) -> Result<Action> {
    match token.text {
        "R" | "r" => Ok(Action::MoveRight),
        "L" | "l" => Ok(Action::MoveLeft),
        t if t.starts_with(['W', 'w']) => {
            let symbol = asm::Token {
                text: &t[1..],
                column: token.column + 1,
            };
            Ok(Action::Write(asm::nat(&symbol, line)?))
        }
        t => Err(Error::parse(
            line,
            token.column,
            format!("expected R, L or W<symbol>, found `{t}`"),
        )),
    }
}

/// Parses `<state> <scanned> -> <act> <next_state>` rules, one per line.
pub fn parse_tm(text: &str) -> Result<Vec<TmRule>> {
    let mut rules = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens = asm::lex(raw);
        if tokens.is_empty() {
            continue;
        }
        let eol = raw.len() + 1;
        let state = asm::nat(&tokens[0], line)?;
        let scanned = asm::nat(asm::operand(&tokens, 1, line, eol)?, line)?;
        asm::expect(tokens.get(2), "->", line, eol)?;
        let action = parse_action(asm::operand(&tokens, 3, line, eol)?, line)?;
        let next_state = asm::nat(asm::operand(&tokens, 4, line, eol)?, line)?;
        asm::no_trailing(&tokens, 5, line)?;
        rules.push(TmRule {
            state,
            scanned,
            action,
            next_state,
        });
    }
    Ok(rules)
}

/// Builds the program `[q, s] ↦ 1 + [q′, act]`. At most one rule may exist
/// per `(state, scanned)` pair.
pub fn tm_program(codec: &Codec, rules: &[TmRule]) -> Result<Program> {
    let mut seen = BTreeSet::new();
    let mut program = Program::new();
    for rule in rules {
        if !seen.insert((rule.state.clone(), rule.scanned.clone())) {
            return Err(Error::NonDeterministic {
                state: rule.state.clone(),
                scanned: rule.scanned.clone(),
            });
        }
        program.insert(rule.situation(codec)?, rule.instruction(codec)?);
    }
    Ok(program)
}

pub fn compile_tm(codec: &Codec, rules: &[TmRule]) -> Result<Assembled> {
    Assembled::new(codec, tm_program(codec, rules)?)
}

/// The two-erasure adder: from `J₂(a, b)` it erases one `1` from each block.
pub fn adder_rules() -> Vec<TmRule> {
    vec![
        TmRule::new(0, 1, Action::Write(Nat::zero()), 1),
        TmRule::new(1, 0, Action::MoveRight, 1),
        TmRule::new(1, 1, Action::Write(Nat::zero()), 2),
    ]
}
