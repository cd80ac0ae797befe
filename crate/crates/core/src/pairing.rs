//! Primitive pairing arithmetic over unbounded naturals.
//!
//! A pairing `[a, b]` with projections `α`, `β` codes every 0-finite
//! sequence `(a₀, a₁, ...)` as the right-nested pair `[a₀, [a₁, [..., 0]]]`.
//! Reading component `n` of a code is `α(βⁿ(a))`, written `a □ n`.
//!
//! Nested pairs grow doubly exponentially with nesting depth, so every pair
//! built through a [`Codec`] is checked against a bit-length guard.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Nat = BigUint;

/// Default cap on the bit length of any pair result.
pub const DEFAULT_MAX_BITS: u64 = 1 << 26;

/// Bound used to gate non-default schemes in [`Codec::with_scheme`].
pub const SCHEME_VERIFY_BOUND: u64 = 64;

/// Exact `⌊√n⌋` by Newton iteration from an over-estimate.
pub fn isqrt(n: &Nat) -> Nat {
    if let Some(small) = n.to_u128() {
        return Nat::from(small.isqrt());
    }
    // Root of the leading ~100 bits, rounded up: over-estimates ⌊√n⌋ by a
    // relative 2⁻⁵⁰ at most.
    let shift = (n.bits() - 100) / 2;
    let top = (n >> (2 * shift)).to_u128().expect("at most 101 bits");
    let mut x = Nat::from(top.isqrt() + 1) << shift;
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            break;
        }
        x = y;
    }
    debug_assert!(&x * &x <= *n && (&x + 1u32) * (&x + 1u32) > *n);
    x
}

fn triangle(w: &Nat) -> Nat {
    (w * (w + 1u32)) >> 1u32
}

/// Splits `z` into `(w - j, j)` where `w` is the diagonal holding `z` and
/// `j` is the offset along it.
fn diagonal_split(z: &Nat) -> (Nat, Nat) {
    if let Some(z) = z.to_u64() {
        let root = (8 * z as u128 + 1).isqrt();
        let w = (root - 1) / 2;
        let j = z as u128 - w * (w + 1) / 2;
        return (Nat::from(w - j), Nat::from(j));
    }
    let root = isqrt(&((z << 3u32) + 1u32));
    let w = (root - 1u32) >> 1u32;
    let j = z - triangle(&w);
    (w - &j, j)
}

/// Lower bound on the bit length of `(a+b)(a+b+1)/2`.
fn diagonal_min_bits(a: &Nat, b: &Nat) -> u64 {
    diagonal_bits_bound((a + b).bits())
}

/// Same bound given only the bit length `k` of `a + b`.
fn diagonal_bits_bound(k: u64) -> u64 {
    if k <= 1 {
        0
    } else {
        2 * k - 2
    }
}

/// A candidate primitive pairing `(pair, α, β)`.
pub trait PairingScheme: Send + Sync {
    fn name(&self) -> &str;

    fn pair(&self, a: &Nat, b: &Nat) -> Nat;

    /// Returns `(α z, β z)`.
    fn unpair(&self, z: &Nat) -> (Nat, Nat);

    fn first(&self, z: &Nat) -> Nat {
        self.unpair(z).0
    }

    fn second(&self, z: &Nat) -> Nat {
        self.unpair(z).1
    }

    /// A lower bound on `pair(a, b).bits()` that is cheap to compute, used to
    /// refuse oversized pairs before building them. Zero means "no estimate".
    fn min_pair_bits(&self, _a: &Nat, _b: &Nat) -> u64 {
        0
    }

    /// A lower bound on `pair(a, b).bits()` over all `a`, for any `b` with
    /// `bits` bits. Zero means "no estimate".
    fn min_wrap_bits(&self, _bits: u64) -> u64 {
        0
    }
}

/// Cantor pairing `[a, b] = (a+b)(a+b+1)/2 + b`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Cantor;

impl PairingScheme for Cantor {
    fn name(&self) -> &str {
        "cantor"
    }

    fn pair(&self, a: &Nat, b: &Nat) -> Nat {
        cantor_pair(a, b)
    }

    fn unpair(&self, z: &Nat) -> (Nat, Nat) {
        cantor_unpair(z)
    }

    fn min_pair_bits(&self, a: &Nat, b: &Nat) -> u64 {
        diagonal_min_bits(a, b)
    }

    fn min_wrap_bits(&self, bits: u64) -> u64 {
        diagonal_bits_bound(bits)
    }
}

/// `[a, b]* = (a+b)(a+b+1)/2 + a`: a bijection that is *not* a primitive
/// pairing, since `β*(1) = 1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReversedCantor;

impl PairingScheme for ReversedCantor {
    fn name(&self) -> &str {
        "reversed-cantor"
    }

    fn pair(&self, a: &Nat, b: &Nat) -> Nat {
        triangle(&(a + b)) + a
    }

    fn unpair(&self, z: &Nat) -> (Nat, Nat) {
        let (w_minus_j, j) = diagonal_split(z);
        (j, w_minus_j)
    }

    fn min_pair_bits(&self, a: &Nat, b: &Nat) -> u64 {
        diagonal_min_bits(a, b)
    }

    fn min_wrap_bits(&self, bits: u64) -> u64 {
        diagonal_bits_bound(bits)
    }
}

/// Cantor pairing without a resource guard.
pub fn cantor_pair(a: &Nat, b: &Nat) -> Nat {
    if let (Some(a), Some(b)) = (a.to_u64(), b.to_u64()) {
        if a < (1 << 62) && b < (1 << 62) {
            let s = (a + b) as u128;
            return Nat::from(s * (s + 1) / 2 + b as u128);
        }
    }
    let s = a + b;
    triangle(&s) + b
}

/// Inverse of [`cantor_pair`]: `(α z, β z)`.
pub fn cantor_unpair(z: &Nat) -> (Nat, Nat) {
    diagonal_split(z)
}

/// A 0-finite sequence in normal form: no trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSeq(Vec<Nat>);

impl FiniteSeq {
    pub fn new(mut items: Vec<Nat>) -> Self {
        while items.last().is_some_and(Zero::is_zero) {
            items.pop();
        }
        FiniteSeq(items)
    }

    pub fn empty() -> Self {
        FiniteSeq(Vec::new())
    }

    pub fn items(&self) -> &[Nat] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Nat> {
        self.0
    }

    /// Number of stored items; every index at or past this reads as zero.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> Nat {
        self.0.get(index).cloned().unwrap_or_default()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|x| x.is_one()).count()
    }
}

impl FromIterator<Nat> for FiniteSeq {
    fn from_iter<I: IntoIterator<Item = Nat>>(iter: I) -> Self {
        FiniteSeq::new(iter.into_iter().collect())
    }
}

impl From<&[u64]> for FiniteSeq {
    fn from(items: &[u64]) -> Self {
        items.iter().copied().map(Nat::from).collect()
    }
}

impl fmt::Display for FiniteSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// A pairing scheme together with the bit-length guard. All code
/// construction in the crate goes through a codec.
#[derive(Clone)]
pub struct Codec {
    scheme: Arc<dyn PairingScheme>,
    max_bits: u64,
}

impl fmt::Debug for Codec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Codec")
            .field("scheme", &self.scheme.name())
            .field("max_bits", &self.max_bits)
            .finish()
    }
}

impl Default for Codec {
    fn default() -> Self {
        Codec::new(DEFAULT_MAX_BITS)
    }
}

impl Codec {
    /// Cantor pairing with the given guard.
    pub fn new(max_bits: u64) -> Self {
        Codec {
            scheme: Arc::new(Cantor),
            max_bits,
        }
    }

    /// Uses a custom scheme after checking the pairing axioms on a finite
    /// window.
    pub fn with_scheme<S: PairingScheme + 'static>(scheme: S, max_bits: u64) -> Result<Self> {
        let report = verify_pairing(&scheme, SCHEME_VERIFY_BOUND);
        if !report.holds() {
            return Err(Error::InvalidScheme(report));
        }
        Ok(Codec {
            scheme: Arc::new(scheme),
            max_bits,
        })
    }

    pub fn max_bits(&self) -> u64 {
        self.max_bits
    }

    pub fn scheme(&self) -> &dyn PairingScheme {
        self.scheme.as_ref()
    }

    fn check(&self, bits: u64) -> Result<()> {
        if bits > self.max_bits {
            Err(Error::Resource {
                bits,
                max_bits: self.max_bits,
            })
        } else {
            Ok(())
        }
    }

    pub fn pair(&self, a: &Nat, b: &Nat) -> Result<Nat> {
        self.check(self.scheme.min_pair_bits(a, b))?;
        let z = self.scheme.pair(a, b);
        self.check(z.bits())?;
        Ok(z)
    }

    /// Fails early when wrapping `inner` in `depth` further pairs (on either
    /// side) is certain to exceed the guard.
    pub fn check_nesting(&self, inner: &Nat, depth: u64) -> Result<()> {
        let mut bits = inner.bits();
        for _ in 0..depth {
            let next = self.scheme.min_wrap_bits(bits);
            if next <= bits {
                break;
            }
            self.check(next)?;
            bits = next;
        }
        Ok(())
    }

    pub fn unpair(&self, z: &Nat) -> (Nat, Nat) {
        self.scheme.unpair(z)
    }

    pub fn first(&self, z: &Nat) -> Nat {
        self.scheme.first(z)
    }

    pub fn second(&self, z: &Nat) -> Nat {
        self.scheme.second(z)
    }

    /// `(a)_n = α(βⁿ a)`, the universal operation `a □ n`.
    pub fn component(&self, a: &Nat, n: &Nat) -> Nat {
        if n >= a {
            return Nat::zero();
        }
        let mut z = a.clone();
        let mut remaining = n.clone();
        loop {
            if z.is_zero() {
                return z;
            }
            if remaining.is_zero() {
                return self.first(&z);
            }
            z = self.second(&z);
            remaining -= 1u32;
        }
    }

    pub fn component_at(&self, a: &Nat, n: usize) -> Nat {
        self.component(a, &Nat::from(n))
    }

    /// `[x₀, x₁, ..., x_k, 0]`; trailing zeros do not change the code.
    pub fn encode_list(&self, xs: &[Nat]) -> Result<Nat> {
        let mut code = Nat::zero();
        let mut tail = xs.len();
        while tail > 0 && xs[tail - 1].is_zero() {
            tail -= 1;
        }
        for (depth, x) in xs[..tail].iter().enumerate().rev() {
            self.check_nesting(&code, depth as u64 + 1)?;
            code = self.pair(x, &code)?;
        }
        Ok(code)
    }

    pub fn decode_list(&self, a: &Nat) -> FiniteSeq {
        let mut items = Vec::new();
        let mut z = a.clone();
        while !z.is_zero() {
            let (head, rest) = self.unpair(&z);
            items.push(head);
            z = rest;
        }
        FiniteSeq::new(items)
    }

    /// How many components of `a` equal 1.
    pub fn count_ones(&self, a: &Nat) -> Nat {
        Nat::from(self.decode_list(a).count_ones())
    }

    /// The code of `a` with component `index` replaced by `value`.
    pub fn replace_component(&self, a: &Nat, index: &Nat, value: &Nat) -> Result<Nat> {
        let mut items = self.decode_list(a).into_vec();
        if let Some(i) = index.to_usize().filter(|&i| i < items.len()) {
            items[i] = value.clone();
            return self.encode_list(&items);
        }
        if value.is_zero() {
            return Ok(a.clone());
        }
        // Past the populated prefix: value, preceded by a run of zero slots.
        let mut code = self.pair(value, &Nat::zero())?;
        let mut gap = index - Nat::from(items.len());
        let zero = Nat::zero();
        while !gap.is_zero() {
            let depth = &gap + items.len();
            self.check_nesting(&code, depth.to_u64().unwrap_or(u64::MAX))?;
            code = self.pair(&zero, &code)?;
            gap -= 1u32;
        }
        for x in items.iter().rev() {
            code = self.pair(x, &code)?;
        }
        Ok(code)
    }
}

/// Which pairing axiom failed and where.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Pair(Nat, Nat),
    Code(Nat),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationReport {
    Holds {
        pairs_checked: u64,
        codes_checked: u64,
    },
    Violated {
        axiom: u8,
        witness: Witness,
    },
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        matches!(self, VerificationReport::Holds { .. })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationReport::Holds {
                pairs_checked,
                codes_checked,
            } => write!(
                f,
                "axioms 1-5 hold ({pairs_checked} pairs, {codes_checked} codes)"
            ),
            VerificationReport::Violated { axiom, witness } => match witness {
                Witness::Pair(a, b) => write!(f, "axiom {axiom} fails at ({a}, {b})"),
                Witness::Code(z) => write!(f, "axiom {axiom} fails at z = {z}"),
            },
        }
    }
}

/// Checks the five primitive-pairing axioms for every `a, b ≤ bound` and
/// every `z ≤ pair(bound, bound)`, in axiom order.
pub fn verify_pairing(scheme: &dyn PairingScheme, bound: u64) -> VerificationReport {
    let violated = |axiom, witness| VerificationReport::Violated { axiom, witness };
    let mut pairs_checked = 0;
    for a in 0..=bound {
        for b in 0..=bound {
            let (a, b) = (Nat::from(a), Nat::from(b));
            let (first, second) = scheme.unpair(&scheme.pair(&a, &b));
            if first != a {
                return violated(1, Witness::Pair(a, b));
            }
            if second != b {
                return violated(2, Witness::Pair(a, b));
            }
            pairs_checked += 1;
        }
    }

    let top = scheme.pair(&Nat::from(bound), &Nat::from(bound));
    let top = top.to_u64().expect("verification window fits in u64");
    for z in 0..=top {
        let z = Nat::from(z);
        let (first, second) = scheme.unpair(&z);
        if scheme.pair(&first, &second) != z {
            return violated(3, Witness::Code(z));
        }
    }

    if !scheme.pair(&Nat::zero(), &Nat::zero()).is_zero() {
        return violated(4, Witness::Pair(Nat::zero(), Nat::zero()));
    }

    for z in 1..=top {
        let z = Nat::from(z);
        let (first, second) = scheme.unpair(&z);
        if first > z || second >= z {
            return violated(5, Witness::Code(z));
        }
    }

    VerificationReport::Holds {
        pairs_checked,
        codes_checked: top + 1,
    }
}
