//! Truth-table Boolean functions.
//!
//! Bit `x` of the table is `F(x)`, where `x` is the integer encoding of the
//! input point. For inputs in GF(2^m) this is the polynomial-basis encoding
//! of [`crate::gf2m`]; for the 2t-dimensional product space the low `2t-1`
//! bits hold the field coordinate and the top bit holds `ν`.

use std::fmt;
use std::ops::{BitXor, Not};

use crate::error::{Error, Result};
use crate::gf2m::{Element, FieldContext};

/// Largest number of variables a truth table may have.
pub const MAX_VARIABLES: u32 = 26;

const XOR_DIMENSION_PANIC: &str = "XOR of Boolean functions with different dimensions";

/// An `m`-variable Boolean function stored as a packed truth table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    m: u32,
    words: Vec<u64>,
}

fn word_count(m: u32) -> usize {
    (1usize << m).div_ceil(64)
}

fn tail_mask(m: u32) -> u64 {
    if m >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << m)) - 1
    }
}

impl BooleanFunction {
    /// The constant-zero function in `m` variables.
    ///
    /// Panics if `m > MAX_VARIABLES`.
    pub fn zero(m: u32) -> Self {
        assert!(m <= MAX_VARIABLES, "too many variables: {m}");
        BooleanFunction {
            m,
            words: vec![0; word_count(m)],
        }
    }

    pub(crate) fn from_words(m: u32, words: Vec<u64>) -> Self {
        assert_eq!(words.len(), word_count(m));
        let mut f = BooleanFunction { m, words };
        f.clear_tail();
        f
    }

    pub fn constant(m: u32, value: bool) -> Self {
        let mut f = Self::zero(m);
        if value {
            f.words.fill(u64::MAX);
            f.clear_tail();
        }
        f
    }

    pub fn from_fn(m: u32, mut eval: impl FnMut(u32) -> bool) -> Self {
        let mut f = Self::zero(m);
        for x in 0..1u32 << m {
            if eval(x) {
                f.words[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        f
    }

    /// The absolute trace `x -> tr(x)` of `ctx` as a function.
    pub fn trace(ctx: &FieldContext) -> Self {
        Self::from_fn(ctx.m(), |x| ctx.trace(x) == 1)
    }

    /// `x -> tr(a·x) + c`.
    pub fn linear_form(ctx: &FieldContext, a: Element, c: bool) -> Self {
        let u = ctx.dual_index(a);
        Self::from_fn(ctx.m(), |x| ((u & x).count_ones() & 1 == 1) ^ c)
    }

    fn clear_tail(&mut self) {
        let mask = tail_mask(self.m);
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of points, `2^m`.
    pub fn len(&self) -> usize {
        1 << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, x: u32) -> bool {
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    pub fn bit(&self, x: u32) -> u8 {
        self.get(x) as u8
    }

    pub fn set(&mut self, x: u32, value: bool) {
        let w = &mut self.words[(x >> 6) as usize];
        if value {
            *w |= 1 << (x & 63);
        } else {
            *w &= !(1 << (x & 63));
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Number of points where the function is 1.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == (self.len() as u64) / 2
    }

    /// Pointwise sum.
    pub fn add(&self, other: &BooleanFunction) -> Result<BooleanFunction> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                left: self.m,
                right: other.m,
            });
        }
        Ok(BooleanFunction {
            m: self.m,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    pub fn hamming_distance(&self, other: &BooleanFunction) -> u64 {
        assert_eq!(self.m, other.m, "{XOR_DIMENSION_PANIC}");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as u64)
            .sum()
    }

    /// Smallest point where the two functions disagree.
    pub fn first_difference(&self, other: &BooleanFunction) -> Option<u32> {
        assert_eq!(self.m, other.m, "{XOR_DIMENSION_PANIC}");
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(i, (a, b))| (i as u32) * 64 + (a ^ b).trailing_zeros())
    }

    /// `D_e f(x) = f(x) + f(x + e)`, with point addition as coordinate XOR.
    pub fn derivative(&self, e: u32) -> BooleanFunction {
        assert!((e as usize) < self.len(), "direction out of range");
        let mut out = Self::zero(self.m);
        if e & 63 == 0 {
            let shift = (e >> 6) as usize;
            for (i, w) in out.words.iter_mut().enumerate() {
                *w = self.words[i] ^ self.words[i ^ shift];
            }
        } else {
            for x in 0..self.len() as u32 {
                if self.get(x) != self.get(x ^ e) {
                    out.words[(x >> 6) as usize] |= 1 << (x & 63);
                }
            }
        }
        out
    }

    /// `Some(value)` when the function is constant.
    pub fn is_constant(&self) -> Option<bool> {
        match self.weight() {
            0 => Some(false),
            w if w == self.len() as u64 => Some(true),
            _ => None,
        }
    }

    /// `f(x) + tr(a·x) + c`.
    pub fn add_linear_form(
        &self,
        ctx: &FieldContext,
        a: Element,
        c: bool,
    ) -> Result<BooleanFunction> {
        if self.m != ctx.m() {
            return Err(Error::DimensionMismatch {
                left: self.m,
                right: ctx.m(),
            });
        }
        Ok(self ^ &Self::linear_form(ctx, a, c))
    }

    /// Points where the function is 1, ascending.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some(((i as u32) << 6) | b)
            })
        })
    }

    /// Algebraic normal form via the in-place Möbius transform.
    pub fn anf(&self) -> Anf {
        let mut coeffs = self.clone();
        moebius_in_place(&mut coeffs);
        Anf {
            coefficients: coeffs,
        }
    }

    /// Algebraic degree; the zero function has degree 0.
    pub fn degree(&self) -> u32 {
        self.anf().degree()
    }

    /// Little-endian byte image: point `x` is bit `x % 8` of byte `x / 8`.
    pub fn to_bytes_le(&self) -> Vec<u8> {
        let n = (self.len() / 8).max(1);
        self.words
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(n)
            .collect()
    }

    pub fn from_bytes_le(m: u32, bytes: &[u8]) -> Result<Self> {
        if m > MAX_VARIABLES {
            return Err(Error::InvalidTable(format!("too many variables: {m}")));
        }
        let n = ((1usize << m) / 8).max(1);
        if bytes.len() != n {
            return Err(Error::InvalidTable(format!(
                "expected {n} bytes for m={m}, got {}",
                bytes.len()
            )));
        }
        let mut f = Self::zero(m);
        for (i, chunk) in bytes.chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            f.words[i] = u64::from_le_bytes(buf);
        }
        if f.words.last().copied().unwrap_or(0) & !tail_mask(m) != 0 {
            return Err(Error::InvalidTable("bits set beyond 2^m".into()));
        }
        Ok(f)
    }

    /// Lowercase hex of [`BooleanFunction::to_bytes_le`].
    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes_le())
    }

    /// Inverse of [`BooleanFunction::to_hex`]; whitespace is ignored.
    pub fn from_hex(m: u32, text: &str) -> Result<Self> {
        let digits: String = text.chars().filter(|c| !c.is_ascii_whitespace()).collect();
        let bytes = hex::decode(&digits).map_err(|e| Error::InvalidTable(format!("bad hex: {e}")))?;
        Self::from_bytes_le(m, &bytes)
    }

    /// Truth-table file contents: `BF m=<dim>` then the hex dump, 64 digits
    /// per line.
    pub fn to_table_text(&self) -> String {
        let hex = self.to_hex();
        let mut out = format!("BF m={}\n", self.m);
        for line in hex.as_bytes().chunks(64) {
            out.push_str(std::str::from_utf8(line).expect("hex is ASCII"));
            out.push('\n');
        }
        out
    }

    pub fn from_table_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().skip_while(|l| l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidTable("empty table file".into()))?
            .trim();
        let m = header
            .strip_prefix("BF m=")
            .and_then(|d| d.trim().parse::<u32>().ok())
            .ok_or_else(|| Error::InvalidTable(format!("bad header {header:?}")))?;
        let body: String = lines.collect();
        Self::from_hex(m, &body)
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hex = self.to_hex();
        if hex.len() > 32 {
            write!(f, "BooleanFunction(m={}, {}…)", self.m, &hex[..32])
        } else {
            write!(f, "BooleanFunction(m={}, {hex})", self.m)
        }
    }
}

impl BitXor for &BooleanFunction {
    type Output = BooleanFunction;

    fn bitxor(self, rhs: &BooleanFunction) -> BooleanFunction {
        self.add(rhs).expect(XOR_DIMENSION_PANIC)
    }
}

impl BitXor for BooleanFunction {
    type Output = BooleanFunction;

    fn bitxor(self, rhs: BooleanFunction) -> BooleanFunction {
        &self ^ &rhs
    }
}

impl Not for &BooleanFunction {
    type Output = BooleanFunction;

    fn not(self) -> BooleanFunction {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.clear_tail();
        out
    }
}

impl Not for BooleanFunction {
    type Output = BooleanFunction;

    fn not(self) -> BooleanFunction {
        !&self
    }
}

/// Algebraic normal form: bit `u` is the coefficient of the monomial
/// `Π_{i ∈ u} x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anf {
    coefficients: BooleanFunction,
}

impl Anf {
    pub fn m(&self) -> u32 {
        self.coefficients.m
    }

    pub fn coefficient(&self, monomial: u32) -> bool {
        self.coefficients.get(monomial)
    }

    /// Monomial masks with nonzero coefficient, ascending.
    pub fn monomials(&self) -> impl Iterator<Item = u32> + '_ {
        self.coefficients.support()
    }

    pub fn degree(&self) -> u32 {
        self.monomials().map(u32::count_ones).max().unwrap_or(0)
    }

    /// Evaluates back to a truth table; the transform is an involution.
    pub fn to_function(&self) -> BooleanFunction {
        let mut f = self.coefficients.clone();
        moebius_in_place(&mut f);
        f
    }
}

const LOW_HALVES: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Butterfly Möbius transform over F_2, `O(m·2^m)` bit operations.
fn moebius_in_place(f: &mut BooleanFunction) {
    let in_word = f.m.min(6) as usize;
    for w in &mut f.words {
        for (i, &mask) in LOW_HALVES.iter().enumerate().take(in_word) {
            *w ^= (*w & mask) << (1 << i);
        }
    }
    let n = f.words.len();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for j in block..block + h {
                f.words[j + h] ^= f.words[j];
            }
        }
        h *= 2;
    }
}
