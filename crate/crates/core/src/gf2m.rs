//! Finite fields GF(2^m) in polynomial basis.
//!
//! An element is a `u32` whose bit `i` is the coefficient of `α^i`, where `α`
//! is a root of the context's primitive polynomial. Multiplication goes
//! through log/antilog tables built once at construction.

use crate::error::{Error, Result};

/// A field element in polynomial-basis encoding.
pub type Element = u32;

pub const MIN_DIMENSION: u32 = 2;
pub const MAX_DIMENSION: u32 = 24;

/// Pinned default primitive polynomials, indexed by dimension. Bit `i` is the
/// coefficient of `x^i`.
const DEFAULT_POLYS: [u64; 25] = [
    0, 0, 0x7,       // x^2+x+1
    0xb,       // x^3+x+1
    0x13,      // x^4+x+1
    0x25,      // x^5+x^2+1
    0x43,      // x^6+x+1
    0x83,      // x^7+x+1
    0x11d,     // x^8+x^4+x^3+x^2+1
    0x211,     // x^9+x^4+1
    0x409,     // x^10+x^3+1
    0x805,     // x^11+x^2+1
    0x1053,    // x^12+x^6+x^4+x+1
    0x201b,    // x^13+x^4+x^3+x+1
    0x4443,    // x^14+x^10+x^6+x+1
    0x8003,    // x^15+x+1
    0x1100b,   // x^16+x^12+x^3+x+1
    0x20009,   // x^17+x^3+1
    0x40081,   // x^18+x^7+1
    0x80027,   // x^19+x^5+x^2+x+1
    0x100009,  // x^20+x^3+1
    0x200005,  // x^21+x^2+1
    0x400003,  // x^22+x+1
    0x800021,  // x^23+x^5+1
    0x1000087, // x^24+x^7+x^2+x+1
];

/// The pinned default primitive polynomial for dimension `m`.
pub fn default_primitive_poly(m: u32) -> Option<u64> {
    DEFAULT_POLYS.get(m as usize).copied().filter(|&p| p != 0)
}

/// A concrete GF(2^m) with precomputed tables. Immutable after construction.
#[derive(Clone)]
pub struct FieldContext {
    m: u32,
    primitive_poly: u64,
    log_table: Vec<u32>,
    antilog_table: Vec<Element>,
    trace_mask: u32,
    trace_table: Vec<u64>,
    gram_matrix: Vec<u32>,
    gram_inverse: Vec<u32>,
}

impl std::fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldContext")
            .field("m", &self.m)
            .field(
                "primitive_poly",
                &format_args!("{:#x}", self.primitive_poly),
            )
            .finish_non_exhaustive()
    }
}

impl FieldContext {
    /// Builds GF(2^m) over `primitive_poly`, or over the pinned default when
    /// `None`.
    pub fn new(m: u32, primitive_poly: Option<u64>) -> Result<Self> {
        if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&m) {
            return Err(Error::DimensionOutOfRange {
                m,
                min: MIN_DIMENSION,
                max: MAX_DIMENSION,
            });
        }
        let poly = match primitive_poly {
            Some(p) => p,
            None => default_primitive_poly(m).expect("default table covers every supported m"),
        };
        let not_primitive = Error::NonPrimitivePolynomial { poly, m };
        if poly >> m != 1 || poly & 1 == 0 {
            return Err(not_primitive);
        }

        let size = 1usize << m;
        let order = size - 1;
        let top = 1u64 << m;
        let mut log_table = vec![0u32; size];
        let mut antilog_table = vec![0 as Element; order];
        let mut x: u64 = 1;
        for (k, slot) in antilog_table.iter_mut().enumerate() {
            if k > 0 && x == 1 {
                return Err(not_primitive);
            }
            *slot = x as Element;
            log_table[x as usize] = k as u32;
            x <<= 1;
            if x & top != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(not_primitive);
        }

        let mut ctx = FieldContext {
            m,
            primitive_poly: poly,
            log_table,
            antilog_table,
            trace_mask: 0,
            trace_table: Vec::new(),
            gram_matrix: Vec::new(),
            gram_inverse: Vec::new(),
        };

        // tr(α^i) by summing the Frobenius conjugates of each basis element.
        for i in 0..m {
            let mut y: Element = 1 << i;
            let mut acc: Element = 0;
            for _ in 0..m {
                acc ^= y;
                y = ctx.mul(y, y);
            }
            debug_assert!(acc <= 1);
            ctx.trace_mask |= acc << i;
        }

        let mask = ctx.trace_mask;
        let mut table = vec![0u64; size.div_ceil(64)];
        for x in 0..size as u32 {
            if (x & mask).count_ones() & 1 == 1 {
                table[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        ctx.trace_table = table;

        ctx.gram_matrix = (0..m)
            .map(|i| {
                (0..m).fold(0u32, |row, j| {
                    let e = ctx.antilog_table[((i + j) as usize) % order];
                    row | (((e & mask).count_ones() & 1) << j)
                })
            })
            .collect();
        ctx.gram_inverse =
            invert_bit_matrix(&ctx.gram_matrix, m).expect("the trace form is non-degenerate");
        Ok(ctx)
    }

    /// Convenience constructor with the pinned default polynomial.
    pub fn with_default(m: u32) -> Result<Self> {
        Self::new(m, None)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn primitive_poly(&self) -> u64 {
        self.primitive_poly
    }

    /// Number of field elements, `2^m`.
    pub fn size(&self) -> usize {
        1 << self.m
    }

    /// Order of the multiplicative group, `2^m - 1`.
    pub fn group_order(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    /// The primitive element `α`.
    pub fn alpha(&self) -> Element {
        2
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.antilog_table.len();
        let k = self.log_table[a as usize] as usize + self.log_table[b as usize] as usize;
        self.antilog_table[if k >= order { k - order } else { k }]
    }

    /// `a^e`. The exponent is reduced modulo `2^m - 1` for nonzero `a`, and
    /// `0^0 = 1`.
    pub fn pow(&self, a: Element, e: u64) -> Element {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let order = self.group_order();
        let k = (self.log_table[a as usize] as u64 * (e % order)) % order;
        self.antilog_table[k as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Element) -> Option<Element> {
        let l = self.log(a)?;
        let order = self.antilog_table.len() as u32;
        Some(self.antilog_table[((order - l) % order) as usize])
    }

    /// Discrete logarithm base `α`; `None` for zero.
    pub fn log(&self, a: Element) -> Option<u32> {
        (a != 0).then(|| self.log_table[a as usize])
    }

    /// `α^k` with `k` reduced modulo `2^m - 1`.
    pub fn antilog(&self, k: u64) -> Element {
        self.antilog_table[(k % self.group_order()) as usize]
    }

    /// Absolute trace to F_2, as `0` or `1`.
    pub fn trace(&self, a: Element) -> u8 {
        ((self.trace_table[(a >> 6) as usize] >> (a & 63)) & 1) as u8
    }

    /// Bit `i` is `tr(α^i)`; `tr(a)` is the parity of `a & trace_mask`.
    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    /// Row `i` of the Gram matrix `G[i][j] = tr(α^i α^j)`, as a bit mask over `j`.
    pub fn gram_row(&self, i: u32) -> u32 {
        self.gram_matrix[i as usize]
    }

    /// Coordinate vector `u = G · a`, so that `<u, x>` (coordinate dot
    /// product) equals `tr(a·x)` for every `x`.
    pub fn dual_index(&self, a: Element) -> u32 {
        apply_bit_matrix(&self.gram_matrix, a)
    }

    /// Inverse of [`FieldContext::dual_index`].
    pub fn element_of_dual_index(&self, u: u32) -> Element {
        apply_bit_matrix(&self.gram_inverse, u)
    }
}

fn apply_bit_matrix(rows: &[u32], v: u32) -> u32 {
    // Symmetric matrices only: column j equals row j.
    let mut acc = 0;
    let mut rest = v;
    while rest != 0 {
        let j = rest.trailing_zeros();
        acc ^= rows[j as usize];
        rest &= rest - 1;
    }
    acc
}

/// Gauss-Jordan inverse of an `n x n` bit matrix given as row masks.
fn invert_bit_matrix(rows: &[u32], n: u32) -> Option<Vec<u32>> {
    let mut a = rows.to_vec();
    let mut inv: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    for col in 0..n as usize {
        let pivot = (col..n as usize).find(|&r| a[r] >> col & 1 == 1)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..n as usize {
            if r != col && a[r] >> col & 1 == 1 {
                a[r] ^= a[col];
                inv[r] ^= inv[col];
            }
        }
    }
    Some(inv)
}

/// A 2-cyclotomic coset modulo `2^m - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCoset {
    pub leader: u32,
    pub members: Vec<u32>,
}

impl CyclotomicCoset {
    pub fn size(&self) -> u32 {
        self.members.len() as u32
    }

    pub fn contains(&self, e: u32) -> bool {
        self.members.binary_search(&e).is_ok()
    }
}

/// The coset of `e` modulo `2^m - 1`.
pub fn coset_of(m: u32, e: u64) -> CyclotomicCoset {
    let order = (1u64 << m) - 1;
    let start = e % order;
    let mut members = vec![start as u32];
    let mut j = (2 * start) % order;
    while j != start {
        members.push(j as u32);
        j = (2 * j) % order;
    }
    members.sort_unstable();
    CyclotomicCoset {
        leader: members[0],
        members,
    }
}

/// Smallest member of the coset of `e`.
pub fn coset_leader(m: u32, e: u64) -> u32 {
    let order = (1u64 << m) - 1;
    let start = e % order;
    let mut best = start;
    let mut j = (2 * start) % order;
    while j != start {
        best = best.min(j);
        j = (2 * j) % order;
    }
    best as u32
}

/// Partition of `{0, ..., 2^m - 2}` into 2-cyclotomic cosets, sorted by leader.
pub fn cyclotomic_cosets(m: u32) -> Vec<CyclotomicCoset> {
    let order = (1usize << m) - 1;
    let mut seen = vec![false; order];
    let mut out = Vec::new();
    for e in 0..order {
        if seen[e] {
            continue;
        }
        let coset = coset_of(m, e as u64);
        for &x in &coset.members {
            seen[x as usize] = true;
        }
        out.push(coset);
    }
    out
}
