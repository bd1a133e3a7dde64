//! Reference implementations used as oracles by the integration tests.
//!
//! Nothing here touches the library's tables or transforms: field
//! multiplication is shift-and-add with reduction, the trace is a sum of
//! squarings, and spectra are double loops.

#![allow(dead_code)]

use bentkit::BooleanFunction;

/// GF(2^m) with schoolbook arithmetic modulo `poly`.
#[derive(Clone, Copy, Debug)]
pub struct Gf {
    pub m: u32,
    pub poly: u64,
}

impl Gf {
    pub fn new(m: u32, poly: u64) -> Self {
        Gf { m, poly }
    }

    pub fn size(&self) -> u32 {
        1 << self.m
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut r = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.m & 1 == 1 {
                a ^= self.poly;
            }
        }
        r as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    pub fn trace(&self, a: u32) -> bool {
        let mut acc = 0;
        let mut z = a;
        for _ in 0..self.m {
            acc ^= z;
            z = self.mul(z, z);
        }
        assert!(acc <= 1, "trace left the prime field");
        acc == 1
    }

    /// Truth table of every element's trace.
    pub fn trace_table(&self) -> Vec<bool> {
        (0..self.size()).map(|a| self.trace(a)).collect()
    }

    /// `constant + Σ tr(x^e)` as a truth table.
    pub fn binary_trace(&self, constant: bool, exponents: &[u64]) -> Vec<bool> {
        (0..self.size())
            .map(|x| {
                exponents
                    .iter()
                    .fold(constant, |acc, &e| acc ^ self.trace(self.pow(x, e)))
            })
            .collect()
    }
}

pub fn table(f: &BooleanFunction) -> Vec<bool> {
    (0..f.len() as u32).map(|x| f.get(x)).collect()
}

pub fn xor(a: &[bool], b: &[bool]) -> Vec<bool> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

pub fn not(a: &[bool]) -> Vec<bool> {
    a.iter().map(|x| !x).collect()
}

/// Table of `(x, ν) -> f_ν(x)` with `ν` as the top coordinate.
pub fn concat(f0: &[bool], f1: &[bool]) -> Vec<bool> {
    f0.iter().chain(f1).copied().collect()
}

pub fn halves(f: &[bool]) -> (Vec<bool>, Vec<bool>) {
    let (a, b) = f.split_at(f.len() / 2);
    (a.to_vec(), b.to_vec())
}

/// `Σ_x (-1)^{f(x) + u·x}` with the coordinate dot product.
pub fn naive_walsh(f: &[bool]) -> Vec<i64> {
    let n = f.len();
    (0..n)
        .map(|u| {
            (0..n)
                .map(|x| {
                    let bit = f[x] ^ ((u & x).count_ones() % 2 == 1);
                    if bit {
                        -1
                    } else {
                        1
                    }
                })
                .sum()
        })
        .collect()
}

/// `Σ_x (-1)^{f(x) + tr(vx)}` for every field element `v`.
pub fn naive_field_walsh(gf: &Gf, f: &[bool]) -> Vec<i64> {
    let tr = gf.trace_table();
    (0..gf.size())
        .map(|v| {
            (0..gf.size())
                .map(|x| {
                    if f[x as usize] ^ tr[gf.mul(v, x) as usize] {
                        -1
                    } else {
                        1
                    }
                })
                .sum()
        })
        .collect()
}

/// Dual of a bent function on `GF(2^m) × GF(2)` under
/// `<(a,η),(x,ν)> = tr(ax) + ην`, straight from the definition.
pub fn naive_product_dual(gf: &Gf, f: &[bool]) -> Option<Vec<bool>> {
    let q = gf.size() as usize;
    assert_eq!(f.len(), 2 * q);
    let tr = gf.trace_table();
    let level = 1i64 << (gf.m + 1).div_ceil(2);
    let mut out = vec![false; 2 * q];
    // the field product is needed for every (a, x); tabulate it per a
    for a in 0..q {
        let row: Vec<bool> = (0..q as u32)
            .map(|x| tr[gf.mul(a as u32, x) as usize])
            .collect();
        for eta in 0..2 {
            let mut sum = 0i64;
            for nu in 0..2 {
                for x in 0..q {
                    let bit = f[nu * q + x] ^ row[x] ^ (eta & nu == 1);
                    sum += if bit { -1 } else { 1 };
                }
            }
            if sum.abs() != level {
                return None;
            }
            out[eta * q + a] = sum < 0;
        }
    }
    Some(out)
}

pub fn is_bent(f: &[bool]) -> bool {
    let n = f.len().trailing_zeros();
    if n % 2 == 1 {
        return false;
    }
    let level = 1i64 << (n / 2);
    naive_walsh(f).iter().all(|w| w.abs() == level)
}

pub fn is_near_bent(f: &[bool]) -> bool {
    let n = f.len().trailing_zeros();
    if n.is_multiple_of(2) {
        return false;
    }
    let level = 1i64 << n.div_ceil(2);
    naive_walsh(f).iter().all(|w| *w == 0 || w.abs() == level)
}

/// Algebraic degree via the subset-sum definition of the ANF.
pub fn naive_degree(f: &[bool]) -> u32 {
    let n = f.len();
    (0..n)
        .filter(|&u| {
            (0..n)
                .filter(|&x| x & u == x)
                .fold(false, |acc, x| acc ^ f[x])
        })
        .map(|u| u.count_ones())
        .max()
        .unwrap_or(0)
}

/// `D_1 f` as an optional constant.
pub fn d1_constant(f: &[bool]) -> Option<bool> {
    let d: Vec<bool> = (0..f.len()).map(|x| f[x] ^ f[x ^ 1]).collect();
    if d.iter().all(|&b| b == d[0]) {
        Some(d[0])
    } else {
        None
    }
}
