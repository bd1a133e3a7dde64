//! Walsh–Hadamard spectra, bent / near-bent classification and duals.
//!
//! The transform itself uses the coordinate dot product `<v, x>`. Queries
//! under the trace inner product `tr(a·x)` are answered by reading the
//! coefficient at `dual_index(a)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2m::{Element, FieldContext};

/// Largest dimension accepted by [`walsh`].
pub const MAX_WALSH_DIMENSION: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpectrumClass {
    Bent,
    NearBent,
    Neither,
}

impl std::fmt::Display for SpectrumClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SpectrumClass::Bent => "Bent",
            SpectrumClass::NearBent => "NearBent",
            SpectrumClass::Neither => "Neither",
        })
    }
}

/// The `2^m` Fourier coefficients `F̂(v) = Σ_x (-1)^{F(x) + <v,x>}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    m: u32,
    coeffs: Vec<i32>,
    class: SpectrumClass,
    histogram: BTreeMap<i32, u64>,
}

/// Fast Walsh–Hadamard transform of `(-1)^{f(x)}`.
pub fn walsh(f: &BooleanFunction) -> Result<WalshSpectrum> {
    let m = f.m();
    if m > MAX_WALSH_DIMENSION {
        return Err(Error::DimensionOutOfRange {
            m,
            min: 0,
            max: MAX_WALSH_DIMENSION,
        });
    }
    let mut coeffs: Vec<i32> = (0..f.len() as u32)
        .map(|x| if f.get(x) { -1 } else { 1 })
        .collect();
    fwht_in_place(&mut coeffs);
    Ok(WalshSpectrum::from_coeffs(m, coeffs))
}

fn fwht_in_place(a: &mut [i32]) {
    let n = a.len();
    let mut h = 1;
    while h < n {
        for block in a.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*x + *y, *x - *y);
                *x = s;
                *y = d;
            }
        }
        h *= 2;
    }
}

/// Bent / near-bent / neither, from the coefficient multiset.
pub fn classify_coeffs(m: u32, coeffs: &[i32]) -> SpectrumClass {
    if m.is_multiple_of(2) {
        let level = 1i32 << (m / 2);
        if coeffs.iter().all(|c| c.abs() == level) {
            return SpectrumClass::Bent;
        }
    } else {
        let level = 1i32 << m.div_ceil(2);
        if coeffs.iter().all(|&c| c == 0 || c.abs() == level) {
            return SpectrumClass::NearBent;
        }
    }
    SpectrumClass::Neither
}

impl WalshSpectrum {
    pub fn from_coeffs(m: u32, coeffs: Vec<i32>) -> Self {
        assert_eq!(coeffs.len(), 1usize << m);
        let mut histogram = BTreeMap::new();
        for &c in &coeffs {
            *histogram.entry(c).or_insert(0) += 1;
        }
        let class = classify_coeffs(m, &coeffs);
        WalshSpectrum {
            m,
            coeffs,
            class,
            histogram,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    /// Coefficient at coordinate point `v`.
    pub fn at(&self, v: u32) -> i32 {
        self.coeffs[v as usize]
    }

    pub fn class(&self) -> SpectrumClass {
        self.class
    }

    pub fn histogram(&self) -> &BTreeMap<i32, u64> {
        &self.histogram
    }

    pub fn is_bent(&self) -> bool {
        self.class == SpectrumClass::Bent
    }

    pub fn is_near_bent(&self) -> bool {
        self.class == SpectrumClass::NearBent
    }

    /// `Σ_v F̂(v)^2`, which equals `2^{2m}` for every Boolean function.
    pub fn parseval_sum(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|&c| (c as i64 * c as i64) as u64)
            .sum()
    }

    /// `f̂(a)` under the trace inner product of `ctx` (requires `m == ctx.m`).
    pub fn at_field_point(&self, ctx: &FieldContext, a: Element) -> i32 {
        debug_assert_eq!(self.m, ctx.m());
        self.coeffs[ctx.dual_index(a) as usize]
    }

    /// `F̂(a, η)` under `<(a,η),(x,ν)> = tr(ax) + ην`, for a `2t`-variable
    /// function and `ctx` of dimension `2t-1`.
    pub fn at_product_point(&self, ctx: &FieldContext, a: Element, eta: bool) -> i32 {
        debug_assert_eq!(self.m, ctx.m() + 1);
        let v = ((eta as u32) << ctx.m()) | ctx.dual_index(a);
        self.coeffs[v as usize]
    }

    /// The whole spectrum re-indexed by field element: entry `a` is `f̂(a)`.
    pub fn by_field_point(&self, ctx: &FieldContext) -> Vec<i32> {
        debug_assert_eq!(self.m, ctx.m());
        (0..ctx.size() as u32)
            .map(|a| self.at_field_point(ctx, a))
            .collect()
    }

    pub fn histogram_string(&self) -> String {
        let parts: Vec<String> = self
            .histogram
            .iter()
            .map(|(v, n)| format!("{v}:{n}"))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// `f̂(a)` under the trace inner product; computes the full spectrum.
pub fn walsh_at_field_point(f: &BooleanFunction, ctx: &FieldContext, a: Element) -> Result<i32> {
    if f.m() != ctx.m() {
        return Err(Error::DimensionMismatch {
            left: f.m(),
            right: ctx.m(),
        });
    }
    Ok(walsh(f)?.at_field_point(ctx, a))
}

pub fn classify(s: &WalshSpectrum) -> SpectrumClass {
    s.class()
}

/// Expected counts of `(+2^t, 0, -2^t)` for a near-bent function in
/// `m = 2t - 1` variables with the given value at 0.
pub fn nearbent_expected_counts(m: u32, f_at_zero: bool) -> (u64, u64, u64) {
    let t = m.div_ceil(2);
    // doubled, so that t = 1 stays integral
    let base2 = 1u64 << (2 * t - 2);
    let shift2 = 1u64 << (t - 1);
    let (plus2, minus2) = if f_at_zero {
        (base2 - shift2, base2 + shift2)
    } else {
        (base2 + shift2, base2 - shift2)
    };
    (plus2 / 2, 1u64 << (2 * t - 2), minus2 / 2)
}

/// Whether a near-bent spectrum has the `(+2^t, 0, -2^t)` value distribution
/// forced by `f(0)`.
pub fn check_nearbent_distribution(s: &WalshSpectrum, f_at_zero: bool) -> Result<bool> {
    if !s.is_near_bent() {
        return Err(Error::NotNearBent {
            histogram: s.histogram_string(),
        });
    }
    let level = 1i32 << s.m.div_ceil(2);
    let count = |v: i32| s.histogram.get(&v).copied().unwrap_or(0);
    let observed = (count(level), count(0), count(-level));
    Ok(observed == nearbent_expected_counts(s.m, f_at_zero))
}

/// Dual of a bent function in `2t` variables under the product inner
/// product of `ctx` (dimension `2t-1`): `F̃(a,η) = 1` iff `F̂(a,η) = -2^t`.
pub fn dual(f: &BooleanFunction, ctx: &FieldContext) -> Result<BooleanFunction> {
    if f.m() != ctx.m() + 1 {
        return Err(Error::DimensionMismatch {
            left: f.m(),
            right: ctx.m() + 1,
        });
    }
    let s = walsh(f)?;
    dual_from_spectrum(&s, ctx)
}

pub(crate) fn dual_from_spectrum(s: &WalshSpectrum, ctx: &FieldContext) -> Result<BooleanFunction> {
    if !s.is_bent() {
        return Err(Error::NotBent {
            histogram: s.histogram_string(),
        });
    }
    let half = ctx.m();
    let negative = -(1i32 << (s.m / 2));
    let field_size = ctx.size() as u32;
    Ok(BooleanFunction::from_fn(s.m, |x| {
        let a = x & (field_size - 1);
        let eta = x >> half == 1;
        s.at_product_point(ctx, a, eta) == negative
    }))
}

/// Dual under the plain coordinate dot product.
pub fn dual_standard(f: &BooleanFunction) -> Result<BooleanFunction> {
    let s = walsh(f)?;
    if !s.is_bent() {
        return Err(Error::NotBent {
            histogram: s.histogram_string(),
        });
    }
    let negative = -(1i32 << (f.m() / 2));
    Ok(BooleanFunction::from_fn(f.m(), |v| s.at(v) == negative))
}

pub fn is_balanced(f: &BooleanFunction) -> bool {
    f.is_balanced()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tracerep::parse;
    use crate::tvr::join;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Direct `O(4^m)` definition.
    fn naive_walsh(f: &BooleanFunction) -> Vec<i32> {
        (0..f.len() as u32)
            .map(|v| {
                (0..f.len() as u32)
                    .map(|x| {
                        let e = f.bit(x) as u32 + (v & x).count_ones();
                        if e.is_multiple_of(2) {
                            1
                        } else {
                            -1
                        }
                    })
                    .sum()
            })
            .collect()
    }

    fn random_function(m: u32, rng: &mut StdRng) -> BooleanFunction {
        BooleanFunction::from_fn(m, |_| rng.gen())
    }

    fn ctx7() -> FieldContext {
        FieldContext::with_default(7).unwrap()
    }

    #[test]
    fn walsh_of_zero_is_delta() {
        let s = walsh(&BooleanFunction::zero(3)).unwrap();
        assert_eq!(s.coeffs(), &[8, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(s.class(), SpectrumClass::Neither);
    }

    #[test]
    fn walsh_rejects_oversized_input() {
        let f = BooleanFunction::zero(25);
        assert!(matches!(walsh(&f), Err(Error::DimensionOutOfRange { .. })));
    }

    #[test]
    fn kasami_welch_component_is_near_bent() {
        let ctx = ctx7();
        let s = walsh(&parse("tr(x^13)", &ctx).unwrap()).unwrap();
        assert_eq!(s.class(), SpectrumClass::NearBent);
    }

    #[test]
    fn fast_matches_naive_randomized() {
        let mut rng = StdRng::seed_from_u64(7);
        for m in 0..=10 {
            for _ in 0..3 {
                let f = random_function(m, &mut rng);
                assert_eq!(walsh(&f).unwrap().coeffs(), naive_walsh(&f).as_slice());
            }
        }
    }

    #[test]
    fn field_point_queries() {
        let ctx = ctx7();
        let tr = BooleanFunction::trace(&ctx);
        assert_eq!(walsh_at_field_point(&tr, &ctx, 1).unwrap(), 128);
        let f = parse("tr(x^13)", &ctx).unwrap();
        assert_eq!(
            walsh_at_field_point(&f, &ctx, 0).unwrap(),
            128 - 2 * f.weight() as i32
        );
        let s = walsh(&f).unwrap();
        for a in [0u32, 1, 2, 3, 77, 127] {
            let direct: i32 = (0..128u32)
                .map(|x| {
                    if f.bit(x) ^ ctx.trace(ctx.mul(a, x)) == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .sum();
            assert_eq!(s.at_field_point(&ctx, a), direct);
        }
        assert!(walsh_at_field_point(&BooleanFunction::zero(6), &ctx, 1).is_err());
    }

    #[test]
    fn classify_examples() {
        let ctx = ctx7();
        let q = parse("tr(x^3+x^9)", &ctx).unwrap();
        assert_eq!(walsh(&q).unwrap().class(), SpectrumClass::NearBent);
        let big = join(&q, &(&q ^ &BooleanFunction::trace(&ctx))).unwrap();
        assert_eq!(walsh(&big).unwrap().class(), SpectrumClass::Bent);
        assert_eq!(
            walsh(&BooleanFunction::zero(7)).unwrap().class(),
            SpectrumClass::Neither
        );
        // bent weight is 2^{m-1} ± 2^{m/2-1}
        let w = big.weight();
        assert!(w == 120 || w == 136, "weight {w}");
    }

    #[test]
    fn nearbent_distribution_examples() {
        let ctx = ctx7();
        let f = parse("tr(x^13)", &ctx).unwrap();
        let s = walsh(&f).unwrap();
        assert_eq!(nearbent_expected_counts(7, false), (36, 64, 28));
        assert_eq!(s.histogram().get(&16), Some(&36));
        assert_eq!(s.histogram().get(&0), Some(&64));
        assert_eq!(s.histogram().get(&-16), Some(&28));
        assert!(check_nearbent_distribution(&s, false).unwrap());
        assert!(!check_nearbent_distribution(&s, true).unwrap());

        let g = !&f;
        let sg = walsh(&g).unwrap();
        assert_eq!(nearbent_expected_counts(7, true), (28, 64, 36));
        assert!(check_nearbent_distribution(&sg, true).unwrap());

        assert_eq!(nearbent_expected_counts(5, false), (10, 16, 6));
        let ctx5 = FieldContext::with_default(5).unwrap();
        let gold = parse("tr(x^3)", &ctx5).unwrap();
        assert!(check_nearbent_distribution(&walsh(&gold).unwrap(), false).unwrap());

        let not_nb = walsh(&BooleanFunction::zero(7)).unwrap();
        assert!(matches!(
            check_nearbent_distribution(&not_nb, false),
            Err(Error::NotNearBent { .. })
        ));
    }

    #[test]
    fn kasami_welch_dual_component() {
        let ctx = ctx7();
        let f0 = parse("tr(x^13)", &ctx).unwrap();
        let big = join(&f0, &(&f0 ^ &BooleanFunction::trace(&ctx))).unwrap();
        let d = dual(&big, &ctx).unwrap();
        let expected = parse("tr(x^7+x^11+x^19+x^21)", &ctx).unwrap();
        assert_eq!(crate::tvr::split(&d).unwrap().f0, expected);
        assert_eq!(dual(&d, &ctx).unwrap(), big);
    }

    #[test]
    fn self_dual_example() {
        let ctx = ctx7();
        let f0 = parse("tr(x^3+x^5+x^7+x^11+x^19+x^21)", &ctx).unwrap();
        let big = join(&f0, &(&f0 ^ &BooleanFunction::trace(&ctx))).unwrap();
        assert_eq!(dual(&big, &ctx).unwrap(), big);
    }

    #[test]
    fn dual_rejects_non_bent() {
        let ctx = ctx7();
        assert!(matches!(
            dual(&BooleanFunction::zero(8), &ctx),
            Err(Error::NotBent { .. })
        ));
        assert!(dual(&BooleanFunction::zero(7), &ctx).is_err());
    }

    #[test]
    fn derivatives_of_bent_are_balanced() {
        let ctx = ctx7();
        let f0 = parse("tr(x^3+x^9)", &ctx).unwrap();
        let big = join(&f0, &(&f0 ^ &BooleanFunction::trace(&ctx))).unwrap();
        for v in 1..256 {
            assert!(is_balanced(&big.derivative(v)));
        }
        assert!(is_balanced(&BooleanFunction::trace(&ctx)));
        assert!(!is_balanced(&BooleanFunction::zero(7)));
    }

    #[test]
    fn standard_dual_biduality() {
        // x1x2 + x3x4 is bent in 4 variables
        let f = BooleanFunction::from_fn(4, |x| {
            ((x & 1) & (x >> 1 & 1)) ^ ((x >> 2 & 1) & (x >> 3 & 1)) == 1
        });
        let d = dual_standard(&f).unwrap();
        assert_eq!(dual_standard(&d).unwrap(), f);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn parseval_and_r1(m in 1u32..=10, seed: u64) {
            let mut rng = StdRng::seed_from_u64(seed);
            let f = random_function(m, &mut rng);
            let s = walsh(&f).unwrap();
            prop_assert_eq!(s.parseval_sum(), 1u64 << (2 * m));
            prop_assert_eq!(s.at(0) as i64, (1i64 << m) - 2 * f.weight() as i64);
            for v in 0..f.len() as u32 {
                let shifted = BooleanFunction::from_fn(m, |x| f.get(x) ^ ((v & x).count_ones() & 1 == 1));
                prop_assert_eq!(s.at(v) as i64, (1i64 << m) - 2 * shifted.weight() as i64);
            }
        }

        #[test]
        fn fast_matches_naive_small(m in 0u32..=6, seed: u64) {
            let mut rng = StdRng::seed_from_u64(seed);
            let f = random_function(m, &mut rng);
            let fast = walsh(&f).unwrap();
            let slow = naive_walsh(&f);
            prop_assert_eq!(fast.coeffs(), slow.as_slice());
        }

        #[test]
        fn class_is_invariant_under_affine_shift(a in 0u32..128, c: bool, pick in 0usize..4) {
            let ctx = ctx7();
            let exprs = ["tr(x^13)", "tr(x^3+x^9)", "tr(x^7+x^13)", "tr(x^5)+tr(x^3)"];
            let f = parse(exprs[pick], &ctx).unwrap();
            let g = f.add_linear_form(&ctx, a, c).unwrap();
            prop_assert_eq!(walsh(&f).unwrap().class(), walsh(&g).unwrap().class());
        }
    }
}
