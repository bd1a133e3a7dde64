//! Two-variable representation of `2t`-variable functions over
//! `GF(2^{2t-1}) × F_2`.
//!
//! A point `(u, ν)` is encoded as `(ν << (2t-1)) | u`, so the components are
//! the two contiguous halves of the truth table:
//! `F(x, y) = (y+1)·f0(x) + y·f1(x)`.

use serde::Serialize;

use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2m::{Element, FieldContext};
use crate::spectrum::walsh;

/// The components `(f0, f1)` of a `2t`-variable function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TvrPair {
    pub f0: BooleanFunction,
    pub f1: BooleanFunction,
}

impl TvrPair {
    pub fn new(f0: BooleanFunction, f1: BooleanFunction) -> Result<Self> {
        if f0.m() != f1.m() {
            return Err(Error::DimensionMismatch {
                left: f0.m(),
                right: f1.m(),
            });
        }
        Ok(TvrPair { f0, f1 })
    }

    /// `t` such that the components have `2t - 1` variables.
    pub fn t(&self) -> u32 {
        self.f0.m().div_ceil(2)
    }

    /// `f0 + f1`, which is `D_{(0,1)} F` restricted to either half.
    pub fn component_sum(&self) -> BooleanFunction {
        &self.f0 ^ &self.f1
    }

    pub fn join(&self) -> BooleanFunction {
        join(&self.f0, &self.f1).expect("pair components share a dimension")
    }
}

/// Restrictions of `F` to `ν = 0` and `ν = 1`.
pub fn split(f: &BooleanFunction) -> Result<TvrPair> {
    let m = f.m();
    if !m.is_multiple_of(2) || m == 0 {
        return Err(Error::OddDimension(m));
    }
    let half = 1u32 << (m - 1);
    let (f0, f1) = if m > 6 {
        let (lo, hi) = f.words().split_at(f.words().len() / 2);
        (
            BooleanFunction::from_words(m - 1, lo.to_vec()),
            BooleanFunction::from_words(m - 1, hi.to_vec()),
        )
    } else {
        (
            BooleanFunction::from_fn(m - 1, |u| f.get(u)),
            BooleanFunction::from_fn(m - 1, |u| f.get(u | half)),
        )
    };
    Ok(TvrPair { f0, f1 })
}

/// The function with components `f0` (at `ν = 0`) and `f1` (at `ν = 1`).
pub fn join(f0: &BooleanFunction, f1: &BooleanFunction) -> Result<BooleanFunction> {
    if f0.m() != f1.m() {
        return Err(Error::DimensionMismatch {
            left: f0.m(),
            right: f1.m(),
        });
    }
    if f0.m() >= 6 {
        let words = [f0.words(), f1.words()].concat();
        return Ok(BooleanFunction::from_words(f0.m() + 1, words));
    }
    let half = 1u32 << f0.m();
    Ok(BooleanFunction::from_fn(f0.m() + 1, |x| {
        if x & half == 0 {
            f0.get(x)
        } else {
            f1.get(x ^ half)
        }
    }))
}

/// `<(a,η),(x,ν)> = tr(a·x) + η·ν`.
pub fn inner_product_2t(ctx: &FieldContext, a: Element, eta: bool, x: Element, nu: bool) -> bool {
    (ctx.trace(ctx.mul(a, x)) == 1) ^ (eta & nu)
}

/// The linear form `T_{(a,η)}` as a `2t`-variable function.
pub fn linear_form_2t(ctx: &FieldContext, a: Element, eta: bool) -> BooleanFunction {
    let mask = ctx.size() as u32 - 1;
    BooleanFunction::from_fn(ctx.m() + 1, |x| {
        inner_product_2t(ctx, a, eta, x & mask, x >> ctx.m() == 1)
    })
}

/// Outcome of the component Walsh identities for one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentWalshReport {
    /// `F̂(u,0) = f̂0(u) + f̂1(u)` for all `u`.
    pub sum_identity: bool,
    /// `F̂(u,1) = f̂0(u) - f̂1(u)` for all `u`.
    pub difference_identity: bool,
    /// `f̂1(u) = f̂0(u+1)`; only checked when `f0 + f1 = tr`.
    pub shift_identity: Option<bool>,
    /// First `u` where some checked identity failed.
    pub witness: Option<Element>,
}

impl ComponentWalshReport {
    pub fn all_pass(&self) -> bool {
        self.sum_identity && self.difference_identity && self.shift_identity != Some(false)
    }
}

pub fn component_walsh_identities(
    pair: &TvrPair,
    ctx: &FieldContext,
) -> Result<ComponentWalshReport> {
    if pair.f0.m() != ctx.m() {
        return Err(Error::DimensionMismatch {
            left: pair.f0.m(),
            right: ctx.m(),
        });
    }
    let big = walsh(&pair.join())?;
    let s0 = walsh(&pair.f0)?.by_field_point(ctx);
    let s1 = walsh(&pair.f1)?.by_field_point(ctx);
    let check_shift = pair.component_sum() == BooleanFunction::trace(ctx);

    let mut report = ComponentWalshReport {
        sum_identity: true,
        difference_identity: true,
        shift_identity: check_shift.then_some(true),
        witness: None,
    };
    for u in 0..ctx.size() as u32 {
        let (a, b) = (s0[u as usize], s1[u as usize]);
        let mut failed = false;
        if big.at_product_point(ctx, u, false) != a + b {
            report.sum_identity = false;
            failed = true;
        }
        if big.at_product_point(ctx, u, true) != a - b {
            report.difference_identity = false;
            failed = true;
        }
        if check_shift && b != s0[(u ^ 1) as usize] {
            report.shift_identity = Some(false);
            failed = true;
        }
        if failed && report.witness.is_none() {
            report.witness = Some(u);
        }
    }
    Ok(report)
}

/// Bentness certificate from the components alone: both near-bent and, at
/// every point, exactly one of `|f̂0|`, `|f̂1|` equal to `2^t`, the other 0.
pub fn bent_via_components(pair: &TvrPair) -> Result<bool> {
    let m = pair.f0.m();
    if m.is_multiple_of(2) {
        return Ok(false);
    }
    let s0 = walsh(&pair.f0)?;
    let s1 = walsh(&pair.f1)?;
    if !s0.is_near_bent() || !s1.is_near_bent() {
        return Ok(false);
    }
    let level = 1i32 << pair.t();
    Ok(s0
        .coeffs()
        .iter()
        .zip(s1.coeffs())
        .all(|(a, b)| a.abs() + b.abs() == level))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::SpectrumClass;
    use crate::tracerep::parse;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_function(m: u32, rng: &mut StdRng) -> BooleanFunction {
        BooleanFunction::from_fn(m, |_| rng.gen())
    }

    #[test]
    fn split_examples() {
        let nu = BooleanFunction::from_fn(8, |x| x >> 7 == 1);
        let p = split(&nu).unwrap();
        assert_eq!(p.f0.is_constant(), Some(false));
        assert_eq!(p.f1.is_constant(), Some(true));
        assert_eq!(p.t(), 4);
        assert!(matches!(
            split(&BooleanFunction::zero(7)),
            Err(Error::OddDimension(7))
        ));
    }

    #[test]
    fn split_large_dimension_example() {
        let ctx = FieldContext::with_default(11).unwrap();
        let f0 = parse("tr(x^241+x)", &ctx).unwrap();
        let f1 = parse("tr(x^241)", &ctx).unwrap();
        let big = join(&f0, &f1).unwrap();
        let p = split(&big).unwrap();
        assert_eq!(p.f0, f0);
        assert_eq!(p.f1, f1);
    }

    #[test]
    fn join_examples() {
        let ctx = FieldContext::with_default(7).unwrap();
        let f = parse("tr(x^13)", &ctx).unwrap();
        let same = join(&f, &f).unwrap();
        for x in 0..128 {
            assert_eq!(same.get(x), same.get(x | 128));
        }
        let g = &f ^ &BooleanFunction::trace(&ctx);
        let big = join(&f, &g).unwrap();
        assert_eq!(big.weight(), f.weight() + g.weight());
        assert_eq!(walsh(&big).unwrap().class(), SpectrumClass::Bent);
        assert!(join(&f, &BooleanFunction::zero(6)).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let ctx = FieldContext::with_default(5).unwrap();
        for x in 0..32 {
            for nu in [false, true] {
                assert!(!inner_product_2t(&ctx, 0, false, x, nu));
            }
        }
        for a in 0..32 {
            for x in 0..32 {
                for (eta, nu) in [(false, false), (false, true), (true, false), (true, true)] {
                    assert_eq!(
                        inner_product_2t(&ctx, a, eta, x, nu),
                        inner_product_2t(&ctx, x, nu, a, eta)
                    );
                }
            }
        }
        // T_{(a,η)} has components tr(ax) and tr(ax) + η
        for a in [0u32, 1, 5, 31] {
            for eta in [false, true] {
                let p = split(&linear_form_2t(&ctx, a, eta)).unwrap();
                let ta = BooleanFunction::linear_form(&ctx, a, false);
                assert_eq!(p.f0, ta);
                assert_eq!(p.f1, BooleanFunction::linear_form(&ctx, a, eta));
            }
        }
    }

    #[test]
    fn identities_with_equal_components() {
        let ctx = FieldContext::with_default(5).unwrap();
        let mut rng = StdRng::seed_from_u64(1);
        let f = random_function(5, &mut rng);
        let pair = TvrPair::new(f.clone(), f).unwrap();
        let big = walsh(&pair.join()).unwrap();
        for u in 0..32 {
            assert_eq!(big.at_product_point(&ctx, u, true), 0);
        }
        assert!(component_walsh_identities(&pair, &ctx).unwrap().all_pass());
    }

    #[test]
    fn identities_kasami_welch() {
        let ctx = FieldContext::with_default(7).unwrap();
        let f0 = parse("tr(x^13)", &ctx).unwrap();
        let pair = TvrPair::new(f0.clone(), &f0 ^ &BooleanFunction::trace(&ctx)).unwrap();
        let r = component_walsh_identities(&pair, &ctx).unwrap();
        assert_eq!(r.shift_identity, Some(true));
        assert!(r.all_pass());
    }

    #[test]
    fn certificate_examples() {
        let ctx = FieldContext::with_default(7).unwrap();
        let f0 = parse("tr(x^3+x^9)", &ctx).unwrap();
        let pair = TvrPair::new(f0.clone(), &f0 ^ &BooleanFunction::trace(&ctx)).unwrap();
        assert!(bent_via_components(&pair).unwrap());
        let same = TvrPair::new(f0.clone(), f0).unwrap();
        assert!(!bent_via_components(&same).unwrap());
    }

    proptest! {
        #[test]
        fn split_join_round_trip(m in prop::sample::select(vec![1u32, 3, 5, 7, 9, 11]), seed: u64) {
            let mut rng = StdRng::seed_from_u64(seed);
            let f0 = random_function(m, &mut rng);
            let f1 = random_function(m, &mut rng);
            let big = join(&f0, &f1).unwrap();
            prop_assert_eq!(big.weight(), f0.weight() + f1.weight());
            let p = split(&big).unwrap();
            prop_assert_eq!(&p.f0, &f0);
            prop_assert_eq!(&p.f1, &f1);
            prop_assert_eq!(join(&p.f0, &p.f1).unwrap(), big.clone());
            // D_{(0,1)} F = join(f0+f1, f0+f1)
            let sum = &f0 ^ &f1;
            prop_assert_eq!(big.derivative(1 << m), join(&sum, &sum).unwrap());
        }

        #[test]
        fn identities_hold_for_random_pairs(seed: u64) {
            let ctx = FieldContext::with_default(5).unwrap();
            let mut rng = StdRng::seed_from_u64(seed);
            let pair = TvrPair::new(random_function(5, &mut rng), random_function(5, &mut rng)).unwrap();
            let r = component_walsh_identities(&pair, &ctx).unwrap();
            prop_assert!(r.sum_identity && r.difference_identity);
        }
    }
}
