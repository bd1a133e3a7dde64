//! Bent functions in `2t` variables from near-bent functions in `2t - 1`
//! variables, their duals and pseudo-duals, and checkers for the identities
//! relating them.
//!
//! Every function here takes a [`FieldContext`] of dimension `2t - 1`; the
//! `2t`-variable functions are laid out as in [`crate::tvr`], and duals are
//! taken under the product inner product `tr(ax) + ην`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2m::{coset_leader, cyclotomic_cosets, Element, FieldContext};
use crate::spectrum::{dual, walsh, WalshSpectrum};
use crate::tracerep::{to_trace_form, TraceForm};
use crate::tvr::{join, split, TvrPair};

/// Which of the conditions (T) `f0 + f1 = tr + ξ` and (C) `D_1 f0 = 0` a
/// `2t`-variable function satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionFlags {
    /// `Some(ξ)` iff (T) holds.
    pub xi: Option<bool>,
    #[serde(rename = "has_C")]
    pub has_c: bool,
    /// The value of `D_1 f0` when it is constant.
    pub d1_f0: Option<bool>,
    /// Hamming distance from `f0 + f1` to the nearer of `tr`, `tr + 1`.
    pub t_distance: u64,
}

impl ConditionFlags {
    pub fn has_t(&self) -> bool {
        self.xi.is_some()
    }

    /// `"(C), (T)"`, `"not (C), (T)"` and so on.
    pub fn annotation(&self) -> String {
        let c = if self.has_c { "(C)" } else { "not (C)" };
        let t = if self.has_t() { "(T)" } else { "not (T)" };
        format!("{c}, {t}")
    }
}

fn check_component_dimension(f: &BooleanFunction, ctx: &FieldContext) -> Result<()> {
    if f.m() != ctx.m() {
        return Err(Error::DimensionMismatch {
            left: f.m(),
            right: ctx.m(),
        });
    }
    Ok(())
}

fn components(f: &BooleanFunction, ctx: &FieldContext) -> Result<TvrPair> {
    if f.m() != ctx.m() + 1 {
        return Err(Error::DimensionMismatch {
            left: f.m(),
            right: ctx.m() + 1,
        });
    }
    split(f)
}

fn require_bent(f: &BooleanFunction) -> Result<WalshSpectrum> {
    let s = walsh(f)?;
    if !s.is_bent() {
        return Err(Error::NotBent {
            histogram: s.histogram_string(),
        });
    }
    Ok(s)
}

fn require_near_bent(f: &BooleanFunction) -> Result<WalshSpectrum> {
    let s = walsh(f)?;
    if !s.is_near_bent() {
        return Err(Error::NotNearBent {
            histogram: s.histogram_string(),
        });
    }
    Ok(s)
}

fn pair_flags(pair: &TvrPair, ctx: &FieldContext) -> ConditionFlags {
    let tr = BooleanFunction::trace(ctx);
    let to_tr = pair.component_sum().hamming_distance(&tr);
    let to_tr1 = pair.f0.len() as u64 - to_tr;
    let xi = match (to_tr, to_tr1) {
        (0, _) => Some(false),
        (_, 0) => Some(true),
        _ => None,
    };
    let d1_f0 = pair.f0.derivative(1).is_constant();
    ConditionFlags {
        xi,
        has_c: d1_f0 == Some(false),
        d1_f0,
        t_distance: to_tr.min(to_tr1),
    }
}

pub fn condition_flags(f: &BooleanFunction, ctx: &FieldContext) -> Result<ConditionFlags> {
    Ok(pair_flags(&components(f, ctx)?, ctx))
}

fn require_t(pair: &TvrPair, ctx: &FieldContext) -> Result<ConditionFlags> {
    let flags = pair_flags(pair, ctx);
    match flags.xi {
        None => Err(Error::ConditionTNotMet {
            distance: flags.t_distance,
        }),
        Some(_) => Ok(flags),
    }
}

fn require_t0(pair: &TvrPair, ctx: &FieldContext) -> Result<ConditionFlags> {
    let flags = require_t(pair, ctx)?;
    if flags.xi == Some(true) {
        return Err(Error::ConditionTWrongConstant);
    }
    Ok(flags)
}

/// `join(f0, f0 + tr)`, which is bent whenever `f0` is near-bent with
/// constant `D_1 f0`.
pub fn bent_from_near_bent(f0: &BooleanFunction, ctx: &FieldContext) -> Result<BooleanFunction> {
    check_component_dimension(f0, ctx)?;
    require_near_bent(f0)?;
    if f0.derivative(1).is_constant().is_none() {
        return Err(Error::DerivativeNotConstant);
    }
    let f = join(f0, &(f0 ^ &BooleanFunction::trace(ctx)))?;
    if !walsh(&f)?.is_bent() {
        return Err(Error::BentVerificationFailed);
    }
    Ok(f)
}

/// The member `h` of `{f, f+1, f+tr, f+tr+1}` with `D_1 h = 0`, `h(0) = 0`.
pub fn normalize_near_bent(f: &BooleanFunction, ctx: &FieldContext) -> Result<BooleanFunction> {
    normalize_near_bent_along(f, ctx, 1)
}

/// Experimental: the same normalization with `1` replaced by `e` and `tr(x)`
/// by `tr(ex)`, for any `e` with `tr(e) = 1`. Only `e = 1` is covered by the
/// theory the rest of this module checks.
pub fn normalize_near_bent_along(
    f: &BooleanFunction,
    ctx: &FieldContext,
    e: Element,
) -> Result<BooleanFunction> {
    check_component_dimension(f, ctx)?;
    if e as usize >= ctx.size() || ctx.trace(e) != 1 {
        return Err(Error::ConditionViolation(format!(
            "tr(e) must be 1 (e = {e})"
        )));
    }
    require_near_bent(f)?;
    let omega = f.derivative(e).is_constant();
    let omega = omega.ok_or(Error::DerivativeNotConstant)?;
    let mut h = if omega {
        f.add_linear_form(ctx, e, false)?
    } else {
        f.clone()
    };
    if h.get(0) {
        h = !&h;
    }
    Ok(h)
}

/// `(join(g̃0, g̃0 + tr), join(g̃1, g̃1 + tr))` where `g̃0`, `g̃1` are the
/// components of the dual of `f`.
pub fn pseudo_duals(
    f: &BooleanFunction,
    ctx: &FieldContext,
) -> Result<(BooleanFunction, BooleanFunction)> {
    components(f, ctx)?;
    let d = dual(f, ctx)?;
    pseudo_duals_from_dual(&d, ctx)
}

fn pseudo_duals_from_dual(
    d: &BooleanFunction,
    ctx: &FieldContext,
) -> Result<(BooleanFunction, BooleanFunction)> {
    let tr = BooleanFunction::trace(ctx);
    let g = split(d)?;
    Ok((join(&g.f0, &(&g.f0 ^ &tr))?, join(&g.f1, &(&g.f1 ^ &tr))?))
}

// ---------------------------------------------------------------------------
// Reports

/// One checked identity; `witness` is the first point where it failed, when
/// there is a pointwise notion of failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<u32>,
}

impl Assertion {
    pub fn holds(name: impl Into<String>, passed: bool) -> Self {
        Assertion {
            name: name.into(),
            passed,
            witness: None,
        }
    }

    pub fn equal(name: impl Into<String>, a: &BooleanFunction, b: &BooleanFunction) -> Self {
        let witness = a.first_difference(b);
        Assertion {
            name: name.into(),
            passed: witness.is_none(),
            witness,
        }
    }

    pub fn constant(name: impl Into<String>, f: &BooleanFunction, value: bool) -> Self {
        Self::equal(name, f, &BooleanFunction::constant(f.m(), value))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub assertions: Vec<Assertion>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.passed)
    }
}

/// Components of the dual: `D_1 f̃0 = 0` and `D_1 f̃1 = 1` when `f0 + f1 = tr`.
/// A self-dual input additionally gets `D_1 f0 = 0` checked.
pub fn verify_dual_derivatives(f: &BooleanFunction, ctx: &FieldContext) -> Result<CheckReport> {
    let pair = components(f, ctx)?;
    require_bent(f)?;
    require_t0(&pair, ctx)?;
    let d = dual(f, ctx)?;
    let dp = split(&d)?;
    let mut assertions = vec![
        Assertion::constant("D_1 dual_f0 = 0", &dp.f0.derivative(1), false),
        Assertion::constant("D_1 dual_f1 = 1", &dp.f1.derivative(1), true),
    ];
    if d == *f {
        assertions.push(Assertion::constant(
            "self-dual implies D_1 f0 = 0",
            &pair.f0.derivative(1),
            false,
        ));
    }
    Ok(CheckReport {
        check: "dual-derivatives",
        assertions,
    })
}

/// `h̃0 + h̃1 = tr + ω` where `ω` is the constant value of `D_1 h0`.
pub fn verify_dual_component_sum(f: &BooleanFunction, ctx: &FieldContext) -> Result<CheckReport> {
    let pair = components(f, ctx)?;
    require_bent(f)?;
    let flags = require_t0(&pair, ctx)?;
    let omega = flags.d1_f0.ok_or(Error::DerivativeNotConstant)?;
    let dp = split(&dual(f, ctx)?)?;
    let mut target = BooleanFunction::trace(ctx);
    if omega {
        target = !&target;
    }
    let name = if omega {
        "dual_f0 + dual_f1 = tr + 1"
    } else {
        "dual_f0 + dual_f1 = tr"
    };
    Ok(CheckReport {
        check: "dual-component-sum",
        assertions: vec![Assertion::equal(name, &dp.component_sum(), &target)],
    })
}

/// Both pseudo-duals are bent; for `f0 + f1 = tr` the dual of `pd0` meets
/// (C) and (T) with `ξ = 0` and the dual of `pd1` meets (C) and (T) with
/// `ξ = 1`.
///
/// For `f0 + f1 = tr + 1` the two constants trade places: `F + ν` then has
/// `ξ = 0`, and adding `ν` translates the dual by `(0, 1)`, which swaps
/// the dual's components and hence the two pseudo-duals.
pub fn verify_pseudo_duals(f: &BooleanFunction, ctx: &FieldContext) -> Result<CheckReport> {
    let pair = components(f, ctx)?;
    require_bent(f)?;
    let swapped = require_t(&pair, ctx)?.xi == Some(true);
    let (pd0, pd1) = pseudo_duals(f, ctx)?;
    let mut assertions = Vec::new();
    for (label, pd, xi) in [("pd0", &pd0, swapped), ("pd1", &pd1, !swapped)] {
        let bent = walsh(pd)?.is_bent();
        assertions.push(Assertion::holds(format!("{label} is bent"), bent));
        if !bent {
            assertions.push(Assertion::holds(format!("dual({label}) meets (C)"), false));
            assertions.push(Assertion::holds(
                format!("dual({label}) meets (T) with xi={}", xi as u8),
                false,
            ));
            continue;
        }
        let dpair = split(&dual(pd, ctx)?)?;
        let flags = pair_flags(&dpair, ctx);
        let mut c = Assertion::constant(
            format!("dual({label}) meets (C)"),
            &dpair.f0.derivative(1),
            false,
        );
        c.passed = flags.has_c;
        assertions.push(c);
        let mut target = BooleanFunction::trace(ctx);
        if xi {
            target = !&target;
        }
        assertions.push(Assertion::equal(
            format!("dual({label}) meets (T) with xi={}", xi as u8),
            &dpair.component_sum(),
            &target,
        ));
    }
    Ok(CheckReport {
        check: "pseudo-duals",
        assertions,
    })
}

/// For near-bent `f` with `D_1 f = ω`: `f̂(u) = 0` exactly when
/// `tr(u) = 1 + ω`, and there are `2^{2t-2}` such `u`.
pub fn verify_spectrum_zeros(f: &BooleanFunction, ctx: &FieldContext) -> Result<CheckReport> {
    check_component_dimension(f, ctx)?;
    let s = require_near_bent(f)?;
    let omega = f
        .derivative(1)
        .is_constant()
        .ok_or(Error::DerivativeNotConstant)?;
    let spectrum = s.by_field_point(ctx);
    let zeros = BooleanFunction::from_fn(f.m(), |u| spectrum[u as usize] == 0);
    let predicted = BooleanFunction::from_fn(f.m(), |u| (ctx.trace(u) == 1) != omega);
    let t = f.m().div_ceil(2);
    Ok(CheckReport {
        check: "spectrum-zeros",
        assertions: vec![
            Assertion::equal(
                format!("zeros of the spectrum are tr(u) = {}", !omega as u8),
                &zeros,
                &predicted,
            ),
            Assertion::holds("2^(2t-2) zeros", zeros.weight() == 1u64 << (2 * t - 2)),
        ],
    })
}

/// `D_1 f0 = ω` iff `D_1 f1 = ω + 1`, and `D_{(0,1)} F` is balanced.
pub fn verify_component_derivatives(
    f: &BooleanFunction,
    ctx: &FieldContext,
) -> Result<CheckReport> {
    let pair = components(f, ctx)?;
    require_bent(f)?;
    let d0 = pair.f0.derivative(1).is_constant();
    let d1 = pair.f1.derivative(1).is_constant();
    let mut assertions = vec![Assertion::holds(
        "w(D_(0,1) F) = 2^(2t-1)",
        f.derivative(1 << ctx.m()).weight() == 1u64 << ctx.m(),
    )];
    if let Some(omega) = d0 {
        assertions.push(Assertion::constant(
            format!("D_1 f1 = {}", !omega as u8),
            &pair.f1.derivative(1),
            !omega,
        ));
    }
    if let Some(omega) = d1 {
        assertions.push(Assertion::constant(
            format!("D_1 f0 = {}", !omega as u8),
            &pair.f0.derivative(1),
            !omega,
        ));
    }
    Ok(CheckReport {
        check: "component-derivatives",
        assertions,
    })
}

/// The sets `S = {v : f̂0(v) = -2^t}`, `S1 = S + 1` and
/// `G = {v : f̂0(v) = 0}` of a bent function with `f0 + f1 = tr`, with the
/// predicted and observed dual components side by side.
#[derive(Debug, Clone, Serialize)]
pub struct DualSupportReport {
    #[serde(skip)]
    pub s: Vec<Element>,
    #[serde(skip)]
    pub s1: Vec<Element>,
    #[serde(skip)]
    pub g_set: Vec<Element>,
    /// Characteristic function of `G`.
    #[serde(skip)]
    pub g: BooleanFunction,
    #[serde(skip)]
    pub predicted_dual_f0_support: Vec<Element>,
    #[serde(skip)]
    pub observed_dual_f0_support: Vec<Element>,
    pub s_size: usize,
    pub g_size: usize,
    /// Trace form of the characteristic function of `S`.
    pub s_trace_form: String,
    pub g_trace_form: String,
    pub report: CheckReport,
}

pub fn dual_support_analysis(f: &BooleanFunction, ctx: &FieldContext) -> Result<DualSupportReport> {
    let pair = components(f, ctx)?;
    require_bent(f)?;
    require_t0(&pair, ctx)?;
    let level = 1i32 << pair.t();
    let spectrum = walsh(&pair.f0)?.by_field_point(ctx);
    let points = || 0..ctx.size() as Element;
    let s: Vec<Element> = points()
        .filter(|&v| spectrum[v as usize] == -level)
        .collect();
    let mut s1: Vec<Element> = s.iter().map(|&u| u ^ 1).collect();
    s1.sort_unstable();
    let g_set: Vec<Element> = points().filter(|&v| spectrum[v as usize] == 0).collect();
    let g = BooleanFunction::from_fn(ctx.m(), |v| spectrum[v as usize] == 0);
    let s_set: BTreeSet<Element> = s.iter().copied().collect();
    let disjoint = s1.iter().all(|u| !s_set.contains(u));
    let mut predicted: Vec<Element> = s.iter().chain(&s1).copied().collect();
    predicted.sort_unstable();
    predicted.dedup();

    let dp = split(&dual(f, ctx)?)?;
    let predicted_fn = BooleanFunction::from_fn(ctx.m(), |v| predicted.binary_search(&v).is_ok());
    let observed: Vec<Element> = dp.f0.support().collect();
    let t = pair.t();
    let report = CheckReport {
        check: "dual-support",
        assertions: vec![
            Assertion::holds("S and S+1 are disjoint", disjoint),
            Assertion::holds("|G| = 2^(2t-2)", g_set.len() as u64 == 1u64 << (2 * t - 2)),
            Assertion::equal("support(dual_f0) = S u (S+1)", &dp.f0, &predicted_fn),
            Assertion::equal("dual_f1 = dual_f0 + g", &dp.f1, &(&dp.f0 ^ &g)),
        ],
    };
    let s_fn = BooleanFunction::from_fn(ctx.m(), |v| s_set.contains(&v));
    Ok(DualSupportReport {
        s_size: s.len(),
        g_size: g_set.len(),
        s_trace_form: to_trace_form(&s_fn, ctx)?.to_string(),
        g_trace_form: to_trace_form(&g, ctx)?.to_string(),
        s,
        s1,
        g_set,
        g,
        predicted_dual_f0_support: predicted,
        observed_dual_f0_support: observed,
        report,
    })
}

// ---------------------------------------------------------------------------
// Families

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CongruenceBranch {
    /// `3s ≡ 1 (mod 2t-1)`
    #[serde(rename = "+1")]
    Plus,
    /// `3s ≡ -1 (mod 2t-1)`
    #[serde(rename = "-1")]
    Minus,
}

#[derive(Debug, Clone)]
pub struct KasamiWelch {
    /// `d = 4^s - 2^s + 1`.
    pub d: u64,
    pub branch: CongruenceBranch,
    pub f0: BooleanFunction,
    pub f: BooleanFunction,
}

/// `join(tr(x^d), tr(x^d) + tr)` with `d = 4^s - 2^s + 1`, for
/// `3 ∤ 2t-1`, `3s ≡ ±1 (mod 2t-1)` and `1 <= s < t`.
pub fn kasami_welch(ctx: &FieldContext, t: u32, s: u32) -> Result<KasamiWelch> {
    if t < 2 || ctx.m() != 2 * t - 1 {
        return Err(Error::DimensionMismatch {
            left: ctx.m(),
            right: (2 * t).saturating_sub(1),
        });
    }
    let n = (2 * t - 1) as u64;
    let mut violations = Vec::new();
    if n.is_multiple_of(3) {
        violations.push(format!("2t-1 divisible by 3 (2t-1 = {n})"));
    }
    let r = (3 * s as u64) % n;
    let branch = if r == 1 % n {
        Some(CongruenceBranch::Plus)
    } else if r == n - 1 {
        Some(CongruenceBranch::Minus)
    } else {
        None
    };
    if branch.is_none() {
        violations.push(format!(
            "3s = {} is not congruent to +1 or -1 mod {n}",
            3 * s
        ));
    }
    if s == 0 || s >= t {
        violations.push(format!("s must satisfy 1 <= s < t (s = {s}, t = {t})"));
    }
    if !violations.is_empty() {
        return Err(Error::ConditionViolation(violations.join("; ")));
    }
    let d = (1u64 << (2 * s)) - (1u64 << s) + 1;
    let f0 = BooleanFunction::from_fn(ctx.m(), |x| ctx.trace(ctx.pow(x, d)) == 1);
    let f = join(&f0, &(&f0 ^ &BooleanFunction::trace(ctx)))?;
    if !walsh(&f)?.is_bent() {
        return Err(Error::BentVerificationFailed);
    }
    Ok(KasamiWelch {
        d,
        branch: branch.expect("checked above"),
        f0,
        f,
    })
}

#[derive(Debug, Clone)]
pub struct QuadraticFamily {
    /// The exponents `2^j + 1`, one per element of `J`.
    pub exponents: Vec<u64>,
    pub f0: BooleanFunction,
    pub f: BooleanFunction,
}

/// `f0 = Σ_{j ∈ J} tr(x^{2^j+1})`, checked near-bent, and `join(f0, f0 + tr)`.
pub fn quadratic_family(ctx: &FieldContext, t: u32, js: &[u32]) -> Result<QuadraticFamily> {
    if t < 2 || ctx.m() != 2 * t - 1 {
        return Err(Error::DimensionMismatch {
            left: ctx.m(),
            right: (2 * t).saturating_sub(1),
        });
    }
    let m = ctx.m();
    if js.is_empty() {
        return Err(Error::InvalidExponentSet("J is empty".into()));
    }
    if js == [0] {
        return Err(Error::InvalidExponentSet(
            "J = {0} gives a linear function".into(),
        ));
    }
    let mut leaders = BTreeSet::new();
    for &j in js {
        if j >= m {
            return Err(Error::InvalidExponentSet(format!(
                "j = {j} must be below m = {m}"
            )));
        }
        let leader = coset_leader(m, (1u64 << j) + 1);
        if !leaders.insert(leader) {
            return Err(Error::InvalidExponentSet(format!(
                "j = {j} repeats the cyclotomic coset of x^{leader}"
            )));
        }
    }
    let exponents: Vec<u64> = js.iter().map(|&j| (1u64 << j) + 1).collect();
    let f0 = BooleanFunction::from_fn(m, |x| {
        exponents
            .iter()
            .fold(false, |acc, &e| acc ^ (ctx.trace(ctx.pow(x, e)) == 1))
    });
    require_near_bent(&f0)?;
    let f = bent_from_near_bent(&f0, ctx)?;
    Ok(QuadraticFamily { exponents, f0, f })
}

// ---------------------------------------------------------------------------
// Six-pack

/// `F`, its dual, its pseudo-duals and their duals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SixPack {
    pub f: BooleanFunction,
    pub dual_f: BooleanFunction,
    pub pd0: BooleanFunction,
    pub pd1: BooleanFunction,
    pub dual_pd0: BooleanFunction,
    pub dual_pd1: BooleanFunction,
}

pub const SIX_PACK_NAMES: [&str; 6] = ["F", "dual(F)", "pd0", "pd1", "dual(pd0)", "dual(pd1)"];

impl SixPack {
    /// Starting from a bent `f` meeting (T); fails with `NotBent` if a
    /// pseudo-dual is not bent.
    pub fn from_bent(f: &BooleanFunction, ctx: &FieldContext) -> Result<SixPack> {
        components(f, ctx)?;
        let dual_f = dual(f, ctx)?;
        let (pd0, pd1) = pseudo_duals_from_dual(&dual_f, ctx)?;
        let dual_pd0 = dual(&pd0, ctx)?;
        let dual_pd1 = dual(&pd1, ctx)?;
        Ok(SixPack {
            f: f.clone(),
            dual_f,
            pd0,
            pd1,
            dual_pd0,
            dual_pd1,
        })
    }

    pub fn members(&self) -> [(&'static str, &BooleanFunction); 6] {
        let fs = [
            &self.f,
            &self.dual_f,
            &self.pd0,
            &self.pd1,
            &self.dual_pd0,
            &self.dual_pd1,
        ];
        std::array::from_fn(|i| (SIX_PACK_NAMES[i], fs[i]))
    }

    /// Groups of equal members, in order of first appearance.
    pub fn classes(&self) -> Vec<Vec<&'static str>> {
        let mut classes: Vec<(&BooleanFunction, Vec<&'static str>)> = Vec::new();
        for (name, f) in self.members() {
            match classes.iter_mut().find(|(g, _)| *g == f) {
                Some((_, names)) => names.push(name),
                None => classes.push((f, vec![name])),
            }
        }
        classes.into_iter().map(|(_, names)| names).collect()
    }

    pub fn distinct_count(&self) -> usize {
        self.classes().len()
    }

    pub fn summary(&self) -> String {
        match self.distinct_count() {
            1 => "all six identical".to_string(),
            2 => "two distinct functions".to_string(),
            n => format!("{n} distinct functions"),
        }
    }
}

/// The six-pack of `bent_from_near_bent(f0)`.
pub fn six_pack(f0: &BooleanFunction, ctx: &FieldContext) -> Result<SixPack> {
    let f = bent_from_near_bent(f0, ctx)?;
    SixPack::from_bent(&f, ctx)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionReport {
    pub both_bent: bool,
    pub duals_differ: bool,
    pub pd0_equal: bool,
}

/// Two bent functions in 8 variables with different duals and the same
/// first pseudo-dual, showing that the pseudo-dual map is not injective.
pub fn pseudo_dual_collision_demo(ctx: &FieldContext) -> Result<CollisionReport> {
    if ctx.m() != 7 {
        return Err(Error::DimensionMismatch {
            left: ctx.m(),
            right: 7,
        });
    }
    let build = |exps: &[u64]| -> Result<BooleanFunction> {
        let f0 = TraceForm::binary(7, false, exps).evaluate(ctx)?;
        join(&f0, &(&f0 ^ &BooleanFunction::trace(ctx)))
    };
    let fa = build(&[7, 13, 19, 21])?;
    let fb = build(&[3, 11])?;
    let both_bent = walsh(&fa)?.is_bent() && walsh(&fb)?.is_bent();
    if !both_bent {
        return Ok(CollisionReport {
            both_bent,
            duals_differ: false,
            pd0_equal: false,
        });
    }
    let (pa, _) = pseudo_duals(&fa, ctx)?;
    let (pb, _) = pseudo_duals(&fb, ctx)?;
    Ok(CollisionReport {
        both_bent,
        duals_differ: dual(&fa, ctx)? != dual(&fb, ctx)?,
        pd0_equal: pa == pb,
    })
}

/// Binary trace forms with at most `max_terms` terms (no constant) that are
/// near-bent with constant `D_1`. Exhaustive over subsets of coset leaders,
/// so keep `m` small.
pub fn search_near_bent_constant_derivative(
    ctx: &FieldContext,
    max_terms: usize,
) -> Result<Vec<TraceForm>> {
    let m = ctx.m();
    let leaders: Vec<u64> = cyclotomic_cosets(m)
        .into_iter()
        .skip(1)
        .filter(|c| c.size() == m)
        .map(|c| c.leader as u64)
        .collect();
    let terms: Vec<BooleanFunction> = leaders
        .iter()
        .map(|&l| TraceForm::binary(m, false, &[l]).evaluate(ctx))
        .collect::<Result<_>>()?;
    let mut found = Vec::new();
    let mut chosen = Vec::new();
    subsets(
        &terms,
        0,
        max_terms,
        &mut chosen,
        BooleanFunction::zero(m),
        &mut |idx, f| {
            if f.derivative(1).is_constant().is_some()
                && walsh(f).map(|s| s.is_near_bent()).unwrap_or(false)
            {
                let exps: Vec<u64> = idx.iter().map(|&i| leaders[i]).collect();
                found.push(TraceForm::binary(m, false, &exps));
            }
        },
    );
    Ok(found)
}

fn subsets(
    terms: &[BooleanFunction],
    start: usize,
    budget: usize,
    chosen: &mut Vec<usize>,
    acc: BooleanFunction,
    visit: &mut dyn FnMut(&[usize], &BooleanFunction),
) {
    if !chosen.is_empty() {
        visit(chosen, &acc);
    }
    if budget == 0 {
        return;
    }
    for i in start..terms.len() {
        chosen.push(i);
        subsets(terms, i + 1, budget - 1, chosen, &acc ^ &terms[i], visit);
        chosen.pop();
    }
}
