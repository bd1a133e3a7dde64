use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::thread;

use bentkit::constructions::{
    condition_flags, dual_support_analysis, kasami_welch, normalize_near_bent, quadratic_family,
    six_pack, verify_component_derivatives, verify_dual_component_sum, verify_dual_derivatives,
    verify_pseudo_duals, verify_spectrum_zeros, Assertion, CheckReport, ConditionFlags,
    DualSupportReport, SixPack,
};
use bentkit::fixtures::{
    fixture_dimension, run_fixture, CheckStatus, Comparison, FixtureReport, FIXTURE_IDS,
};
use bentkit::gf2m::MAX_DIMENSION;
use bentkit::spectrum::{check_nearbent_distribution, walsh};
use bentkit::tracerep::to_trace_form;
use bentkit::tvr::split;
use bentkit::{BooleanFunction, Error, FieldContext, SpectrumClass, TraceForm, WalshSpectrum};
use serde_json::{json, Value};

use crate::input::{context_json, field, load, Loaded, Shape};
use crate::report::{Failure, Report, EXIT_FIXTURE};
use crate::InputArgs;

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn form(f: &BooleanFunction, ctx: &FieldContext) -> Result<TraceForm, Failure> {
    to_trace_form(f, ctx).map_err(Failure::input)
}

/// Trace forms of `f0`, `f1` and `f0 + f1`.
struct PairForms {
    f0: TraceForm,
    f1: TraceForm,
    sum: TraceForm,
}

impl PairForms {
    fn of(f: &BooleanFunction, ctx: &FieldContext) -> Result<Self, Failure> {
        let p = split(f).map_err(Failure::input)?;
        Ok(PairForms {
            f0: form(&p.f0, ctx)?,
            f1: form(&p.f1, ctx)?,
            sum: form(&p.component_sum(), ctx)?,
        })
    }

    fn json(&self) -> Value {
        json!({ "f0": to_json(&self.f0), "f1": to_json(&self.f1), "sum": to_json(&self.sum) })
    }

    /// Two lines, `f1` written as `f0 + (f0 + f1)`.
    fn text(&self, label: &str, out: &mut String) {
        let _ = writeln!(out, "{label:<11}f0 = {}", self.f0);
        let _ = writeln!(out, "{:<11}f1 = f0 + {}", "", self.sum);
    }
}

fn flags_json(flags: &ConditionFlags) -> Value {
    let mut v = to_json(flags);
    v["annotation"] = json!(flags.annotation());
    v
}

fn flags_text(flags: &ConditionFlags) -> String {
    let mut s = flags.annotation();
    if let Some(xi) = flags.xi {
        let _ = write!(s, " with xi = {}", xi as u8);
    } else {
        let _ = write!(s, " (f0 + f1 is {} away from tr, tr + 1)", flags.t_distance);
    }
    s
}

fn spectrum_json(s: &WalshSpectrum) -> Value {
    json!({ "class": to_json(&s.class()), "histogram": to_json(s.histogram()) })
}

// ---------------------------------------------------------------------------
// checks

struct Outcome {
    check: &'static str,
    /// `Err` when the check did not apply, holding the unmet precondition.
    result: Result<CheckReport, Error>,
}

impl Outcome {
    fn failed(&self) -> impl Iterator<Item = &Assertion> {
        self.result.iter().flat_map(|r| r.failures())
    }

    fn json(&self) -> Value {
        match &self.result {
            Ok(r) => json!({
                "check": self.check,
                "status": if r.all_pass() { "pass" } else { "fail" },
                "assertions": to_json(&r.assertions),
            }),
            Err(e) => json!({ "check": self.check, "status": "skipped", "reason": e.to_string() }),
        }
    }

    fn text(&self, out: &mut String) {
        match &self.result {
            Ok(r) if r.all_pass() => {
                let _ = writeln!(
                    out,
                    "  {:<22}pass ({} assertions)",
                    self.check,
                    r.assertions.len()
                );
            }
            Ok(r) => {
                let _ = writeln!(out, "  {:<22}FAIL", self.check);
                for a in r.failures() {
                    let _ = write!(out, "    {}", a.name);
                    if let Some(w) = a.witness {
                        let _ = write!(out, " (first difference at {w})");
                    }
                    out.push('\n');
                }
            }
            Err(e) => {
                let _ = writeln!(out, "  {:<22}skipped: {e}", self.check);
            }
        }
    }
}

/// Every identity check, each either run or skipped with the precondition
/// it needs. `f` must be bent.
fn run_checks(
    f: &BooleanFunction,
    ctx: &FieldContext,
) -> Result<(Vec<Outcome>, Option<DualSupportReport>), Failure> {
    let pair = split(f).map_err(Failure::input)?;
    let support = dual_support_analysis(f, ctx);
    let outcomes = vec![
        Outcome {
            check: "dual-derivatives",
            result: verify_dual_derivatives(f, ctx),
        },
        Outcome {
            check: "dual-support",
            result: support
                .as_ref()
                .map(|s| s.report.clone())
                .map_err(Clone::clone),
        },
        Outcome {
            check: "dual-component-sum",
            result: verify_dual_component_sum(f, ctx),
        },
        Outcome {
            check: "pseudo-duals",
            result: verify_pseudo_duals(f, ctx),
        },
        Outcome {
            check: "component-derivatives",
            result: verify_component_derivatives(f, ctx),
        },
        Outcome {
            check: "spectrum-zeros f0",
            result: verify_spectrum_zeros(&pair.f0, ctx),
        },
        Outcome {
            check: "spectrum-zeros f1",
            result: verify_spectrum_zeros(&pair.f1, ctx),
        },
    ];
    Ok((outcomes, support.ok()))
}

fn failed_summary(outcomes: &[Outcome]) -> Option<Failure> {
    let failed: Vec<String> = outcomes
        .iter()
        .flat_map(|o| {
            o.failed().map(move |a| match a.witness {
                Some(w) => format!("{}: {} (first difference at {w})", o.check, a.name),
                None => format!("{}: {}", o.check, a.name),
            })
        })
        .collect();
    if failed.is_empty() {
        None
    } else {
        Some(Failure::verification(format!(
            "failed assertions: {}",
            failed.join("; ")
        )))
    }
}

// ---------------------------------------------------------------------------
// analyze

pub fn analyze(args: &InputArgs, checks: bool, spectrum: bool) -> Result<Report, Failure> {
    let input = load(args)?;
    let Loaded { f, ctx, shape, .. } = &input;
    let s = walsh(f).map_err(Failure::input)?;
    let mut json = json!({
        "command": "analyze",
        "input": input.descriptor.clone(),
        "context": input.context_json(),
        "dimension": f.m(),
        "weight": f.weight(),
        "degree": f.degree(),
        "spectrum": spectrum_json(&s),
        "table": f.to_hex(),
    });
    let mut text = String::new();
    let _ = writeln!(text, "dimension  {}", f.m());
    let _ = writeln!(
        text,
        "field      GF(2^{}) mod {:#x}",
        ctx.m(),
        ctx.primitive_poly()
    );
    let _ = writeln!(text, "weight     {}", f.weight());
    let _ = writeln!(text, "degree     {}", f.degree());
    let _ = writeln!(text, "class      {} {}", s.class(), s.histogram_string());

    match shape {
        Shape::Field => {
            let tf = form(f, ctx)?;
            let d1 = f.derivative(1).is_constant();
            let _ = writeln!(text, "trace form {tf}");
            let _ = writeln!(
                text,
                "D_1 f      {}",
                d1.map_or("not constant".to_string(), |c| (c as u8).to_string())
            );
            json["trace_form"] = to_json(&tf);
            json["d1"] = json!(d1);
            if s.is_near_bent() {
                let ok = check_nearbent_distribution(&s, f.get(0)).map_err(Failure::input)?;
                let _ = writeln!(
                    text,
                    "value distribution {}",
                    if ok { "as predicted" } else { "UNEXPECTED" }
                );
                json["value_distribution_ok"] = json!(ok);
            }
        }
        Shape::Pair => {
            let forms = PairForms::of(f, ctx)?;
            let flags = condition_flags(f, ctx).map_err(Failure::input)?;
            let _ = writeln!(text, "f0         {}", forms.f0);
            let _ = writeln!(text, "f1         {}", forms.f1);
            let _ = writeln!(text, "f0 + f1    {}", forms.sum);
            let _ = writeln!(text, "conditions {}", flags_text(&flags));
            json["components"] = forms.json();
            json["flags"] = flags_json(&flags);
        }
    }

    if spectrum {
        json["spectrum"]["coefficients"] = json!(s.coeffs());
    }
    let mut failure = None;
    if checks {
        if *shape == Shape::Pair && s.class() == SpectrumClass::Bent {
            let (outcomes, _) = run_checks(f, ctx)?;
            text.push_str("checks\n");
            for o in &outcomes {
                o.text(&mut text);
            }
            json["checks"] = Value::Array(outcomes.iter().map(Outcome::json).collect());
            failure = failed_summary(&outcomes);
        } else {
            text.push_str("checks     skipped: the identity checks need a bent function given as two components\n");
            json["checks"] = json!([]);
        }
    }
    Ok(Report::new(json, text).failing(failure))
}

// ---------------------------------------------------------------------------
// generate

fn family_field(t: u32, poly: Option<&str>) -> Result<FieldContext, Failure> {
    if t < 2 || 2 * t - 1 > MAX_DIMENSION {
        return Err(Failure::input(format!(
            "t = {t} is out of range; need 2 <= t and 2t-1 <= {MAX_DIMENSION}"
        )));
    }
    field(2 * t - 1, poly)
}

fn family_error(e: Error) -> Failure {
    match e {
        Error::BentVerificationFailed => Failure::verification(e),
        _ => Failure::precondition(e),
    }
}

fn write_table(path: &Path, f: &BooleanFunction) -> Result<(), Failure> {
    fs::write(path, f.to_table_text())
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn generated(
    ctx: &FieldContext,
    f0: &BooleanFunction,
    f: &BooleanFunction,
    path: &Path,
    mut json: Value,
    mut text: String,
) -> Result<Report, Failure> {
    let s = walsh(f).map_err(Failure::input)?;
    if !s.is_bent() {
        return Err(Failure::verification(format!(
            "generated function is not bent (spectrum histogram {})",
            s.histogram_string()
        )));
    }
    write_table(path, f)?;
    let f0_form = form(f0, ctx)?;
    let flags = condition_flags(f, ctx).map_err(Failure::input)?;
    let _ = writeln!(text, "f0         {f0_form}");
    let _ = writeln!(
        text,
        "F          join(f0, f0 + tr(x)) in {} variables",
        f.m()
    );
    let _ = writeln!(text, "class      {} {}", s.class(), s.histogram_string());
    let _ = writeln!(text, "degree     {}", f.degree());
    let _ = writeln!(text, "conditions {}", flags_text(&flags));
    let _ = writeln!(text, "written    {}", path.display());
    json["command"] = json!("generate");
    json["context"] = context_json(ctx);
    json["dimension"] = json!(f.m());
    json["f0"] = to_json(&f0_form);
    json["spectrum"] = spectrum_json(&s);
    json["degree"] = json!(f.degree());
    json["weight"] = json!(f.weight());
    json["flags"] = flags_json(&flags);
    json["file"] = json!(path.display().to_string());
    Ok(Report::new(json, text))
}

pub fn generate_kasami_welch(
    t: u32,
    s: u32,
    poly: Option<&str>,
    out: Option<PathBuf>,
) -> Result<Report, Failure> {
    let ctx = family_field(t, poly)?;
    let kw = kasami_welch(&ctx, t, s).map_err(family_error)?;
    let path = out.unwrap_or_else(|| PathBuf::from(format!("kasami-welch-t{t}-s{s}.bf")));
    let json = json!({
        "family": "kasami-welch",
        "t": t,
        "s": s,
        "d": kw.d,
        "branch": to_json(&kw.branch),
    });
    let branch = match kw.branch {
        bentkit::constructions::CongruenceBranch::Plus => "+1",
        bentkit::constructions::CongruenceBranch::Minus => "-1",
    };
    let text = format!(
        "family     Kasami-Welch, t = {t}, s = {s}\nd          {} (3s = {branch} mod 2t-1)\n",
        kw.d
    );
    generated(&ctx, &kw.f0, &kw.f, &path, json, text)
}

pub fn generate_quadratic(
    t: u32,
    js: &[u32],
    poly: Option<&str>,
    out: Option<PathBuf>,
) -> Result<Report, Failure> {
    let ctx = family_field(t, poly)?;
    let q = quadratic_family(&ctx, t, js).map_err(family_error)?;
    let joined: Vec<String> = js.iter().map(u32::to_string).collect();
    let path =
        out.unwrap_or_else(|| PathBuf::from(format!("quadratic-t{t}-j{}.bf", joined.join("-"))));
    let json = json!({
        "family": "quadratic",
        "t": t,
        "J": js,
        "exponents": q.exponents,
    });
    let text = format!(
        "family     quadratic, t = {t}, J = {{{}}}\n",
        joined.join(",")
    );
    generated(&ctx, &q.f0, &q.f, &path, json, text)
}

// ---------------------------------------------------------------------------
// sixpack

fn member_file(name: &str) -> String {
    format!("{}.bf", name.replace('(', "_").replace(')', ""))
}

fn members_report(
    six: &SixPack,
    ctx: &FieldContext,
    json: &mut Value,
    text: &mut String,
) -> Result<(), Failure> {
    let mut members = serde_json::Map::new();
    for (name, member) in six.members() {
        let forms = PairForms::of(member, ctx)?;
        forms.text(name, text);
        members.insert(name.to_string(), forms.json());
    }
    json["members"] = Value::Object(members);
    json["classes"] = json!(six.classes());
    json["distinct"] = json!(six.distinct_count());
    json["summary"] = json!(six.summary());
    let classes: Vec<String> = six
        .classes()
        .iter()
        .map(|c| format!("{{{}}}", c.join(", ")))
        .collect();
    let _ = writeln!(text, "summary    {}: {}", six.summary(), classes.join(" "));
    Ok(())
}

pub fn sixpack(args: &InputArgs, normalize: bool, out: Option<PathBuf>) -> Result<Report, Failure> {
    let input = load(args)?;
    if input.shape != Shape::Field || input.f.m() % 2 == 0 {
        return Err(Failure::input(
            "sixpack needs a near-bent f0 in an odd number of variables (--expr or --table)",
        ));
    }
    let ctx = &input.ctx;
    let f0 = if normalize {
        normalize_near_bent(&input.f, ctx).map_err(Failure::precondition)?
    } else {
        input.f.clone()
    };
    let six = six_pack(&f0, ctx).map_err(Failure::precondition)?;
    let f0_form = form(&f0, ctx)?;
    let mut json = json!({
        "command": "sixpack",
        "input": input.descriptor.clone(),
        "context": input.context_json(),
        "normalized": normalize,
        "f0": to_json(&f0_form),
    });
    let mut text = String::new();
    let _ = writeln!(
        text,
        "f0         {f0_form}{}",
        if normalize { " (normalized)" } else { "" }
    );
    members_report(&six, ctx, &mut json, &mut text)?;
    if let Some(dir) = out {
        fs::create_dir_all(&dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
        let mut files = serde_json::Map::new();
        for (name, member) in six.members() {
            let path = dir.join(member_file(name));
            write_table(&path, member)?;
            files.insert(name.to_string(), json!(path.display().to_string()));
        }
        let _ = writeln!(text, "written    {}", dir.display());
        json["files"] = Value::Object(files);
    }
    Ok(Report::new(json, text))
}

// ---------------------------------------------------------------------------
// verify

pub fn verify(args: &InputArgs) -> Result<Report, Failure> {
    let input = load(args)?;
    if input.shape != Shape::Pair {
        return Err(Failure::input(
            "verify needs a function in an even number of variables (--expr-pair or --table)",
        ));
    }
    let Loaded { f, ctx, .. } = &input;
    let s = walsh(f).map_err(Failure::input)?;
    if !s.is_bent() {
        return Err(Failure::verification(format!(
            "input is not bent (spectrum histogram {})",
            s.histogram_string()
        )));
    }
    let flags = condition_flags(f, ctx).map_err(Failure::input)?;
    let (outcomes, support) = run_checks(f, ctx)?;

    let mut json = json!({
        "command": "verify",
        "input": input.descriptor.clone(),
        "context": input.context_json(),
        "dimension": f.m(),
        "flags": flags_json(&flags),
        "checks": outcomes.iter().map(Outcome::json).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    let _ = writeln!(
        text,
        "dimension  {} over GF(2^{}) mod {:#x}",
        f.m(),
        ctx.m(),
        ctx.primitive_poly()
    );
    let _ = writeln!(text, "class      {}", s.class());
    let _ = writeln!(text, "conditions {}", flags_text(&flags));
    text.push_str("checks\n");
    for o in &outcomes {
        o.text(&mut text);
    }
    if let Some(support) = &support {
        let _ = writeln!(
            text,
            "S          {} points, indicator {}",
            support.s_size, support.s_trace_form
        );
        let _ = writeln!(
            text,
            "g          {} points, {}",
            support.g_size, support.g_trace_form
        );
        json["dual_support"] = to_json(support);
    }
    match SixPack::from_bent(f, ctx) {
        Ok(six) => {
            text.push_str("derived\n");
            members_report(&six, ctx, &mut json, &mut text)?;
        }
        Err(e) => {
            let _ = writeln!(text, "derived    unavailable: {e}");
            json["derived_error"] = json!(e.to_string());
        }
    }
    Ok(Report::new(json, text).failing(failed_summary(&outcomes)))
}

// ---------------------------------------------------------------------------
// examples

fn comparison_text(c: &Comparison) -> String {
    match c {
        Comparison::TraceForm { expected, computed } | Comparison::Text { expected, computed } => {
            format!("listed {expected}, computed {computed}")
        }
        Comparison::Property { expected, computed } => {
            format!("listed {expected}, computed {computed}")
        }
    }
}

pub fn examples(corrupt: Option<&str>) -> Result<Report, Failure> {
    if let Some(id) = corrupt {
        if !FIXTURE_IDS.contains(&id) {
            return Err(Failure::input(format!(
                "unknown fixture {id:?}; known: {}",
                FIXTURE_IDS.join(", ")
            )));
        }
    }
    let ctx7 = field(7, None)?;
    let ctx11 = field(11, None)?;
    let results: Vec<(&str, Result<FixtureReport, Error>)> = thread::scope(|scope| {
        let handles: Vec<_> = FIXTURE_IDS
            .iter()
            .map(|&id| {
                let ctx = if fixture_dimension(id) == Some(11) {
                    &ctx11
                } else {
                    &ctx7
                };
                scope.spawn(move || (id, run_fixture(id, ctx, corrupt == Some(id))))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("fixture thread panicked"))
            .collect()
    });

    let mut text = format!("{:<17}{:>7}{:>8}  status\n", "fixture", "checks", "errata");
    let mut details = String::new();
    let mut fixtures = Vec::new();
    let mut bad = Vec::new();
    for (id, result) in &results {
        match result {
            Ok(report) => {
                let status = if report.passed() { "pass" } else { "MISMATCH" };
                let _ = writeln!(
                    text,
                    "{id:<17}{:>7}{:>8}  {status}",
                    report.checks.len(),
                    report.errata()
                );
                for c in &report.checks {
                    match c.status {
                        CheckStatus::Pass => {}
                        CheckStatus::Erratum => {
                            let note = c.correction.as_ref().map_or("", |k| k.note.as_str());
                            let _ = writeln!(
                                details,
                                "{id}: {}: erratum; {}",
                                c.label,
                                comparison_text(&c.listed)
                            );
                            let _ = writeln!(details, "    {note}");
                        }
                        CheckStatus::Mismatch => {
                            let _ = writeln!(
                                details,
                                "{id}: {}: MISMATCH; {}",
                                c.label,
                                comparison_text(&c.listed)
                            );
                        }
                    }
                }
                if !report.passed() {
                    bad.push(id.to_string());
                }
                let mut v = to_json(report);
                v["passed"] = json!(report.passed());
                v["errata"] = json!(report.errata());
                fixtures.push(v);
            }
            Err(e) => {
                let _ = writeln!(text, "{id:<17}{:>7}{:>8}  ERROR", "-", "-");
                let _ = writeln!(details, "{id}: {e}");
                bad.push(id.to_string());
                fixtures.push(json!({ "id": id, "passed": false, "error": e.to_string() }));
            }
        }
    }
    if !details.is_empty() {
        text.push('\n');
        text.push_str(&details);
    }
    let json = json!({
        "command": "examples",
        "contexts": [context_json(&ctx7), context_json(&ctx11)],
        "fixtures": fixtures,
        "passed": bad.is_empty(),
    });
    let failure = (!bad.is_empty()).then(|| Failure {
        code: EXIT_FIXTURE,
        message: format!("fixture mismatch in {}", bad.join(", ")),
    });
    Ok(Report::new(json, text).failing(failure))
}
