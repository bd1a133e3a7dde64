//! Turning `--expr`, `--expr-pair` and `--table` into a function and the
//! field it lives over.

use std::fs;

use bentkit::tracerep::parse;
use bentkit::tvr::join;
use bentkit::{BooleanFunction, FieldContext};
use serde_json::{json, Value};

use crate::report::{poly_hex, Failure};
use crate::InputArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// A function on `GF(2^m)` itself.
    Field,
    /// A function on `GF(2^m) × GF(2)`, handled through its components.
    Pair,
}

pub struct Loaded {
    pub f: BooleanFunction,
    pub ctx: FieldContext,
    pub shape: Shape,
    pub descriptor: Value,
}

impl Loaded {
    pub fn context_json(&self) -> Value {
        context_json(&self.ctx)
    }
}

pub fn context_json(ctx: &FieldContext) -> Value {
    json!({ "m": ctx.m(), "poly": poly_hex(ctx.primitive_poly()) })
}

/// Accepts `0x83` or `131`.
pub fn parse_poly(text: Option<&str>) -> Result<Option<u64>, Failure> {
    let Some(text) = text else { return Ok(None) };
    let t = text.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map(Some).map_err(|_| {
        Failure::input(format!(
            "cannot read polynomial {text:?}; use hex like 0x83 or decimal"
        ))
    })
}

pub fn field(m: u32, poly: Option<&str>) -> Result<FieldContext, Failure> {
    FieldContext::new(m, parse_poly(poly)?).map_err(Failure::input)
}

fn require_dim(args: &InputArgs) -> Result<u32, Failure> {
    args.dim
        .ok_or_else(|| Failure::input("--dim is required with --expr and --expr-pair"))
}

pub fn load(args: &InputArgs) -> Result<Loaded, Failure> {
    let poly = args.poly.as_deref();
    if let Some(expr) = &args.expr {
        let ctx = field(require_dim(args)?, poly)?;
        let f = parse(expr, &ctx).map_err(Failure::input)?;
        return Ok(Loaded {
            f,
            ctx,
            shape: Shape::Field,
            descriptor: json!({ "kind": "expr", "expr": expr }),
        });
    }
    if let Some(pair) = &args.expr_pair {
        let dim = require_dim(args)?;
        if dim % 2 == 1 {
            return Err(Failure::input(format!(
                "--expr-pair needs an even --dim, got {dim}"
            )));
        }
        let ctx = field(dim - 1, poly)?;
        let f0 = parse(&pair[0], &ctx).map_err(Failure::input)?;
        let f1 = match pair[1].trim().strip_prefix('+') {
            Some(rest) => &f0 ^ &parse(rest, &ctx).map_err(Failure::input)?,
            None => parse(&pair[1], &ctx).map_err(Failure::input)?,
        };
        let f = join(&f0, &f1).map_err(Failure::input)?;
        return Ok(Loaded {
            f,
            ctx,
            shape: Shape::Pair,
            descriptor: json!({ "kind": "expr-pair", "f0": pair[0], "f1": pair[1] }),
        });
    }
    let path = args.table.as_ref().expect("clap requires one input source");
    let text =
        fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let f = BooleanFunction::from_table_text(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let n = f.m();
    if let Some(dim) = args.dim {
        if dim != n {
            return Err(Failure::input(format!(
                "--dim {dim} but the table has {n} variables"
            )));
        }
    }
    let (m, shape) = if n % 2 == 0 {
        (n.saturating_sub(1), Shape::Pair)
    } else {
        (n, Shape::Field)
    };
    let ctx = field(m, poly)?;
    Ok(Loaded {
        f,
        ctx,
        shape,
        descriptor: json!({ "kind": "table", "path": path.display().to_string() }),
    })
}
