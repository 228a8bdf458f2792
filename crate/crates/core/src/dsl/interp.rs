use std::collections::BTreeMap;
use std::fmt;

use crate::construction::{
    blow_up, catalog_block, knot_surgery, luttinger, resolve, run_named_pipeline, symplectic_sum,
    LuttingerSpec, ManifoldState,
};
use crate::geography::exotic_threshold;
use crate::invariants::{homeomorphism_type, ChiH};

use super::json::state_json;
use super::syntax::{parse, Cmp, Expr, Script, Span, Stmt};
use super::{DslError, DslErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Str(String),
    State(Box<ManifoldState>),
    /// Freedman type `(b₂⁺, b₂⁻)`, fields `plus` and `minus`.
    Type(i64, i64),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Int(_) => "int",
            Value::Str(_) => "string",
            Value::State(_) => "state",
            Value::Type(..) => "type",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Str(s) => write!(f, "{s}"),
            Value::Type(a, b) => write!(f, "({a}, {b})"),
            Value::State(s) => {
                let v = s.invariants;
                write!(f, "{} e={} sigma={} c1sq={} chi_h={} pi1={}", s.name, v.e, v.sigma, v.c1_sq(), v.chi_h(), s.pi1_summary())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    AssertionFailed { span: Span, message: String },
    Error(DslError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub lines: Vec<String>,
    pub outcome: Outcome,
}

impl Transcript {
    /// 0 on success, 1 on a failed assertion, 2 for script errors.
    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            Outcome::Ok => 0,
            Outcome::AssertionFailed { .. } => 1,
            Outcome::Error(_) => 2,
        }
    }

    pub fn text(&self) -> String {
        let mut out: String = self.lines.iter().map(|l| format!("{l}\n")).collect();
        match &self.outcome {
            Outcome::Ok => {}
            Outcome::AssertionFailed { span, message } => out.push_str(&format!("{span}: assertion failed: {message}\n")),
            Outcome::Error(e) => out.push_str(&format!("error: {e}\n")),
        }
        out
    }
}

fn type_err(span: Span, msg: String) -> DslError {
    DslError {
        kind: DslErrorKind::Type(msg),
        span: Some(span),
    }
}

fn with_span(span: Span) -> impl Fn(crate::Error) -> DslError {
    move |e| DslError {
        kind: DslErrorKind::Runtime(e),
        span: Some(span),
    }
}

struct Env {
    vars: BTreeMap<String, Value>,
}

impl Env {
    fn eval(&self, e: &Expr) -> Result<Value, DslError> {
        match e {
            Expr::Int(v, _) => Ok(Value::Int(*v)),
            Expr::Str(s, _) => Ok(Value::Str(s.clone())),
            Expr::Name(n, span) => self.vars.get(n).cloned().ok_or_else(|| DslError {
                kind: DslErrorKind::UnboundName(n.clone()),
                span: Some(*span),
            }),
            Expr::Field { base, field, span } => field_of(self.eval(base)?, field, *span),
            Expr::Call { name, args, span } => {
                let vals = args.iter().map(|a| self.eval(a)).collect::<Result<Vec<_>, _>>()?;
                call(name, &vals, *span)
            }
        }
    }
}

fn field_of(v: Value, field: &str, span: Span) -> Result<Value, DslError> {
    let unknown = || DslError {
        kind: DslErrorKind::UnknownField(field.to_string()),
        span: Some(span),
    };
    let undefined = |what: &str| type_err(span, format!("{what} is undefined for this state"));
    match v {
        Value::State(s) => {
            let v = s.invariants;
            Ok(match field {
                "e" => Value::Int(v.e),
                "sigma" => Value::Int(v.sigma),
                "c1sq" => Value::Int(v.c1_sq()),
                "chi_h" => match v.chi_h() {
                    ChiH::Integral(x) => Value::Int(x),
                    ChiH::NonIntegral { numerator } => {
                        return Err(type_err(span, format!("chi_h = {numerator}/4 is not an integer")))
                    }
                },
                "b1" => Value::Int(v.b1.ok_or_else(|| undefined("b1"))?),
                "b2plus" => Value::Int(v.b2_plus().ok_or_else(|| undefined("b2plus"))?),
                "b2minus" => Value::Int(v.b2_minus().ok_or_else(|| undefined("b2minus"))?),
                "spin" => Value::Str(v.spin.as_str().into()),
                "pi1" => Value::Str(s.pi1_summary()),
                "name" => Value::Str(s.name.clone()),
                _ => return Err(unknown()),
            })
        }
        Value::Type(a, b) => match field {
            "plus" => Ok(Value::Int(a)),
            "minus" => Ok(Value::Int(b)),
            _ => Err(unknown()),
        },
        other => Err(type_err(span, format!("{} has no fields", other.kind()))),
    }
}

fn int(v: &Value, span: Span) -> Result<i64, DslError> {
    match v {
        Value::Int(x) => Ok(*x),
        other => Err(type_err(span, format!("expected int, got {}", other.kind()))),
    }
}

fn string(v: &Value, span: Span) -> Result<&str, DslError> {
    match v {
        Value::Str(s) => Ok(s),
        other => Err(type_err(span, format!("expected string, got {}", other.kind()))),
    }
}

fn state(v: &Value, span: Span) -> Result<&ManifoldState, DslError> {
    match v {
        Value::State(s) => Ok(s),
        other => Err(type_err(span, format!("expected state, got {}", other.kind()))),
    }
}

fn call(name: &str, a: &[Value], span: Span) -> Result<Value, DslError> {
    let rt = with_span(span);
    let st = |s: ManifoldState| Value::State(Box::new(s));
    Ok(match name {
        "block" => {
            let params = a[1..].iter().map(|v| int(v, span)).collect::<Result<Vec<_>, _>>()?;
            st(catalog_block(string(&a[0], span)?, &params).map_err(&rt)?)
        }
        "blowup" => {
            let surf = a.get(1).map(|v| string(v, span)).transpose()?;
            st(blow_up(state(&a[0], span)?, surf).map_err(&rt)?)
        }
        "resolve" => {
            let names = a[2..].iter().map(|v| string(v, span)).collect::<Result<Vec<_>, _>>()?;
            st(resolve(state(&a[0], span)?, &names, string(&a[1], span)?).map_err(&rt)?)
        }
        "sum" => st(symplectic_sum(
            state(&a[0], span)?,
            string(&a[1], span)?,
            state(&a[2], span)?,
            string(&a[3], span)?,
        )
        .map_err(&rt)?),
        "luttinger" => {
            let num = int(&a[3], span)?;
            let spec = match a.get(4) {
                Some(den) => LuttingerSpec::new(string(&a[1], span)?, string(&a[2], span)?, num, int(den, span)?).map_err(&rt)?,
                None => LuttingerSpec::luttinger(string(&a[1], span)?, string(&a[2], span)?, num),
            };
            st(luttinger(state(&a[0], span)?, &spec).map_err(&rt)?)
        }
        "knot" => {
            let idx = int(&a[2], span)?;
            let idx = u32::try_from(idx).map_err(|_| type_err(span, format!("knot index {idx} must be non-negative")))?;
            st(knot_surgery(state(&a[0], span)?, string(&a[1], span)?, idx).map_err(&rt)?)
        }
        "pipeline" => st(run_named_pipeline(string(&a[0], span)?).map_err(&rt)?.state),
        "homeo" => {
            let (p, m) = homeomorphism_type(&state(&a[0], span)?.invariants).map_err(&rt)?;
            Value::Type(p, m)
        }
        "threshold" => Value::Int(exotic_threshold(int(&a[0], span)?, int(&a[1], span)?, int(&a[2], span)?).map_err(&rt)?),
        other => {
            return Err(DslError {
                kind: DslErrorKind::UnboundName(other.to_string()),
                span: Some(span),
            })
        }
    })
}

fn compare(l: &Value, op: Cmp, r: &Value, span: Span) -> Result<bool, DslError> {
    match (l, r) {
        (Value::Int(x), Value::Int(y)) => Ok(match op {
            Cmp::Eq => x == y,
            Cmp::Ne => x != y,
            Cmp::Le => x <= y,
            Cmp::Ge => x >= y,
        }),
        (Value::Str(_), Value::Str(_)) | (Value::Type(..), Value::Type(..)) if matches!(op, Cmp::Eq | Cmp::Ne) => {
            Ok((l == r) == (op == Cmp::Eq))
        }
        _ => Err(type_err(span, format!("cannot compare {} {} {}", l.kind(), op.as_str(), r.kind()))),
    }
}

fn show(v: &Value) -> String {
    match v {
        Value::State(s) => serde_json::to_string(&state_json(s)).unwrap_or_default(),
        other => other.to_string(),
    }
}

/// Executes statements in order, stopping at the first failed assertion or
/// error.
pub fn run(script: &Script) -> Transcript {
    let mut env = Env { vars: BTreeMap::new() };
    let mut lines = Vec::new();
    for stmt in &script.statements {
        let step = (|| -> Result<Option<Outcome>, DslError> {
            match stmt {
                Stmt::Let { name, expr, .. } => {
                    let v = env.eval(expr)?;
                    lines.push(format!("{name} = {v}"));
                    env.vars.insert(name.clone(), v);
                }
                Stmt::Assert { lhs, op, rhs, span } => {
                    let (l, r) = (env.eval(lhs)?, env.eval(rhs)?);
                    if !compare(&l, *op, &r, *span)? {
                        return Ok(Some(Outcome::AssertionFailed {
                            span: *span,
                            message: format!("{l} {} {r}", op.negated()),
                        }));
                    }
                    lines.push(format!("ok {lhs} {} {rhs}", op.as_str()));
                }
                Stmt::Print { expr, .. } => lines.push(show(&env.eval(expr)?)),
            }
            Ok(None)
        })();
        match step {
            Ok(None) => {}
            Ok(Some(outcome)) => return Transcript { lines, outcome },
            Err(mut e) => {
                e.span = e.span.or(Some(stmt.span()));
                return Transcript {
                    lines,
                    outcome: Outcome::Error(e),
                };
            }
        }
    }
    Transcript {
        lines,
        outcome: Outcome::Ok,
    }
}

/// Parses and runs; parse errors become an `Error` outcome.
pub fn run_text(text: &str) -> Transcript {
    match parse(text) {
        Ok(s) => run(&s),
        Err(e) => Transcript {
            lines: Vec::new(),
            outcome: Outcome::Error(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    const Z3: &str = "let A = block(\"S_hat\")  # S#CP2bar\nlet B = block(\"X\", 3, 1)\nlet Z = sum(A, \"Rtilde\", B, \"Sigma6\")\nassert Z.e == 52\n";

    #[test]
    fn z3_script() {
        let t = run_text(&format!("{Z3}assert Z.c1sq == 104\nassert homeo(Z).plus == 25\nassert Z.pi1 == \"trivial\"\n"));
        assert_eq!(t.outcome, Outcome::Ok, "{}", t.text());
        assert_eq!(t.exit_code(), 0);
        assert_eq!(t.lines[3], "ok Z.e == 52");
    }

    #[test]
    fn failed_assert() {
        let t = run_text(&format!("{Z3}assert Z.e == 53\nprint Z.e\n"));
        assert_eq!(t.exit_code(), 1);
        let Outcome::AssertionFailed { span, message } = &t.outcome else {
            panic!()
        };
        assert_eq!(message, "52 != 53");
        assert_eq!(span.line, 5);
        assert!(t.text().contains("52 != 53"));
    }

    #[test]
    fn unknown_block_has_span() {
        let t = run_text("let A = block(\"S\")\n\nlet B = block(\"Nope\")\n");
        let Outcome::Error(e) = &t.outcome else { panic!() };
        assert_eq!(e.kind, DslErrorKind::Runtime(Error::UnknownBlock("Nope".into())));
        assert_eq!(e.span.map(|s| (s.line, s.col)), Some((3, 9)));
        assert_eq!(t.exit_code(), 2);
    }

    #[test]
    fn builtins() {
        let t = run_text(
            "let S = block(\"X(3,1)\")\nlet T = block(\"X_{4,6}\")\nassert T.e == 18\nlet B = blowup(S)\nassert B.e == 17\n\
             let C = blowup(S, \"Sigma6\")\nlet K = knot(pipeline(\"Z3\"), \"Rbar1\", 2)\nassert K.e == 52\n\
             assert threshold(27, 1, 1) == 27\nlet M = pipeline(\"M25\")\nassert homeo(M) == homeo(M)\nassert M.b2plus >= 29\n\
             let Y = block(\"Y_n\", 2)\nassert Y.b1 == 0\nprint homeo(pipeline(\"M14\"))\n",
        );
        assert_eq!(t.outcome, Outcome::Ok, "{}", t.text());
        assert_eq!(t.lines.last().unwrap(), "(27, 26)");
    }

    #[test]
    fn type_errors() {
        let t = run_text("let A = 3\nprint A.e\n");
        assert!(matches!(&t.outcome, Outcome::Error(e) if matches!(e.kind, DslErrorKind::Type(_))));
        let t = run_text("let A = block(\"S\")\nprint A.frob\n");
        assert!(matches!(&t.outcome, Outcome::Error(e) if e.kind == DslErrorKind::UnknownField("frob".into())));
        let t = run_text("assert \"a\" <= \"b\"\n");
        assert_eq!(t.exit_code(), 2);
    }

    #[test]
    fn deterministic() {
        let a = run_text(&format!("{Z3}print Z\n")).text();
        let b = run_text(&format!("{Z3}print Z\n")).text();
        assert_eq!(a, b);
        assert!(a.contains("\"e\":52"));
    }
}
