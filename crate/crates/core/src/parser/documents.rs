//! JSON documents: divisors, resolution data and task files.

use std::str::FromStr;

use serde_json::{Map, Value};

use super::{parse_polynomial, parse_rational, ParseError, SourceSpan};
use crate::arith::{MonomialOrder, Rational, Ring};
use crate::certificates::{ExceptionalRecord, MultiplicityData, ResolutionData};
use crate::compute::MethodSelector;
use crate::divisor::QDivisor;
use crate::ideal::IdealPresentation;
use crate::recursion::{CertificateSource, GenerationCertificate};

type PResult<T> = Result<T, ParseError>;

fn whole(text: &str) -> SourceSpan {
    SourceSpan::new(0, text.len())
}

fn err(text: &str, message: impl Into<String>, expected: impl Into<String>) -> ParseError {
    ParseError::new(whole(text), message, expected)
}

/// Parses JSON, mapping serde's line/column to a byte offset.
fn parse_json(text: &str) -> PResult<Value> {
    serde_json::from_str(text).map_err(|e| {
        let offset = line_col_to_offset(text, e.line(), e.column());
        ParseError::new(SourceSpan::point(offset), format!("invalid JSON: {e}"), "a JSON document")
    })
}

fn line_col_to_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let mut offset = 0;
    for (i, l) in text.split_inclusive('\n').enumerate() {
        if i + 1 == line {
            return (offset + column.saturating_sub(1)).min(text.len());
        }
        offset += l.len();
    }
    text.len()
}

fn as_object<'a>(text: &str, v: &'a Value, what: &str) -> PResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(text, format!("{what} must be a JSON object"), "an object"))
}

fn rational_value(text: &str, v: &Value, path: &str) -> PResult<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| err(text, format!("{path}: {}", e.message), e.expected)),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(err(
                text,
                format!("{path}: `{n}` is not exact; write rationals as strings like \"9/10\""),
                "an integer or a \"p/q\" string",
            )),
        },
        _ => Err(err(text, format!("{path} must be a rational"), "an integer or a \"p/q\" string")),
    }
}

fn nonneg_int(text: &str, v: &Value, path: &str) -> PResult<u64> {
    v.as_u64().ok_or_else(|| {
        err(text, format!("{path}: expected a non-negative integer, found {v}"), "a non-negative integer")
    })
}

fn vars_of(text: &str, obj: &Map<String, Value>) -> PResult<std::sync::Arc<Ring>> {
    let vars = obj
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| err(text, "missing `vars` array", "`vars`: [\"x\", ...]"))?;
    let names = vars
        .iter()
        .map(|v| v.as_str().map(str::to_string).ok_or_else(|| err(text, "variable names must be strings", "a string")))
        .collect::<PResult<Vec<_>>>()?;
    Ring::new(&names).map_err(|e| err(text, e.to_string(), "distinct names matching [A-Za-z][A-Za-z0-9_]*"))
}

fn components_of(text: &str, ring: &std::sync::Arc<Ring>, v: &Value) -> PResult<QDivisor> {
    let list = v
        .as_array()
        .ok_or_else(|| err(text, "`components` must be an array", "an array of {f, alpha}"))?;
    let mut comps = Vec::with_capacity(list.len());
    for (i, c) in list.iter().enumerate() {
        let c = as_object(text, c, &format!("components[{i}]"))?;
        let f = c
            .get("f")
            .and_then(Value::as_str)
            .ok_or_else(|| err(text, format!("components[{i}].f must be a string"), "a polynomial string"))?;
        let poly = parse_polynomial(f, ring).map_err(|e| {
            ParseError::new(e.span, format!("components[{i}].f: {}", e.message), e.expected)
        })?;
        let alpha = c
            .get("alpha")
            .ok_or_else(|| err(text, format!("components[{i}] is missing `alpha`"), "`alpha`"))?;
        let alpha = rational_value(text, alpha, &format!("components[{i}].alpha"))?;
        if alpha <= Rational::from_integer(0.into()) {
            return Err(err(
                text,
                format!("components[{i}].alpha must be positive"),
                "a positive rational",
            ));
        }
        comps.push((poly, alpha));
    }
    QDivisor::new(ring, comps).map_err(|e| err(text, e.to_string(), "a valid divisor"))
}

/// `{"vars": [...], "components": [{"f": "...", "alpha": "p/q"}, ...]}`.
pub fn parse_divisor(text: &str) -> PResult<QDivisor> {
    let v = parse_json(text)?;
    parse_divisor_value(text, &v)
}

pub fn parse_divisor_value(text: &str, v: &Value) -> PResult<QDivisor> {
    let obj = as_object(text, v, "the divisor document")?;
    let ring = vars_of(text, obj)?;
    let comps = obj
        .get("components")
        .ok_or_else(|| err(text, "missing `components`", "`components`"))?;
    components_of(text, &ring, comps)
}

/// Either `{"exceptional": [{"a": [..], "b": ..}], "strict_transform_smooth": bool}`
/// or the bare `exceptional` array (strict transform assumed smooth).
pub fn parse_resolution_data(text: &str) -> PResult<ResolutionData> {
    let v = parse_json(text)?;
    parse_resolution_value(text, &v)
}

pub fn parse_resolution_value(text: &str, v: &Value) -> PResult<ResolutionData> {
    let (list, smooth) = match v {
        Value::Array(list) => (list, true),
        Value::Object(obj) => {
            let list = obj
                .get("exceptional")
                .and_then(Value::as_array)
                .ok_or_else(|| err(text, "missing `exceptional` array", "`exceptional`"))?;
            let smooth = match obj.get("strict_transform_smooth") {
                None => true,
                Some(Value::Bool(b)) => *b,
                Some(_) => return Err(err(text, "`strict_transform_smooth` must be a boolean", "true or false")),
            };
            (list, smooth)
        }
        _ => return Err(err(text, "resolution data must be an object or array", "an object")),
    };
    let mut records = Vec::with_capacity(list.len());
    for (i, e) in list.iter().enumerate() {
        let e = as_object(text, e, &format!("exceptional[{i}]"))?;
        let a = match e.get("a") {
            Some(Value::Array(a)) => a
                .iter()
                .map(|x| nonneg_int(text, x, &format!("exceptional[{i}].a")))
                .collect::<PResult<Vec<_>>>()?,
            Some(x @ Value::Number(_)) => vec![nonneg_int(text, x, &format!("exceptional[{i}].a"))?],
            _ => return Err(err(text, format!("exceptional[{i}].a must be an integer array"), "`a`: [int, ...]")),
        };
        if a.is_empty() || a.iter().all(|&x| x == 0) {
            return Err(err(
                text,
                format!("exceptional[{i}].a must contain a positive entry (a ≥ 1)"),
                "a positive integer",
            ));
        }
        let b = nonneg_int(
            text,
            e.get("b").ok_or_else(|| err(text, format!("exceptional[{i}] is missing `b`"), "`b`"))?,
            &format!("exceptional[{i}].b"),
        )?;
        records.push(ExceptionalRecord { a, b });
    }
    ResolutionData::new(records, smooth).map_err(|e| err(text, e.to_string(), "valid resolution data"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    Compute,
    Certify,
    Verify,
}

impl FromStr for TaskKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "compute" => Ok(TaskKind::Compute),
            "certify" => Ok(TaskKind::Certify),
            "verify" => Ok(TaskKind::Verify),
            other => Err(format!("unknown task `{other}`")),
        }
    }
}

/// A divisor document, kept together with its ring for later parsing.
#[derive(Debug, Clone)]
pub struct DivisorDocument {
    pub divisor: QDivisor,
}

#[derive(Debug, Clone)]
pub struct TaskDocument {
    pub task: TaskKind,
    pub divisor: Option<QDivisor>,
    pub k: Option<i64>,
    pub k_max: Option<i64>,
    pub method: MethodSelector,
    pub seed: Option<u64>,
    pub order: Option<MonomialOrder>,
    pub alpha_samples: Vec<Rational>,
    pub certificate: Option<GenerationCertificate>,
    pub i0: Option<IdealPresentation>,
    pub resolution: Option<ResolutionData>,
    pub multiplicity: Option<MultiplicityData>,
    pub suites: Vec<String>,
}

fn int_field(text: &str, obj: &Map<String, Value>, key: &str) -> PResult<Option<i64>> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_i64()
            .map(Some)
            .ok_or_else(|| err(text, format!("`{key}` must be an integer"), "an integer")),
    }
}

/// `{"vars", "divisor": {"components"}, "task", "k", "method", "options"}`.
///
/// Recognized options: `seed`, `order`, `alpha_samples`, `certificate`
/// (`{"level", "source"}`), `i0` (generator strings for `I_0(B)`),
/// `resolution`, `multiplicity` (`{"r", "a", "b"}`), `suites`. `resolution`
/// and `multiplicity` may also appear at the top level.
pub fn parse_task(text: &str) -> PResult<TaskDocument> {
    let v = parse_json(text)?;
    let obj = as_object(text, &v, "the task document")?;
    let task = match obj.get("task") {
        None => TaskKind::Compute,
        Some(Value::String(s)) => TaskKind::from_str(s).map_err(|m| err(text, m, "compute, certify or verify"))?,
        Some(_) => return Err(err(text, "`task` must be a string", "compute, certify or verify")),
    };
    let divisor = match obj.get("divisor") {
        None => None,
        Some(d) => {
            let ring = vars_of(text, obj)?;
            let dobj = as_object(text, d, "`divisor`")?;
            let comps = dobj
                .get("components")
                .ok_or_else(|| err(text, "`divisor` is missing `components`", "`components`"))?;
            Some(components_of(text, &ring, comps)?)
        }
    };
    let method = match obj.get("method") {
        None => MethodSelector::Auto,
        Some(Value::String(s)) => {
            MethodSelector::from_str(s).map_err(|m| err(text, m, "auto, snc, smooth, ordinary or recursion"))?
        }
        Some(_) => return Err(err(text, "`method` must be a string", "a method name")),
    };
    let k = int_field(text, obj, "k")?;
    let k_max = int_field(text, obj, "k_max")?;

    let empty = Map::new();
    let options = match obj.get("options") {
        None => &empty,
        Some(o) => as_object(text, o, "`options`")?,
    };
    let seed = match options.get("seed") {
        None => None,
        Some(s) => Some(nonneg_int(text, s, "options.seed")?),
    };
    let order = match options.get("order") {
        None => None,
        Some(Value::String(s)) => Some(MonomialOrder::from_str(s).map_err(|m| err(text, m, "grevlex, lex or grlex"))?),
        Some(_) => return Err(err(text, "options.order must be a string", "grevlex, lex or grlex")),
    };
    let alpha_samples = match options.get("alpha_samples") {
        None => Vec::new(),
        Some(Value::Array(a)) => a
            .iter()
            .enumerate()
            .map(|(i, x)| rational_value(text, x, &format!("options.alpha_samples[{i}]")))
            .collect::<PResult<Vec<_>>>()?,
        Some(_) => return Err(err(text, "options.alpha_samples must be an array", "an array of rationals")),
    };
    let n = divisor.as_ref().map(|d| d.n()).unwrap_or(0);
    let certificate = match options.get("certificate") {
        None => None,
        Some(c) => {
            let c = as_object(text, c, "options.certificate")?;
            let level = nonneg_int(
                text,
                c.get("level").ok_or_else(|| err(text, "options.certificate needs `level`", "`level`"))?,
                "options.certificate.level",
            )?;
            let source = match c.get("source").and_then(Value::as_str).unwrap_or("user-asserted") {
                "node-example" => CertificateSource::NodeExample,
                "quasihomogeneous-formula" => CertificateSource::QuasihomogeneousFormula,
                "universal-bound" => CertificateSource::UniversalBound,
                "user-asserted" => CertificateSource::UserAsserted,
                "snc-identity-resolution" => CertificateSource::SncIdentityResolution,
                other => return Err(err(text, format!("unknown certificate source `{other}`"), "a certificate source")),
            };
            let level = u32::try_from(level).map_err(|_| err(text, "certificate level too large", "a small integer"))?;
            Some(
                GenerationCertificate::new(level, source, n.max(1))
                    .map_err(|e| err(text, e.to_string(), "a level at most n-1"))?,
            )
        }
    };
    let i0 = match options.get("i0") {
        None => None,
        Some(Value::Array(gens)) => {
            let d = divisor
                .as_ref()
                .ok_or_else(|| err(text, "options.i0 needs a divisor", "`divisor`"))?;
            let polys = gens
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let s = g
                        .as_str()
                        .ok_or_else(|| err(text, format!("options.i0[{i}] must be a string"), "a polynomial"))?;
                    parse_polynomial(s, d.ring())
                        .map_err(|e| ParseError::new(e.span, format!("options.i0[{i}]: {}", e.message), e.expected))
                })
                .collect::<PResult<Vec<_>>>()?;
            Some(IdealPresentation::new(d.ring(), polys).expect("same ring"))
        }
        Some(_) => return Err(err(text, "options.i0 must be an array of polynomials", "an array")),
    };
    let resolution = match options.get("resolution").or_else(|| obj.get("resolution")) {
        None => None,
        Some(r) => Some(parse_resolution_value(text, r)?),
    };
    let multiplicity = match options.get("multiplicity").or_else(|| obj.get("multiplicity")) {
        None => None,
        Some(m) => {
            let m = as_object(text, m, "multiplicity data")?;
            let get = |key: &str| m.get(key).ok_or_else(|| err(text, format!("multiplicity data needs `{key}`"), format!("`{key}`")));
            let mn = match m.get("n") {
                Some(x) => nonneg_int(text, x, "multiplicity.n")?,
                None => n as u64,
            };
            let r = nonneg_int(text, get("r")?, "multiplicity.r")?;
            let a = nonneg_int(text, get("a")?, "multiplicity.a")?;
            let b = rational_value(text, get("b")?, "multiplicity.b")?;
            Some(MultiplicityData::new(mn, r, a, b).map_err(|e| err(text, e.to_string(), "valid multiplicity data"))?)
        }
    };
    let suites = match options.get("suites").or_else(|| obj.get("suites")) {
        None => Vec::new(),
        Some(Value::Array(a)) => a
            .iter()
            .map(|s| s.as_str().map(str::to_string).ok_or_else(|| err(text, "suite names must be strings", "a string")))
            .collect::<PResult<Vec<_>>>()?,
        Some(Value::String(s)) => vec![s.clone()],
        Some(_) => return Err(err(text, "`suites` must be a list of names", "an array")),
    };
    Ok(TaskDocument {
        task,
        divisor,
        k,
        k_max,
        method,
        seed,
        order,
        alpha_samples,
        certificate,
        i0,
        resolution,
        multiplicity,
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn divisors() {
        let d = parse_divisor(r#"{"vars":["x","y"],"components":[{"f":"x^2+y^3","alpha":"9/10"}]}"#).unwrap();
        assert_eq!(d.alphas(), vec![rat(9, 10)]);
        let d = parse_divisor(r#"{"vars":["x","y"],"components":[{"f":"x","alpha":"3/2"},{"f":"y","alpha":"1/2"}]}"#)
            .unwrap();
        assert_eq!(d.coordinate_indices(), Some(vec![0, 1]));
        let e = parse_divisor(r#"{"vars":["x"],"components":[{"f":"x","alpha":"0"}]}"#).unwrap_err();
        assert!(e.message.contains("positive"));
        let e = parse_divisor(r#"{"vars":["x"],"components":[{"f":"x","alpha":0.5}]}"#).unwrap_err();
        assert!(e.message.contains("not exact"));
        let e = parse_divisor("{\"vars\": [\"x\"],\n \"components\": [}").unwrap_err();
        assert!(e.message.starts_with("invalid JSON"));
        assert!(e.span.start > 10);
    }

    #[test]
    fn resolution_records() {
        let r = parse_resolution_data(r#"[{"a":[2],"b":1},{"a":[3],"b":2},{"a":[6],"b":4}]"#).unwrap();
        assert_eq!(r.exceptional.len(), 3);
        assert!(r.strict_transform_smooth);
        assert!(parse_resolution_data(r#"[{"a":[0],"b":1}]"#).is_err());
        assert!(parse_resolution_data(r#"[{"a":[-1],"b":1}]"#).is_err());
        assert!(parse_resolution_data(r#"[{"a":[2],"b":1.5}]"#).is_err());
        assert!(parse_resolution_data("[]").unwrap().exceptional.is_empty());
        let r = parse_resolution_data(r#"{"exceptional":[],"strict_transform_smooth":false}"#).unwrap();
        assert!(!r.strict_transform_smooth);
    }

    #[test]
    fn tasks() {
        let t = parse_task(
            r#"{"vars":["x","y"],"divisor":{"components":[{"f":"x^2+y^3","alpha":"9/10"}]},
                "task":"compute","k":2,"method":"recursion",
                "options":{"seed":7,"alpha_samples":["4/5","1"],"certificate":{"level":0},"i0":["x","y"]}}"#,
        )
        .unwrap();
        assert_eq!(t.task, TaskKind::Compute);
        assert_eq!(t.k, Some(2));
        assert_eq!(t.method, MethodSelector::Recursion);
        assert_eq!(t.seed, Some(7));
        assert_eq!(t.alpha_samples.len(), 2);
        assert_eq!(t.certificate.unwrap().level, 0);
        assert_eq!(t.i0.unwrap().generators().len(), 2);
        assert!(parse_task(r#"{"task":"dance"}"#).is_err());
        assert!(parse_task(r#"{"vars":["x"],"divisor":{"components":[]},"options":{"certificate":{"level":3}}}"#).is_err());
    }

    #[test]
    fn offsets() {
        assert_eq!(line_col_to_offset("ab\ncd", 2, 2), 4);
        assert_eq!(line_col_to_offset("ab", 1, 1), 0);
    }
}
