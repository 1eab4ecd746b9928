//! The JSON input format. See `docs/FORMAT.md`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use tvariety::divisorial::{Curve, DivisorialFan, PolyhedralDivisor};
use tvariety::exactlin::{fmt_rational, parse_rational, ExactVector, Rational};
use tvariety::fan::Fan;
use tvariety::polyhedron::{Cone, Polyhedron};

use crate::CliError;

/// An exact rational entry: a JSON integer or a string `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Ok(n) = fmt_rational(&self.0).parse::<i64>() {
                return s.serialize_i64(n);
            }
        }
        s.serialize_str(&fmt_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Exact, D::Error> {
        d.deserialize_any(ExactVisitor)
    }
}

struct ExactVisitor;

impl Visitor<'_> for ExactVisitor {
    type Value = Exact;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a string \"p/q\"")
    }

    fn visit_i64<E: de::Error>(self, n: i64) -> Result<Exact, E> {
        Ok(Exact(Rational::from_integer(n.into())))
    }

    fn visit_u64<E: de::Error>(self, n: u64) -> Result<Exact, E> {
        Ok(Exact(Rational::from_integer(n.into())))
    }

    fn visit_f64<E: de::Error>(self, x: f64) -> Result<Exact, E> {
        Err(float_error(&x.to_string()))
    }

    fn visit_str<E: de::Error>(self, text: &str) -> Result<Exact, E> {
        if let Some(q) = parse_rational(text) {
            return Ok(Exact(q));
        }
        if decimal(text).is_some() {
            return Err(float_error(text));
        }
        Err(E::custom(format!("malformed rational {text:?}; expected \"p\" or \"p/q\"")))
    }
}

fn float_error<E: de::Error>(text: &str) -> E {
    match decimal(text) {
        Some(q) => E::custom(format!(
            "floating point literal rejected; write {}",
            fmt_rational(&q)
        )),
        None => E::custom("floating point literal rejected; write an integer or \"p/q\""),
    }
}

/// The exact value of a plain decimal literal such as `-0.25`.
fn decimal(text: &str) -> Option<Rational> {
    let (int, frac) = text.trim().split_once('.')?;
    if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let int = if int.is_empty() || int == "-" { format!("{int}0") } else { int.to_string() };
    let sign = if int.starts_with('-') { "-" } else { "" };
    let digits = format!("{}{frac}", int.trim_start_matches('-'));
    parse_rational(&format!("{sign}{digits}/1{}", "0".repeat(frac.len())))
}

/// A vector of exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<Exact>);

impl Vector {
    pub fn exact(&self) -> ExactVector {
        ExactVector::new(self.0.iter().map(|e| e.0.clone()).collect())
    }

    pub fn from_exact(v: &ExactVector) -> Vector {
        Vector(v.entries().iter().cloned().map(Exact).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub rank: usize,
    pub genus: u32,
    pub points: Vec<String>,
    pub divisors: Vec<DivisorRecord>,
    #[serde(default)]
    pub assert_projective: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assert_smooth: Option<bool>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub assert_principal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorRecord {
    /// Generators of the tail cone; empty for the zero cone.
    pub tail: Vec<Vector>,
    #[serde(default)]
    pub excluded: Vec<String>,
    #[serde(default)]
    pub coefficients: Vec<CoefficientRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientRecord {
    pub point: String,
    pub vertices: Vec<Vector>,
    /// Generators of the coefficient's tail; defaults to the divisor's tail.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<Vector>>,
}

/// A fan given by the generators of its maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub rank: usize,
    pub cones: Vec<Vec<Vector>>,
}

/// Two-space indented JSON with arrays of scalars kept on one line.
pub fn pretty(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(value: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match value {
        Value::Array(xs) if xs.iter().all(is_scalar) => {
            let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("[{}]", parts.join(", ")));
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(depth + 1), Value::String(k.clone())));
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse {
            line: inner.line(),
            column: inner.column(),
            path: if path == "." { String::new() } else { path },
            message: strip_position(&inner.to_string()),
        }
    })?;
    Ok(value)
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

fn field<T>(path: impl Into<String>, r: tvariety::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Field {
        path: path.into(),
        source,
    })
}

fn vectors(path: &str, rank: usize, vs: &[Vector]) -> Result<Vec<ExactVector>, CliError> {
    vs.iter()
        .enumerate()
        .map(|(i, v)| {
            if v.0.len() != rank {
                return field(
                    format!("{path}[{i}]"),
                    Err(tvariety::Error::DimensionMismatch {
                        expected: rank,
                        found: v.0.len(),
                    }),
                );
            }
            Ok(v.exact())
        })
        .collect()
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<InputDocument, CliError> {
        let doc: InputDocument = parse(text)?;
        doc.check_labels()?;
        Ok(doc)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        pretty(&serde_json::to_value(self).expect("serializable"))
    }

    fn check_labels(&self) -> Result<(), CliError> {
        let mut seen = BTreeSet::new();
        for (i, p) in self.points.iter().enumerate() {
            if !seen.insert(p.as_str()) {
                return field(
                    format!("points[{i}]"),
                    Err(tvariety::Error::DuplicatePoint(p.clone())),
                );
            }
        }
        let unknown = |path: String, l: &str| -> Result<(), CliError> {
            if seen.contains(l) {
                Ok(())
            } else {
                field(path, Err(tvariety::Error::UnknownPoint(l.to_string())))
            }
        };
        for (i, d) in self.divisors.iter().enumerate() {
            for (j, l) in d.excluded.iter().enumerate() {
                unknown(format!("divisors[{i}].excluded[{j}]"), l)?;
            }
            let mut listed = BTreeSet::new();
            for (j, c) in d.coefficients.iter().enumerate() {
                let path = format!("divisors[{i}].coefficients[{j}].point");
                unknown(path.clone(), &c.point)?;
                if !listed.insert(c.point.as_str()) {
                    return field(path, Err(tvariety::Error::DuplicatePoint(c.point.clone())));
                }
            }
        }
        Ok(())
    }

    pub fn to_fan(&self) -> Result<DivisorialFan, CliError> {
        self.check_labels()?;
        let curve = field("points", Curve::new(self.genus, self.points.clone()))?;
        let mut divisors = Vec::with_capacity(self.divisors.len());
        for (i, d) in self.divisors.iter().enumerate() {
            let path = format!("divisors[{i}]");
            let tail_gens = vectors(&format!("{path}.tail"), self.rank, &d.tail)?;
            let tail = field(format!("{path}.tail"), Cone::from_generators(&tail_gens, self.rank))?;
            let mut coefficients = BTreeMap::new();
            for (j, c) in d.coefficients.iter().enumerate() {
                let cpath = format!("{path}.coefficients[{j}]");
                let vertices = vectors(&format!("{cpath}.vertices"), self.rank, &c.vertices)?;
                let ctail = match &c.rays {
                    Some(rays) => {
                        let rays = vectors(&format!("{cpath}.rays"), self.rank, rays)?;
                        field(format!("{cpath}.rays"), Cone::from_generators(&rays, self.rank))?
                    }
                    None => tail.clone(),
                };
                let p = field(cpath, Polyhedron::new(&vertices, &ctail))?;
                coefficients.insert(c.point.clone(), p);
            }
            let member = field(
                path,
                PolyhedralDivisor::new(tail, d.excluded.iter().cloned(), coefficients),
            )?;
            divisors.push(member);
        }
        let e = field("divisors", DivisorialFan::new(curve, self.rank, divisors))?;
        Ok(e.with_projective(self.assert_projective)
            .with_smooth(self.assert_smooth)
            .with_principal(self.assert_principal))
    }
}

impl FanDocument {
    pub fn parse(text: &str) -> Result<FanDocument, CliError> {
        parse(text)
    }

    pub fn to_json(&self) -> String {
        pretty(&serde_json::to_value(self).expect("serializable"))
    }

    pub fn to_fan(&self) -> Result<Fan, CliError> {
        let mut cones = Vec::with_capacity(self.cones.len());
        for (i, gens) in self.cones.iter().enumerate() {
            let path = format!("cones[{i}]");
            let gens = vectors(&path, self.rank, gens)?;
            cones.push(field(path, Cone::from_generators(&gens, self.rank))?);
        }
        field("cones", Fan::new(&cones, self.rank))
    }

    /// The maximal cones of `fan`, each listed by its rays.
    pub fn from_fan(fan: &Fan) -> FanDocument {
        FanDocument {
            rank: fan.ambient_rank(),
            cones: fan
                .maximal_cones()
                .iter()
                .map(|c| c.rays().iter().map(Vector::from_exact).collect())
                .collect(),
        }
    }
}
