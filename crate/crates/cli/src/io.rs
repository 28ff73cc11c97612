//! JSON encodings of fields, elements, matrices and the input documents.
//!
//! Rationals are written as "a/b" strings and read from strings or integers.
//! Finite-field elements are integers (k = 1) or coordinate arrays.

use std::str::FromStr;

use serde_json::{json, Map, Value};
use wdforge_core::compat::{LocalAutomorphicDatum, LocalType};
use wdforge_core::field::{adjoin_root, adjoin_root_trusted, fmt_rational};
use wdforge_core::modl::{MatGroup, DEFAULT_CAP};
use wdforge_core::phin::{FilStep, FilteredPhiNModule, Filtration, PhiNModule, Valuation};
use wdforge_core::wd::WdRep;
use wdforge_core::{Elem, Error, Field, FieldKind, Matrix, Poly, Rational, Result, Subspace};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field \"{key}\"")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| parse_err(format!("{what} must be a non-negative integer")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| parse_err(format!("{what} must be an integer")))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| parse_err(format!("{n} is not an integer; write fractions as \"a/b\""))),
        Value::String(s) => {
            let s = s.trim();
            if s.split('/').nth(1).is_some_and(|d| d.trim_start_matches(['+', '-']).chars().all(|c| c == '0')) {
                return Err(parse_err(format!("zero denominator in \"{s}\"")));
            }
            Rational::from_str(s).map_err(|_| parse_err(format!("cannot read \"{s}\" as a rational")))
        }
        other => Err(parse_err(format!("expected a rational, found {other}"))),
    }
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(fmt_rational(q))
}

fn finite_field(l: u64, k: Option<u64>, minpoly: Option<&Value>) -> Result<Field> {
    let l32 = u32::try_from(l).map_err(|_| parse_err("l is too large"))?;
    match minpoly {
        Some(m) => {
            let coeffs = as_array(m, "minpoly")?
                .iter()
                .map(|c| as_i64(c, "minpoly coefficient").map(|x| x.rem_euclid(l as i64) as u32))
                .collect::<Result<Vec<u32>>>()?;
            let f = Field::finite(l32, coeffs)?;
            if let Some(k) = k {
                if f.degree() as u64 != k {
                    return Err(parse_err(format!("minpoly has degree {} but k = {k}", f.degree())));
                }
            }
            Ok(f)
        }
        None => Field::finite_default(l32, k.unwrap_or(1) as usize),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    let ty = get(v, "type")?.as_str().ok_or_else(|| parse_err("field type must be a string"))?;
    match ty {
        "Q" => Ok(Field::rationals()),
        "Qext" => {
            let q = Field::rationals();
            let coeffs = as_array(get(v, "minpoly")?, "minpoly")?
                .iter()
                .map(|c| rational_from_json(c).map(Elem::Rat))
                .collect::<Result<Vec<_>>>()?;
            let poly = Poly::from_coeffs(&q, coeffs);
            let trusted = v.get("trusted").and_then(Value::as_bool).unwrap_or(false);
            let ext = if trusted { adjoin_root_trusted(&q, &poly)? } else { adjoin_root(&q, &poly)? };
            Ok(ext.field)
        }
        "GF" => finite_field(as_u64(get(v, "l")?, "l")?, v.get("k").map(|k| as_u64(k, "k")).transpose()?, v.get("minpoly")),
        other => Err(parse_err(format!("unknown field type \"{other}\""))),
    }
}

pub fn field_to_json(f: &Field) -> Value {
    match f.kind() {
        FieldKind::Rationals => json!({"type": "Q"}),
        FieldKind::NumberField { minpoly } => {
            let mut m = json!({"type": "Qext", "minpoly": minpoly.iter().map(rational_to_json).collect::<Vec<_>>()});
            if f.is_trusted() {
                m["trusted"] = Value::Bool(true);
            }
            m
        }
        FieldKind::Finite { l, k, minpoly } => json!({"type": "GF", "l": l, "k": k, "minpoly": minpoly}),
    }
}

pub fn elem_from_json(f: &Field, v: &Value) -> Result<Elem> {
    match f.kind() {
        FieldKind::Rationals => Ok(Elem::Rat(rational_from_json(v)?)),
        FieldKind::NumberField { .. } => match v {
            Value::Array(cs) => {
                if cs.len() != f.degree() {
                    return Err(parse_err(format!("expected {} coordinates, found {}", f.degree(), cs.len())));
                }
                let coords = cs.iter().map(rational_from_json).collect::<Result<Vec<_>>>()?;
                f.from_coords(&coords)
            }
            scalar => f.from_rational(&rational_from_json(scalar)?),
        },
        FieldKind::Finite { l, .. } => {
            let reduce = |c: &Value| as_i64(c, "finite-field coordinate").map(|x| x.rem_euclid(*l as i64));
            match v {
                Value::Array(cs) => {
                    if cs.len() != f.degree() {
                        return Err(parse_err(format!("expected {} coordinates, found {}", f.degree(), cs.len())));
                    }
                    let coords = cs
                        .iter()
                        .map(|c| reduce(c).map(|x| Rational::from_integer(x.into())))
                        .collect::<Result<Vec<_>>>()?;
                    f.from_coords(&coords)
                }
                scalar => Ok(f.from_i64(reduce(scalar)?)),
            }
        }
    }
}

pub fn elem_to_json(f: &Field, e: &Elem) -> Value {
    match e {
        Elem::Rat(q) => rational_to_json(q),
        Elem::Num(cs) => Value::Array(cs.iter().map(rational_to_json).collect()),
        Elem::Gf(cs) if f.degree() == 1 => json!(cs[0]),
        Elem::Gf(cs) => json!(cs.to_vec()),
    }
}

pub fn vector_from_json(f: &Field, v: &Value, len: usize) -> Result<Vec<Elem>> {
    let xs = as_array(v, "vector")?;
    if xs.len() != len {
        return Err(parse_err(format!("vector of length {} where {len} was expected", xs.len())));
    }
    xs.iter().map(|x| elem_from_json(f, x)).collect()
}

pub fn vector_to_json(f: &Field, v: &[Elem]) -> Value {
    Value::Array(v.iter().map(|e| elem_to_json(f, e)).collect())
}

/// A square matrix given as an array of rows; `d` fixes the size when known.
pub fn matrix_from_json(f: &Field, v: &Value, d: Option<usize>) -> Result<Matrix> {
    let rows = as_array(v, "matrix")?;
    let n = d.unwrap_or(rows.len());
    if rows.len() != n || n == 0 {
        return Err(parse_err(format!("matrix has {} rows, expected {n}", rows.len())));
    }
    let data = rows.iter().map(|r| vector_from_json(f, r, n)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(f, data)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_to_json(m.field(), r)).collect())
}

/// A (φ,N)-module document, with its filtered structure when present.
pub struct PhiNDoc {
    pub module: PhiNModule,
    pub filtered: Option<FilteredPhiNModule>,
}

impl PhiNDoc {
    pub fn require_filtered(&self) -> Result<&FilteredPhiNModule> {
        self.filtered.as_ref().ok_or_else(|| parse_err("this command needs a \"filtration\""))
    }
}

fn matrices(f: &Field, v: &Value, count: usize, d: usize, what: &str) -> Result<Vec<Matrix>> {
    let ms = as_array(v, what)?;
    if ms.len() != count {
        return Err(parse_err(format!("{what} has {} entries, expected {count}", ms.len())));
    }
    ms.iter().map(|m| matrix_from_json(f, m, Some(d))).collect()
}

pub fn filtration_from_json(f: &Field, v: &Value, d: usize) -> std::result::Result<Filtration, Error> {
    let steps = as_array(v, "filtration")?
        .iter()
        .map(|s| {
            let jump = as_i64(get(s, "jump")?, "jump")?;
            let basis = as_array(get(s, "basis")?, "basis")?
                .iter()
                .map(|b| vector_from_json(f, b, d))
                .collect::<Result<Vec<_>>>()?;
            let space = Subspace::span(f, d, &basis);
            if space.dim() != basis.len() {
                return Err(Error::ValidationFailed(vec![format!("basis at jump {jump} is linearly dependent")]));
            }
            Ok(FilStep { jump, space })
        })
        .collect::<Result<Vec<_>>>()?;
    Filtration::new(d, steps).map_err(|m| Error::ValidationFailed(vec![m]))
}

pub fn filtration_to_json(f: &Field, fil: &Filtration) -> Value {
    Value::Array(
        fil.steps()
            .iter()
            .map(|s| json!({"jump": s.jump, "basis": s.space.basis().iter().map(|b| vector_to_json(f, b)).collect::<Vec<_>>()}))
            .collect(),
    )
}

pub fn phin_from_json(v: &Value) -> Result<PhiNDoc> {
    let l = as_u64(get(v, "l")?, "l")?;
    let fdeg = as_u64(get(v, "f")?, "f")? as usize;
    let d = as_u64(get(v, "d")?, "d")? as usize;
    if fdeg == 0 || d == 0 {
        return Err(parse_err("f and d must be positive"));
    }
    let field = field_from_json(get(v, "E")?)?;
    let phi = matrices(&field, get(v, "phi")?, fdeg, d, "phi")?;
    let n = matrices(&field, get(v, "n")?, fdeg, d, "n")?;
    let module = PhiNModule::new(l, &field, phi, n)?;
    let valuation = match v.get("valuation") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) if s == "l-adic" => Some(Valuation::LAdic),
        Some(val) => Some(Valuation::Generator(rational_from_json(get(val, "theta")?)?)),
    };
    let filtered = match v.get("filtration") {
        None | Some(Value::Null) => None,
        Some(fils) => {
            let fils = as_array(fils, "filtration")?;
            if fils.len() != fdeg {
                return Err(parse_err(format!("{} filtrations for f = {fdeg}", fils.len())));
            }
            let fils = fils
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    filtration_from_json(&field, x, d).map_err(|e| match e {
                        Error::ValidationFailed(ps) => {
                            Error::ValidationFailed(ps.into_iter().map(|p| format!("filtration {i}: {p}")).collect())
                        }
                        other => other,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Some(FilteredPhiNModule::new(module.clone(), fils, valuation)?)
        }
    };
    Ok(PhiNDoc { module, filtered })
}

pub fn wd_from_json(v: &Value) -> Result<WdRep> {
    let q = as_u64(get(v, "q")?, "q")?;
    let d = as_u64(get(v, "d")?, "d")? as usize;
    let field = field_from_json(get(v, "E")?)?;
    let frob = matrix_from_json(&field, get(v, "frob")?, Some(d))?;
    let n = matrix_from_json(&field, get(v, "n")?, Some(d))?;
    WdRep::new(q, &field, frob, n)
}

pub fn wd_to_json(w: &WdRep) -> Value {
    json!({
        "q": w.q(),
        "E": field_to_json(w.field()),
        "d": w.dim(),
        "frob": matrix_to_json(w.frob()),
        "n": matrix_to_json(w.n()),
    })
}

pub fn datum_from_json(v: &Value) -> Result<LocalAutomorphicDatum> {
    let q = as_u64(get(v, "q")?, "q")?;
    let field = field_from_json(get(v, "E")?)?;
    let kind = get(v, "kind")?.as_str().ok_or_else(|| parse_err("kind must be a string"))?;
    let kind = match kind {
        "unramified-principal-series" => LocalType::UnramifiedPs {
            alpha: elem_from_json(&field, get(v, "alpha")?)?,
            beta: elem_from_json(&field, get(v, "beta")?)?,
        },
        "steinberg-twist" => LocalType::SteinbergTwist { c: elem_from_json(&field, get(v, "c")?)? },
        other => return Err(Error::UnsupportedLocalType(other.to_string())),
    };
    LocalAutomorphicDatum::new(q, &field, kind)
}

fn top_level_finite_field(v: &Value) -> Result<Field> {
    finite_field(as_u64(get(v, "l")?, "l")?, v.get("k").map(|k| as_u64(k, "k")).transpose()?, v.get("minpoly"))
}

pub fn group_from_json(v: &Value) -> Result<MatGroup> {
    let field = top_level_finite_field(v)?;
    let generators = as_array(get(v, "generators")?, "generators")?
        .iter()
        .map(|g| matrix_from_json(&field, g, Some(2)))
        .collect::<Result<Vec<_>>>()?;
    let cap = match v.get("cap") {
        Some(c) => as_u64(c, "cap")? as usize,
        None => DEFAULT_CAP,
    };
    MatGroup::new(&field, generators, cap)
}

pub struct DecGenDoc {
    pub p: u64,
    pub field: Field,
    pub splits_completely: bool,
    pub places: Vec<(Elem, Elem)>,
}

pub fn decgen_from_json(v: &Value) -> Result<DecGenDoc> {
    let field = top_level_finite_field(v)?;
    let p = as_u64(get(v, "p")?, "p")?;
    let splits_completely =
        get(v, "splits_completely")?.as_bool().ok_or_else(|| parse_err("splits_completely must be a boolean"))?;
    let places = as_array(get(v, "places")?, "places")?
        .iter()
        .map(|pl| Ok((elem_from_json(&field, get(pl, "alpha")?)?, elem_from_json(&field, get(pl, "beta")?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DecGenDoc { p, field, splits_completely, places })
}

pub struct ScalarCertDoc {
    pub field: Field,
    pub elements: Vec<(Matrix, Elem)>,
}

pub fn scalarcert_from_json(v: &Value) -> Result<ScalarCertDoc> {
    let field = top_level_finite_field(v)?;
    let elements = as_array(get(v, "elements")?, "elements")?
        .iter()
        .map(|x| Ok((matrix_from_json(&field, get(x, "h")?, Some(2))?, elem_from_json(&field, get(x, "c")?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScalarCertDoc { field, elements })
}

/// Which kind of document a JSON object is, judged by its distinguishing key.
pub fn document_kind(v: &Value) -> Option<&'static str> {
    let obj: &Map<String, Value> = v.as_object()?;
    [("phi", "phin"), ("frob", "wd"), ("kind", "automorphic"), ("generators", "group"), ("places", "decgen"), ("elements", "scalarcert")]
        .into_iter()
        .find(|(key, _)| obj.contains_key(*key))
        .map(|(_, kind)| kind)
}
