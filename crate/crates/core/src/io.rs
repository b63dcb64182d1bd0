//! JSON files for algebras, subspaces, matrices and family parameters.
//!
//! Every file carries `"format": "omega-lie/1"` and writes scalars as
//! strings. Algebra files list each bracket and form entry once, for pairs
//! `left < right` in basis order; a pair given in the opposite order is
//! negated on input. Parsing is strict by default: unknown keys are errors.
//! In lenient mode they become warnings.
//!
//! ```json
//! {
//!   "format": "omega-lie/1",
//!   "dim": 3,
//!   "basis": ["x", "y", "z"],
//!   "brackets": [{"left": "x", "right": "y", "value": {"y": "1"}}],
//!   "omega": [{"left": "x", "right": "y", "value": "1"}]
//! }
//! ```

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraBuilder, OmegaAlgebra};
use crate::error::{Error, Result};
use crate::families::{
    FamilyLabel, FamilyParams, Np1Params, Np2Params, Np3Params, Np4Params, P1Params, P2Params,
};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

pub const FORMAT: &str = "omega-lie/1";

/// A parsed value together with the warnings produced in lenient mode.
#[derive(Clone, Debug)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

struct Reader {
    strict: bool,
    warnings: Vec<String>,
}

fn join(path: &str, key: &str) -> String {
    if path == "$" {
        format!("$.{key}")
    } else {
        format!("{path}.{key}")
    }
}

fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

impl Reader {
    fn new(strict: bool) -> Self {
        Reader {
            strict,
            warnings: Vec::new(),
        }
    }

    fn finish<T>(self, value: T) -> Parsed<T> {
        Parsed {
            value,
            warnings: self.warnings,
        }
    }

    fn keys(&mut self, map: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<()> {
        for key in map.keys() {
            if !allowed.contains(&key.as_str()) {
                let at = join(path, key);
                if self.strict {
                    return Err(Error::schema(at, "unknown key"));
                }
                self.warnings.push(format!("ignored unknown key {at}"));
            }
        }
        Ok(())
    }

    fn format(&mut self, map: &Map<String, Value>) -> Result<()> {
        match map.get("format") {
            Some(Value::String(s)) if s == FORMAT => Ok(()),
            Some(_) => Err(Error::schema("$.format", format!("expected \"{FORMAT}\""))),
            None if self.strict => Err(Error::schema("$.format", "missing key")),
            None => {
                self.warnings.push("missing $.format".to_string());
                Ok(())
            }
        }
    }
}

fn document(bytes: &[u8]) -> Result<Value> {
    serde_json::from_slice(bytes).map_err(|e| Error::schema("$", format!("invalid JSON: {e}")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::schema(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(path, "expected an array"))
}

fn required<'a>(map: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    map.get(key).ok_or_else(|| Error::schema(join(path, key), "missing key"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::schema(path, "expected a string"))
}

fn count(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|c| c as usize)
        .ok_or_else(|| Error::schema(path, "expected a nonnegative integer"))
}

/// Scalars are strings; plain JSON integers are accepted as well, floats
/// never.
fn scalar(v: &Value, path: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => s.parse::<Scalar>().map_err(|e| e.at(path)),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from(n.as_i64().expect("checked"))),
        Value::Number(_) => Err(Error::schema(path, "numbers must be integers or strings")),
        _ => Err(Error::schema(path, "expected a scalar string")),
    }
}

fn vector(v: &Value, path: &str, len: Option<usize>) -> Result<Vec<Scalar>> {
    let items = array(v, path)?;
    if let Some(len) = len {
        if items.len() != len {
            return Err(Error::schema(path, format!("expected {len} entries, found {}", items.len())));
        }
    }
    items.iter().enumerate().map(|(i, x)| scalar(x, &index(path, i))).collect()
}

fn rows(v: &Value, path: &str, cols: Option<usize>) -> Result<Vec<Vec<Scalar>>> {
    let items = array(v, path)?;
    let mut out = Vec::with_capacity(items.len());
    let mut width = cols;
    for (i, row) in items.iter().enumerate() {
        let r = vector(row, &index(path, i), width)?;
        width = Some(r.len());
        out.push(r);
    }
    Ok(out)
}

fn square(v: &Value, path: &str, size: usize) -> Result<Matrix> {
    let r = rows(v, path, Some(size))?;
    if r.len() != size {
        return Err(Error::schema(path, format!("expected {size} rows, found {}", r.len())));
    }
    Matrix::from_rows(size, r).map_err(|e| e.at(path))
}

/// Entries of one bracket or form table, stored for `left < right`.
struct PairTable<T> {
    entries: BTreeMap<(usize, usize), (T, String)>,
}

impl<T: PartialEq> PairTable<T> {
    fn new() -> Self {
        PairTable {
            entries: BTreeMap::new(),
        }
    }

    fn insert(&mut self, key: (usize, usize), value: T, path: String) -> Result<()> {
        if let Some((existing, first)) = self.entries.get(&key) {
            if *existing != value {
                return Err(Error::schema(path, format!("contradicts the entry at {first}")));
            }
            return Ok(());
        }
        self.entries.insert(key, (value, path));
        Ok(())
    }
}

fn label_index(labels: &[String], v: &Value, path: &str) -> Result<usize> {
    let name = string(v, path)?;
    labels
        .iter()
        .position(|l| l == name)
        .ok_or_else(|| Error::schema(path, format!("unknown basis label {name:?}")))
}

/// Reads `left`/`right` of a table entry, ordered so that `left < right`.
/// Returns the ordered pair and the sign to apply to the value.
fn pair(labels: &[String], entry: &Map<String, Value>, path: &str) -> Result<((usize, usize), bool)> {
    let left = label_index(labels, required(entry, path, "left")?, &join(path, "left"))?;
    let right = label_index(labels, required(entry, path, "right")?, &join(path, "right"))?;
    if left == right {
        return Err(Error::schema(path, "left and right must differ"));
    }
    Ok(if left < right {
        ((left, right), false)
    } else {
        ((right, left), true)
    })
}

pub fn parse_algebra(bytes: &[u8]) -> Result<OmegaAlgebra> {
    parse_algebra_with(bytes, true).map(|p| p.value)
}

pub fn parse_algebra_with(bytes: &[u8], strict: bool) -> Result<Parsed<OmegaAlgebra>> {
    let doc = document(bytes)?;
    let mut r = Reader::new(strict);
    let top = object(&doc, "$")?;
    r.keys(top, "$", &["format", "dim", "basis", "brackets", "omega", "meta"])?;
    r.format(top)?;
    let basis = array(required(top, "$", "basis")?, "$.basis")?;
    let labels: Vec<String> = basis
        .iter()
        .enumerate()
        .map(|(i, v)| string(v, &index("$.basis", i)).map(str::to_string))
        .collect::<Result<_>>()?;
    let n = labels.len();
    if let Some(d) = top.get("dim") {
        let d = count(d, "$.dim")?;
        if d != n {
            return Err(Error::schema("$.dim", format!("dim {d} but {n} basis labels")));
        }
    }
    if n < crate::algebra::MIN_DIM {
        return Err(Error::DimensionTooSmall(n, crate::algebra::MIN_DIM).at("$.basis"));
    }
    let mut builder = AlgebraBuilder::new(&labels);
    let builder_err = |e: Error| e.at("$.basis");
    // fail early on duplicate labels
    OmegaAlgebra::new(labels.clone(), vec![Scalar::zero(); n * n * n], None).map_err(builder_err)?;

    let mut brackets = PairTable::new();
    if let Some(list) = top.get("brackets") {
        for (e, entry) in array(list, "$.brackets")?.iter().enumerate() {
            let path = index("$.brackets", e);
            let obj = object(entry, &path)?;
            r.keys(obj, &path, &["left", "right", "value"])?;
            let (key, flip) = pair(&labels, obj, &path)?;
            let vpath = join(&path, "value");
            let value = object(required(obj, &path, "value")?, &vpath)?;
            let mut v = vec![Scalar::zero(); n];
            for (label, c) in value {
                let k = labels
                    .iter()
                    .position(|l| l == label)
                    .ok_or_else(|| Error::schema(join(&vpath, label), "unknown basis label"))?;
                let c = scalar(c, &join(&vpath, label))?;
                v[k] = if flip { -c } else { c };
            }
            brackets.insert(key, v, path)?;
        }
    }
    for (&(i, j), (v, _)) in &brackets.entries {
        builder.add_vector(i, j, v);
    }

    let has_omega = top.get("omega").is_some();
    if let Some(list) = top.get("omega") {
        let mut forms = PairTable::new();
        for (e, entry) in array(list, "$.omega")?.iter().enumerate() {
            let path = index("$.omega", e);
            let obj = object(entry, &path)?;
            r.keys(obj, &path, &["left", "right", "value"])?;
            let (key, flip) = pair(&labels, obj, &path)?;
            let c = scalar(required(obj, &path, "value")?, &join(&path, "value"))?;
            forms.insert(key, if flip { -c } else { c }, path)?;
        }
        for (&(i, j), (c, _)) in &forms.entries {
            builder.add_omega(i, j, c);
        }
    }
    let alg = if has_omega {
        builder.build()
    } else {
        builder.build_without_omega()
    }
    .map_err(|e| e.at("$"))?;
    Ok(r.finish(alg))
}

fn value_map(alg: &OmegaAlgebra, v: &[Scalar]) -> Value {
    let mut map = Map::new();
    for (label, c) in alg.labels().iter().zip(v) {
        if !c.is_zero() {
            map.insert(label.clone(), Value::String(c.to_string()));
        }
    }
    Value::Object(map)
}

/// The algebra as a JSON value. The form is always included: the stored one
/// if present, else the recovered one; it is omitted only when the bracket
/// admits no form at all.
pub fn algebra_value(alg: &OmegaAlgebra) -> Value {
    let n = alg.dim();
    let labels = alg.labels();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = alg.basis_bracket(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                brackets.push(json!({
                    "left": labels[i],
                    "right": labels[j],
                    "value": value_map(alg, v),
                }));
            }
        }
    }
    let mut doc = json!({
        "format": FORMAT,
        "dim": n,
        "basis": labels,
        "brackets": brackets,
    });
    if let Ok(w) = alg.effective_omega() {
        let mut forms = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !w[(i, j)].is_zero() {
                    forms.push(json!({
                        "left": labels[i],
                        "right": labels[j],
                        "value": w[(i, j)].to_string(),
                    }));
                }
            }
        }
        doc["omega"] = Value::Array(forms);
    }
    doc
}

pub fn emit_algebra(alg: &OmegaAlgebra) -> String {
    to_pretty(&algebra_value(alg))
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_subspace(bytes: &[u8], strict: bool) -> Result<Subspace> {
    parse_subspace_with(bytes, strict).map(|p| p.value)
}

pub fn parse_subspace_with(bytes: &[u8], strict: bool) -> Result<Parsed<Subspace>> {
    let doc = document(bytes)?;
    let mut r = Reader::new(strict);
    let top = object(&doc, "$")?;
    r.keys(top, "$", &["format", "ambient", "basis", "meta"])?;
    r.format(top)?;
    let ambient = count(required(top, "$", "ambient")?, "$.ambient")?;
    let vectors = rows(required(top, "$", "basis")?, "$.basis", Some(ambient))?;
    let s = Subspace::span(ambient, &vectors).map_err(|e| e.at("$.basis"))?;
    Ok(r.finish(s))
}

pub fn subspace_value(s: &Subspace) -> Value {
    json!({
        "format": FORMAT,
        "ambient": s.ambient(),
        "basis": s.basis(),
    })
}

pub fn emit_subspace(s: &Subspace) -> String {
    to_pretty(&subspace_value(s))
}

pub fn parse_matrix(bytes: &[u8], strict: bool) -> Result<Matrix> {
    parse_matrix_with(bytes, strict).map(|p| p.value)
}

pub fn parse_matrix_with(bytes: &[u8], strict: bool) -> Result<Parsed<Matrix>> {
    let doc = document(bytes)?;
    let mut r = Reader::new(strict);
    let top = object(&doc, "$")?;
    r.keys(top, "$", &["format", "rows", "cols", "entries", "meta"])?;
    r.format(top)?;
    let nrows = count(required(top, "$", "rows")?, "$.rows")?;
    let ncols = count(required(top, "$", "cols")?, "$.cols")?;
    let entries = rows(required(top, "$", "entries")?, "$.entries", Some(ncols))?;
    if entries.len() != nrows {
        return Err(Error::schema(
            "$.entries",
            format!("expected {nrows} rows, found {}", entries.len()),
        ));
    }
    let m = Matrix::from_rows(ncols, entries).map_err(|e| e.at("$.entries"))?;
    Ok(r.finish(m))
}

pub fn matrix_value(m: &Matrix) -> Value {
    json!({
        "format": FORMAT,
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m,
    })
}

pub fn emit_matrix(m: &Matrix) -> String {
    to_pretty(&matrix_value(m))
}

/// Field names accepted for each family; absent fields default to zero.
fn family_fields(label: FamilyLabel) -> &'static [&'static str] {
    match label {
        FamilyLabel::NP1 => &["dim_h", "b", "a_prime", "h1"],
        FamilyLabel::P1 => &["dim_h1", "a", "h1", "h2"],
        FamilyLabel::NP2 => &["dim_h", "f", "g", "h1", "h2", "h3", "b2", "d1"],
        FamilyLabel::NP3 => &["dim_h", "f", "h1", "h2", "h3", "b2", "d2"],
        FamilyLabel::P2 => &["dim_h", "h1", "h2", "h3", "b1", "b2", "c1"],
        FamilyLabel::NP4 => &["dim_h", "lambda", "f", "h3", "h4", "c2", "d1"],
    }
}

struct ParamReader<'a> {
    map: &'a Map<String, Value>,
}

impl ParamReader<'_> {
    fn scalar(&self, key: &str) -> Result<Scalar> {
        match self.map.get(key) {
            Some(v) => scalar(v, &join("$", key)),
            None => Ok(Scalar::zero()),
        }
    }

    fn vector(&self, key: &str, len: usize) -> Result<Vec<Scalar>> {
        match self.map.get(key) {
            Some(v) => vector(v, &join("$", key), Some(len)),
            None => Ok(vec![Scalar::zero(); len]),
        }
    }

    fn map(&self, key: &str, size: usize) -> Result<Matrix> {
        match self.map.get(key) {
            Some(v) => square(v, &join("$", key), size),
            None => Ok(Matrix::zeros(size, size)),
        }
    }
}

/// Parses a parameter file for `label`. A `"family"` key, if present, must
/// name the same family.
pub fn parse_params(bytes: &[u8], label: FamilyLabel, strict: bool) -> Result<Parsed<FamilyParams>> {
    let doc = document(bytes)?;
    let mut r = Reader::new(strict);
    let top = object(&doc, "$")?;
    let mut allowed = vec!["format", "family", "meta"];
    allowed.extend(family_fields(label));
    r.keys(top, "$", &allowed)?;
    r.format(top)?;
    if let Some(f) = top.get("family") {
        if string(f, "$.family")? != label.as_str() {
            return Err(Error::schema("$.family", format!("expected {label}")));
        }
    }
    let p = ParamReader { map: top };
    let size_key = if label == FamilyLabel::P1 { "dim_h1" } else { "dim_h" };
    let m = count(required(top, "$", size_key)?, &join("$", size_key))?;
    let params = match label {
        FamilyLabel::NP1 => FamilyParams::NP1(Np1Params {
            dim_h: m,
            b: p.map("b", m)?,
            a_prime: p.map("a_prime", m)?,
            h1: p.vector("h1", m)?,
        }),
        FamilyLabel::P1 => FamilyParams::P1(P1Params {
            dim_h1: m,
            a: p.scalar("a")?,
            h1: p.vector("h1", m + 1)?,
            h2: p.vector("h2", m)?,
        }),
        FamilyLabel::NP2 => FamilyParams::NP2(Np2Params {
            dim_h: m,
            f: p.map("f", m)?,
            g: p.map("g", m)?,
            h1: p.vector("h1", m)?,
            h2: p.vector("h2", m)?,
            h3: p.vector("h3", m)?,
            b2: p.scalar("b2")?,
            d1: p.scalar("d1")?,
        }),
        FamilyLabel::NP3 => FamilyParams::NP3(Np3Params {
            dim_h: m,
            f: p.map("f", m)?,
            h1: p.vector("h1", m)?,
            h2: p.vector("h2", m)?,
            h3: p.vector("h3", m)?,
            b2: p.scalar("b2")?,
            d2: p.scalar("d2")?,
        }),
        FamilyLabel::P2 => FamilyParams::P2(P2Params {
            dim_h: m,
            h1: p.vector("h1", m)?,
            h2: p.vector("h2", m)?,
            h3: p.vector("h3", m)?,
            b1: p.scalar("b1")?,
            b2: p.scalar("b2")?,
            c1: p.scalar("c1")?,
        }),
        FamilyLabel::NP4 => FamilyParams::NP4(Np4Params {
            dim_h: m,
            lambda: p.vector("lambda", m)?,
            f: p.map("f", m)?,
            h3: p.vector("h3", m)?,
            h4: p.vector("h4", m)?,
            c2: p.scalar("c2")?,
            d1: p.scalar("d1")?,
        }),
    };
    Ok(r.finish(params))
}

/// Parameter file contents for `params`, readable by [`parse_params`].
pub fn params_value(params: &FamilyParams) -> Value {
    let mut v = serde_json::to_value(params).expect("serializable");
    let obj = v.as_object_mut().expect("tagged struct");
    let mut out = Map::new();
    out.insert("format".into(), Value::String(FORMAT.into()));
    for (k, val) in std::mem::take(obj) {
        out.insert(k, val);
    }
    Value::Object(out)
}
