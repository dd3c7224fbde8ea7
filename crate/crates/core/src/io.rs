//! JSON algebra files.
//!
//! ```json
//! {
//!   "field": {"kind": "prime", "p": 3},
//!   "dim": 2,
//!   "unit": ["1", "0"],
//!   "dot": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]],
//!   "circ": [[0, 0, 0, "1"]],
//!   "circ_orientation": "left"
//! }
//! ```
//!
//! Optional keys: `bracket` (sparse like `dot`), `form` (Gram matrix rows),
//! `maps` (named square matrices, column `j` = image of `e_j`) and `module`
//! (`{"dim": m, "l": [...], "r": [...], "s": [...]}`, one matrix per basis
//! vector). Entries are written sorted and without zeros, so writing a parsed
//! file reproduces it byte for byte.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, Orientation, StructureTensor};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::representation::ModuleStructure;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub algebra: Algebra,
    pub form: Option<Matrix>,
    pub maps: BTreeMap<String, Matrix>,
    pub module: Option<ModuleStructure>,
}

impl AlgebraFile {
    pub fn new(algebra: Algebra) -> Self {
        AlgebraFile {
            algebra,
            form: None,
            maps: BTreeMap::new(),
            module: None,
        }
    }

    pub fn with_form(mut self, g: Matrix) -> Self {
        self.form = Some(g);
        self
    }

    pub fn with_map(mut self, name: &str, m: Matrix) -> Self {
        self.maps.insert(name.to_string(), m);
        self
    }

    pub fn map(&self, name: &str) -> Result<&Matrix> {
        self.maps
            .get(name)
            .ok_or_else(|| Error::Format(format!("file has no map named {name}")))
    }

    pub fn form(&self) -> Result<&Matrix> {
        self.form.as_ref().ok_or_else(|| Error::Format("file has no form".into()))
    }

    pub fn to_json(&self) -> Value {
        let a = &self.algebra;
        let mut m = Map::new();
        m.insert("field".into(), field_json(a.field));
        m.insert("dim".into(), json!(a.dim));
        m.insert("unit".into(), vector_json(&a.unit));
        m.insert("dot".into(), tensor_json(&a.dot));
        if let Some(c) = &a.circ {
            m.insert("circ".into(), tensor_json(c));
            m.insert("circ_orientation".into(), json!(a.orientation.name()));
        }
        if let Some(b) = &a.bracket {
            m.insert("bracket".into(), tensor_json(b));
        }
        if let Some(g) = &self.form {
            m.insert("form".into(), matrix_json(g));
        }
        if !self.maps.is_empty() {
            let maps: Map<String, Value> = self.maps.iter().map(|(k, v)| (k.clone(), matrix_json(v))).collect();
            m.insert("maps".into(), Value::Object(maps));
        }
        if let Some(md) = &self.module {
            m.insert("module".into(), module_json(md));
        }
        Value::Object(m)
    }

    pub fn to_string_pretty(&self) -> String {
        render(&self.to_json())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| fmt("top level must be an object"))?;
        for key in obj.keys() {
            if !matches!(
                key.as_str(),
                "field" | "dim" | "unit" | "dot" | "circ" | "circ_orientation" | "bracket" | "form" | "maps" | "module"
            ) {
                return Err(fmt(&format!("unknown key {key:?}")));
            }
        }
        let field = parse_field(obj.get("field").ok_or_else(|| fmt("missing field"))?)?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| fmt("dim must be a non-negative integer"))? as usize;
        let unit = parse_vector(field, obj.get("unit").ok_or_else(|| fmt("missing unit"))?, dim, "unit")?;
        let dot = parse_tensor(field, dim, obj.get("dot").ok_or_else(|| fmt("missing dot"))?, "dot")?;
        let mut algebra = Algebra::new(dot, unit)?;
        let orientation = match obj.get("circ_orientation") {
            None => Orientation::Left,
            Some(Value::String(s)) if s == "left" => Orientation::Left,
            Some(Value::String(s)) if s == "right" => Orientation::Right,
            Some(_) => return Err(fmt("circ_orientation must be \"left\" or \"right\"")),
        };
        if let Some(c) = obj.get("circ") {
            algebra = algebra.with_circ(parse_tensor(field, dim, c, "circ")?, orientation)?;
        } else if obj.contains_key("circ_orientation") {
            return Err(fmt("circ_orientation given without circ"));
        }
        if let Some(b) = obj.get("bracket") {
            algebra = algebra.with_bracket(parse_tensor(field, dim, b, "bracket")?)?;
        }
        let form = obj.get("form").map(|g| parse_matrix(field, g, dim, dim, "form")).transpose()?;
        let mut maps = BTreeMap::new();
        if let Some(ms) = obj.get("maps") {
            let ms = ms.as_object().ok_or_else(|| fmt("maps must be an object"))?;
            for (k, m) in ms {
                maps.insert(k.clone(), parse_matrix(field, m, dim, dim, k)?);
            }
        }
        let module = obj.get("module").map(|m| parse_module(field, dim, m)).transpose()?;
        Ok(AlgebraFile {
            algebra,
            form,
            maps,
            module,
        })
    }
}

/// Indented JSON that keeps flat arrays (entries, rows, vectors) on one line.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(o) => o.values().all(|x| !x.is_array() && !x.is_object()),
        _ => true,
    }
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    if is_flat(v) {
        let compact = serde_json::to_string(v).expect("json values serialize");
        out.push_str(&compact.replace(",", ", ").replace("\":", "\": "));
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                render_into(x, indent + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
        }
        Value::Object(o) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                render_into(x, indent + 1, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
        }
        _ => unreachable!("scalars are flat"),
    }
    out.push_str(&"  ".repeat(indent));
    out.push(if v.is_array() { ']' } else { '}' });
}

fn fmt(msg: &str) -> Error {
    Error::Format(msg.to_string())
}

pub fn field_json(f: Field) -> Value {
    serde_json::to_value(f).expect("field serializes")
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_json(r)).collect())
}

pub fn tensor_json(t: &StructureTensor) -> Value {
    Value::Array(
        t.nonzero_entries()
            .into_iter()
            .map(|(i, j, k, c)| json!([i, j, k, c.to_string()]))
            .collect(),
    )
}

pub fn module_json(m: &ModuleStructure) -> Value {
    let fam = |f: &[Matrix]| Value::Array(f.iter().map(matrix_json).collect());
    json!({"dim": m.dim, "l": fam(&m.l), "r": fam(&m.r), "s": fam(&m.s)})
}

pub fn parse_field(v: &Value) -> Result<Field> {
    let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| fmt("field.kind missing"))?;
    match kind {
        "rational" => Ok(Field::Rational),
        "prime" => {
            let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| fmt("field.p missing"))?;
            Field::prime(p)
        }
        other => Err(fmt(&format!("unknown field kind {other:?}"))),
    }
}

fn parse_scalar(field: Field, v: &Value, what: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) if n.is_i64() => Ok(field.from_i64(n.as_i64().expect("checked"))),
        _ => Err(fmt(&format!("{what}: scalars are strings"))),
    }
}

pub fn parse_vector(field: Field, v: &Value, len: usize, what: &str) -> Result<Vec<Scalar>> {
    let arr = v.as_array().ok_or_else(|| fmt(&format!("{what} must be an array")))?;
    if arr.len() != len {
        return Err(Error::Dimension(format!("{what} has length {}, expected {len}", arr.len())));
    }
    arr.iter().map(|x| parse_scalar(field, x, what)).collect()
}

pub fn parse_matrix(field: Field, v: &Value, rows: usize, cols: usize, what: &str) -> Result<Matrix> {
    let arr = v.as_array().ok_or_else(|| fmt(&format!("{what} must be an array of rows")))?;
    if arr.len() != rows {
        return Err(Error::Dimension(format!("{what} has {} rows, expected {rows}", arr.len())));
    }
    let rows_v = arr
        .iter()
        .map(|r| parse_vector(field, r, cols, what))
        .collect::<Result<Vec<_>>>()?;
    if rows == 0 {
        return Ok(Matrix::zeros(field, 0, cols));
    }
    Matrix::from_rows(field, rows_v)
}

pub fn parse_tensor(field: Field, dim: usize, v: &Value, what: &str) -> Result<StructureTensor> {
    let arr = v.as_array().ok_or_else(|| fmt(&format!("{what} must be an array of entries")))?;
    let mut t = StructureTensor::zeros(field, dim);
    let mut seen = std::collections::BTreeSet::new();
    for e in arr {
        let e = e
            .as_array()
            .filter(|e| e.len() == 4)
            .ok_or_else(|| fmt(&format!("{what}: entries are [i, j, k, \"coeff\"]")))?;
        let mut idx = [0usize; 3];
        for (slot, x) in idx.iter_mut().zip(e) {
            let i = x.as_u64().ok_or_else(|| fmt(&format!("{what}: indices are non-negative integers")))? as usize;
            if i >= dim {
                return Err(Error::OutOfRange(format!("{what}: index {i} in dimension {dim}")));
            }
            *slot = i;
        }
        if !seen.insert(idx) {
            return Err(fmt(&format!("{what}: duplicate entry {idx:?}")));
        }
        t.set(idx[0], idx[1], idx[2], parse_scalar(field, &e[3], what)?);
    }
    Ok(t)
}

pub fn parse_module(field: Field, n: usize, v: &Value) -> Result<ModuleStructure> {
    let m = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| fmt("module.dim missing"))? as usize;
    let fam = |key: &str| -> Result<Vec<Matrix>> {
        let arr = v
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| fmt(&format!("module.{key} missing")))?;
        if arr.len() != n {
            return Err(Error::Dimension(format!("module.{key} has {} maps, expected {n}", arr.len())));
        }
        arr.iter().map(|x| parse_matrix(field, x, m, m, key)).collect()
    };
    Ok(ModuleStructure {
        dim: m,
        l: fam("l")?,
        r: fam("r")?,
        s: fam("s")?,
    })
}

pub fn read_file(path: &std::path::Path) -> Result<AlgebraFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    AlgebraFile::parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let text = r#"{
  "field": {"kind": "rational"},
  "dim": 2,
  "unit": ["1", "0"],
  "dot": [
    [0, 0, 0, "1"],
    [0, 1, 1, "1"],
    [1, 0, 1, "1"]
  ],
  "circ": [
    [0, 1, 1, "-1/2"]
  ],
  "circ_orientation": "left"
}
"#;
        let f = AlgebraFile::parse(text).unwrap();
        assert_eq!(f.to_string_pretty(), text);
    }

    #[test]
    fn duplicates_rejected() {
        let text = r#"{"field":{"kind":"prime","p":3},"dim":1,"unit":["1"],"dot":[[0,0,0,"1"],[0,0,0,"2"]]}"#;
        assert!(matches!(AlgebraFile::parse(text), Err(Error::Format(_))));
    }
}
