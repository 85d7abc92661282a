//! Key/value report documents.
//!
//! Reals are written with 17 significant digits, complex numbers as `[re, im]`, matrices as
//! arrays of rows. Scalar-only arrays stay on one line; anything holding a table is broken
//! over several lines with two-space indentation.

use std::fmt::Write;

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Str(String),
    Num(f64),
    Int(i64),
    Bool(bool),
    Complex(Complex64),
    Array(Vec<Value>),
    Table(Table),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table(Vec<(String, Value)>);

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.set(key, value);
        self
    }

    /// The document form: one `key = value` per line, no enclosing braces.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.0 {
            out.push_str(k);
            out.push_str(" = ");
            v.render_into(&mut out, 0);
            out.push('\n');
        }
        out
    }
}

pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

impl Value {
    fn is_inline(&self) -> bool {
        match self {
            Value::Table(_) => false,
            Value::Array(items) => items.iter().all(|v| !matches!(v, Value::Table(_) | Value::Array(_)) || matches!(v, Value::Array(a) if a.iter().all(Value::is_scalar))),
            _ => true,
        }
    }

    fn is_scalar(&self) -> bool {
        !matches!(self, Value::Table(_) | Value::Array(_))
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth + 1);
        let close = "  ".repeat(depth);
        match self {
            Value::Str(s) => write!(out, "{s:?}").unwrap(),
            Value::Num(x) => out.push_str(&num(*x)),
            Value::Int(n) => write!(out, "{n}").unwrap(),
            Value::Bool(b) => write!(out, "{b}").unwrap(),
            Value::Complex(z) => write!(out, "[{}, {}]", num(z.re), num(z.im)).unwrap(),
            Value::Array(items) if items.is_empty() => out.push_str("[]"),
            Value::Array(items) if self.is_inline() => {
                out.push('[');
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    v.render_into(out, depth);
                }
                out.push(']');
            }
            Value::Array(items) => {
                out.push_str("[\n");
                for v in items {
                    out.push_str(&pad);
                    v.render_into(out, depth + 1);
                    out.push_str(",\n");
                }
                out.push_str(&close);
                out.push(']');
            }
            Value::Table(t) => {
                out.push_str("{\n");
                for (k, v) in &t.0 {
                    write!(out, "{pad}{k} = ").unwrap();
                    v.render_into(out, depth + 1);
                    out.push('\n');
                }
                out.push_str(&close);
                out.push('}');
            }
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Int(n)
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Value::Int(n as i64)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as i64)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Str(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Str(s)
    }
}

impl From<Complex64> for Value {
    fn from(z: Complex64) -> Self {
        Value::Complex(z)
    }
}

impl From<Table> for Value {
    fn from(t: Table) -> Self {
        Value::Table(t)
    }
}

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(v: Vec<T>) -> Self {
        Value::Array(v.into_iter().map(Into::into).collect())
    }
}

pub fn complexes(z: &[Complex64]) -> Value {
    z.to_vec().into()
}

pub fn matrix(m: &nalgebra::Matrix4<Complex64>) -> Value {
    Value::Array((0..4).map(|i| complexes(&(0..4).map(|j| m[(i, j)]).collect::<Vec<_>>())).collect())
}
