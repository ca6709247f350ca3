//! Attribute values and the tuple keys built from them.

use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeSeq, Serializer};

/// Literal used in files for an absent time-varying value.
pub const MISSING_LITERAL: &str = "-";

/// A single attribute value.
///
/// Base graphs only hold atoms. Derived pattern graphs hold one tuple per
/// pattern node, aligned with the pattern's member order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Atom(Arc<str>),
    Tuple(Vec<Value>),
}

impl Value {
    pub fn atom(s: impl AsRef<str>) -> Self {
        Value::Atom(Arc::from(s.as_ref()))
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Value::Atom(s) => Some(s),
            Value::Tuple(_) => None,
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Atom(s) => f.write_str(s),
            Value::Tuple(items) => {
                f.write_str("(")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::atom(s)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Atom(s) => serializer.serialize_str(s),
            Value::Tuple(items) => {
                let mut seq = serializer.serialize_seq(Some(items.len()))?;
                for v in items {
                    seq.serialize_element(v)?;
                }
                seq.end()
            }
        }
    }
}

/// Grouping key of an aggregate node.
///
/// For attribute aggregation it holds one value per aggregation attribute.
/// For pattern aggregation it holds one `Value::Tuple` per pattern member,
/// sorted, so the key is a canonical multiset.
pub type Key = Vec<Value>;

/// Builds an attribute key from string literals.
pub fn key<S: AsRef<str>>(values: &[S]) -> Key {
    values.iter().map(Value::atom).collect()
}

/// Builds a pattern key from member tuples; members are sorted.
pub fn pattern_key<S: AsRef<str>>(members: &[&[S]]) -> Key {
    let mut out: Key = members
        .iter()
        .map(|m| Value::Tuple(m.iter().map(Value::atom).collect()))
        .collect();
    out.sort();
    out
}

/// Renders a key for labels: `f`, `(f,1)`, `ffm` or `(f,1)(f,2)(m,3)`.
pub fn render_key(key: &[Value]) -> String {
    let is_pattern = key.iter().all(|v| matches!(v, Value::Tuple(_))) && !key.is_empty();
    if is_pattern {
        key.iter()
            .map(|member| match member {
                Value::Tuple(items) if items.len() == 1 => items[0].to_string(),
                other => other.to_string(),
            })
            .collect()
    } else if key.len() == 1 {
        key[0].to_string()
    } else {
        let mut s = String::from("(");
        for (i, v) in key.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&v.to_string());
        }
        s.push(')');
        s
    }
}
