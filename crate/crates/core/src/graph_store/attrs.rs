use std::collections::HashMap;
use std::sync::Arc;

use crate::value::Value;

/// Code for an absent value in attribute columns.
pub const MISSING: u32 = u32::MAX;

/// Value dictionary for one attribute column.
#[derive(Clone, Debug, Default)]
pub struct Dictionary {
    values: Vec<Value>,
    index: HashMap<Value, u32>,
}

impl Dictionary {
    pub fn intern(&mut self, v: Value) -> u32 {
        if let Some(&c) = self.index.get(&v) {
            return c;
        }
        let c = self.values.len() as u32;
        self.values.push(v.clone());
        self.index.insert(v, c);
        c
    }

    pub fn get(&self, code: u32) -> Option<&Value> {
        if code == MISSING {
            None
        } else {
            self.values.get(code as usize)
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttrKind {
    Static,
    Varying,
}

/// One attribute column. Static columns hold one code per node; varying
/// columns hold `nodes × time points` codes in node-major order.
#[derive(Clone, Debug)]
pub struct Attribute {
    pub(crate) name: String,
    pub(crate) kind: AttrKind,
    pub(crate) codes: Vec<u32>,
    pub(crate) dict: Arc<Dictionary>,
}

impl Attribute {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> AttrKind {
        self.kind
    }

    pub fn is_static(&self) -> bool {
        self.kind == AttrKind::Static
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dict
    }

    #[inline]
    pub(crate) fn code(&self, node: usize, t: usize, n: usize) -> u32 {
        match self.kind {
            AttrKind::Static => self.codes[node],
            AttrKind::Varying => self.codes[node * n + t],
        }
    }
}

/// Static arrays (`S`) and time-varying arrays (`A^i`) of a graph.
#[derive(Clone, Debug, Default)]
pub struct AttributeCatalog {
    pub(crate) attrs: Vec<Attribute>,
}

impl AttributeCatalog {
    pub fn iter(&self) -> std::slice::Iter<'_, Attribute> {
        self.attrs.iter()
    }

    pub fn get(&self, name: &str) -> Option<&Attribute> {
        self.attrs.iter().find(|a| a.name == name)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.attrs.iter().position(|a| a.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.attrs.iter().map(|a| a.name.as_str()).collect()
    }

    pub fn static_names(&self) -> Vec<&str> {
        self.attrs.iter().filter(|a| a.is_static()).map(|a| a.name.as_str()).collect()
    }

    pub fn varying_names(&self) -> Vec<&str> {
        self.attrs.iter().filter(|a| !a.is_static()).map(|a| a.name.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.attrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attrs.is_empty()
    }
}
