use std::fmt;
use std::sync::Arc;

use crate::PolyError;

/// An ordered list of distinct variable names.
///
/// Cloning is cheap; the names are shared.
#[derive(Clone)]
pub struct VarSet {
    names: Arc<[String]>,
}

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, PolyError> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().to_string();
            if !is_identifier(&n) {
                return Err(PolyError::Parse {
                    pos: 0,
                    msg: format!("`{n}` is not a variable name"),
                });
            }
            if out.contains(&n) {
                return Err(PolyError::DuplicateVariable(n));
            }
            out.push(n);
        }
        Ok(Self { names: out.into() })
    }

    /// Builds a varset from names that are known to be valid.
    ///
    /// Panics on duplicates or malformed names.
    pub fn of(names: &[&str]) -> Self {
        Self::new(names).expect("valid variable names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index(name).is_some()
    }

    /// Appends names that are not already present.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Self, PolyError> {
        let mut all: Vec<String> = self.names.to_vec();
        for e in extra {
            let e = e.as_ref();
            if !all.iter().any(|n| n == e) {
                all.push(e.to_string());
            }
        }
        Self::new(&all)
    }

    /// True when both sets list the same names in the same order.
    pub fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<(), PolyError> {
        if self.same(other) {
            Ok(())
        } else {
            Err(PolyError::VarSetMismatch {
                left: self.names.join(" "),
                right: other.names.join(" "),
            })
        }
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for VarSet {}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarSet[{}]", self.names.join(" "))
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vars: {}", self.names.join(" "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
