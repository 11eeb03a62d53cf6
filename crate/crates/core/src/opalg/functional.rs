//! Tables of functionals `φ: R → C` available as operator generators.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{FunctionalFn, IdRing};

/// A named functional. The evaluation `E` has no stored map and is computed
/// by the ring.
#[derive(Clone)]
pub struct Functional<E> {
    /// Name used in the text syntax (`phi:<name>`); `e` for the evaluation.
    pub name: String,
    /// The map, or `None` for the ring's evaluation.
    pub map: Option<FunctionalFn<E>>,
    /// `true` if `φ(fg) = (φf)(φg)` is to be used as a rewrite rule.
    pub multiplicative: bool,
}

impl<E> fmt::Debug for Functional<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Functional").field("name", &self.name).field("multiplicative", &self.multiplicative).finish()
    }
}

/// The set `Φ` of functionals; index `0` is always the evaluation `E`.
#[derive(Clone, Debug)]
pub struct FunctionalTable<E> {
    entries: Vec<Functional<E>>,
}

impl<E: Clone + PartialEq> Default for FunctionalTable<E> {
    fn default() -> Self {
        Self::new()
    }
}

impl<E: Clone + PartialEq> FunctionalTable<E> {
    /// Index of the evaluation `E`.
    pub const EVAL: usize = 0;

    /// The table containing only `E`, not flagged multiplicative.
    pub fn new() -> Self {
        FunctionalTable { entries: vec![Functional { name: "e".into(), map: None, multiplicative: false }] }
    }

    /// Flags `E` as multiplicative, so that `E·f = (Ef)·E` is used.
    pub fn with_multiplicative_e(mut self) -> Self {
        self.entries[0].multiplicative = true;
        self
    }

    /// Adds a functional and returns its index. The multiplicative flag is
    /// honoured only if `φ(1) = 1`; otherwise it is dropped.
    pub fn add<R: IdRing<Elem = E>>(&mut self, ring: &R, name: &str, map: FunctionalFn<E>, multiplicative: bool) -> Result<usize> {
        if name == "e" || self.index(name).is_ok() {
            return Err(Error::Elaborate(format!("functional '{name}' already defined")));
        }
        let honoured = multiplicative && map(&ring.one()) == ring.one();
        self.entries.push(Functional { name: name.to_string(), map: Some(map), multiplicative: honoured });
        Ok(self.entries.len() - 1)
    }

    /// Looks up a functional by name.
    pub fn index(&self, name: &str) -> Result<usize> {
        self.entries.iter().position(|f| f.name == name).ok_or_else(|| Error::UnknownFunctional(name.to_string()))
    }

    /// The functional at `idx`.
    pub fn get(&self, idx: usize) -> &Functional<E> {
        &self.entries[idx]
    }

    /// Number of functionals, including `E`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always `false`: the table contains `E`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// `true` if the functional at `idx` is used multiplicatively.
    pub fn is_multiplicative(&self, idx: usize) -> bool {
        self.entries[idx].multiplicative
    }

    /// Printed name: `e` or `phi:<name>`.
    pub fn display_name(&self, idx: usize) -> String {
        if idx == Self::EVAL {
            "e".into()
        } else {
            format!("phi:{}", self.entries[idx].name)
        }
    }

    /// Applies the functional at `idx` to `f`.
    pub fn apply<R: IdRing<Elem = E>>(&self, ring: &R, idx: usize, f: &E) -> E {
        match &self.entries[idx].map {
            None => ring.evaluate(f),
            Some(m) => m(f),
        }
    }
}
