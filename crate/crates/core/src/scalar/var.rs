//! Process-wide table of indeterminate names.
//!
//! `q` is always variable 0, so it leads the lexicographic monomial order.

use std::fmt;
use std::sync::{LazyLock, RwLock};

use crate::error::{Error, Result};

/// Maximum number of distinct indeterminates (including `q`).
pub const MAX_VARS: usize = 16;

static REGISTRY: LazyLock<RwLock<Vec<String>>> =
    LazyLock::new(|| RwLock::new(vec!["q".to_string()]));

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(u8);

impl Var {
    pub const Q: Var = Var(0);

    /// Interns `name`, returning its variable handle.
    pub fn named(name: &str) -> Result<Var> {
        if let Some(v) = Self::lookup(name) {
            return Ok(v);
        }
        let mut reg = REGISTRY.write().expect("variable registry poisoned");
        if let Some(pos) = reg.iter().position(|n| n == name) {
            return Ok(Var(pos as u8));
        }
        if reg.len() >= MAX_VARS {
            return Err(Error::TooManyVariables(MAX_VARS));
        }
        reg.push(name.to_string());
        Ok(Var((reg.len() - 1) as u8))
    }

    pub fn lookup(name: &str) -> Option<Var> {
        let reg = REGISTRY.read().expect("variable registry poisoned");
        reg.iter().position(|n| n == name).map(|p| Var(p as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Var {
        debug_assert!(i < MAX_VARS);
        Var(i as u8)
    }

    pub fn name(self) -> String {
        let reg = REGISTRY.read().expect("variable registry poisoned");
        reg.get(self.index())
            .cloned()
            .unwrap_or_else(|| format!("x{}", self.0))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
