//! Named pass/fail checks collected by the verification operations.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    /// remarks that do not affect the outcome
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(
        &mut self,
        name: impl Into<String>,
        holds: bool,
        witness: impl Into<String>,
    ) -> bool {
        self.checks.push(Check {
            name: name.into(),
            holds,
            witness: witness.into(),
        });
        holds
    }

    /// Records `left == right` with both sides in the witness.
    pub fn check_eq<T: PartialEq + fmt::Display>(
        &mut self,
        name: impl Into<String>,
        left: &T,
        right: &T,
    ) -> bool {
        let holds = left == right;
        let witness = if holds {
            format!("{left}")
        } else {
            format!("{left} != {right}")
        };
        self.check(name, holds, witness)
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    /// Prefixes every check name with `prefix/`.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.name = format!("{prefix}/{}", c.name);
        }
        self
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    /// One-line summary: the first failure, or the number of checks.
    pub fn summary(&self) -> String {
        match self.failures().next() {
            Some(c) => format!("{}: {}", c.name, c.witness),
            None if self.checks.len() == 1 => {
                let c = &self.checks[0];
                if c.witness.is_empty() {
                    c.name.clone()
                } else {
                    format!("{}: {}", c.name, c.witness)
                }
            }
            None => format!("{} checks hold", self.checks.len()),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "[{}] {}: {}",
                if c.holds { "ok" } else { "FAIL" },
                c.name,
                c.witness
            )?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
