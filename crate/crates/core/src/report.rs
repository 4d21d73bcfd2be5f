//! Report types shared by the identity fuzzer, the summation and series
//! checkers, and the double-binomial suites.

use serde::Serialize;

/// A parameter assignment rendered as a (name, value) pair. Values are
/// decimal integers or "p/q" rationals so reports are byte-stable.
pub type Param = [String; 2];

pub fn param(name: &str, value: impl ToString) -> Param {
    [name.to_string(), value.to_string()]
}

/// A grid tuple whose residual did not vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureCase {
    pub params: Vec<Param>,
    pub residual: String,
}

/// A grid tuple excluded by the identity's stated preconditions. When the
/// tuple was still evaluated (both sides remain defined), the residual is
/// recorded; otherwise it is null.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegenerateCase {
    pub params: Vec<Param>,
    pub residual: Option<String>,
}

/// Outcome of sweeping one identity across a parameter grid. A run passed
/// exactly when `failures` is empty; `tuples_checked` counts the
/// non-degenerate evaluations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    #[serde(rename = "checked")]
    pub tuples_checked: u64,
    pub failures: Vec<FailureCase>,
    pub degenerate: Vec<DegenerateCase>,
}

impl IdentityReport {
    pub fn new(identity: impl Into<String>) -> Self {
        Self {
            identity: identity.into(),
            tuples_checked: 0,
            failures: Vec::new(),
            degenerate: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// True when every degenerate tuple that was evaluated had residual 0,
    /// i.e. both sides of the identity still agreed.
    pub fn degenerate_all_zero(&self) -> bool {
        self.degenerate
            .iter()
            .all(|case| case.residual.as_deref().map_or(true, |r| r == "0"))
    }
}
