use std::fmt;

use serde::Serialize;

use super::graded::Cell;
use crate::json::cell_key;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub cell: Cell,
    pub rule: String,
    pub detail: String,
}

impl Violation {
    pub fn new(cell: Cell, rule: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation { cell, rule: rule.into(), detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", cell_key(&self.cell), self.rule, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}
