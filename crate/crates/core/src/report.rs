//! Law-by-law check results shared by the axiom checkers and the property
//! suites.

use serde::Serialize;

const KEPT_EXAMPLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub name: String,
    /// Number of instances examined.
    pub checked: usize,
    pub failures: usize,
    /// The first few counterexamples, rendered.
    pub examples: Vec<String>,
}

impl LawCheck {
    pub fn new(name: impl Into<String>) -> LawCheck {
        LawCheck {
            name: name.into(),
            checked: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Records one instance. The message closure runs only on failure.
    pub fn record<F: FnOnce() -> String>(&mut self, ok: bool, message: F) {
        if ok {
            self.checked += 1;
        } else {
            self.fail(message());
        }
    }

    /// Records one failed instance.
    pub fn fail(&mut self, message: String) {
        self.checked += 1;
        self.failures += 1;
        if self.examples.len() < KEPT_EXAMPLES {
            self.examples.push(message);
        }
    }

    pub fn absorb(&mut self, other: LawCheck) {
        self.checked += other.checked;
        self.failures += other.failures;
        for e in other.examples {
            if self.examples.len() < KEPT_EXAMPLES {
                self.examples.push(e);
            }
        }
    }
}

pub fn all_passed(checks: &[LawCheck]) -> bool {
    checks.iter().all(LawCheck::passed)
}
