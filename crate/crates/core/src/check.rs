use serde::Serialize;

/// Outcome of an exhaustive scan: how many instances were examined and the
/// first failing tuple, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub checked: u64,
    pub witness: Option<Vec<usize>>,
    /// Set when the scan was not run; `holds` is then false.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl Check {
    pub(crate) fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            holds: true,
            checked: 0,
            witness: None,
            skipped: None,
        }
    }

    pub(crate) fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            holds: false,
            checked: 0,
            witness: None,
            skipped: Some(reason.into()),
        }
    }

    /// Single-shot verdict from an optional counterexample.
    pub(crate) fn from_witness(name: impl Into<String>, checked: u64, witness: Option<Vec<usize>>) -> Self {
        Check {
            name: name.into(),
            holds: witness.is_none(),
            checked,
            witness,
            skipped: None,
        }
    }

    /// Records one instance; keeps only the first failure.
    #[inline]
    pub(crate) fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<usize>) {
        self.checked += 1;
        if !ok && self.holds {
            self.holds = false;
            self.witness = Some(witness());
        }
    }

    pub(crate) fn failed(&self) -> bool {
        !self.holds
    }
}
