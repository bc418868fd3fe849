//! Pass/fail bookkeeping for the identity-verification harnesses.
//!
//! Every `verify_*` function returns a [`CheckReport`]: one row per relation
//! or instance family, with the first counterexample kept when a row fails.
//! Reports serialize to JSON so the command-line front end can emit them.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub relation: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CheckItem {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        CheckReport { suite: suite.into(), items: Vec::new() }
    }

    /// Record one relation outcome. `counterexample` should name the instance
    /// that broke (operator index, input monomial, ...) and is kept only on
    /// failure.
    pub fn record(
        &mut self,
        relation: impl Into<String>,
        pass: bool,
        counterexample: Option<String>,
    ) {
        self.items.push(CheckItem {
            relation: relation.into(),
            status: if pass { "pass" } else { "fail" }.into(),
            counterexample: if pass { None } else { counterexample },
        });
    }

    /// Fold another report into this one, prefixing its rows by suite name.
    pub fn absorb(&mut self, other: CheckReport) {
        for item in other.items {
            self.items.push(CheckItem {
                relation: format!("{}: {}", other.suite, item.relation),
                ..item
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed())
    }

    pub fn failures(&self) -> Vec<&CheckItem> {
        self.items.iter().filter(|i| !i.passed()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// One-line human summary: "suite: 12/12 pass" plus failing row names.
    pub fn summary(&self) -> String {
        let total = self.items.len();
        let ok = self.items.iter().filter(|i| i.passed()).count();
        if ok == total {
            format!("{}: {ok}/{total} pass", self.suite)
        } else {
            let names: Vec<&str> =
                self.failures().iter().map(|i| i.relation.as_str()).collect();
            format!("{}: {ok}/{total} pass; FAILED: {}", self.suite, names.join(", "))
        }
    }
}
