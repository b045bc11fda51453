use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// Exponent `e` quoted in the literature for `(|f|² + |g|²)(|m|² + |n|²) = ρ^e`.
pub const STATED_NORMALIZATION_EXPONENT: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// Which identity or property the check exercises.
    pub reference: String,
    pub max_abs_residual: f64,
    pub l2_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence_order: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalizationFinding {
    pub exponent: f64,
    pub stated_exponent: f64,
    pub deviates: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Environment {
    pub version: String,
    pub seed: u64,
    pub grid: Vec<usize>,
    pub jet: String,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalization: Option<NormalizationFinding>,
    pub env: Environment,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let order = c
                .convergence_order
                .map(|o| format!(" order={o:.3}"))
                .unwrap_or_default();
            out.push_str(&format!(
                "{} {} max={:.3e}{}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.max_abs_residual,
                order
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}
