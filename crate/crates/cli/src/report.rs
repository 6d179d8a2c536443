use serde::Serialize;
use serde_json::Value;

/// Command output: the command name, its effective configuration, results
/// and, for checks, a `"pass"` / `"fail"` verdict. Contains no timings, so
/// fixed inputs give byte-identical output.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub verdict: Option<&'static str>,
}

impl Report {
    pub fn new(command: &str, config: impl Serialize, results: impl Serialize) -> Self {
        Self {
            command: command.to_string(),
            config: serde_json::to_value(config).expect("config serializes"),
            results: serde_json::to_value(results).expect("results serialize"),
            verdict: None,
        }
    }

    pub fn with_verdict(mut self, pass: bool) -> Self {
        self.verdict = Some(if pass { "pass" } else { "fail" });
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
