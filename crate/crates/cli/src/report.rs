use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded but not asserted.
    Observed,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Observed => "observed",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: String,
    pub parameters: Value,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(check: &str, parameters: Value, status: Status, detail: impl Into<String>) -> Self {
        Self {
            check: check.to_string(),
            parameters,
            status,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub observed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool_version: &'static str,
    pub command: String,
    pub parameters: Value,
    pub checks: Vec<Check>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, parameters: Value, checks: Vec<Check>, wall_time_ms: Option<u64>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Observed => summary.observed += 1,
            }
        }
        Self {
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            parameters,
            checks,
            summary,
            wall_time_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:<8} {:<26} {:<24} {}\n",
                c.status.label(),
                c.check,
                compact_params(&c.parameters),
                c.detail
            ));
        }
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} observed",
            self.summary.pass, self.summary.fail, self.summary.observed
        ));
        if let Some(ms) = self.wall_time_ms {
            out.push_str(&format!(", {ms} ms"));
        }
        out.push('\n');
        out
    }
}

/// `{"n":3,"m":5}` as `m=5 n=3`.
fn compact_params(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
