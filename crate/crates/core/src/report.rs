//! Pipeline reports: per-stage verdicts with witnesses, rendered as
//! line-oriented text or JSON. Timings are measured but only emitted on
//! request, so that repeated runs on the same inputs produce identical
//! output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::check::Check;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub label: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(label: impl Into<String>, bytes: &[u8]) -> Self {
        InputDigest {
            label: label.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub name: String,
    pub passed: bool,
    /// What the verdict rests on, e.g. `M3` or `straight iff S meets every L-class`.
    pub anchor: String,
    pub details: BTreeMap<String, String>,
    pub witness: Option<Vec<usize>>,
    /// Full structured result, for the JSON dump.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Stage {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Stage {
            name: name.into(),
            passed: true,
            anchor: anchor.into(),
            details: BTreeMap::new(),
            witness: None,
            data: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.to_string(), value.to_string());
        self
    }

    pub fn fail(mut self, anchor: impl Into<String>, witness: Option<Vec<usize>>) -> Self {
        self.passed = false;
        self.anchor = anchor.into();
        self.witness = witness;
        self
    }

    pub fn with_data(mut self, data: &impl Serialize) -> Self {
        self.data = serde_json::to_value(data).ok();
        self
    }

    /// Fails on the first failing check, naming it as the anchor.
    pub fn from_checks<'a>(mut self, checks: impl IntoIterator<Item = &'a Check>) -> Self {
        for c in checks {
            if !c.holds {
                let witness = c.witness.clone();
                self = self.fail(c.name.clone(), witness);
                if let Some(why) = &c.skipped {
                    self = self.detail("skipped", why);
                }
                break;
            }
        }
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub pipeline: String,
    pub inputs: Vec<InputDigest>,
    pub stages: Vec<Stage>,
    pub passed: bool,
}

impl PipelineReport {
    pub fn new(pipeline: impl Into<String>) -> Self {
        PipelineReport {
            pipeline: pipeline.into(),
            inputs: Vec::new(),
            stages: Vec::new(),
            passed: true,
        }
    }

    pub fn with_inputs(mut self, inputs: Vec<InputDigest>) -> Self {
        self.inputs = inputs;
        self
    }

    /// Appends a stage and returns whether it passed.
    pub fn push(&mut self, stage: Stage) -> bool {
        let ok = stage.passed;
        self.passed &= ok;
        self.stages.push(stage);
        ok
    }

    /// Runs `f`, records its stage with the elapsed time.
    pub fn run(&mut self, f: impl FnOnce() -> Stage) -> bool {
        let start = std::time::Instant::now();
        let mut stage = f();
        stage.elapsed = start.elapsed();
        self.push(stage)
    }

    pub fn first_failure(&self) -> Option<&Stage> {
        self.stages.iter().find(|s| !s.passed)
    }

    pub fn render_text(&self, timing: bool) -> String {
        let mut out = String::new();
        writeln!(out, "pipeline: {}", self.pipeline).unwrap();
        for input in &self.inputs {
            writeln!(out, "input: {} sha256={}", input.label, input.sha256).unwrap();
        }
        for stage in &self.stages {
            let verdict = if stage.passed { "pass" } else { "FAIL" };
            writeln!(out, "stage: {} {}", stage.name, verdict).unwrap();
            writeln!(out, "  anchor: {}", stage.anchor).unwrap();
            for (k, v) in &stage.details {
                writeln!(out, "  {k}: {v}").unwrap();
            }
            if let Some(w) = &stage.witness {
                writeln!(out, "  witness:").unwrap();
                for x in w {
                    writeln!(out, "    - {x}").unwrap();
                }
            }
            if timing {
                writeln!(out, "  elapsed_ms: {:.3}", stage.elapsed.as_secs_f64() * 1e3).unwrap();
            }
        }
        writeln!(out, "result: {}", if self.passed { "pass" } else { "FAIL" }).unwrap();
        out
    }

    pub fn render_json(&self, timing: bool) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        if timing {
            let ms: Vec<f64> = self.stages.iter().map(|s| s.elapsed.as_secs_f64() * 1e3).collect();
            value["elapsed_ms"] = serde_json::json!(ms);
        }
        let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        let d = InputDigest::of("x", b"");
        assert_eq!(d.sha256, "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn failure_marks_report() {
        let mut r = PipelineReport::new("demo");
        assert!(r.push(Stage::new("a", "first").detail("n", 3)));
        assert!(!r.push(Stage::new("b", "second").fail("M3", Some(vec![1, 0]))));
        assert!(!r.passed);
        assert_eq!(r.first_failure().unwrap().name, "b");
        let text = r.render_text(false);
        assert_eq!(
            text,
            "pipeline: demo\nstage: a pass\n  anchor: first\n  n: 3\nstage: b FAIL\n  anchor: M3\n  witness:\n    - 1\n    - 0\nresult: FAIL\n"
        );
    }

    #[test]
    fn timing_is_opt_in() {
        let mut r = PipelineReport::new("demo");
        r.run(|| Stage::new("a", "x"));
        assert!(!r.render_text(false).contains("elapsed"));
        assert!(r.render_text(true).contains("elapsed_ms"));
        assert!(!r.render_json(false).contains("elapsed"));
        assert!(r.render_json(true).contains("elapsed_ms"));
    }

    #[test]
    fn from_checks_takes_first_failure() {
        let mut bad = Check::new("M2");
        bad.record(false, || vec![0, 1, 2, 3]);
        let mut worse = Check::new("M5");
        worse.record(false, || vec![9]);
        let s = Stage::new("axioms", "all").from_checks([&Check::new("M1"), &bad, &worse]);
        assert!(!s.passed);
        assert_eq!(s.anchor, "M2");
        assert_eq!(s.witness, Some(vec![0, 1, 2, 3]));
    }
}
