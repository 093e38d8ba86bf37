use packedit::{Error, SolveStats};
use serde_json::{Map, Value};
use std::path::Path;

/// A diagnostic with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::CapExceeded(_)) { 4 } else { 3 };
        Failure { code, message: e.to_string() }
    }
}

pub type CmdResult = Result<bool, Failure>;

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

/// Writes `text` to `path`, or to standard output when `path` is absent.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Flat key-value statistics record.
#[derive(Default)]
pub struct StatsRecord(Map<String, Value>);

impl StatsRecord {
    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.0.insert(key.to_string(), value.into());
    }

    pub fn solver(&mut self, stats: &SolveStats) {
        self.set("engine", stats.engine.as_str());
        self.set("branch_nodes", stats.branch_nodes);
        self.set("max_depth", stats.max_depth as u64);
        self.set("max_branch_factor", stats.max_branch_factor as u64);
        for (rule, count) in &stats.rules_applied {
            self.set(&format!("rules.{rule}"), *count);
        }
    }

    pub fn write(&self, path: Option<&Path>) -> Result<(), Failure> {
        if let Some(p) = path {
            let text = serde_json::to_string_pretty(&self.0).expect("plain map serializes");
            emit(Some(p), &(text + "\n"))?;
        }
        Ok(())
    }
}
