//! Reports and their text and JSON renderings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use shearlab::rational::fmt_q;
use shearlab::{KForm, LieAlgebra, Vector, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Usage = 1,
    Jacobi = 2,
    InvalidData = 3,
    SearchCap = 4,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn kind(self) -> &'static str {
        match self {
            Exit::Ok => "ok",
            Exit::Usage => "usage-error",
            Exit::Jacobi => "jacobi-failure",
            Exit::InvalidData => "invalid-data",
            Exit::SearchCap => "search-cap-exceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            exit: Exit::Usage,
            message: message.into(),
        }
    }
}

/// One command's outcome. `results` is the structured payload and `text`
/// its human rendering.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub args: Map<String, Value>,
    pub digest: Option<String>,
    pub results: Map<String, Value>,
    pub text: String,
    pub exit: Exit,
    pub message: Option<String>,
}

impl Report {
    pub fn new(command: &str, args: Map<String, Value>) -> Self {
        Report {
            command: command.to_string(),
            args,
            digest: None,
            results: Map::new(),
            text: String::new(),
            exit: Exit::Ok,
            message: None,
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    pub fn line(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }

    pub fn fail(&mut self, err: CliError) {
        self.exit = err.exit;
        self.message = Some(err.message);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "args": self.args,
            "input": { "sha256": self.digest },
            "results": self.results,
            "status": {
                "exit_code": self.exit.code(),
                "kind": self.exit.kind(),
                "message": self.message,
            },
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self, color: bool) -> String {
        let mut out = String::new();
        for line in self.text.lines() {
            out.push_str(&paint(line, color));
            out.push('\n');
        }
        if let Some(m) = &self.message {
            let _ = writeln!(out, "{}: {m}", paint(self.exit.kind(), color));
        }
        out
    }
}

fn paint(line: &str, color: bool) -> String {
    if !color {
        return line.to_string();
    }
    line.replace("[pass]", "[\x1b[32mpass\x1b[0m]")
        .replace("[FAIL]", "[\x1b[31mFAIL\x1b[0m]")
}

pub fn q_json(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

pub fn form_json(f: &KForm) -> Value {
    Value::String(f.to_string())
}

pub fn vector_json(v: &Vector) -> Value {
    Value::String(v.to_string())
}

pub fn mark(passed: bool) -> &'static str {
    if passed { "[pass]" } else { "[FAIL]" }
}

/// `{dim, salamon, d}` where `salamon` is null beyond nine dimensions.
pub fn algebra_json(g: &LieAlgebra) -> Value {
    let d: Map<String, Value> = g
        .diffs()
        .iter()
        .enumerate()
        .map(|(k, f)| ((k + 1).to_string(), form_json(f)))
        .collect();
    json!({ "dim": g.dim(), "salamon": g.to_salamon(), "d": d })
}

pub fn algebra_text(g: &LieAlgebra) -> String {
    match g.to_salamon() {
        Some(s) => s,
        None => g.to_string(),
    }
}
