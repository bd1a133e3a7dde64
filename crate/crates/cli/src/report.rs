use std::fmt::Display;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};

use crate::OutputArgs;

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_VERIFICATION: u8 = 4;
pub const EXIT_FIXTURE: u8 = 5;

pub const SCHEMA: u32 = 1;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(e: impl Display) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }

    pub fn precondition(e: impl Display) -> Self {
        Failure {
            code: EXIT_PRECONDITION,
            message: e.to_string(),
        }
    }

    pub fn verification(e: impl Display) -> Self {
        Failure {
            code: EXIT_VERIFICATION,
            message: e.to_string(),
        }
    }

    pub fn exit(self) -> ExitCode {
        eprintln!("error: {}", self.message);
        ExitCode::from(self.code)
    }
}

/// A finished command: its JSON and text renderings, plus a failure to
/// report after printing when the command ran but its checks did not pass.
pub struct Report {
    json: Value,
    text: String,
    failure: Option<Failure>,
    output: Option<OutputArgs>,
}

impl Report {
    pub fn new(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            failure: None,
            output: None,
        }
    }

    pub fn failing(mut self, failure: Option<Failure>) -> Self {
        self.failure = failure;
        self
    }

    pub fn with(mut self, output: OutputArgs) -> Self {
        self.output = Some(output);
        self
    }

    pub fn emit(self) -> ExitCode {
        let output = self.output.expect("output options attached");
        if output.json {
            let mut json = self.json;
            let obj = json.as_object_mut().expect("reports are JSON objects");
            obj.insert("schema".into(), json!(SCHEMA));
            obj.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            if output.timestamps {
                let now = SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                obj.insert("timestamp_unix".into(), json!(now));
            }
            // serde_json's map is a BTreeMap, so keys come out sorted
            println!(
                "{}",
                serde_json::to_string_pretty(&json).expect("Value serializes")
            );
        } else {
            print!("{}", self.text);
        }
        match self.failure {
            Some(f) => f.exit(),
            None => ExitCode::SUCCESS,
        }
    }
}

/// `0x..` hex of a polynomial.
pub fn poly_hex(p: u64) -> String {
    format!("{p:#x}")
}
