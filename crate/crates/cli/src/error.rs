use fincohom_core::Error;
use serde_json::{json, Value};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: String, message: String },
    Json { path: String, line: usize, column: usize, message: String },
    Usage(String),
    /// A property check failed; carries the full report.
    Verify(Value),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    /// 2 for size-cap refusals, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_resource() => 2,
            _ => 1,
        }
    }

    pub fn report(&self) -> Value {
        let body = match self {
            CliError::Core(e) => {
                let kind = match e {
                    Error::InvalidGroup(_) => "invalid_group",
                    Error::InvalidModule(_) => "invalid_module",
                    Error::InvalidHom(_) => "invalid_hom",
                    Error::NotCocycle { .. } => "not_cocycle",
                    Error::InvalidCochain(_) => "invalid_cochain",
                    Error::InvalidExtension(_) => "invalid_extension",
                    Error::InvalidSequence(_) => "invalid_sequence",
                    Error::InvalidFunction(_) => "invalid_function",
                    Error::InvalidLie(_) => "invalid_lie",
                    Error::DegreeOutOfRange { .. } => "degree_out_of_range",
                    Error::SizeLimit { .. } => "size_limit",
                    Error::Parse(_) => "parse",
                };
                let mut v = json!({ "kind": kind, "message": e.to_string() });
                match e {
                    Error::NotCocycle { witness } => v["witness"] = json!(witness),
                    Error::SizeLimit { what, size, limit } => {
                        v["what"] = json!(what);
                        v["size"] = json!(size.to_string());
                        v["limit"] = json!(limit.to_string());
                    }
                    _ => {}
                }
                v
            }
            CliError::Io { path, message } => json!({ "kind": "io", "path": path, "message": message }),
            CliError::Json {
                path,
                line,
                column,
                message,
            } => json!({ "kind": "json", "path": path, "line": line, "column": column, "message": message }),
            CliError::Usage(m) => json!({ "kind": "usage", "message": m }),
            CliError::Verify(report) => json!({ "kind": "verification_failed", "report": report }),
        };
        json!({ "error": body })
    }
}
