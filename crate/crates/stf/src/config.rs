use std::io::Write;

use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Settings shared by all commands.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    /// Tolerance for float comparisons and verification residuals.
    pub tolerance: f64,
    pub format: OutputFormat,
    /// Overrides the polynomial degree used to size sphere quadrature.
    pub quadrature_degree: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tolerance: 1e-10,
            format: OutputFormat::Text,
            quadrature_degree: None,
        }
    }
}

impl Config {
    pub fn new(
        tolerance: f64,
        format: OutputFormat,
        quadrature_degree: Option<usize>,
    ) -> Result<Self, CliError> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(CliError::Argument(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        Ok(Config {
            tolerance,
            format,
            quadrature_degree,
        })
    }

    pub fn degree_or(&self, default: usize) -> usize {
        self.quadrature_degree.unwrap_or(default)
    }
}

/// Ordered key-value summary printed by a command.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.entries.push((key.to_string(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.entries.iter().cloned().collect::<Map<_, _>>())
    }

    pub fn write(&self, format: OutputFormat, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            OutputFormat::Json => {
                writeln!(out, "{}", serde_json::to_string_pretty(&self.to_json())?)
            }
            OutputFormat::Text => {
                for (k, v) in &self.entries {
                    match v {
                        Value::Array(items) if items.iter().all(Value::is_object) => {
                            writeln!(out, "{k}:")?;
                            for item in items {
                                writeln!(out, "  {}", inline(item))?;
                            }
                        }
                        _ => writeln!(out, "{k}: {}", inline(v))?,
                    }
                }
                Ok(())
            }
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}={}", inline(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}
