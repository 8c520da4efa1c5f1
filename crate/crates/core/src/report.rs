//! Plain-text, Markdown and JSON rendering of computation reports.
//!
//! Rationals are always printed as `num/den`. Text and Markdown add a
//! truncated decimal; JSON adds it as a separate `decimal` field that is
//! ignored when a report is read back.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cyclic_geometry::CyclicQuad;
use crate::exact_numbers::{to_decimal, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Markdown,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Value {
    Rational { exact: Rational },
    Text { text: String },
    Check { pass: bool, detail: String },
    Quad { quad: CyclicQuad },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub label: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub heading: String,
    pub rows: Vec<Row>,
}

impl Section {
    pub fn new(heading: impl Into<String>) -> Self {
        Section {
            heading: heading.into(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, value: Value) -> &mut Self {
        self.rows.push(Row {
            label: label.into(),
            value,
        });
        self
    }

    pub fn rational(&mut self, label: impl Into<String>, exact: &Rational) -> &mut Self {
        self.push(label, Value::Rational { exact: exact.clone() })
    }

    pub fn text(&mut self, label: impl Into<String>, text: impl Into<String>) -> &mut Self {
        self.push(label, Value::Text { text: text.into() })
    }

    pub fn check(&mut self, label: impl Into<String>, pass: bool, detail: impl Into<String>) -> &mut Self {
        self.push(
            label,
            Value::Check {
                pass,
                detail: detail.into(),
            },
        )
    }

    pub fn quad(&mut self, label: impl Into<String>, quad: &CyclicQuad) -> &mut Self {
        self.push(label, Value::Quad { quad: quad.clone() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            sections: Vec::new(),
        }
    }

    pub fn section(&mut self, heading: impl Into<String>) -> &mut Section {
        self.sections.push(Section::new(heading));
        self.sections.last_mut().expect("just pushed")
    }

    /// True if any check row failed.
    pub fn failed(&self) -> bool {
        self.sections
            .iter()
            .flat_map(|s| &s.rows)
            .any(|r| matches!(r.value, Value::Check { pass: false, .. }))
    }
}

fn plain_value(value: &Value, precision: u32) -> String {
    match value {
        Value::Rational { exact } if exact.is_integer() => exact.to_string(),
        Value::Rational { exact } => format!("{exact} (~ {})", to_decimal(exact, precision)),
        Value::Text { text } => text.clone(),
        Value::Check { pass, detail } => {
            let tag = if *pass { "PASS" } else { "FAIL" };
            if detail.is_empty() {
                tag.to_string()
            } else {
                format!("{tag} ({detail})")
            }
        }
        Value::Quad { quad } => quad
            .vertices()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    }
}

fn json_value(value: &Value, precision: u32) -> serde_json::Value {
    let mut v = serde_json::to_value(value).expect("report values serialize");
    if let Value::Rational { exact } = value {
        v["decimal"] = json!(to_decimal(exact, precision).text);
    }
    v
}

/// Deterministic rendering of `report`.
pub fn render_report(report: &Report, format: Format, precision: u32) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            let _ = writeln!(out, "{}", report.title);
            let _ = writeln!(out, "{}", "=".repeat(report.title.chars().count()));
            for section in &report.sections {
                let _ = writeln!(out, "\n{}", section.heading);
                let _ = writeln!(out, "{}", "-".repeat(section.heading.chars().count()));
                for row in &section.rows {
                    let _ = writeln!(out, "{}: {}", row.label, plain_value(&row.value, precision));
                }
            }
        }
        Format::Markdown => {
            let _ = writeln!(out, "# {}", report.title);
            for section in &report.sections {
                let _ = writeln!(out, "\n## {}\n", section.heading);
                let _ = writeln!(out, "| item | value |");
                let _ = writeln!(out, "| --- | --- |");
                for row in &section.rows {
                    let cell = plain_value(&row.value, precision).replace('|', "\\|");
                    let _ = writeln!(out, "| {} | {} |", row.label.replace('|', "\\|"), cell);
                }
            }
        }
        Format::Json => {
            let sections: Vec<_> = report
                .sections
                .iter()
                .map(|s| {
                    let rows: Vec<_> = s
                        .rows
                        .iter()
                        .map(|r| json!({"label": r.label, "value": json_value(&r.value, precision)}))
                        .collect();
                    json!({"heading": s.heading, "rows": rows})
                })
                .collect();
            let doc = json!({"title": report.title, "sections": sections});
            out = serde_json::to_string_pretty(&doc).expect("json");
            out.push('\n');
        }
    }
    out
}
