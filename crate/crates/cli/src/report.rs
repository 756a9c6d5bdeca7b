//! Rendering of command results: exact values first, then decimals; or a
//! JSON object mirroring the same fields.

use located_core::rat::to_decimal;
use located_core::{FormalBall, Point, Rat};
use serde_json::{json, Map, Value as Json};

#[derive(Clone, Debug)]
pub enum Value {
    Rat(Rat),
    Point(Point),
    Ball(FormalBall),
    Int(u64),
    Text(String),
    Row(Vec<(&'static str, Value)>),
}

impl Value {
    fn exact(&self) -> String {
        match self {
            Value::Rat(r) => r.to_string(),
            Value::Point(p) => p.to_string(),
            Value::Ball(b) => b.to_string(),
            Value::Int(n) => n.to_string(),
            Value::Text(t) => t.clone(),
            Value::Row(fields) => fields
                .iter()
                .map(|(k, v)| format!("{k}={}", v.exact()))
                .collect::<Vec<_>>()
                .join(" "),
        }
    }

    fn decimal(&self, digits: usize) -> Option<String> {
        match self {
            Value::Rat(r) => Some(to_decimal(r, digits)),
            Value::Point(p) => p.coords().map(|cs| {
                cs.iter()
                    .map(|c| to_decimal(c, digits))
                    .collect::<Vec<_>>()
                    .join(",")
            }),
            Value::Row(fields) => {
                let parts: Vec<String> = fields
                    .iter()
                    .filter_map(|(k, v)| v.decimal(digits).map(|d| format!("{k}={d}")))
                    .collect();
                (!parts.is_empty()).then(|| parts.join(" "))
            }
            _ => None,
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Int(n) => json!(n),
            Value::Row(fields) => Json::Object(
                fields
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.json()))
                    .collect(),
            ),
            other => Json::String(other.exact()),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.push("command", Value::Text(command.to_string()));
        r
    }

    pub fn push(&mut self, key: impl Into<String>, value: Value) -> &mut Self {
        self.fields.push((key.into(), value));
        self
    }

    pub fn render_text(&self, digits: usize) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            out.push_str(&format!("{k}: {}\n", v.exact()));
        }
        let decimals: Vec<(&String, String)> = self
            .fields
            .iter()
            .filter_map(|(k, v)| v.decimal(digits).map(|d| (k, d)))
            .collect();
        if !decimals.is_empty() {
            out.push_str("decimal:\n");
            for (k, d) in decimals {
                out.push_str(&format!("  {k} ~ {d}\n"));
            }
        }
        out
    }

    pub fn render_json(&self, digits: usize) -> String {
        let mut obj = Map::new();
        let mut decimals = Map::new();
        for (k, v) in &self.fields {
            obj.insert(k.clone(), v.json());
            if let Some(d) = v.decimal(digits) {
                decimals.insert(k.clone(), Json::String(d));
            }
        }
        if !decimals.is_empty() {
            obj.insert("decimal".into(), Json::Object(decimals));
        }
        let mut s = serde_json::to_string_pretty(&Json::Object(obj)).expect("json rendering");
        s.push('\n');
        s
    }
}
