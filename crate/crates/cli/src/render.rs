//! JSON, CSV and text renderings of an [`Outcome`].

use serde_json::Value;

use crate::commands::Outcome;

type RenderResult = Result<String, Box<dyn std::error::Error>>;

pub fn json(out: &Outcome) -> RenderResult {
    let mut top = serde_json::Map::new();
    top.insert("command".into(), Value::String(out.command.into()));
    top.insert("passed".into(), Value::Bool(out.passed));
    if let Value::Object(m) = &out.report {
        top.extend(m.clone());
    }
    Ok(serde_json::to_string_pretty(&Value::Object(top))? + "\n")
}

pub fn csv(out: &Outcome) -> RenderResult {
    let mut w = csv::Writer::from_writer(Vec::new());
    match &out.growth {
        Some(rows) => rows.iter().try_for_each(|r| w.serialize(r))?,
        None => out.checks.iter().try_for_each(|r| w.serialize(r))?,
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn text(out: &Outcome) -> RenderResult {
    let mut s = out.text.join("\n");
    s.push_str(&format!("\n{}: {}\n", out.command, if out.passed { "PASS" } else { "FAIL" }));
    Ok(s)
}
