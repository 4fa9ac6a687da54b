use serde::Serialize;
use serde_json::Value;

/// One JSON document per invocation.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub provenance: Vec<String>,
    pub seed: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `key: value` lines for the top-level outputs.
    pub fn to_table(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        match &self.outputs {
            Value::Object(map) => {
                let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
                for (k, v) in map {
                    if let Some(rows) = ledger_rows(v) {
                        out.push_str(&format!("{k}\n{rows}"));
                        continue;
                    }
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    out.push_str(&format!("{k:<width$}  {shown}\n"));
                }
            }
            other => out.push_str(&format!("{other}\n")),
        }
        out
    }
}

// one line per suite entry instead of a JSON blob
fn ledger_rows(v: &Value) -> Option<String> {
    let rows = v.as_array()?;
    let mut out = String::new();
    for r in rows {
        let id = r.get("id")?.as_str()?;
        let status = match r.get("pass")? {
            Value::Bool(true) => "PASS",
            Value::Bool(false) => "FAIL",
            _ => "INFO",
        };
        let topic = r.get("topic")?.as_str()?;
        let detail = r.get("detail")?.as_str()?;
        out.push_str(&format!("  {id} {status} {topic}: {detail}\n"));
    }
    Some(out)
}
