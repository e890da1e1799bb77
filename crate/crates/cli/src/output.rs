use serde_json::{json, Map, Value};

use crate::OutputFormat;

pub const CSV_HEADER: [&str; 9] = ["q", "n", "k", "m", "d", "invariants", "type", "value", "rule"];

/// One computed value with its parameters.
#[derive(Clone, Debug, Default)]
pub struct Row {
    pub q: u32,
    pub field: String,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub d: Option<usize>,
    pub invariants: Option<String>,
    pub ty: Option<String>,
    pub value: String,
    pub rule: String,
}

impl Row {
    fn csv_fields(&self) -> Vec<String> {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        vec![
            self.q.to_string(),
            opt(self.n),
            opt(self.k),
            opt(self.m),
            opt(self.d),
            self.invariants.clone().unwrap_or_default(),
            self.ty.clone().unwrap_or_default(),
            self.value.clone(),
            self.rule.clone(),
        ]
    }

    fn json(&self) -> Map<String, Value> {
        let mut obj = Map::new();
        obj.insert("q".into(), json!(self.q));
        obj.insert("field".into(), json!(self.field));
        for (key, v) in [("n", self.n), ("k", self.k), ("m", self.m), ("d", self.d)] {
            if let Some(v) = v {
                obj.insert(key.into(), json!(v));
            }
        }
        obj.insert("invariants".into(), json!(self.invariants));
        obj.insert("type".into(), json!(self.ty));
        obj.insert("value".into(), json!(self.value));
        obj.insert("rule".into(), json!(self.rule));
        obj
    }

    fn label(&self, command: &str) -> String {
        let mut params: Vec<String> = [("n", self.n), ("k", self.k), ("m", self.m), ("d", self.d)]
            .iter()
            .filter_map(|(key, v)| v.map(|v| format!("{key}={v}")))
            .collect();
        let mut s = format!("{command}({}", params.join(", "));
        params.clear();
        if let Some(i) = &self.invariants {
            params.push(i.clone());
        } else if let Some(t) = &self.ty {
            params.push(t.clone());
        }
        if !params.is_empty() {
            if !s.ends_with('(') {
                s.push_str("; ");
            }
            s.push_str(&params.join(""));
        }
        s.push_str(&format!(") over {}", self.field));
        s
    }
}

pub fn csv_line<S: AsRef<str>>(fields: &[S]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(fields.iter().map(AsRef::as_ref)).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// A single value.
pub fn render_value(command: &str, row: &Row, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => format!("{} = {}  [{}]\n", row.label(command), row.value, row.rule),
        OutputFormat::Json => {
            let mut obj = Map::new();
            obj.insert("command".into(), json!(command));
            obj.extend(row.json());
            format!("{}\n", Value::Object(obj))
        }
        OutputFormat::Csv => csv_line(&CSV_HEADER) + &csv_line(&row.csv_fields()),
    }
}

/// Many values sharing a command.
pub fn render_table(command: &str, rows: &[Row], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let used: Vec<usize> = (0..CSV_HEADER.len())
                .filter(|&c| c == 0 || rows.iter().any(|r| !r.csv_fields()[c].is_empty()))
                .collect();
            let cells: Vec<Vec<String>> = std::iter::once(CSV_HEADER.iter().map(|s| s.to_string()).collect())
                .chain(rows.iter().map(Row::csv_fields))
                .map(|r: Vec<String>| used.iter().map(|&c| r[c].clone()).collect())
                .collect();
            let widths: Vec<usize> =
                (0..used.len()).map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
            let mut out = String::new();
            for r in cells {
                let line: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = rows.iter().map(|r| Value::Object(r.json())).collect();
            format!("{}\n", json!({ "command": command, "rows": rows }))
        }
        OutputFormat::Csv => {
            let mut out = csv_line(&CSV_HEADER);
            for r in rows {
                out.push_str(&csv_line(&r.csv_fields()));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> Row {
        Row {
            q: 2,
            field: "q=2".into(),
            m: Some(1),
            d: Some(2),
            invariants: Some("1,x^2".into()),
            value: "2".into(),
            rule: "centralizer-ratio".into(),
            ..Default::default()
        }
    }

    #[test]
    fn text_label() {
        assert_eq!(
            render_value("sigma", &row(), OutputFormat::Text),
            "sigma(m=1, d=2; 1,x^2) over q=2 = 2  [centralizer-ratio]\n"
        );
    }

    #[test]
    fn csv_quotes_commas() {
        let out = render_value("sigma", &row(), OutputFormat::Csv);
        assert_eq!(out, "q,n,k,m,d,invariants,type,value,rule\n2,,,1,2,\"1,x^2\",,2,centralizer-ratio\n");
    }

    #[test]
    fn json_fields() {
        let v: Value = serde_json::from_str(&render_value("sigma", &row(), OutputFormat::Json)).unwrap();
        assert_eq!(v["command"], "sigma");
        assert_eq!(v["invariants"], "1,x^2");
        assert_eq!(v["type"], Value::Null);
        assert!(v.get("n").is_none());
    }
}
