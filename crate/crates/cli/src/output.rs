use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use superzeta_core::Error;

use crate::context::CliError;
use crate::manifest::RunManifest;
use crate::Format;

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub operation: String,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub value_re: f64,
    pub value_im: f64,
    pub abs_error: f64,
    pub method: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, serde_json::Value>,
}

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| {
            CliError::Setup(Error::Io {
                path: p.to_path_buf(),
                message: e.to_string(),
            })
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// JSON wraps a single point as `result` and a grid as `results`. CSV has one
/// re/im column pair per input argument.
pub fn render_records(
    manifest: &RunManifest,
    records: &[Record],
    grid: bool,
    format: Format,
) -> String {
    match format {
        Format::Json => {
            let body = if grid {
                serde_json::json!({ "manifest": manifest, "results": records })
            } else {
                serde_json::json!({ "manifest": manifest, "result": records.first() })
            };
            let mut s = serde_json::to_string_pretty(&body).unwrap_or_default();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "# manifest: {}",
                serde_json::to_string(manifest).unwrap_or_default()
            );
            let vars: Vec<&String> = records
                .first()
                .map(|r| r.inputs.keys().collect())
                .unwrap_or_default();
            let mut header: Vec<String> = vars
                .iter()
                .flat_map(|v| [format!("{v}_re"), format!("{v}_im")])
                .collect();
            header.extend(["value_re", "value_im", "abs_error", "method"].map(String::from));
            let _ = writeln!(s, "{}", header.join(","));
            for r in records {
                let mut row: Vec<String> = Vec::with_capacity(header.len());
                for v in &vars {
                    let pair = r.inputs.get(*v).and_then(|x| x.as_array());
                    for k in 0..2 {
                        let x = pair
                            .and_then(|a| a.get(k))
                            .and_then(|x| x.as_f64())
                            .unwrap_or(f64::NAN);
                        row.push(num(x));
                    }
                }
                row.extend([
                    num(r.value_re),
                    num(r.value_im),
                    num(r.abs_error),
                    r.method.clone(),
                ]);
                let _ = writeln!(s, "{}", row.join(","));
            }
            s
        }
    }
}
