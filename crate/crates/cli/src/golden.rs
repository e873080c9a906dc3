//! Compare an artifact directory with a reviewed golden set.

use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;

/// Relative and absolute tolerance for one numeric column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { rel: 1e-9, abs: 1e-12 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellDiff {
    pub row: usize,
    pub column: String,
    pub golden: String,
    pub actual: String,
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FileDiff {
    pub file: String,
    pub ok: bool,
    pub problem: Option<String>,
    /// Worst offending cells, largest excess first (at most 10).
    pub worst: Vec<CellDiff>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoldenReport {
    pub files: Vec<FileDiff>,
}

impl GoldenReport {
    pub fn ok(&self) -> bool {
        self.files.iter().all(|f| f.ok)
    }

    pub fn summary(&self) -> String {
        let bad: Vec<String> = self
            .files
            .iter()
            .filter(|f| !f.ok)
            .map(|f| match (&f.problem, f.worst.first()) {
                (Some(p), _) => format!("{}: {p}", f.file),
                (None, Some(c)) => format!(
                    "{} row {} col {}: golden {} actual {}",
                    f.file, c.row, c.column, c.golden, c.actual
                ),
                _ => f.file.clone(),
            })
            .collect();
        bad.join("; ")
    }
}

fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>), String> {
    let mut r = csv::Reader::from_path(path).map_err(|e| e.to_string())?;
    let header = r.headers().map_err(|e| e.to_string())?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        rows.push(rec.map_err(|e| e.to_string())?.iter().map(String::from).collect());
    }
    Ok((header, rows))
}

fn compare_csv(golden: &Path, actual: &Path, tol: &BTreeMap<String, Tolerance>) -> FileDiff {
    let file = golden.file_name().unwrap().to_string_lossy().to_string();
    let fail = |p: String| FileDiff {
        file: file.clone(),
        ok: false,
        problem: Some(p),
        worst: vec![],
    };
    let (gh, gr) = match read_csv(golden) {
        Ok(x) => x,
        Err(e) => return fail(format!("golden unreadable: {e}")),
    };
    let (ah, ar) = match read_csv(actual) {
        Ok(x) => x,
        Err(e) => return fail(format!("artifact unreadable: {e}")),
    };
    if gh != ah {
        return fail("header differs".into());
    }
    if gr.len() != ar.len() {
        return fail(format!("row count {} vs {}", gr.len(), ar.len()));
    }
    let mut diffs = Vec::new();
    for (i, (g, a)) in gr.iter().zip(&ar).enumerate() {
        for (j, (gv, av)) in g.iter().zip(a).enumerate() {
            let t = tol.get(&gh[j]).copied().unwrap_or_default();
            let excess = match (gv.parse::<f64>(), av.parse::<f64>()) {
                (Ok(x), Ok(y)) if x.is_nan() && y.is_nan() => 0.0,
                (Ok(x), Ok(y)) if x == y => 0.0,
                (Ok(x), Ok(y)) => {
                    let allowed = t.abs + t.rel * x.abs().max(y.abs());
                    let d = (x - y).abs();
                    if d.is_nan() {
                        f64::INFINITY
                    } else if d > allowed {
                        d / allowed
                    } else {
                        0.0
                    }
                }
                _ if gv == av => 0.0,
                _ => f64::INFINITY,
            };
            if excess > 0.0 {
                diffs.push(CellDiff {
                    row: i + 1,
                    column: gh[j].clone(),
                    golden: gv.clone(),
                    actual: av.clone(),
                    excess,
                });
            }
        }
    }
    diffs.sort_by(|a, b| b.excess.total_cmp(&a.excess));
    diffs.truncate(10);
    FileDiff {
        file,
        ok: diffs.is_empty(),
        problem: None,
        worst: diffs,
    }
}

/// Manifests must match exactly once wall-clock fields are removed.
fn compare_manifest(golden: &Path, actual: &Path) -> FileDiff {
    let file = golden.file_name().unwrap().to_string_lossy().to_string();
    let load = |p: &Path| -> Result<serde_json::Value, String> {
        let s = std::fs::read_to_string(p).map_err(|e| e.to_string())?;
        let mut v: serde_json::Value = serde_json::from_str(&s).map_err(|e| e.to_string())?;
        if let Some(o) = v.as_object_mut() {
            o.remove("timings_ms");
        }
        Ok(v)
    };
    let result = match (load(golden), load(actual)) {
        (Ok(g), Ok(a)) if g == a => None,
        (Ok(_), Ok(_)) => Some("manifest differs".to_string()),
        (Err(e), _) | (_, Err(e)) => Some(e),
    };
    FileDiff {
        file,
        ok: result.is_none(),
        problem: result,
        worst: vec![],
    }
}

/// Every CSV and manifest in `golden_dir` must have a matching counterpart.
pub fn golden_check(artifact_dir: &Path, golden_dir: &Path, tol: &BTreeMap<String, Tolerance>) -> std::io::Result<GoldenReport> {
    let mut names: Vec<_> = std::fs::read_dir(golden_dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    names.sort();
    let mut files = Vec::new();
    for g in names {
        let name = g.file_name().unwrap();
        let a = artifact_dir.join(name);
        let ext = g.extension().and_then(|e| e.to_str()).unwrap_or("");
        if !a.exists() {
            files.push(FileDiff {
                file: name.to_string_lossy().into(),
                ok: false,
                problem: Some("missing from artifacts".into()),
                worst: vec![],
            });
            continue;
        }
        match ext {
            "csv" => files.push(compare_csv(&g, &a, tol)),
            "json" => files.push(compare_manifest(&g, &a)),
            _ => {}
        }
    }
    Ok(GoldenReport { files })
}
