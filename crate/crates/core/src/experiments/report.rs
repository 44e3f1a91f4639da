use std::fs;
use std::path::Path;

use super::{EstimateRecord, ExperimentError};

pub const CSV_HEADER: [&str; 12] = [
    "model", "n", "statistic", "k", "M", "trials", "successes", "p_hat", "ci_lo", "ci_hi", "seed",
    "seconds",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Renders records in submission order.
pub fn render_records(records: &[EstimateRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(records).expect("records serialize");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("in-memory write");
            for r in records {
                w.write_record([
                    r.model.clone(),
                    r.n.to_string(),
                    r.statistic.clone(),
                    opt(r.k),
                    opt(r.m),
                    r.trials.to_string(),
                    r.successes.to_string(),
                    r.p_hat.to_string(),
                    r.ci_lo.to_string(),
                    r.ci_hi.to_string(),
                    r.seed.to_string(),
                    opt(r.seconds),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
    }
}

/// Writes the rendered records to `path`.
pub fn emit_report(records: &[EstimateRecord], format: ReportFormat, path: &Path) -> Result<(), ExperimentError> {
    fs::write(path, render_records(records, format)).map_err(|source| ExperimentError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(model: &str, successes: u64) -> EstimateRecord {
        EstimateRecord {
            model: model.into(),
            n: 3,
            statistic: "reducible".into(),
            k: None,
            m: Some(2.0),
            trials: 10,
            successes,
            p_hat: successes as f64 / 10.0,
            ci_lo: 0.0,
            ci_hi: 1.0,
            seed: 5,
            seconds: None,
        }
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(
            render_records(&[], ReportFormat::Csv),
            "model,n,statistic,k,M,trials,successes,p_hat,ci_lo,ci_hi,seed,seconds\n"
        );
    }

    #[test]
    fn rows_in_order() {
        let out = render_records(&[record("a", 1), record("b", 2)], ReportFormat::Csv);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "a,3,reducible,,2,10,1,0.1,0,1,5,");
        assert!(lines[2].starts_with("b,"));
    }

    #[test]
    fn io_errors_name_the_path() {
        let err = emit_report(&[], ReportFormat::Csv, Path::new("/nonexistent-dir/x.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    }

    #[test]
    fn json_mirrors_fields() {
        let out = render_records(&[record("a", 1)], ReportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["M"], 2.0);
        assert_eq!(v[0]["seconds"], serde_json::Value::Null);
        assert_eq!(v[0]["model"], "a");
    }
}
