//! Report serialization. JSON reports wrap the result in a versioned
//! envelope carrying the effective configuration, library version, and
//! connectivity warnings; CSV reports are flat tables for plotting. Both
//! are written through a single writer and contain nothing run-dependent
//! (no timestamps, no hostnames), so identical analyses serialize to
//! identical bytes.

use crate::config::RunConfig;
use anyhow::{Context, Result};
use netparity::compare::{ClusterSweepComparison, SweepComparison, SweepPoint};
use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    tool: &'static str,
    tool_version: &'static str,
    library_version: &'static str,
    config: RunConfig,
    warnings: &'a [String],
    result: &'a T,
}

pub fn render_json<T: Serialize>(
    config: &RunConfig,
    warnings: &[String],
    result: &T,
) -> Result<String> {
    let envelope = Envelope {
        schema_version: REPORT_SCHEMA_VERSION,
        tool: "netparity",
        tool_version: env!("CARGO_PKG_VERSION"),
        library_version: netparity::VERSION,
        config: config.echo(),
        warnings,
        result,
    };
    let mut text = serde_json::to_string_pretty(&envelope)?;
    text.push('\n');
    Ok(text)
}

/// Opens the report destination: a file, or stdout when no path is given.
pub fn output_writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) => {
            let file = File::create(p)
                .with_context(|| format!("creating output file {}", p.display()))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    let mut w = output_writer(path)?;
    let describe = || match path {
        Some(p) => format!("writing {}", p.display()),
        None => "writing to stdout".to_string(),
    };
    w.write_all(text.as_bytes()).with_context(describe)?;
    w.flush().with_context(describe)?;
    Ok(())
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(header)?;
    for row in rows {
        out.write_record(&row)?;
    }
    let bytes = out.into_inner().context("assembling csv report")?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn sweep_csv(points: &[SweepPoint]) -> Result<String> {
    csv_table(
        &[
            "mean_degree",
            "edge_count",
            "realized_mean_degree",
            "average_parity",
            "min_parity",
            "max_parity",
            "connected",
        ],
        points
            .iter()
            .map(|p| {
                vec![
                    p.mean_degree.to_string(),
                    p.edge_count.to_string(),
                    p.realized_mean_degree.to_string(),
                    p.average_parity.to_string(),
                    p.min_parity.to_string(),
                    p.max_parity.to_string(),
                    p.connected.to_string(),
                ]
            })
            .collect(),
    )
}

pub fn compare_csv(comparisons: &[SweepComparison]) -> Result<String> {
    let mut rows = Vec::new();
    for c in comparisons {
        for r in &c.records {
            rows.push(vec![
                c.subject_id.clone(),
                r.mean_degree.to_string(),
                r.edge_count.to_string(),
                r.avg_parity_a.to_string(),
                r.avg_parity_b.to_string(),
                r.divergence.to_string(),
                r.connected_a.to_string(),
                r.connected_b.to_string(),
            ]);
        }
    }
    csv_table(
        &[
            "subject",
            "mean_degree",
            "edge_count",
            "avg_parity_a",
            "avg_parity_b",
            "divergence",
            "connected_a",
            "connected_b",
        ],
        rows,
    )
}

pub fn cluster_csv(tables: &[ClusterSweepComparison]) -> Result<String> {
    let mut rows = Vec::new();
    for t in tables {
        for r in &t.records {
            rows.push(vec![
                t.subject_id.clone(),
                format!("{}:{}", r.cluster_a, r.cluster_b),
                r.mean_degree.to_string(),
                r.value_a.to_string(),
                r.value_b.to_string(),
                r.divergence.to_string(),
            ]);
        }
    }
    csv_table(
        &[
            "subject",
            "cluster_pair",
            "mean_degree",
            "value_a",
            "value_b",
            "divergence",
        ],
        rows,
    )
}
