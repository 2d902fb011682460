//! Readers and writers for the on-disk formats.
//!
//! Text formats:
//! - Edge list: `# nodes=N` on the first line (optional on input, always
//!   written), `#` comment lines, one `i<TAB>j` edge per line. Without a
//!   node-count line, N is inferred as the largest index plus one.
//! - Label file: one label per line, line number = node index.
//! - Correlation CSV: optional label header, then an N x N block of reals.
//!   Lines starting with `#` are comments (generator metadata lives there).
//! - Time-series CSV: label header required, one column per node, one row
//!   per time point.
//! - Partition CSV: `label,cluster_name` rows.
//! - Parity CSV: label header, full symmetric matrix, `null` on the
//!   diagonal (the pair (i, i) has no defined parity, and writing 0 would
//!   corrupt aggregates). A JSON sidecar carries the log base, the source
//!   graph's mean degree, and its connectivity flag.
//! - Parity edge list (TSV export): `node_a<TAB>node_b<TAB>parity` for
//!   pairs at or above a cutoff, sorted by value descending then labels.
//!
//! All floats are written with Rust's shortest round-trip formatting, so
//! read-back reproduces the exact bit pattern.

use crate::builder::CorrelationMatrix;
use crate::graph::Graph;
use crate::parity::{LogBase, ParityMatrix};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

fn format_f64(v: f64) -> String {
    format!("{v}")
}

fn parse_f64(field: &str, line: usize) -> Result<f64> {
    field.trim().parse::<f64>().map_err(|_| Error::Format {
        line,
        message: format!("expected a number, got {field:?}"),
    })
}

fn record_line(record: &csv::StringRecord) -> usize {
    record.position().map_or(0, |p| p.line() as usize)
}

// ---------------------------------------------------------------- graphs

pub fn write_edge_list_to(w: &mut dyn Write, graph: &Graph, comments: &[String]) -> Result<()> {
    writeln!(w, "# nodes={}", graph.node_count())?;
    for comment in comments {
        writeln!(w, "# {comment}")?;
    }
    for (i, j) in graph.edges() {
        writeln!(w, "{i}\t{j}")?;
    }
    Ok(())
}

pub fn write_edge_list(path: impl AsRef<Path>, graph: &Graph, comments: &[String]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_edge_list_to(&mut w, graph, comments)?;
    w.flush()?;
    Ok(())
}

pub fn read_edge_list_from(r: impl BufRead) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut max_index = 0usize;
    for (number, line) in r.lines().enumerate() {
        let line = line?;
        let line_no = number + 1;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            let comment = comment.trim();
            if declared.is_none() {
                if let Some(value) = comment.strip_prefix("nodes=") {
                    declared = Some(value.trim().parse().map_err(|_| Error::Format {
                        line: line_no,
                        message: format!("bad node count {value:?}"),
                    })?);
                }
            }
            continue;
        }
        let mut fields = text.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Format {
                line: line_no,
                message: format!("expected two node indices, got {text:?}"),
            });
        };
        let parse = |s: &str| -> Result<usize> {
            s.parse().map_err(|_| Error::Format {
                line: line_no,
                message: format!("bad node index {s:?}"),
            })
        };
        let (i, j) = (parse(a)?, parse(b)?);
        max_index = max_index.max(i).max(j);
        pairs.push((i, j));
    }
    let n = declared.unwrap_or(if pairs.is_empty() { 0 } else { max_index + 1 });
    Graph::from_edge_list(&pairs, n)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    read_edge_list_from(BufReader::new(File::open(path)?))
}

// ---------------------------------------------------------------- labels

pub fn write_labels_to(w: &mut dyn Write, labels: &[String]) -> Result<()> {
    for label in labels {
        writeln!(w, "{label}")?;
    }
    Ok(())
}

pub fn write_labels(path: impl AsRef<Path>, labels: &[String]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_labels_to(&mut w, labels)?;
    w.flush()?;
    Ok(())
}

pub fn read_labels_from(r: impl BufRead) -> Result<Vec<String>> {
    let mut labels = Vec::new();
    for line in r.lines() {
        labels.push(line?);
    }
    Ok(labels)
}

pub fn read_labels(path: impl AsRef<Path>) -> Result<Vec<String>> {
    read_labels_from(BufReader::new(File::open(path)?))
}

// ---------------------------------------------- correlation matrix (CSV)

pub fn write_correlation_csv_to(
    w: &mut dyn Write,
    cm: &CorrelationMatrix,
    comments: &[String],
) -> Result<()> {
    for comment in comments {
        writeln!(w, "# {comment}")?;
    }
    let mut out = csv::Writer::from_writer(w);
    if let Some(labels) = cm.labels() {
        out.write_record(labels)?;
    }
    let n = cm.node_count();
    for i in 0..n {
        out.write_record((0..n).map(|j| format_f64(cm.value(i, j))))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_correlation_csv(
    path: impl AsRef<Path>,
    cm: &CorrelationMatrix,
    comments: &[String],
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_correlation_csv_to(&mut w, cm, comments)?;
    w.flush()?;
    Ok(())
}

/// Reads a correlation CSV, detecting an optional label header: if every
/// field of the first row parses as a number, the file has no header.
pub fn read_correlation_csv_from(r: impl Read) -> Result<CorrelationMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(r);
    let mut records = Vec::new();
    for record in reader.records() {
        records.push(record.map_err(|e| Error::Format {
            line: 0,
            message: e.to_string(),
        })?);
    }
    if records.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let has_header = records[0]
        .iter()
        .any(|field| field.trim().parse::<f64>().is_err());
    let labels: Option<Vec<String>> = has_header
        .then(|| records[0].iter().map(str::to_string).collect());
    let data = &records[usize::from(has_header)..];
    let mut rows = Vec::with_capacity(data.len());
    for record in data {
        let line = record_line(record);
        let row: Result<Vec<f64>> = record.iter().map(|f| parse_f64(f, line)).collect();
        rows.push(row?);
    }
    let cm = CorrelationMatrix::new(rows)?;
    match labels {
        Some(l) => cm.with_labels(l),
        None => Ok(cm),
    }
}

pub fn read_correlation_csv(path: impl AsRef<Path>) -> Result<CorrelationMatrix> {
    read_correlation_csv_from(BufReader::new(File::open(path)?))
}

// ---------------------------------------------------- time series (CSV)

pub fn write_time_series_csv_to(
    w: &mut dyn Write,
    series: &[Vec<f64>],
    labels: &[String],
) -> Result<()> {
    if labels.len() != series.len() {
        return Err(Error::LabelCount {
            expected: series.len(),
            actual: labels.len(),
        });
    }
    let samples = series.first().map_or(0, Vec::len);
    let mut out = csv::Writer::from_writer(w);
    out.write_record(labels)?;
    for t in 0..samples {
        out.write_record(series.iter().map(|s| format_f64(s[t])))?;
    }
    out.flush()?;
    Ok(())
}

/// Reads node time series: header labels, one column per node. Returns one
/// sequence per node plus the labels.
pub fn read_time_series_csv_from(r: impl Read) -> Result<(Vec<Vec<f64>>, Vec<String>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(r);
    let mut records = reader.records();
    let Some(header) = records.next() else {
        return Err(Error::Format {
            line: 1,
            message: "time-series file needs a label header".to_string(),
        });
    };
    let header = header.map_err(|e| Error::Format {
        line: 1,
        message: e.to_string(),
    })?;
    let labels: Vec<String> = header.iter().map(str::to_string).collect();
    let n = labels.len();
    let mut series = vec![Vec::new(); n];
    for record in records {
        let record = record.map_err(|e| Error::Format {
            line: 0,
            message: e.to_string(),
        })?;
        let line = record_line(&record);
        if record.len() != n {
            return Err(Error::Format {
                line,
                message: format!("expected {n} columns, got {}", record.len()),
            });
        }
        for (column, field) in record.iter().enumerate() {
            series[column].push(parse_f64(field, line)?);
        }
    }
    Ok((series, labels))
}

pub fn read_time_series_csv(path: impl AsRef<Path>) -> Result<(Vec<Vec<f64>>, Vec<String>)> {
    read_time_series_csv_from(BufReader::new(File::open(path)?))
}

// ------------------------------------------------------ partition (CSV)

pub fn write_partition_csv_to(w: &mut dyn Write, rows: &[(String, String)]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for (label, cluster) in rows {
        out.write_record([label, cluster])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_partition_csv(path: impl AsRef<Path>, rows: &[(String, String)]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_partition_csv_to(&mut w, rows)?;
    w.flush()?;
    Ok(())
}

/// Reads `label,cluster_name` rows.
pub fn read_partition_csv_from(r: impl Read) -> Result<Vec<(String, String)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(r);
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Format {
            line: 0,
            message: e.to_string(),
        })?;
        let line = record_line(&record);
        if record.len() != 2 {
            return Err(Error::Format {
                line,
                message: format!("expected label,cluster_name, got {} fields", record.len()),
            });
        }
        rows.push((record[0].to_string(), record[1].to_string()));
    }
    Ok(rows)
}

pub fn read_partition_csv(path: impl AsRef<Path>) -> Result<Vec<(String, String)>> {
    read_partition_csv_from(BufReader::new(File::open(path)?))
}

// ---------------------------------------------------- parity matrix (CSV)

pub const PARITY_SCHEMA_VERSION: u32 = 1;

/// Sidecar describing a serialized parity matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParityMatrixMetadata {
    pub schema_version: u32,
    pub log_base: LogBase,
    pub node_count: usize,
    /// Mean degree of the graph the matrix was computed from.
    pub mean_degree: f64,
    /// False when the source graph had unreachable pairs; profiles are
    /// then sub-normalized rather than renormalized.
    pub connected: bool,
}

/// The conventional sidecar location for a parity CSV.
pub fn parity_metadata_path(matrix_path: impl AsRef<Path>) -> PathBuf {
    let mut name = matrix_path
        .as_ref()
        .file_name()
        .map_or_else(Default::default, |f| f.to_os_string());
    name.push(".meta.json");
    matrix_path.as_ref().with_file_name(name)
}

pub fn write_parity_metadata(
    path: impl AsRef<Path>,
    metadata: &ParityMatrixMetadata,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, metadata).map_err(std::io::Error::other)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn read_parity_metadata(path: impl AsRef<Path>) -> Result<ParityMatrixMetadata> {
    let file = BufReader::new(File::open(path)?);
    serde_json::from_reader(file).map_err(|e| Error::Format {
        line: 0,
        message: e.to_string(),
    })
}

pub fn write_parity_csv_to(
    w: &mut dyn Write,
    pm: &ParityMatrix,
    labels: &[String],
) -> Result<()> {
    let n = pm.node_count();
    if labels.len() != n {
        return Err(Error::LabelCount {
            expected: n,
            actual: labels.len(),
        });
    }
    let mut out = csv::Writer::from_writer(w);
    out.write_record(labels)?;
    for i in 0..n {
        out.write_record((0..n).map(|j| {
            if i == j {
                "null".to_string()
            } else {
                format_f64(pm.value(i, j))
            }
        }))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_parity_csv(
    path: impl AsRef<Path>,
    pm: &ParityMatrix,
    labels: &[String],
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_parity_csv_to(&mut w, pm, labels)?;
    w.flush()?;
    Ok(())
}

/// Reads a parity CSV back into rows (diagonal as NaN) plus labels. The
/// log base lives in the metadata sidecar, so the caller assembles the
/// [`ParityMatrix`] from these parts.
pub fn read_parity_csv_from(r: impl Read) -> Result<(Vec<Vec<f64>>, Vec<String>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(r);
    let mut records = reader.records();
    let Some(header) = records.next() else {
        return Err(Error::Format {
            line: 1,
            message: "parity file needs a label header".to_string(),
        });
    };
    let header = header.map_err(|e| Error::Format {
        line: 1,
        message: e.to_string(),
    })?;
    let labels: Vec<String> = header.iter().map(str::to_string).collect();
    let n = labels.len();
    let mut rows = Vec::with_capacity(n);
    for record in records {
        let record = record.map_err(|e| Error::Format {
            line: 0,
            message: e.to_string(),
        })?;
        let line = record_line(&record);
        if record.len() != n {
            return Err(Error::Format {
                line,
                message: format!("expected {n} columns, got {}", record.len()),
            });
        }
        let i = rows.len();
        let mut row = Vec::with_capacity(n);
        for (j, field) in record.iter().enumerate() {
            if field.trim() == "null" {
                if i != j {
                    return Err(Error::Format {
                        line,
                        message: format!("null is only valid on the diagonal, found at column {j}"),
                    });
                }
                row.push(f64::NAN);
            } else {
                row.push(parse_f64(field, line)?);
            }
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Format {
            line: 0,
            message: format!("expected {n} data rows, got {}", rows.len()),
        });
    }
    Ok((rows, labels))
}

pub fn read_parity_csv(path: impl AsRef<Path>) -> Result<(Vec<Vec<f64>>, Vec<String>)> {
    read_parity_csv_from(BufReader::new(File::open(path)?))
}

// ------------------------------------------------ parity edge list (TSV)

/// Writes pairs with parity >= cutoff as `node_a<TAB>node_b<TAB>parity`,
/// sorted by parity descending, ties by labels ascending. Returns the
/// number of pairs written.
pub fn write_parity_edge_list_to(
    w: &mut dyn Write,
    pm: &ParityMatrix,
    labels: &[String],
    cutoff: f64,
) -> Result<usize> {
    let n = pm.node_count();
    if labels.len() != n {
        return Err(Error::LabelCount {
            expected: n,
            actual: labels.len(),
        });
    }
    let mut selected: Vec<(&str, &str, f64)> = pm
        .pairs()
        .filter(|&(_, _, v)| v >= cutoff)
        .map(|(i, j, v)| (labels[i].as_str(), labels[j].as_str(), v))
        .collect();
    selected.sort_by(|a, b| b.2.total_cmp(&a.2).then_with(|| (a.0, a.1).cmp(&(b.0, b.1))));
    let mut out = csv::WriterBuilder::new().delimiter(b'\t').from_writer(w);
    out.write_record(["node_a", "node_b", "parity"])?;
    for &(a, b, v) in &selected {
        out.write_record([a, b, &format_f64(v)])?;
    }
    out.flush()?;
    Ok(selected.len())
}

pub fn write_parity_edge_list(
    path: impl AsRef<Path>,
    pm: &ParityMatrix,
    labels: &[String],
    cutoff: f64,
) -> Result<usize> {
    let mut w = BufWriter::new(File::create(path)?);
    let written = write_parity_edge_list_to(&mut w, pm, labels, cutoff)?;
    w.flush()?;
    Ok(written)
}

/// Reads an exported parity edge list back as (node_a, node_b, parity)
/// rows, in file order.
pub fn read_parity_edge_list_from(r: impl Read) -> Result<Vec<(String, String, f64)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .delimiter(b'\t')
        .flexible(true)
        .from_reader(r);
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Format {
            line: 0,
            message: e.to_string(),
        })?;
        let line = record_line(&record);
        if record.len() != 3 {
            return Err(Error::Format {
                line,
                message: format!("expected node_a, node_b, parity, got {} fields", record.len()),
            });
        }
        rows.push((
            record[0].to_string(),
            record[1].to_string(),
            parse_f64(&record[2], line)?,
        ));
    }
    Ok(rows)
}

pub fn read_parity_edge_list(path: impl AsRef<Path>) -> Result<Vec<(String, String, f64)>> {
    read_parity_edge_list_from(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::{parity_matrix, LogBase};
    use crate::synth::{complete, star, Seed};

    fn roundtrip_graph(graph: &Graph) -> Graph {
        let mut buffer = Vec::new();
        write_edge_list_to(&mut buffer, graph, &[]).unwrap();
        read_edge_list_from(buffer.as_slice()).unwrap()
    }

    #[test]
    fn edge_list_round_trip() {
        let g = crate::synth::erdos_renyi(20, 0.2, Seed(3)).unwrap();
        assert_eq!(roundtrip_graph(&g), g);
        // Isolated trailing nodes survive via the node-count line.
        let g = Graph::from_edge_list(&[(0, 1)], 5).unwrap();
        assert_eq!(roundtrip_graph(&g).node_count(), 5);
    }

    #[test]
    fn edge_list_infers_node_count_without_declaration() {
        let text = "0\t1\n2 3\n\n# a comment\n1\t3\n";
        let g = read_edge_list_from(text.as_bytes()).unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn edge_list_rejects_garbage() {
        let err = read_edge_list_from("0\t1\nx\ty\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Format { line: 2, .. }));
        let err = read_edge_list_from("0\t1\t2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Format { line: 1, .. }));
    }

    #[test]
    fn edge_list_comments_are_written_and_ignored() {
        let g = complete(3).unwrap();
        let mut buffer = Vec::new();
        write_edge_list_to(&mut buffer, &g, &["generator=complete n=3".to_string()]).unwrap();
        let text = String::from_utf8(buffer.clone()).unwrap();
        assert!(text.starts_with("# nodes=3\n# generator=complete n=3\n"));
        assert_eq!(read_edge_list_from(buffer.as_slice()).unwrap(), g);
    }

    #[test]
    fn labels_round_trip() {
        let labels = vec![
            "Cingulate Gyrus, anterior division L".to_string(),
            "plain".to_string(),
        ];
        let mut buffer = Vec::new();
        write_labels_to(&mut buffer, &labels).unwrap();
        assert_eq!(read_labels_from(buffer.as_slice()).unwrap(), labels);
    }

    fn block_cm() -> CorrelationMatrix {
        crate::synth::block_correlation(6, &[3, 3], 0.7, 0.2, 0.1, Seed(11))
            .unwrap()
            .with_labels(
                [
                    "Frontal Pole R",
                    "Frontal Pole L",
                    "Cingulate Gyrus, anterior division R",
                    "Cingulate Gyrus, anterior division L",
                    "Precuneous Cortex",
                    "Lingual Gyrus",
                ]
                .map(String::from)
                .to_vec(),
            )
            .unwrap()
    }

    #[test]
    fn correlation_csv_round_trip_with_labeled_header() {
        let cm = block_cm();
        let mut buffer = Vec::new();
        write_correlation_csv_to(&mut buffer, &cm, &["seed=11 rng=chacha12".to_string()])
            .unwrap();
        let back = read_correlation_csv_from(buffer.as_slice()).unwrap();
        assert_eq!(back, cm);
        // Comma-bearing labels survive CSV quoting.
        assert_eq!(
            back.labels().unwrap()[2],
            "Cingulate Gyrus, anterior division R"
        );
    }

    #[test]
    fn correlation_csv_without_header() {
        let text = "1,0.5\n0.5,1\n";
        let cm = read_correlation_csv_from(text.as_bytes()).unwrap();
        assert_eq!(cm.node_count(), 2);
        assert_eq!(cm.value(0, 1), 0.5);
        assert!(cm.labels().is_none());
    }

    #[test]
    fn correlation_csv_reports_bad_numbers_with_line() {
        let text = "1,0.5\n0.5,oops\n";
        let err = read_correlation_csv_from(text.as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Format { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn correlation_csv_propagates_validation() {
        let text = "1,0.9\n0.2,1\n";
        assert!(matches!(
            read_correlation_csv_from(text.as_bytes()),
            Err(Error::AsymmetricCorrelation { .. })
        ));
    }

    #[test]
    fn time_series_round_trip_feeds_pearson() {
        let series = vec![vec![1.0, 2.0, 3.0, 4.0], vec![2.0, 4.0, 6.0, 8.0]];
        let labels = vec!["a".to_string(), "b".to_string()];
        let mut buffer = Vec::new();
        write_time_series_csv_to(&mut buffer, &series, &labels).unwrap();
        let (back, back_labels) = read_time_series_csv_from(buffer.as_slice()).unwrap();
        assert_eq!(back, series);
        assert_eq!(back_labels, labels);
        let cm = crate::builder::pearson_correlation(&back).unwrap();
        assert_eq!(cm.value(0, 1), 1.0);
    }

    #[test]
    fn time_series_rejects_ragged_rows() {
        let text = "a,b\n1,2\n3\n";
        assert!(matches!(
            read_time_series_csv_from(text.as_bytes()),
            Err(Error::Format { line: 3, .. })
        ));
    }

    #[test]
    fn partition_round_trip_with_commas() {
        let rows = vec![
            (
                "Cingulate Gyrus, anterior division R".to_string(),
                "limbic".to_string(),
            ),
            ("Frontal Pole R".to_string(), "frontal".to_string()),
        ];
        let mut buffer = Vec::new();
        write_partition_csv_to(&mut buffer, &rows).unwrap();
        assert_eq!(read_partition_csv_from(buffer.as_slice()).unwrap(), rows);
    }

    #[test]
    fn parity_csv_round_trip_is_bit_exact() {
        let pm = parity_matrix(&star(5).unwrap(), LogBase::Bits).unwrap();
        let labels: Vec<String> = (0..5).map(|i| format!("node {i}")).collect();
        let mut buffer = Vec::new();
        write_parity_csv_to(&mut buffer, &pm, &labels).unwrap();
        let (rows, back_labels) = read_parity_csv_from(buffer.as_slice()).unwrap();
        assert_eq!(back_labels, labels);
        let back = ParityMatrix::from_rows(rows, LogBase::Bits).unwrap();
        for (i, j, v) in pm.pairs() {
            assert_eq!(back.value(i, j).to_bits(), v.to_bits());
        }
        for i in 0..5 {
            assert!(back.value(i, i).is_nan());
        }
    }

    #[test]
    fn parity_csv_rejects_off_diagonal_null() {
        let text = "a,b,c\nnull,1,null\n1,null,1\n0.5,1,null\n";
        assert!(matches!(
            read_parity_csv_from(text.as_bytes()),
            Err(Error::Format { line: 2, .. })
        ));
    }

    #[test]
    fn parity_csv_label_count_must_match() {
        let pm = parity_matrix(&star(5).unwrap(), LogBase::Bits).unwrap();
        let mut buffer = Vec::new();
        let err = write_parity_csv_to(&mut buffer, &pm, &["x".to_string()]).unwrap_err();
        assert!(matches!(
            err,
            Error::LabelCount {
                expected: 5,
                actual: 1
            }
        ));
    }

    #[test]
    fn parity_metadata_round_trip() {
        let dir = std::env::temp_dir().join(format!("parity-meta-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("pm.csv");
        let meta = ParityMatrixMetadata {
            schema_version: PARITY_SCHEMA_VERSION,
            log_base: LogBase::Bits,
            node_count: 5,
            mean_degree: 1.6,
            connected: true,
        };
        let sidecar = parity_metadata_path(&path);
        assert_eq!(sidecar.file_name().unwrap(), "pm.csv.meta.json");
        write_parity_metadata(&sidecar, &meta).unwrap();
        assert_eq!(read_parity_metadata(&sidecar).unwrap(), meta);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn export_sorts_and_filters() {
        let pm = parity_matrix(&star(5).unwrap(), LogBase::Bits).unwrap();
        let labels: Vec<String> = ["hub", "a", "b", "c", "d"].map(String::from).to_vec();
        let mut buffer = Vec::new();
        // Leaf-leaf parity is ~0.968, hub-leaf is 0.
        let written = write_parity_edge_list_to(&mut buffer, &pm, &labels, 0.25).unwrap();
        assert_eq!(written, 6);
        let rows = read_parity_edge_list_from(buffer.as_slice()).unwrap();
        assert_eq!(rows.len(), 6);
        // All values equal: rows sorted by label pair.
        assert_eq!(rows[0].0, "a");
        assert_eq!(rows[0].1, "b");
        assert_eq!(rows[5].0, "c");
        assert_eq!(rows[5].1, "d");
        assert!(rows.iter().all(|r| r.2 >= 0.25));
    }

    #[test]
    fn export_with_high_cutoff_is_header_only() {
        let pm = parity_matrix(&complete(4).unwrap(), LogBase::Bits).unwrap();
        let labels: Vec<String> = (0..4).map(|i| i.to_string()).collect();
        let mut buffer = Vec::new();
        let written = write_parity_edge_list_to(&mut buffer, &pm, &labels, 0.25).unwrap();
        assert_eq!(written, 0);
        assert_eq!(String::from_utf8(buffer).unwrap(), "node_a\tnode_b\tparity\n");
    }

    #[test]
    fn export_with_very_negative_cutoff_keeps_all_pairs() {
        let pm = parity_matrix(&star(5).unwrap(), LogBase::Bits).unwrap();
        let labels: Vec<String> = (0..5).map(|i| i.to_string()).collect();
        let mut buffer = Vec::new();
        let written =
            write_parity_edge_list_to(&mut buffer, &pm, &labels, f64::NEG_INFINITY).unwrap();
        assert_eq!(written, 10);
    }

    #[test]
    fn export_round_trip_reproduces_matrix_entries() {
        let g = crate::synth::erdos_renyi(12, 0.3, Seed(5)).unwrap();
        let pm = parity_matrix(&g, LogBase::Bits).unwrap();
        let labels: Vec<String> = (0..12).map(|i| format!("r{i}")).collect();
        let cutoff = 0.25;
        let mut buffer = Vec::new();
        write_parity_edge_list_to(&mut buffer, &pm, &labels, cutoff).unwrap();
        let rows = read_parity_edge_list_from(buffer.as_slice()).unwrap();
        let expected: usize = pm.pairs().filter(|&(_, _, v)| v >= cutoff).count();
        assert_eq!(rows.len(), expected);
        for (a, b, v) in rows {
            let i = labels.iter().position(|l| *l == a).unwrap();
            let j = labels.iter().position(|l| *l == b).unwrap();
            assert_eq!(pm.value(i, j).to_bits(), v.to_bits());
        }
    }
}
