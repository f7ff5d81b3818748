//! SNAP-style edge lists.
//!
//! One edge per line as two integer labels separated by whitespace (commas
//! are accepted too). Lines starting with `#` are comments. A single header
//! line of non-numeric column names, as shipped with the MUSAE datasets, is
//! skipped when it is the first non-comment line.

use std::collections::HashMap;
use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{Graph, NodeId};
use crate::error::{GgmError, Result};

/// Counts of the lines dropped while loading.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub duplicate_edges: usize,
    pub self_loops: usize,
    pub header_skipped: bool,
}

#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `labels[dense_id]` is the label used in the file.
    pub labels: Vec<u64>,
    pub report: LoadReport,
}

fn parse_error(line: usize, message: impl Into<String>) -> GgmError {
    GgmError::Parse {
        line,
        message: message.into(),
    }
}

/// Parse an edge list, remapping labels to dense ids in order of first
/// appearance.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut ids: HashMap<u64, NodeId> = HashMap::new();
    let mut labels = Vec::new();
    let mut seen_edges: HashSet<(NodeId, NodeId)> = HashSet::new();
    let mut edges = Vec::new();
    let mut report = LoadReport::default();
    let mut first_data_line = true;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.len() != 2 {
            return Err(parse_error(
                line_no,
                format!("expected two node labels, found {} fields", tokens.len()),
            ));
        }
        let parsed: Vec<Option<u64>> = tokens.iter().map(|t| t.parse().ok()).collect();
        if first_data_line && parsed.iter().all(Option::is_none) {
            report.header_skipped = true;
            first_data_line = false;
            continue;
        }
        first_data_line = false;
        let mut endpoints = [0 as NodeId; 2];
        for (slot, (token, value)) in endpoints.iter_mut().zip(tokens.iter().zip(&parsed)) {
            let label = value.ok_or_else(|| {
                parse_error(line_no, format!("'{token}' is not a non-negative integer label"))
            })?;
            *slot = *ids.entry(label).or_insert_with(|| {
                labels.push(label);
                (labels.len() - 1) as NodeId
            });
        }
        let [u, v] = endpoints;
        if u == v {
            report.self_loops += 1;
            continue;
        }
        let key = (u.min(v), u.max(v));
        if !seen_edges.insert(key) {
            report.duplicate_edges += 1;
            continue;
        }
        edges.push(key);
    }

    if labels.is_empty() {
        return Err(GgmError::EmptyInput("edge list contains no edges".into()));
    }
    let graph = Graph::from_edges(labels.len(), edges)?;
    Ok(LoadedGraph {
        graph,
        labels,
        report,
    })
}

/// Open and parse an edge-list file.
pub fn read_edge_list_file(path: &Path) -> Result<LoadedGraph> {
    let file = File::open(path)?;
    load_edge_list(BufReader::new(file))
}

/// Write a graph as an edge list with a `#` header comment.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "# nodes: {} edges: {}", g.node_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

/// Write the sidecar `original_label,dense_id` mapping.
pub fn write_label_map<W: Write>(labels: &[u64], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["original_label", "dense_id"])?;
    for (dense, label) in labels.iter().enumerate() {
        writer.write_record([label.to_string(), dense.to_string()])?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<LoadedGraph> {
        load_edge_list(text.as_bytes())
    }

    #[test]
    fn triangle() {
        let loaded = load("0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(loaded.graph.node_count(), 3);
        assert_eq!(loaded.graph.edge_count(), 3);
        assert_eq!(loaded.report, LoadReport::default());
    }

    #[test]
    fn duplicates_and_loops_are_counted() {
        let loaded = load("0 1\n1 0\n1 1\n").unwrap();
        assert_eq!(loaded.graph.node_count(), 2);
        assert_eq!(loaded.graph.edge_count(), 1);
        assert_eq!(loaded.report.duplicate_edges, 1);
        assert_eq!(loaded.report.self_loops, 1);
    }

    #[test]
    fn labels_are_remapped_in_first_appearance_order() {
        let loaded = load("# comment\n\n100 7\n7 42\n").unwrap();
        assert_eq!(loaded.labels, vec![100, 7, 42]);
        assert!(loaded.graph.has_edge(0, 1));
        assert!(loaded.graph.has_edge(1, 2));
        assert!(!loaded.graph.has_edge(0, 2));

        let mut buf = Vec::new();
        write_label_map(&loaded.labels, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "original_label,dense_id\n100,0\n7,1\n42,2\n"
        );
    }

    #[test]
    fn csv_with_header_is_accepted() {
        let loaded = load("from,to\n0,1\n1,2\n").unwrap();
        assert!(loaded.report.header_skipped);
        assert_eq!(loaded.graph.edge_count(), 2);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match load("0 1\n# c\n1 x\n") {
            Err(GgmError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match load("0 1 2\n") {
            Err(GgmError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        // a non-numeric line after data is not a header
        assert!(matches!(load("0 1\na b\n"), Err(GgmError::Parse { line: 2, .. })));
    }

    #[test]
    fn disconnected_is_rejected_with_component_count() {
        assert!(matches!(
            load("0 1\n2 3\n4 5\n"),
            Err(GgmError::Disconnected { components: 3 })
        ));
    }

    #[test]
    fn empty_input() {
        assert!(matches!(load("# nothing\n"), Err(GgmError::EmptyInput(_))));
    }

    #[test]
    fn write_then_load() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = load_edge_list(buf.as_slice()).unwrap();
        assert_eq!(back.graph, g);
    }
}
