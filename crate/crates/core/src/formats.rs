//! JSON file formats for channels, graphs and 0-1 AVCs.
//!
//! Channel entries are exact rationals written as `"p/q"` or `"p"` strings.
//!
//! ```json
//! {"input_size": 2, "output_size": 2, "rows": [["3/4", "1/4"], ["1/4", "3/4"]]}
//! {"vertex_count": 3, "edges": [[0, 1], [1, 2]]}
//! {"input_size": 2, "output_size": 2, "states": [[0, 1], [1, 0]]}
//! ```
//!
//! Writers emit pretty-printed JSON with a trailing newline, canonical
//! rationals (`"2/4"` is written back as `"1/2"`) and edges as sorted
//! `u < v` pairs; re-serializing a file already in that form reproduces it
//! byte for byte.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ahlswede::{AvcError, ZeroOneAvc};
use crate::channel::{validate_channel, Channel, ChannelError};
use crate::exact_num::{format_rational, parse_rational, ParseRationalError};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("entry ({row}, {col}): {source}")]
    Rational {
        row: usize,
        col: usize,
        source: ParseRationalError,
    },
    #[error("declared {field} = {declared} but found {found}")]
    Shape {
        field: &'static str,
        declared: usize,
        found: usize,
    },
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Avc(#[from] AvcError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelDoc {
    pub input_size: usize,
    pub output_size: usize,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertex_count: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AvcDoc {
    pub input_size: usize,
    pub output_size: usize,
    pub states: Vec<Vec<usize>>,
}

fn check_shape(field: &'static str, declared: usize, found: usize) -> Result<(), FormatError> {
    if declared == found {
        Ok(())
    } else {
        Err(FormatError::Shape { field, declared, found })
    }
}

fn to_pretty<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    text
}

pub fn parse_channel(text: &str) -> Result<Channel, FormatError> {
    let doc: ChannelDoc = serde_json::from_str(text)?;
    check_shape("input_size", doc.input_size, doc.rows.len())?;
    let mut rows = Vec::with_capacity(doc.rows.len());
    for (row, entries) in doc.rows.iter().enumerate() {
        check_shape("output_size", doc.output_size, entries.len())?;
        let parsed = entries
            .iter()
            .enumerate()
            .map(|(col, e)| parse_rational(e).map_err(|source| FormatError::Rational { row, col, source }))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(parsed);
    }
    Ok(validate_channel(rows)?)
}

pub fn channel_doc(channel: &Channel) -> ChannelDoc {
    ChannelDoc {
        input_size: channel.input_size(),
        output_size: channel.output_size(),
        rows: channel
            .rows()
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect(),
    }
}

pub fn write_channel(channel: &Channel) -> String {
    to_pretty(&channel_doc(channel))
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    let edges: Vec<(usize, usize)> = doc.edges.iter().map(|&[u, v]| (u, v)).collect();
    Ok(Graph::new(doc.vertex_count, &edges)?)
}

pub fn graph_doc(graph: &Graph) -> GraphDoc {
    GraphDoc {
        vertex_count: graph.vertex_count(),
        edges: graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
    }
}

pub fn write_graph(graph: &Graph) -> String {
    to_pretty(&graph_doc(graph))
}

pub fn parse_avc(text: &str) -> Result<ZeroOneAvc, FormatError> {
    let doc: AvcDoc = serde_json::from_str(text)?;
    Ok(ZeroOneAvc::new(doc.input_size, doc.output_size, doc.states)?)
}

pub fn avc_doc(avc: &ZeroOneAvc) -> AvcDoc {
    AvcDoc {
        input_size: avc.input_size(),
        output_size: avc.output_size(),
        states: avc.states().to_vec(),
    }
}

pub fn write_avc(avc: &ZeroOneAvc) -> String {
    to_pretty(&avc_doc(avc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_num::rational;

    #[test]
    fn channel_round_trip() {
        let text = r#"{"input_size": 2, "output_size": 2, "rows": [["3/4", "1/4"], ["2/8", "3/4"]]}"#;
        let channel = parse_channel(text).unwrap();
        assert_eq!(channel.entry(1, 0), &rational(1, 4));
        let written = write_channel(&channel);
        assert!(written.contains("\"1/4\""));
        assert_eq!(write_channel(&parse_channel(&written).unwrap()), written);
    }

    #[test]
    fn channel_errors() {
        let bad_shape = r#"{"input_size": 3, "output_size": 2, "rows": [["1", "0"], ["0", "1"]]}"#;
        assert!(matches!(
            parse_channel(bad_shape),
            Err(FormatError::Shape { field: "input_size", declared: 3, found: 2 })
        ));
        let bad_entry = r#"{"input_size": 2, "output_size": 2, "rows": [["1", "0"], ["0", "one"]]}"#;
        assert!(matches!(
            parse_channel(bad_entry),
            Err(FormatError::Rational { row: 1, col: 1, .. })
        ));
        let bad_sum = r#"{"input_size": 2, "output_size": 2, "rows": [["1/2", "1/2"], ["1/3", "1/3"]]}"#;
        assert!(matches!(
            parse_channel(bad_sum),
            Err(FormatError::Channel(ChannelError::NonStochasticRow { row: 1, .. }))
        ));
        assert!(matches!(parse_channel("{"), Err(FormatError::Json(_))));
        let extra = r#"{"input_size": 2, "output_size": 2, "rows": [], "x": 1}"#;
        assert!(matches!(parse_channel(extra), Err(FormatError::Json(_))));
    }

    #[test]
    fn graph_round_trip() {
        let text = r#"{"vertex_count": 5, "edges": [[1, 0], [1, 2], [2, 3], [3, 4], [4, 0]]}"#;
        let graph = parse_graph(text).unwrap();
        assert_eq!(graph, Graph::cycle(5));
        let written = write_graph(&graph);
        assert_eq!(write_graph(&parse_graph(&written).unwrap()), written);
        assert!(matches!(
            parse_graph(r#"{"vertex_count": 2, "edges": [[0, 0]]}"#),
            Err(FormatError::Graph(GraphError::SelfLoop(0)))
        ));
    }

    #[test]
    fn avc_round_trip() {
        let text = r#"{"input_size": 3, "output_size": 3, "states": [[0, 2, 1]]}"#;
        let avc = parse_avc(text).unwrap();
        assert_eq!(avc.output(0, 1), 2);
        let written = write_avc(&avc);
        assert_eq!(write_avc(&parse_avc(&written).unwrap()), written);
        assert!(matches!(
            parse_avc(r#"{"input_size": 2, "output_size": 2, "states": [[0, 5]]}"#),
            Err(FormatError::Avc(AvcError::OutputOutOfRange { .. }))
        ));
    }
}
