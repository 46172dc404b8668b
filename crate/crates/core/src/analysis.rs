//! Per-graph analysis records, as emitted one JSON line per input graph.

use serde::Serialize;

use crate::certificate::{bound_verdicts, certify, BoundVerdicts, CheckSummary};
use crate::d2c::{dominating_edges, is_d2c, PartitionSizes};
use crate::enumerate::ExecMode;
use crate::error::{Error, Result};
use crate::families::{memberships, Memberships};
use crate::graph::{Graph, VertexPair};
use crate::graph6::{parse_graph6, to_graph6};
use crate::par;

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub d2c: bool,
    pub bipartite: bool,
    pub dominating_edge: bool,
    pub dominating_edges: Vec<VertexPair>,
    /// The dominating edge the certificate was built on.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<VertexPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionSizes>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub implied_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundVerdicts>,
    pub families: Memberships,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<CheckSummary>,
    pub violations: usize,
}

/// Analyzes `g`. The certificate is built on `edge` if given, otherwise on
/// the lexicographically smallest dominating edge; only D2C graphs get one.
pub fn analyze(g: &Graph, edge: Option<VertexPair>) -> Result<AnalysisRecord> {
    let d2c = is_d2c(g);
    let dominating = dominating_edges(g);
    if let Some(e) = edge {
        if !dominating.contains(&e) {
            return Err(if g.has_edge(e.a, e.b) {
                Error::NotDominating(e)
            } else {
                Error::NotAnEdge(e)
            });
        }
    }
    let chosen = edge.or_else(|| dominating.first().copied()).filter(|_| d2c);
    let cert = chosen.map(|e| certify(g, e.a, e.b)).transpose()?;
    let record = cert.as_ref().map(|c| c.record(g));
    let bounds = d2c.then(|| bound_verdicts(g));
    let bound_failures = bounds.map_or(0, |b| {
        usize::from(!b.murty_simon_ok) + usize::from(b.dominating_bound_ok == Some(false))
    });
    Ok(AnalysisRecord {
        graph6: to_graph6(g),
        n: g.order(),
        m: g.size(),
        d2c,
        bipartite: g.is_bipartite(),
        dominating_edge: !dominating.is_empty(),
        dominating_edges: dominating,
        edge: cert.as_ref().map(|c| c.partition.edge()),
        partition: cert.as_ref().map(|c| c.partition.sizes()),
        free: record.as_ref().map(|r| r.free),
        implied_bound: record.as_ref().and_then(|r| r.implied_bound),
        bounds,
        families: memberships(g),
        checks: record.as_ref().map(|r| r.checks),
        violations: record.as_ref().map_or(0, |r| r.violations) + bound_failures,
    })
}

/// Result for one input line.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum LineOutcome {
    Record(Box<AnalysisRecord>),
    Error { line: usize, error: String },
}

impl LineOutcome {
    pub fn violations(&self) -> usize {
        match self {
            LineOutcome::Record(r) => r.violations,
            LineOutcome::Error { .. } => 0,
        }
    }

    pub fn is_error(&self) -> bool {
        matches!(self, LineOutcome::Error { .. })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Analyzes graph6 lines, in input order. Blank lines are skipped; line
/// numbers start at 1.
pub fn analyze_lines(lines: &[String], edge: Option<VertexPair>, mode: ExecMode) -> Vec<LineOutcome> {
    let numbered: Vec<(usize, &str)> = lines
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.as_str()))
        .collect();
    par::map(&numbered, mode, |&(line, text)| {
        match parse_graph6(text)
            .map_err(Error::from)
            .and_then(|g| analyze(&g, edge))
        {
            Ok(r) => LineOutcome::Record(Box::new(r)),
            Err(e) => LineOutcome::Error {
                line,
                error: e.to_string(),
            },
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, h5};
    use crate::graph::named::path;
    use crate::murty_simon_bound;

    #[test]
    fn complete_bipartite_record() {
        let r = analyze(&complete_bipartite(3, 3).unwrap(), None).unwrap();
        assert!(r.d2c && r.bipartite && r.dominating_edge);
        let b = r.bounds.unwrap();
        assert!(b.murty_simon_equality && b.murty_simon_ok);
        assert!(r.families.balanced_complete_bipartite);
        assert_eq!(r.free, Some(0));
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn h5_record() {
        let r = analyze(&h5(), None).unwrap();
        assert!(r.d2c && r.dominating_edge && !r.bipartite);
        assert_eq!(r.free, Some(0));
        assert_eq!(r.m, murty_simon_bound(6) - 1);
        assert!(r.families.h5 && r.families.tprime);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn path_record() {
        let r = analyze(&path(4), None).unwrap();
        assert!(!r.d2c);
        assert!(r.free.is_none() && r.bounds.is_none() && r.checks.is_none());
    }

    #[test]
    fn explicit_edge_must_dominate() {
        let g = h5();
        assert!(analyze(&g, Some(VertexPair::new(0, 5))).is_ok());
        assert!(matches!(analyze(&g, Some(VertexPair::new(0, 2))), Err(Error::NotDominating(_))));
        assert!(matches!(analyze(&g, Some(VertexPair::new(1, 2))), Err(Error::NotAnEdge(_))));
    }

    #[test]
    fn lines_keep_order_and_report_errors() {
        let lines: Vec<String> = ["DUW", "", "D?", "Bw"].iter().map(|s| s.to_string()).collect();
        let out = analyze_lines(&lines, None, ExecMode::Parallel);
        assert_eq!(out.len(), 3);
        assert!(matches!(&out[0], LineOutcome::Record(r) if r.graph6 == "DUW"));
        assert!(matches!(&out[1], LineOutcome::Error { line: 3, .. }));
        assert!(out[1].to_json().contains("\"line\":3"));
        assert!(matches!(&out[2], LineOutcome::Record(r) if r.n == 3));
    }
}
