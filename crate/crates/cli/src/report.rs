//! Text, JSON and CSV rendering of command results.

use std::fmt::Write as _;

use serde::Serialize;
use wiener_core::analysis::{Check, MinimizerReport, RatioReport, ThresholdReport};
use wiener_core::io::{write_graph, GraphFormat};
use wiener_core::{Graph, WienerValue};

use crate::args::Format;

/// Bumped whenever a CSV column is added, removed or reordered.
pub const CSV_SCHEMA_VERSION: &str = "1";

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub trait Report: Serialize {
    fn text(&self) -> String;
    fn table(&self) -> Table;
}

pub fn render<R: Report>(report: &R, format: Format) -> anyhow::Result<Vec<u8>> {
    Ok(match format {
        Format::Text => report.text().into_bytes(),
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            out
        }
        Format::Csv => {
            let table = report.table();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(std::iter::once("schema_version").chain(table.header))?;
            for row in table.rows {
                w.write_record(std::iter::once(CSV_SCHEMA_VERSION.to_string()).chain(row))?;
            }
            w.into_inner()?
        }
    })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), ToString::to_string)
}

#[derive(Serialize)]
pub struct WienerReport {
    pub source: String,
    pub order: usize,
    pub size: usize,
    pub wiener: WienerValue,
}

impl Report for WienerReport {
    fn text(&self) -> String {
        format!("{}\n", self.wiener)
    }

    fn table(&self) -> Table {
        Table {
            header: vec!["source", "order", "size", "wiener"],
            rows: vec![vec![
                self.source.clone(),
                self.order.to_string(),
                self.size.to_string(),
                self.wiener.to_string(),
            ]],
        }
    }
}

#[derive(Serialize)]
pub struct GraphReport {
    pub source: String,
    pub order: usize,
    pub size: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(skip)]
    pub graph: Graph,
    #[serde(skip)]
    pub encoding: GraphFormat,
}

impl GraphReport {
    pub fn new(source: String, graph: Graph, encoding: GraphFormat) -> GraphReport {
        GraphReport {
            source,
            order: graph.order(),
            size: graph.size(),
            edges: graph.edges().collect(),
            graph,
            encoding,
        }
    }
}

impl Report for GraphReport {
    fn text(&self) -> String {
        String::from_utf8(write_graph(&self.graph, self.encoding)).expect("ascii output")
    }

    fn table(&self) -> Table {
        Table {
            header: vec!["u", "v"],
            rows: self
                .edges
                .iter()
                .map(|(u, v)| vec![u.to_string(), v.to_string()])
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct RatioOutput {
    pub source: String,
    #[serde(flatten)]
    pub report: RatioReport,
}

impl Report for RatioOutput {
    fn text(&self) -> String {
        let r = &self.report;
        let mut s = String::new();
        let _ = writeln!(s, "graph: {}", self.source);
        let _ = writeln!(s, "order: {}", r.order);
        let _ = writeln!(s, "tree: {}", r.is_tree);
        let _ = writeln!(s, "W: {}", r.wiener);
        for (i, (w, rk)) in r.wiener_k.iter().zip(&r.r_k).enumerate() {
            match (w, rk) {
                (Some(w), Some(rk)) => {
                    let _ = writeln!(s, "W_{k}: {w}  R_{k}: {rk}", k = i + 1);
                }
                _ => {
                    let _ = writeln!(s, "W_{k}: undefined (empty line graph)", k = i + 1);
                }
            }
        }
        if let Some(d2) = &r.d2 {
            let _ = writeln!(s, "D2: {d2}");
        }
        if let Some(v) = &r.one_minus_r2 {
            let _ = writeln!(s, "1-R2: {v}");
        }
        if let Some(p) = &r.path_r2 {
            let _ = writeln!(s, "R2(P_n): {p}");
        }
        if let Some(b) = r.beats_path {
            let _ = writeln!(s, "beats_path: {b}");
        }
        s
    }

    fn table(&self) -> Table {
        let r = &self.report;
        let rows = r
            .wiener_k
            .iter()
            .zip(&r.r_k)
            .enumerate()
            .map(|(i, (w, rk))| {
                vec![
                    self.source.clone(),
                    r.order.to_string(),
                    r.is_tree.to_string(),
                    r.wiener.to_string(),
                    (i + 1).to_string(),
                    opt(w),
                    opt(rk),
                    opt(&r.d2),
                    opt(&r.path_r2),
                    opt(&r.beats_path),
                ]
            })
            .collect();
        Table {
            header: vec![
                "source",
                "order",
                "is_tree",
                "wiener",
                "k",
                "wiener_k",
                "r_k",
                "d2",
                "path_r2",
                "beats_path",
            ],
            rows,
        }
    }
}

#[derive(Serialize)]
pub struct EnumerationReport {
    pub order: usize,
    pub class_description: String,
    pub count: usize,
    pub graph6: Vec<String>,
}

impl Report for EnumerationReport {
    fn text(&self) -> String {
        self.graph6.iter().map(|g| format!("{g}\n")).collect()
    }

    fn table(&self) -> Table {
        Table {
            header: vec!["order", "index", "graph6"],
            rows: self
                .graph6
                .iter()
                .enumerate()
                .map(|(i, g)| vec![self.order.to_string(), i.to_string(), g.clone()])
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ScanOutput(pub ThresholdReport);

impl Report for ScanOutput {
    fn text(&self) -> String {
        let r = &self.0;
        let mut s = format!("family: {}\n", r.family);
        let _ = writeln!(
            s,
            "smallest passing a: {}",
            r.smallest_passing_a
                .map_or("none".to_string(), |a| a.to_string())
        );
        let _ = writeln!(
            s,
            "{:>5} {:>8} {:>6} {:>14} {:>10}  gap",
            "a", "n", "passes", "gap≈", "quotient≈"
        );
        for row in &r.rows {
            let _ = writeln!(
                s,
                "{:>5} {:>8} {:>6} {:>14.6e} {:>10.6}  {}",
                row.a,
                row.n,
                row.passes,
                row.gap.to_f64(),
                row.quotient.to_f64(),
                row.gap
            );
        }
        s
    }

    fn table(&self) -> Table {
        let r = &self.0;
        Table {
            header: vec!["family", "a", "n", "passes", "gap", "quotient"],
            rows: r
                .rows
                .iter()
                .map(|row| {
                    vec![
                        r.family.to_string(),
                        row.a.to_string(),
                        row.n.to_string(),
                        row.passes.to_string(),
                        row.gap.to_string(),
                        row.quotient.to_string(),
                    ]
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct BundleCheck {
    pub bundle: &'static str,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<BundleCheck>,
}

impl VerifyReport {
    pub fn new(checks: Vec<BundleCheck>) -> VerifyReport {
        VerifyReport {
            passed: checks.iter().all(|c| c.check.passed),
            checks,
        }
    }
}

impl Report for VerifyReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let status = if c.check.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(
                s,
                "{status} [{}] {}: {}",
                c.bundle, c.check.name, c.check.detail
            );
        }
        let failed = self.checks.iter().filter(|c| !c.check.passed).count();
        if failed == 0 {
            let _ = writeln!(s, "all {} checks passed", self.checks.len());
        } else {
            let _ = writeln!(s, "{failed} of {} checks failed", self.checks.len());
        }
        s
    }

    fn table(&self) -> Table {
        Table {
            header: vec!["bundle", "name", "passed", "detail"],
            rows: self
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.bundle.to_string(),
                        c.check.name.clone(),
                        c.check.passed.to_string(),
                        c.check.detail.clone(),
                    ]
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct SearchOutput(pub MinimizerReport);

impl Report for SearchOutput {
    fn text(&self) -> String {
        let r = &self.0;
        let mut s = String::new();
        let _ = writeln!(s, "order: {}", r.order);
        let _ = writeln!(s, "class: {}", r.class_description);
        let _ = writeln!(s, "trees scanned: {}", r.trees_scanned);
        match &r.min_ratio {
            Some(m) => {
                let _ = writeln!(s, "min R2: {m} (≈ {:.9})", m.to_f64());
            }
            None => {
                let _ = writeln!(s, "min R2: none (empty class)");
            }
        }
        let _ = writeln!(s, "R2(P_n): {} (≈ {:.9})", r.path_r2, r.path_r2.to_f64());
        let _ = writeln!(s, "min beats path: {}", r.min_beats_path());
        let _ = writeln!(s, "trees beating path: {}", r.trees_beating_path);
        let _ = writeln!(s, "witnesses: {}", r.witnesses.len());
        for w in &r.witnesses {
            let _ = writeln!(s, "  {w}");
        }
        s
    }

    fn table(&self) -> Table {
        let r = &self.0;
        let row = |w: String| {
            vec![
                r.order.to_string(),
                r.class_description.clone(),
                r.trees_scanned.to_string(),
                opt(&r.min_ratio),
                r.path_r2.to_string(),
                r.trees_beating_path.to_string(),
                w,
            ]
        };
        let rows = if r.witnesses.is_empty() {
            vec![row(String::new())]
        } else {
            r.witnesses.iter().map(|w| row(w.to_string())).collect()
        };
        Table {
            header: vec![
                "order",
                "class",
                "trees_scanned",
                "min_ratio",
                "path_r2",
                "trees_beating_path",
                "witness",
            ],
            rows,
        }
    }
}
