mod args;
mod report;

use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use rayon::prelude::*;
use wiener_core::analysis::{self, Check, ScanFamily};
use wiener_core::enumeration::{FreeTrees, TreeFilter};
use wiener_core::io::{read_graph, write_graph6, GraphFormat};
use wiener_core::{iterated_line_graph, wiener_index, Graph};

use args::{Cli, Command, GraphInput, SearchCommand, VerifyBundle};
use report::{
    render, BundleCheck, EnumerationReport, GraphReport, RatioOutput, Report, ScanOutput,
    SearchOutput, VerifyReport, WienerReport,
};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_ERROR: u8 = 2;

struct Output {
    bytes: Vec<u8>,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_ERROR);
    }
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(&out.bytes).and_then(|_| stdout.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_ERROR);
                }
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn emit<R: Report>(report: &R, cli: &Cli) -> anyhow::Result<Output> {
    Ok(Output {
        bytes: render(report, cli.format)?,
        passed: true,
    })
}

fn load(input: &GraphInput) -> anyhow::Result<(String, Graph)> {
    if let Some(spec) = &input.source.family {
        return Ok((spec.to_string(), spec.build()?));
    }
    let path = input.source.file.as_ref().expect("clap requires a source");
    let format = input
        .input_format
        .unwrap_or_else(|| GraphFormat::from_path(path));
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        buf
    } else {
        std::fs::read(path).with_context(|| format!("reading {}", path.display()))?
    };
    let g = read_graph(&bytes, format)
        .with_context(|| format!("parsing {} as {format}", path.display()))?;
    Ok((path.display().to_string(), g))
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Wiener(input) => {
            let (source, g) = load(input)?;
            let wiener = wiener_index(&g)?;
            emit(
                &WienerReport {
                    source,
                    order: g.order(),
                    size: g.size(),
                    wiener,
                },
                cli,
            )
        }
        Command::Line { input, k, output } => {
            let (source, g) = load(input)?;
            let l = iterated_line_graph(&g, *k, cli.budget)
                .with_context(|| format!("building L^{k} with budget {}", cli.budget))?;
            emit(
                &GraphReport::new(format!("L^{k}({source})"), l, output.output_format),
                cli,
            )
        }
        Command::Ratio { input, k } => {
            let (source, g) = load(input)?;
            let report = analysis::ratio_rk(&g, *k, cli.budget)
                .with_context(|| format!("ratio up to k = {k} with budget {}", cli.budget))?;
            emit(&RatioOutput { source, report }, cli)
        }
        Command::Family { spec, output } => emit(
            &GraphReport::new(spec.to_string(), spec.build()?, output.output_format),
            cli,
        ),
        Command::Enumerate { n, filter } => {
            let filter = TreeFilter::from(filter.clone());
            let trees = FreeTrees::with_filter(*n, filter)?;
            let per_unit: Vec<Vec<String>> = trees
                .units()
                .par_iter()
                .map(|&u| trees.unit_trees(u).map(|t| write_graph6(&t)).collect())
                .collect();
            let graph6: Vec<String> = per_unit.into_iter().flatten().collect();
            emit(
                &EnumerationReport {
                    order: *n,
                    class_description: filter.describe(),
                    count: graph6.len(),
                    graph6,
                },
                cli,
            )
        }
        Command::Scan { case, a_range } => {
            let report = match case {
                ScanFamily::Spider(c) => analysis::threshold_scan(*c, a_range.clone())?,
                ScanFamily::Ua => analysis::theorem5_scan(a_range.clone(), cli.budget)
                    .with_context(|| format!("U_a scan with budget {}", cli.budget))?,
            };
            emit(&ScanOutput(report), cli)
        }
        Command::Verify { bundle } => {
            let report = VerifyReport::new(verify(bundle, cli.budget)?);
            Ok(Output {
                bytes: render(&report, cli.format)?,
                passed: report.passed,
            })
        }
        Command::Search {
            search:
                SearchCommand::MinR2 {
                    n,
                    filter,
                    order_limit,
                },
        } => {
            let report = analysis::min_r2_search(*n, filter.clone().into(), *order_limit)?;
            emit(&SearchOutput(report), cli)
        }
    }
}

fn verify(bundle: &VerifyBundle, budget: usize) -> anyhow::Result<Vec<BundleCheck>> {
    let tag = |bundle: &'static str, checks: Vec<Check>| {
        checks
            .into_iter()
            .map(move |check| BundleCheck { bundle, check })
    };
    let checks: Vec<BundleCheck> = match bundle {
        VerifyBundle::Buckley { max_n } => tag("buckley", analysis::buckley(*max_n)?).collect(),
        VerifyBundle::Lemmas { max_a, max_n } => {
            tag("lemmas", analysis::lemmas(*max_a, *max_n, budget)?).collect()
        }
        VerifyBundle::Thm4 { a_range } => tag("thm4", analysis::thm4(a_range.clone())?).collect(),
        VerifyBundle::Thm5 { a } => tag(
            "thm5",
            analysis::thm5(*a, budget).with_context(|| format!("U_{a} with budget {budget}"))?,
        )
        .collect(),
        VerifyBundle::Deviations { a } => {
            tag("deviations", analysis::deviations(a, budget)?).collect()
        }
        VerifyBundle::Thm1 { max_n } => tag(
            "thm1",
            analysis::thm1(*max_n, analysis::DEFAULT_ORDER_LIMIT)?,
        )
        .collect(),
        VerifyBundle::PaperNumbers => {
            tag("paper-numbers", analysis::paper_numbers(budget)?).collect()
        }
        VerifyBundle::All => {
            let bundles = [
                VerifyBundle::PaperNumbers,
                VerifyBundle::Lemmas {
                    max_a: 8,
                    max_n: 60,
                },
                VerifyBundle::Buckley { max_n: 14 },
                VerifyBundle::Thm4 { a_range: 2..=30 },
                VerifyBundle::Thm5 { a: 50 },
                VerifyBundle::Deviations {
                    a: vec![20, 40, 60],
                },
                VerifyBundle::Thm1 { max_n: 12 },
            ];
            let mut all = Vec::new();
            for b in &bundles {
                all.extend(verify(b, budget)?);
            }
            all
        }
    };
    Ok(checks)
}
