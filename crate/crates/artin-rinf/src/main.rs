use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use artin_rinf::classify::classify;
use artin_rinf::corpus;
use artin_rinf::coxeter::{
    enumerate_group, induced_automorphism, reidemeister_number, reidemeister_via_coset,
};
use artin_rinf::deligne::{build_link_ball, girth_lower_bound};
use artin_rinf::garside::{delta_word_dn, ArtinWord, Garside, NormalForm};
use artin_rinf::hierarchy::{find_twistless_hierarchy, HierarchySearch, DEFAULT_BUDGET};
use artin_rinf::verdict::{verdict_with_budget, Status};
use artin_rinf::{parse_graph, GraphAutomorphism, Label, LabeledGraph};

/// Largest Coxeter group tabulated in full for Reidemeister counts.
const TABLE_LIMIT: usize = 10_000;

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_BUDGET: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "artin-rinf", disable_help_subcommand = true)]
struct Cli {
    /// Output format for all subcommands.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a graph file against all predicates.
    Classify { file: PathBuf },
    /// Decide which R-infinity rule applies to a graph file.
    Verdict {
        file: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Search for a twistless hierarchy.
    Hierarchy {
        file: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Reidemeister numbers of the finite Coxeter quotient, computed by
    /// twisted-conjugacy orbits and cross-checked via the coset route.
    Reidemeister {
        file: PathBuf,
        /// Automorphism as cycles of vertex names, e.g. "(t5 t6)".
        #[arg(long, conflicts_with = "all_graph_auts")]
        aut: Option<String>,
        /// Run over every label-preserving graph automorphism.
        #[arg(long)]
        all_graph_auts: bool,
    },
    /// Garside normal-form operations.
    Garside {
        #[command(subcommand)]
        cmd: GarsideCmd,
    },
    /// Girth of a dihedral link ball.
    LinkGirth {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        cap: usize,
    },
    /// Classify and judge every file in a directory.
    Batch {
        dir: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GarsideCmd {
    /// Normal form of a word over a spherical graph.
    Nf { file: PathBuf, word: String },
    /// Run the Delta identity suite for type D_n.
    CheckD { n: usize },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep exit 0 for --help/--version, 1 for bad input
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn default_budget() -> usize {
    std::env::var("ARTIN_RINF_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

fn load_graph(path: &Path) -> Result<LabeledGraph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(format: Format, json: serde_json::Value, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&json).unwrap()),
        Format::Text => println!("{text}"),
    }
}

fn run(cli: &Cli) -> Result<u8, String> {
    match &cli.cmd {
        Cmd::Classify { file } => {
            let g = load_graph(file)?;
            let report = classify(&g);
            emit(
                cli.format,
                serde_json::to_value(&report).unwrap(),
                classify_text(&report),
            );
            Ok(EXIT_OK)
        }
        Cmd::Verdict { file, budget } => {
            let g = load_graph(file)?;
            let v = verdict_with_budget(&g, budget.unwrap_or_else(default_budget));
            let exhausted = v.hypothesis_trace.iter().any(|t| {
                t.predicate == "twistless_hierarchy"
                    && t.value
                        .as_str()
                        .is_some_and(|s| s.starts_with("budget_exhausted"))
            });
            emit(
                cli.format,
                serde_json::to_value(&v).unwrap(),
                verdict_text(&v),
            );
            if v.status == Status::Unknown && exhausted {
                Ok(EXIT_BUDGET)
            } else {
                Ok(EXIT_OK)
            }
        }
        Cmd::Hierarchy { file, budget } => {
            let g = load_graph(file)?;
            let pres = g.convert(artin_rinf::Convention::Presentation);
            let result = find_twistless_hierarchy(&pres, budget.unwrap_or_else(default_budget))
                .map_err(|e| e.to_string())?;
            let (text, code) = match &result {
                HierarchySearch::Found { .. } => ("hierarchy: found".to_string(), EXIT_OK),
                HierarchySearch::NoneDefinitive => {
                    ("hierarchy: none (search space exhausted)".to_string(), EXIT_OK)
                }
                HierarchySearch::NoneExhausted { budget } => (
                    format!("hierarchy: undecided (budget {budget} exhausted)"),
                    EXIT_BUDGET,
                ),
            };
            emit(cli.format, serde_json::to_value(&result).unwrap(), text);
            Ok(code)
        }
        Cmd::Reidemeister {
            file,
            aut,
            all_graph_auts,
        } => {
            let g = load_graph(file)?;
            let table = enumerate_group(&g, TABLE_LIMIT).map_err(|e| e.to_string())?;
            let sigmas: Vec<(String, GraphAutomorphism)> = if *all_graph_auts {
                g.graph_automorphisms()
                    .into_iter()
                    .filter(|s| s.preserves_labels(&g))
                    .map(|s| (s.to_cycles(&g), s))
                    .collect()
            } else {
                let sigma = match aut {
                    Some(spec) => {
                        GraphAutomorphism::from_cycles(spec, &g).map_err(|e| e.to_string())?
                    }
                    None => GraphAutomorphism::identity(g.vertex_count()),
                };
                vec![(sigma.to_cycles(&g), sigma)]
            };
            let mut records = vec![];
            for (name, sigma) in &sigmas {
                let phi = induced_automorphism(&table, &g, sigma).map_err(|e| e.to_string())?;
                let r = reidemeister_number(&table, &phi);
                let coset = reidemeister_via_coset(&table, &phi);
                records.push(serde_json::json!({
                    "automorphism": name,
                    "reidemeister": r,
                    "via_coset": coset,
                }));
            }
            let text = records
                .iter()
                .map(|r| {
                    format!(
                        "{}: R = {} (coset route: {})",
                        r["automorphism"].as_str().unwrap(),
                        r["reidemeister"],
                        r["via_coset"]
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            emit(
                cli.format,
                serde_json::json!({ "group_order": table.size, "records": records }),
                format!("group order {}\n{}", table.size, text),
            );
            Ok(EXIT_OK)
        }
        Cmd::Garside { cmd } => run_garside(cli.format, cmd),
        Cmd::LinkGirth { m, cap } => {
            let ball = build_link_ball(*m, *cap).map_err(|e| e.to_string())?;
            let report = girth_lower_bound(&ball);
            let g = corpus::dihedral(Label::Finite(*m));
            let witness: Vec<String> = report
                .witness
                .iter()
                .map(|&v| {
                    let w = ball.word(v).display(&g);
                    if w.is_empty() {
                        "1".to_string()
                    } else {
                        w
                    }
                })
                .collect();
            let text = match report.girth {
                Some(girth) => format!(
                    "girth = {girth} ({}){}\nwitness: {}",
                    if report.exact { "exact" } else { "lower bound only" },
                    if ball.cap_warning {
                        "\nwarning: cap < 2, ball may be too small to contain a loop"
                    } else {
                        ""
                    },
                    witness.join(" | ")
                ),
                None => "girth = infinity (no cycle in ball)".to_string(),
            };
            emit(
                cli.format,
                serde_json::json!({
                    "m": m,
                    "cap": cap,
                    "girth": report.girth,
                    "exact": report.exact,
                    "cap_warning": ball.cap_warning,
                    "witness": witness,
                }),
                text,
            );
            Ok(EXIT_OK)
        }
        Cmd::Batch { dir, jobs } => run_batch(cli.format, dir, *jobs),
    }
}

fn classify_text(report: &artin_rinf::classify::ClassificationReport) -> String {
    let value = serde_json::to_value(report).unwrap();
    value
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn verdict_text(v: &artin_rinf::verdict::Verdict) -> String {
    let status = match v.status {
        Status::Established => "R_INFINITY_ESTABLISHED",
        Status::Conjectured => "CONJECTURED",
        Status::Unknown => "UNKNOWN",
    };
    let mut lines = vec![format!("status: {status}")];
    if let Some(rule) = &v.rule_id {
        lines.push(format!("rule: {rule}"));
    }
    if let Some(c) = &v.citation {
        lines.push(format!("citation: {c}"));
    }
    for t in &v.hypothesis_trace {
        lines.push(format!("  {} = {}", t.predicate, t.value));
    }
    if v.witness.is_some() {
        lines.push("witness: twistless hierarchy attached (use --format json)".to_string());
    }
    lines.join("\n")
}

fn run_garside(format: Format, cmd: &GarsideCmd) -> Result<u8, String> {
    match cmd {
        GarsideCmd::Nf { file, word } => {
            let g = load_graph(file)?;
            let engine = Garside::new(&g).map_err(|e| e.to_string())?;
            let w = ArtinWord::parse(word, &g).map_err(|e| e.to_string())?;
            let nf = engine.normal_form(&w).map_err(|e| e.to_string())?;
            let json = nf.to_json(&engine.sys);
            let text = nf_text(&nf, &engine);
            emit(format, json, text);
            Ok(EXIT_OK)
        }
        GarsideCmd::CheckD { n } => {
            if *n < 4 {
                return Err(format!("type D_n needs n >= 4, got {n}"));
            }
            let (lines, all_pass) = check_d_suite(*n)?;
            let text = lines.join("\n");
            emit(
                format,
                serde_json::json!({ "n": n, "checks": lines, "pass": all_pass }),
                text,
            );
            if all_pass {
                Ok(EXIT_OK)
            } else {
                Err("identity suite failed".to_string())
            }
        }
    }
}

fn nf_text(nf: &NormalForm, engine: &Garside) -> String {
    let factors: Vec<String> = nf
        .factors
        .iter()
        .map(|&f| {
            engine
                .sys
                .reduced_word(f)
                .iter()
                .map(|&s| engine.sys.gen_names[s as usize].clone())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!(
        "delta^{} . [{}]",
        nf.delta,
        factors.join("][")
    )
}

/// The Delta identity suite for type D_n: the positive word formula has
/// length n(n-1) and one Delta as its normal form; conjugation by Delta
/// fixes every generator for even n and swaps the two fork tips for odd
/// n; Delta squared is always central.
fn check_d_suite(n: usize) -> Result<(Vec<String>, bool), String> {
    let g = corpus::coxeter_dn(n);
    let engine = Garside::new(&g).map_err(|e| e.to_string())?;
    let d = delta_word_dn(n);
    let mut lines = vec![];
    let mut all = true;
    let mut check = |lines: &mut Vec<String>, name: String, ok: bool| {
        lines.push(format!("{}: {}", name, if ok { "pass" } else { "FAIL" }));
        all &= ok;
    };

    check(
        &mut lines,
        format!("delta word has length n(n-1) = {}", n * (n - 1)),
        d.letters.len() == n * (n - 1),
    );
    let nf = engine.normal_form(&d).map_err(|e| e.to_string())?;
    check(
        &mut lines,
        "delta word normalizes to delta^1".to_string(),
        nf.delta == 1 && nf.factors.is_empty(),
    );
    let t = |i: usize| ArtinWord::from_indices(&[i]);
    let eq = |u: &ArtinWord, v: &ArtinWord| engine.equal(u, v).unwrap();
    if n % 2 == 0 {
        for i in 0..n {
            check(
                &mut lines,
                format!("delta commutes with t{}", i + 1),
                eq(&d.concat(&t(i)), &t(i).concat(&d)),
            );
        }
    } else {
        let conj = |w: &ArtinWord| d.concat(w).concat(&d.inverse());
        for i in 0..n - 2 {
            check(
                &mut lines,
                format!("delta fixes t{}", i + 1),
                eq(&conj(&t(i)), &t(i)),
            );
        }
        check(
            &mut lines,
            format!("delta sends t{} to t{}", n - 1, n),
            eq(&conj(&t(n - 2)), &t(n - 1)),
        );
        check(
            &mut lines,
            format!("delta sends t{} to t{}", n, n - 1),
            eq(&conj(&t(n - 1)), &t(n - 2)),
        );
        let d2 = d.concat(&d);
        for i in 0..n {
            check(
                &mut lines,
                format!("delta^2 commutes with t{}", i + 1),
                eq(&d2.concat(&t(i)), &t(i).concat(&d2)),
            );
        }
    }
    Ok((lines, all))
}

fn run_batch(format: Format, dir: &Path, jobs: Option<usize>) -> Result<u8, String> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();

    let process = |path: &PathBuf| -> (String, Result<serde_json::Value, String>, u128) {
        let start = std::time::Instant::now();
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let result = load_graph(path).map(|g| {
            let report = classify(&g);
            let v = verdict_with_budget(&g, default_budget());
            serde_json::json!({
                "classification": report,
                "verdict": v,
            })
        });
        (name, result, start.elapsed().as_millis())
    };

    #[cfg(feature = "parallel")]
    let mut results: Vec<_> = {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.unwrap_or(0))
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| files.par_iter().map(process).collect())
    };
    #[cfg(not(feature = "parallel"))]
    let mut results: Vec<_> = {
        let _ = jobs;
        files.iter().map(process).collect()
    };

    // stable order by input name keeps output independent of scheduling
    results.sort_by(|a, b| a.0.cmp(&b.0));
    // timing is nondeterministic, so it goes to stderr only
    for (name, _, ms) in &results {
        eprintln!("{name}: {ms} ms");
    }

    let mut summary: BTreeMap<String, usize> = BTreeMap::new();
    let mut records = vec![];
    let mut texts = vec![];
    for (name, result, _) in &results {
        match result {
            Ok(value) => {
                let status = value["verdict"]["status"].as_str().unwrap().to_string();
                *summary.entry(status.clone()).or_insert(0) += 1;
                let rule = value["verdict"]["rule_id"]
                    .as_str()
                    .unwrap_or("-")
                    .to_string();
                texts.push(format!("{name}: {status} ({rule})"));
                records.push(serde_json::json!({ "name": name, "result": value }));
            }
            Err(msg) => {
                *summary.entry("ERROR".to_string()).or_insert(0) += 1;
                texts.push(format!("{name}: ERROR {msg}"));
                records.push(serde_json::json!({ "name": name, "error": msg }));
            }
        }
    }
    let summary_text = summary
        .iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect::<Vec<_>>()
        .join(", ");
    emit(
        format,
        serde_json::json!({ "records": records, "summary": summary }),
        format!("{}\nsummary: {}", texts.join("\n"), summary_text),
    );
    Ok(EXIT_OK)
}
