//! Command-line harness over the library pipelines. Every command is
//! deterministic; reports are written as CSV/JSON artifacts plus a summary
//! on stdout. Exit codes: 0 pass, 1 mismatch, 2 inconclusive-only.

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use shintani::chartab::character_table;
use shintani::group::matrix::EnumeratedGroup;
use shintani::report::{
    compare_artifacts, group_json, oracle_report, prediction_csv, prediction_json,
    prediction_report, run_section1, CheckStatus, ExperimentConfig,
};

#[derive(Parser)]
#[command(name = "shintani", about = "exact multiplicity toolkit for SL_n(F_{q^2}) / SL_n(F_q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct GroupArgs {
    /// SL or GL
    #[arg(long, default_value = "SL")]
    r#type: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    level: u32,
    /// enumeration cap on the group order
    #[arg(long, default_value_t = 200_000)]
    cap: u64,
}

impl GroupArgs {
    fn enumerate(&self) -> Result<EnumeratedGroup, String> {
        let special = match self.r#type.as_str() {
            "SL" => true,
            "GL" => false,
            other => return Err(format!("unknown group type {}", other)),
        };
        EnumeratedGroup::enumerate(self.n, self.p, self.level, special, self.cap)
    }
}

#[derive(clap::Args)]
struct ConfigArgs {
    /// key = value config file (targets, group_cap, escalation_cap,
    /// level_cap, output_dir)
    #[arg(long)]
    config: Option<String>,
    /// inline targets, semicolon-separated n,p,level triples
    #[arg(long)]
    targets: Option<String>,
}

impl ConfigArgs {
    fn load(&self) -> Result<ExperimentConfig, String> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(t) = &self.targets {
            let inline = ExperimentConfig::parse(&format!("targets = {}", t))?;
            cfg.targets = inline.targets;
        }
        if cfg.targets.is_empty() {
            return Err("no targets given (use --config or --targets)".into());
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a matrix group and emit its conjugacy classes as JSON
    Group(GroupArgs),
    /// Emit the character table of a matrix group (JSON + aligned text)
    Chartab(GroupArgs),
    /// Brute-force m2 for each target pair, as CSV + JSON
    Oracle(ConfigArgs),
    /// Closed-form prediction records for each target, as CSV + JSON
    Predict(ConfigArgs),
    /// Run both pipelines and compare their serialized artifacts
    Compare(ConfigArgs),
    /// Run the structural identity suite on the desk-scale instances
    Section1(ConfigArgs),
}

fn write_artifact(dir: &str, name: &str, content: &str) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {}", dir, e))?;
    let path = Path::new(dir).join(name);
    std::fs::write(&path, content).map_err(|e| format!("{}: {}", path.display(), e))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Group(args) => {
            let g = args.enumerate()?;
            println!("{}", serde_json::to_string_pretty(&group_json(&g)?).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Chartab(args) => {
            let g = args.enumerate()?;
            let table = character_table(&g)?;
            println!("{}", table.text_table());
            println!("{}", serde_json::to_string_pretty(&table.to_json()).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle(args) => {
            let cfg = args.load()?;
            for t in &cfg.targets {
                let rep = oracle_report(t, cfg.group_cap)?;
                write_artifact(&cfg.output_dir, &format!("{}_oracle.csv", t.label()), &rep.csv())?;
                write_artifact(
                    &cfg.output_dir,
                    &format!("{}_oracle.json", t.label()),
                    &serde_json::to_string_pretty(&rep.json()).unwrap(),
                )?;
                println!(
                    "{}: {} characters, sum m2*deg = {} (index {}), check {}",
                    t.label(),
                    rep.rows.len(),
                    rep.sum_m2_deg,
                    rep.index,
                    if rep.index_check() { "ok" } else { "FAILED" },
                );
                if !rep.index_check() {
                    return Ok(ExitCode::from(1));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Predict(args) => {
            let cfg = args.load()?;
            for t in &cfg.targets {
                let pred = prediction_report(t, cfg.level_cap)?;
                write_artifact(
                    &cfg.output_dir,
                    &format!("{}_predict.csv", t.label()),
                    &prediction_csv(&pred),
                )?;
                write_artifact(
                    &cfg.output_dir,
                    &format!("{}_predict.json", t.label()),
                    &serde_json::to_string_pretty(&prediction_json(&pred)).unwrap(),
                )?;
                println!(
                    "{}: {} records{}{}",
                    t.label(),
                    pred.records.len(),
                    if pred.has_symbolic() { ", symbolic eps present" } else { "" },
                    if pred.conformant { "" } else { " [NONCONFORMANT: p < n]" },
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare(args) => {
            let cfg = args.load()?;
            let mut conformant_fail = false;
            let mut any_flagged = false;
            for t in &cfg.targets {
                let oracle = oracle_report(t, cfg.group_cap)?;
                let pred = prediction_report(t, cfg.level_cap)?;
                let o_csv = oracle.csv();
                let p_csv = prediction_csv(&pred);
                write_artifact(&cfg.output_dir, &format!("{}_oracle.csv", t.label()), &o_csv)?;
                write_artifact(&cfg.output_dir, &format!("{}_predict.csv", t.label()), &p_csv)?;
                let verdict = compare_artifacts(&o_csv, &p_csv)?;
                write_artifact(
                    &cfg.output_dir,
                    &format!("{}_verdict.json", t.label()),
                    &serde_json::to_string_pretty(&verdict.json()).unwrap(),
                )?;
                println!(
                    "{}: {}{} ({} records, {} eps resolutions)",
                    t.label(),
                    if verdict.pass() { "PASS" } else { "FAIL" },
                    if verdict.nonconformant { " [NONCONFORMANT]" } else { "" },
                    verdict.oracle_count,
                    verdict.resolutions.len(),
                );
                for r in &verdict.resolutions {
                    println!(
                        "  eps(class {}, E {}) = {}",
                        r.class_id, r.e_id, r.status
                    );
                }
                for d in &verdict.diagnostics {
                    println!("  {}", d);
                }
                if !verdict.pass() {
                    if verdict.nonconformant {
                        any_flagged = true;
                    } else {
                        conformant_fail = true;
                    }
                }
            }
            Ok(if conformant_fail {
                ExitCode::from(1)
            } else if any_flagged {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Section1(args) => {
            let cfg = match &args.config {
                Some(path) => ExperimentConfig::from_file(path)?,
                None => ExperimentConfig::default(),
            };
            let rep = run_section1(cfg.group_cap, &cfg.norm_caps());
            print!("{}", rep.text());
            write_artifact(
                &cfg.output_dir,
                "section1.json",
                &serde_json::to_string_pretty(&rep.json()).unwrap(),
            )?;
            Ok(if rep.count(CheckStatus::Fail) > 0 {
                ExitCode::from(1)
            } else if rep.count(CheckStatus::Inconclusive) > 0 {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}
