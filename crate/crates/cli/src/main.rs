//! `isl`: prove sequents, check models, eliminate cuts, interpolate and fuzz.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use isl::fuzz::{check_case, corpus, FuzzConfig};
use isl::g3::{check_g3_proof, eliminate_cuts, g4_to_g3, to_profile};
use isl::g4::search;
use isl::interpolation::{cut_free_proof, interpolate, InterpolationError};
use isl::parser::{render_formula, render_sequent};
use isl::semantics::{countermodel, validate_model};
use isl::{parse_sequent, G3Proof, KripkeModel, Profile, Sequent, SplitSequent};

#[derive(Parser)]
#[command(name = "isl", version, about = "Decision procedure and proof tools for intuitionistic strong Löb logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Core,
    BVariant,
    GlcVariant,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Profile {
        match p {
            ProfileArg::Core => Profile::Core,
            ProfileArg::BVariant => Profile::BVariant,
            ProfileArg::GlcVariant => Profile::GlcVariant,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent such as "[]p => p"
    Prove {
        sequent: String,
        /// Write a G3 proof (JSON) when provable
        #[arg(long, value_name = "FILE")]
        proof: Option<PathBuf>,
        /// Write the proof before cut elimination instead
        #[arg(long, requires = "proof")]
        with_cuts: bool,
        /// Write a countermodel (JSON) when not provable
        #[arg(long, value_name = "FILE")]
        countermodel: Option<PathBuf>,
        /// Write the proof or countermodel as Graphviz
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "core")]
        calculus_profile: ProfileArg,
    },
    /// Validate a model file and evaluate a sequent in it
    CheckModel { model: PathBuf, sequent: String },
    /// Eliminate the cuts of a G3 proof file
    CutElim {
        input: PathBuf,
        /// Where to write the cut-free proof
        #[arg(long, value_name = "FILE")]
        proof: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "core")]
        calculus_profile: ProfileArg,
    },
    /// Interpolate a split sequent "Γ1 ; Γ2 => Δ"
    Interpolate {
        split: String,
        #[arg(long, value_name = "FILE")]
        proof: Option<PathBuf>,
    },
    /// Cross-check a random corpus against the semantics
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
        max_weight: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        atoms: u64,
        #[arg(long, default_value_t = 3)]
        max_model_worlds: usize,
    },
}

/// Errors that map to exit status 2.
struct Usage(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Usage {
        Usage(e.into())
    }
}

fn parse(text: &str) -> Result<Sequent> {
    parse_sequent(text).map_err(|e| anyhow!("{}", e.annotate(text)))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    write(path, &(serde_json::to_string_pretty(v)? + "\n"))
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

fn prove(
    text: &str,
    proof: Option<&Path>,
    with_cuts: bool,
    model: Option<&Path>,
    dot: Option<&Path>,
    profile: Profile,
) -> Result<u8, Usage> {
    let s = parse(text)?;
    let root = search(&s);
    if root.positive {
        println!("provable");
        if proof.is_some() || dot.is_some() {
            let p = if with_cuts {
                let g4 = isl::extract_proof(&root)?;
                g4_to_g3(&g4)?
            } else {
                to_profile(&cut_free_proof(&s)?, profile)?
            };
            let tagged = if with_cuts { Profile::WithCut } else { profile };
            check_g3_proof(&p, tagged)?;
            if let Some(path) = proof {
                write_json(path, &p.normalize().to_json(tagged))?;
            }
            if let Some(path) = dot {
                write(path, &p.to_dot())?;
            }
        }
        Ok(0)
    } else {
        println!("not provable");
        if model.is_some() || dot.is_some() {
            let (m, w) = countermodel(&root)?;
            println!("refuted at {}", m.names[w]);
            if let Some(path) = model {
                let mut v = m.to_json();
                v["designated"] = json!(m.names[w]);
                write_json(path, &v)?;
            }
            if let Some(path) = dot {
                write(path, &m.to_dot(Some(w)))?;
            }
        }
        Ok(1)
    }
}

fn check_model(path: &Path, text: &str) -> Result<u8, Usage> {
    let m = KripkeModel::from_json(&read_json(path)?)?;
    let s = parse(text)?;
    let bad = validate_model(&m);
    if !bad.is_empty() {
        println!("not an iSL-model:");
        for v in &bad {
            println!("  {}", v);
        }
        return Ok(1);
    }
    let worlds = m.refuting_worlds(&s);
    if worlds.is_empty() {
        println!("valid in model");
    } else {
        let names: Vec<&str> = worlds.iter().map(|&w| m.names[w].as_str()).collect();
        println!("refuted at {}", names.join(", "));
    }
    Ok(0)
}

fn cut_elim(input: &Path, out: Option<&Path>, dot: Option<&Path>, profile: Profile) -> Result<u8, Usage> {
    let (p, _) = G3Proof::from_json(&read_json(input)?)?;
    check_g3_proof(&p, Profile::WithCut).map_err(|e| anyhow!("{} is not a valid proof: {}", input.display(), e))?;
    let done = eliminate_cuts(&p)?;
    let q = to_profile(&done.proof, profile)?;
    check_g3_proof(&q, profile)?;
    println!("reductions {}", done.reductions.len());
    for m in &done.reductions {
        println!("  {}", m);
    }
    if let Some(path) = out {
        write_json(path, &q.normalize().to_json(profile))?;
    }
    if let Some(path) = dot {
        write(path, &q.to_dot())?;
    }
    Ok(0)
}

fn interpolate_cmd(text: &str, out: Option<&Path>) -> Result<u8, Usage> {
    let split = SplitSequent::parse(text).map_err(|e| anyhow!("{}", e.annotate(text)))?;
    let p = match cut_free_proof(&split.sequent()) {
        Ok(p) => p,
        Err(InterpolationError::NotProvable(_)) => {
            println!("not provable");
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    let i = interpolate(&p, &split)?;
    println!("{}", render_formula(&i));
    if let Some(path) = out {
        write_json(path, &p.normalize().to_json(Profile::Core))?;
    }
    Ok(0)
}

fn fuzz(cfg: &FuzzConfig) -> u8 {
    let cases = corpus(cfg);
    let reports: Vec<_> = cases.par_iter().enumerate().map(|(i, s)| check_case(i, s, cfg)).collect();
    let mut provable = 0;
    let mut failures = Vec::new();
    for r in &reports {
        println!("{}", r);
        match &r.result {
            Ok(isl::fuzz::Verdict::Provable { .. }) => provable += 1,
            Ok(_) => {}
            Err(_) => failures.push(render_sequent(&r.sequent)),
        }
    }
    println!(
        "summary: {} sequents, {} provable, {} refuted, {} discrepancies",
        reports.len(),
        provable,
        reports.len() - provable - failures.len(),
        failures.len()
    );
    for s in &failures {
        eprintln!("discrepancy: {}", s);
    }
    if failures.is_empty() {
        0
    } else {
        3
    }
}

fn run(cli: Cli) -> Result<u8, Usage> {
    match cli.command {
        Command::Prove {
            sequent,
            proof,
            with_cuts,
            countermodel,
            dot,
            calculus_profile,
        } => prove(
            &sequent,
            proof.as_deref(),
            with_cuts,
            countermodel.as_deref(),
            dot.as_deref(),
            calculus_profile.into(),
        ),
        Command::CheckModel { model, sequent } => check_model(&model, &sequent),
        Command::CutElim {
            input,
            proof,
            dot,
            calculus_profile,
        } => cut_elim(&input, proof.as_deref(), dot.as_deref(), calculus_profile.into()),
        Command::Interpolate { split, proof } => interpolate_cmd(&split, proof.as_deref()),
        Command::Fuzz {
            seed,
            count,
            max_weight,
            atoms,
            max_model_worlds,
        } => {
            Ok(fuzz(&FuzzConfig {
                seed,
                count: count as usize,
                max_weight: max_weight as usize,
                atoms: atoms as usize,
                max_model_worlds,
            }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(e)) => {
            eprintln!("{:#}", e);
            ExitCode::from(2)
        }
    }
}
