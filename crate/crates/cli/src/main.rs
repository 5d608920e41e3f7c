//! `tleaves`: JSON (or TSV) reports on leaves, ranks and verification suites.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use twisted_leaves::batch::Execution;
use twisted_leaves::bivector::{class_tangent_space, evaluate_bivector_with, Expansion};
use twisted_leaves::cartan::{dk_one_plus, l_theta};
use twisted_leaves::cells::bruhat_cell_of;
use twisted_leaves::classes::{analyze_class, leaf_table, min_rank_in_class, spherical_families, ClassSpec};
use twisted_leaves::double::{double_cell, verify_double_iso};
use twisted_leaves::io::{matrix_to_json, read_matrix};
use twisted_leaves::linalg::numeric::CMatrix;
use twisted_leaves::rootdata::build_sl_realization;
use twisted_leaves::sample::{rng_for, special_linear};
use twisted_leaves::suites::{run_suite, Suite, SuiteConfig, ThetaChoice};
use twisted_leaves::tol::{Tolerances, EQUIVARIANCE_TOL, RANK_TOL, RESIDUAL_TOL};
use twisted_leaves::weyl::WeylGroup;
use twisted_leaves::Error;

use report::{Envelope, Table};

#[derive(Parser, Debug)]
#[command(name = "tleaves", version, about = "Leaves and ranks of the twisted-conjugation Poisson structure on SL(N)")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Seed for every random sample.
    #[arg(long, global = true, env = "TLEAVES_SEED", default_value_t = 0)]
    seed: u64,
    /// Relative singular-value cutoff for numerical ranks.
    #[arg(long, global = true, default_value_t = RANK_TOL)]
    rank_tol: f64,
    /// Residual tolerance for tangency and isomorphism checks.
    #[arg(long, global = true, default_value_t = RESIDUAL_TOL)]
    residual_tol: f64,
    /// Print tables as tab-separated values instead of JSON.
    #[arg(long, global = true)]
    tsv: bool,
    /// `sequential` or `parallel`.
    #[arg(long, global = true, default_value_t = Execution::default())]
    execution: Execution,
}

impl Common {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            rank: self.rank_tol,
            residual: self.residual_tol,
            equivariance: EQUIVARIANCE_TOL,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Leaf table of a (twisted) conjugacy class: one row per w ≤ m_C.
    Leaves {
        /// Matrix size N of SL(N).
        #[arg(long = "sl")]
        size: usize,
        /// `central`, `regular-ss`, `ss:L`, `uni:L` or a JSON matrix file.
        #[arg(long)]
        class: String,
        #[arg(long, default_value = "id")]
        theta: ThetaChoice,
    },
    /// Bivector rank at a matrix, with the recovered cell and the predicted rank.
    RankAt {
        file: PathBuf,
        #[arg(long, default_value = "id")]
        theta: ThetaChoice,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Restrict to SL(N); all of SL(2), SL(3), SL(4) by default.
        #[arg(long = "sl")]
        size: Option<usize>,
        /// Restrict to one automorphism; both by default.
        #[arg(long)]
        theta: Option<ThetaChoice>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Spherical conjugacy classes of SL(N) with their dimensions.
    Families {
        #[arg(long = "sl")]
        size: usize,
    },
    /// Double Bruhat cells G^{u,v}_C of SL(N) and isomorphism residuals.
    Double {
        #[arg(long = "sl")]
        size: usize,
        #[arg(long)]
        class: String,
        /// Random points for the isomorphism check.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Numerical { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn rank_of(size: usize) -> Result<usize, Failure> {
    if size < 2 {
        return Err(Failure {
            code: 2,
            message: format!("--sl {size}: N must be at least 2"),
        });
    }
    Ok(size - 1)
}

fn class_matrix(spec: &str, n: usize) -> Result<CMatrix, Error> {
    match spec.parse::<ClassSpec>() {
        Ok(s) => s.representative(n),
        Err(_) if std::path::Path::new(spec).exists() => ClassSpec::Matrix(read_matrix(spec.as_ref())?).representative(n),
        Err(e) => Err(e),
    }
}

fn leaves(common: &Common, size: usize, class: &str, theta: ThetaChoice) -> Result<(Envelope, Option<Table>), Failure> {
    let n = rank_of(size)?;
    let real = build_sl_realization(n)?;
    let g = class_matrix(class, n)?;
    let auto = theta.automorphism();
    let diagram = theta.diagram(n);
    let descriptor = analyze_class(&g, &auto, &real)?;
    let rows = leaf_table(&descriptor, None, &diagram)?;
    let min_rank = min_rank_in_class(&descriptor, None, &diagram)?;
    let mut table = Table::new(&["w", "length", "intersection_dim", "leaf_dim"]);
    for r in &rows {
        table.push(vec![
            r.w.name.clone(),
            r.w.length.to_string(),
            r.intersection_dim.to_string(),
            r.leaf_dim.to_string(),
        ]);
    }
    let results = json!({
        "class": {
            "dim": descriptor.dim_c,
            "r": descriptor.r_c,
            "l": descriptor.l_c,
            "m_c": descriptor.m_c.as_ref().map(|m| m.report()),
            "spherical": descriptor.spherical,
            "eigenvalues": descriptor.eigenvalues,
        },
        "min_rank": min_rank,
        "rows": rows,
    });
    let env = Envelope::new(
        "leaves",
        json!({"sl": size, "class": class, "theta": theta, "seed": common.seed}),
        common.tolerances(),
        results,
        true,
        format!("{} leaf rows", rows.len()),
    );
    Ok((env, Some(table)))
}

fn rank_at(common: &Common, file: &PathBuf, theta: ThetaChoice) -> Result<(Envelope, Option<Table>), Failure> {
    let g = read_matrix(file)?;
    let n = rank_of(g.nrows())?;
    let real = build_sl_realization(n)?;
    let auto = theta.automorphism();
    let diagram = theta.diagram(n);
    let tol = common.tolerances();
    let pi = evaluate_bivector_with(&g, &auto, &real, Expansion::Explicit, tol.rank)?;
    let group = WeylGroup::type_a(n)?;
    let w = bruhat_cell_of(&g, &group)?;
    let dim_c = class_tangent_space(&g, &auto, &real, tol.rank)?.dim();
    let predicted = dim_c.checked_sub(w.length() + dk_one_plus(&w, &diagram)?);
    let m_c = match theta {
        ThetaChoice::Id => analyze_class(&g, &auto, &real)?.m_c.map(|m| m.report()),
        ThetaChoice::Outer => None,
    };
    let matched = predicted == Some(pi.rank());
    let mut table = Table::new(&["rank", "w", "dim_c", "predicted", "match"]);
    table.push(vec![
        pi.rank().to_string(),
        w.to_string(),
        dim_c.to_string(),
        predicted.map_or("-".into(), |p| p.to_string()),
        matched.to_string(),
    ]);
    let results = json!({
        "rank": pi.rank(),
        "singular_values": pi.rank.singular_values,
        "threshold": pi.rank.threshold,
        "borderline": pi.rank.borderline,
        "w": w.report(),
        "m_c": m_c,
        "dim_c": dim_c,
        "l_theta": l_theta(&w, &diagram)?,
        "predicted_rank": predicted,
        "match": matched,
        "point": matrix_to_json(&g),
    });
    let env = Envelope::new(
        "rank-at",
        json!({"file": file.display().to_string(), "theta": theta, "seed": common.seed}),
        tol,
        results,
        matched,
        match predicted {
            Some(p) => format!("rank {} (predicted {p})", pi.rank()),
            None => format!("rank {} (no prediction: l(w) exceeds dim C)", pi.rank()),
        },
    );
    Ok((env, Some(table)))
}

fn verify(
    common: &Common,
    suite: Suite,
    size: Option<usize>,
    theta: Option<ThetaChoice>,
    samples: usize,
) -> Result<(Envelope, Option<Table>), Failure> {
    let ranks = match size {
        Some(s) => vec![rank_of(s)?],
        None => vec![1, 2, 3],
    };
    let cfg = SuiteConfig {
        ranks,
        thetas: theta.map_or(ThetaChoice::ALL.to_vec(), |t| vec![t]),
        samples,
        seed: common.seed,
        execution: common.execution,
        tolerances: common.tolerances(),
    };
    let report = run_suite(suite, &cfg)?;
    let mut table = Table::new(&["suite", "checks", "failures", "borderline", "max_residual"]);
    table.push(vec![
        report.suite.clone(),
        report.checks.to_string(),
        report.failures.to_string(),
        report.borderline.to_string(),
        report.max_residual.map_or("-".into(), |r| format!("{r:.3e}")),
    ]);
    let passed = report.passed();
    let message = format!("{}/{} checks pass", report.checks - report.failures, report.checks);
    let env = Envelope::new(
        "verify",
        json!({"suite": suite, "sl": size, "theta": theta, "samples": samples, "seed": common.seed}),
        common.tolerances(),
        serde_json::to_value(&report).expect("report serializes"),
        passed,
        message,
    );
    Ok((env, Some(table)))
}

fn families(common: &Common, size: usize) -> Result<(Envelope, Option<Table>), Failure> {
    let n = rank_of(size)?;
    let list = spherical_families(n)?;
    let mut table = Table::new(&["class", "l", "m_l", "dim"]);
    for f in &list {
        table.push(vec![f.spec().to_string(), f.l.to_string(), f.m_l.name.clone(), f.predicted_dim.to_string()]);
    }
    let env = Envelope::new(
        "families",
        json!({"sl": size, "seed": common.seed}),
        common.tolerances(),
        serde_json::to_value(&list).expect("families serialize"),
        true,
        format!("{} families", list.len()),
    );
    Ok((env, Some(table)))
}

fn double(common: &Common, size: usize, class: &str, samples: usize) -> Result<(Envelope, Option<Table>), Failure> {
    let n = rank_of(size)?;
    let real = build_sl_realization(n)?;
    let g = class_matrix(class, n)?;
    let descriptor = analyze_class(&g, &twisted_leaves::bivector::Automorphism::Identity, &real)?;
    let group = WeylGroup::type_a(n)?;
    let mut table = Table::new(&["u", "v", "cell_dim", "leaf_dim"]);
    let mut cells = Vec::new();
    for u in group.elements()? {
        for v in group.elements()? {
            let d = double_cell(u, v, &descriptor)?;
            table.push(vec![d.u.name.clone(), d.v.name.clone(), d.cell_dim.to_string(), d.leaf_dim.to_string()]);
            cells.push(d);
        }
    }
    let mut residuals = Vec::with_capacity(samples);
    for i in 0..samples {
        let mut rng = rng_for(common.seed, i as u64);
        let g1 = special_linear(n + 1, &mut rng);
        let g2 = special_linear(n + 1, &mut rng);
        residuals.push(verify_double_iso(&g1, &g2)?.residual);
    }
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    let passed = worst < common.residual_tol;
    let env = Envelope::new(
        "double",
        json!({"sl": size, "class": class, "samples": samples, "seed": common.seed}),
        common.tolerances(),
        json!({"cells": cells, "iso_residuals": residuals, "max_iso_residual": worst}),
        passed,
        format!("{} cells, max isomorphism residual {worst:.3e}", cells.len()),
    );
    Ok((env, Some(table)))
}

fn run(cli: &Cli) -> Result<(Envelope, Option<Table>), Failure> {
    let common = &cli.common;
    match &cli.command {
        Command::Leaves { size, class, theta } => leaves(common, *size, class, *theta),
        Command::RankAt { file, theta } => rank_at(common, file, *theta),
        Command::Verify {
            suite,
            size,
            theta,
            samples,
        } => verify(common, *suite, *size, *theta, *samples),
        Command::Families { size } => families(common, *size),
        Command::Double { size, class, samples } => double(common, *size, class, *samples),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((env, table)) => {
            match (cli.common.tsv, table) {
                (true, Some(t)) => print!("{}", t.to_tsv()),
                _ => println!("{}", serde_json::to_string_pretty(&env).expect("envelope serializes")),
            }
            if env.summary.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed: {}", env.summary.message);
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
