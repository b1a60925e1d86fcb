use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use coxdecomp::catalog::{self, recognize_irreducible, Scale, TableRow};
use coxdecomp::coxeter::{genset, CoxMatrix, CoxeterSystem, FiniteGroup};
use coxdecomp::decomp::{DecompReport, Decomposition, GroupData};
use coxdecomp::descent::DescentAlgebras;
use coxdecomp::external::{check_external, ExtData, Verdict};
use coxdecomp::rootsys::{classify_gram, GramClass};
use coxdecomp::suite::{self, Check};
use coxdecomp::{Error, Execution, Result};

#[derive(Parser)]
#[command(
    name = "coxdecomp",
    version,
    about = "Semidirect product decompositions of Coxeter groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run every check on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute W~, its Coxeter matrix and the action of W_I.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Write a Graphviz diagram of M~ here.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Write the data of W~ x| W_I in the format read by `external`.
        #[arg(long, value_name = "FILE")]
        ext: Option<PathBuf>,
    },
    /// Check the structural invariants of a decomposition.
    Verify {
        #[command(flatten)]
        input: Input,
    },
    /// Check the descent algebra statements (finite W only).
    Descent {
        #[command(flatten)]
        input: Input,
    },
    /// Decide whether external data defines a Coxeter system.
    External {
        /// File with [W'], [W~], [theta] and [J] sections.
        file: PathBuf,
        #[arg(long, default_value_t = 200)]
        bound: u32,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Verify every row of the table.
    Table {
        /// Rows to use instead of the built-in ones.
        #[arg(long, value_name = "FILE")]
        rows: Option<PathBuf>,
        /// Largest rank of the generated families.
        #[arg(long, default_value_t = 5)]
        max_rank: usize,
        /// Largest m of the dihedral rows I2(2m).
        #[arg(long, default_value_t = 6)]
        max_m: u32,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// Built-in type such as B4, F4, I2(8), ~C3.
    #[arg(
        long = "type",
        value_name = "TYPE",
        conflicts_with = "matrix",
        required_unless_present = "matrix"
    )]
    ty: Option<String>,
    /// Coxeter matrix file: a label line, then one row of bonds per label.
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    /// Comma-separated labels of I.
    #[arg(long = "I", value_name = "LIST", value_delimiter = ',')]
    i: Vec<String>,
    /// Ball radius used where a group is infinite.
    #[arg(long, value_name = "N")]
    bound: Option<usize>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// Report text and exit status of a finished job.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: 0 }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

impl Input {
    fn system(&self) -> Result<(Arc<CoxeterSystem>, String)> {
        match (&self.ty, &self.matrix) {
            (Some(t), _) => Ok((catalog::builtin_system(t)?, t.clone())),
            (None, Some(p)) => {
                let m = CoxMatrix::parse(&read(p)?)?;
                let name = ambient_name(&m);
                Ok((CoxeterSystem::new(m), name))
            }
            (None, None) => Err(Error::Parse("one of --type or --matrix is required".into())),
        }
    }

    fn decomposition(&self) -> Result<(Decomposition, String)> {
        let (sys, name) = self.system()?;
        let idx = self
            .i
            .iter()
            .map(|l| {
                sys.matrix()
                    .index_of(l.trim())
                    .ok_or_else(|| Error::Parse(format!("`{l}` is not a generator")))
            })
            .collect::<Result<Vec<_>>>()?;
        let i = genset(idx);
        let d = match self.bound {
            Some(r) => Decomposition::with_bound(sys, i, r)?,
            None => Decomposition::new(sys, i)?,
        };
        Ok((d, name))
    }
}

fn ambient_name(m: &CoxMatrix) -> String {
    catalog::recognize(m)
        .into_iter()
        .map(|(_, n)| n)
        .collect::<Vec<_>>()
        .join(" x ")
}

fn component_types(d: &Decomposition) -> Result<Vec<String>> {
    Ok(d.components()?
        .iter()
        .map(|c| recognize_irreducible(&d.tilde_matrix().restrict(c)))
        .collect())
}

fn report_checks(title: &str, checks: &[Check]) -> Outcome {
    let mut text = format!("{title}\n");
    for c in checks {
        text.push_str(&c.line());
        text.push('\n');
    }
    let code = checks
        .iter()
        .filter_map(|c| c.outcome.as_ref().err())
        .map(|e| if e.exit_code() == 3 { 3 } else { 1 })
        .max()
        .unwrap_or(0);
    Outcome { text, code }
}

fn decompose(input: &Input, dot: Option<&Path>, ext: Option<&Path>) -> Result<Outcome> {
    let (d, name) = input.decomposition()?;
    let report = DecompReport::new(&d, &name, component_types(&d)?)?;
    if let Some(p) = dot {
        write(p, &report.to_dot())?;
    }
    if let Some(p) = ext {
        write(p, &ExtData::from_decomposition(&d)?.to_text())?;
    }
    Ok(Outcome {
        text: report.to_text(),
        code: if d.is_complete() { 0 } else { 3 },
    })
}

fn verify(input: &Input, exec: Execution) -> Result<Outcome> {
    let (d, name) = input.decomposition()?;
    let sys = d.system().clone();
    let finite = classify_gram(sys.gram()) == GramClass::Finite;
    let radius = input.bound.unwrap_or(6);
    let (elems, whole) = if finite {
        (sys.enumerate_group()?, true)
    } else {
        (sys.ball(radius), false)
    };
    let mut checks = suite::decomposition_suite(&d, &elems, whole, exec);
    if finite {
        let g = FiniteGroup::new(sys.clone())?;
        let outcome = GroupData::new(&d, &g)
            .and_then(|data| data.verify_all(exec))
            .map(|r| r.len());
        checks.push(Check {
            name: "parabolic subgroups and double cosets",
            outcome,
        });
    }
    checks.extend(suite::root_system_suite(
        &sys,
        (!finite).then_some(radius),
        exec,
    )?);
    let scope = if whole {
        "whole group".to_string()
    } else {
        format!("ball of radius {radius}")
    };
    let title = format!("{name} I={{{}}} ({scope})", sys.set_string(d.i()));
    Ok(report_checks(&title, &checks))
}

fn descent(input: &Input, exec: Execution) -> Result<Outcome> {
    let (d, name) = input.decomposition()?;
    let g = FiniteGroup::new(d.system().clone())?;
    let data = GroupData::new(&d, &g)?;
    let alg = DescentAlgebras::new(&data)?;
    let checks = [
        Check {
            name: "restilde is a ring morphism",
            outcome: alg.verify_morphism(exec),
        },
        Check {
            name: "z restilde(x) = x z",
            outcome: alg.verify_conjugation().map(|_| alg.rank()),
        },
        Check {
            name: "image is the W_I-fixed part",
            outcome: alg.verify_image_fixed(),
        },
        Check {
            name: "character diagram commutes",
            outcome: alg.verify_diagram(exec).map(|_| alg.rank()),
        },
    ];
    let title = format!(
        "{name} I={{{}}}: |W| = {}, |J~| = {}",
        d.system().set_string(d.i()),
        g.len(),
        d.len()
    );
    Ok(report_checks(&title, &checks))
}

fn external(file: &Path, bound: u32, exec: Execution) -> Result<Outcome> {
    let data = ExtData::parse(&read(file)?)?;
    Ok(match check_external(&data, bound, exec)? {
        Verdict::Coxeter(m) => Outcome::ok(format!(
            "coxeter system {}\n{}",
            ambient_name(&m),
            m.to_text()
        )),
        Verdict::Violation(v) => Outcome {
            text: format!("not a coxeter system: {v}\n"),
            code: 1,
        },
    })
}

fn table(rows: Option<&Path>, scale: Scale, exec: Execution) -> Result<Outcome> {
    let rows: Vec<TableRow> = match rows {
        Some(p) => TableRow::parse_all(&read(p)?)?,
        None => catalog::table_rows_at(scale),
    };
    let mut text = String::new();
    let mut failed = 0;
    for (row, r) in rows.iter().zip(catalog::verify_rows(&rows, exec)) {
        match r {
            Ok(rep) => text.push_str(&format!(
                "PASS {} [{}]\n",
                rep.name,
                rep.components.join(", ")
            )),
            Err(e) => {
                failed += 1;
                text.push_str(&format!("FAIL {}: {e}\n", row.name()));
            }
        }
    }
    text.push_str(&format!(
        "{} of {} rows pass\n",
        rows.len() - failed,
        rows.len()
    ));
    Ok(Outcome {
        text,
        code: if failed > 0 { 1 } else { 0 },
    })
}

fn run(cli: &Cli) -> Result<(Outcome, Option<&Path>)> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match &cli.command {
        Command::Decompose { input, dot, ext } => Ok((
            decompose(input, dot.as_deref(), ext.as_deref())?,
            input.out.as_deref(),
        )),
        Command::Verify { input } => Ok((verify(input, exec)?, input.out.as_deref())),
        Command::Descent { input } => Ok((descent(input, exec)?, input.out.as_deref())),
        Command::External { file, bound, out } => {
            Ok((external(file, *bound, exec)?, out.as_deref()))
        }
        Command::Table {
            rows,
            max_rank,
            max_m,
            out,
        } => {
            let scale = Scale {
                max_m: *max_m,
                max_rank: *max_rank,
            };
            Ok((table(rows.as_deref(), scale, exec)?, out.as_deref()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((outcome, out)) => {
            match out {
                Some(p) => {
                    if let Err(e) = write(p, &outcome.text) {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", outcome.text),
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
