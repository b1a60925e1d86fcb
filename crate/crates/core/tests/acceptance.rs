//! The acceptance criteria, one line of output each. Exits nonzero if any fails.

use std::time::{Duration, Instant};

use coxdecomp::catalog::{builtin_system, table_rows, verify_rows, TableRow};
use coxdecomp::coxeter::{genset, Elem, FiniteGroup};
use coxdecomp::decomp::{Decomposition, GroupData};
use coxdecomp::descent::DescentAlgebras;
use coxdecomp::external::{construct_from_roots, roots_of_decomposition, RootVerdict};
use coxdecomp::rootsys::{classify_gram, GramClass};
use coxdecomp::suite::{self, Check};
use coxdecomp::{Error, Execution, Result};

const EXEC: Execution = Execution::Parallel;

fn consistency<T>(msg: String) -> Result<T> {
    Err(Error::Consistency(msg))
}

fn decompositions(rows: &[TableRow]) -> Result<Vec<(String, Decomposition)>> {
    rows.iter()
        .map(|r| Ok((r.name(), r.decompose()?)))
        .collect()
}

fn ambient_class(d: &Decomposition) -> GramClass {
    classify_gram(d.system().gram())
}

/// Sum case counts over rows, failing on the first row that fails.
fn per_row(
    ds: &[&(String, Decomposition)],
    f: impl Fn(&Decomposition) -> Result<usize>,
) -> Result<usize> {
    let mut n = 0;
    for (name, d) in ds.iter().copied() {
        n += f(d).map_err(|e| Error::Consistency(format!("{name}: {e}")))?;
    }
    Ok(n)
}

fn within(start: Instant, limit: Duration, n: usize) -> Result<usize> {
    let t = start.elapsed();
    if t > limit {
        return consistency(format!("took {t:?}, limit {limit:?}"));
    }
    Ok(n)
}

fn golden(rows: &[TableRow]) -> Result<usize> {
    let start = Instant::now();
    for r in verify_rows(rows, EXEC) {
        r?;
    }
    within(start, Duration::from_secs(120), rows.len())
}

/// A row name, its decomposition, the elements to check and whether they form the whole group.
type ElemSet<'a> = (&'a str, &'a Decomposition, Vec<Elem>, bool);

/// The ambient systems of criteria 4 and 5 with the elements they run over.
fn structure_sets(ds: &[(String, Decomposition)]) -> Result<Vec<ElemSet<'_>>> {
    let mut out = Vec::new();
    for (name, d) in ds {
        let amb = name.split(' ').next().unwrap();
        match amb {
            "B3" | "B4" | "F4" => out.push((name.as_str(), d, d.system().enumerate_group()?, true)),
            "~G2" | "~C2" | "~B3" => out.push((name.as_str(), d, d.system().ball(8), false)),
            _ => {}
        }
    }
    Ok(out)
}

fn structure(sets: &[ElemSet]) -> Result<usize> {
    let mut n = 0;
    for (name, d, elems, whole) in sets {
        n += suite::factorization(d, elems, *whole)
            .map_err(|e| Error::Consistency(format!("{name}: {e}")))?;
    }
    Ok(n)
}

fn lengths(sets: &[ElemSet]) -> Result<usize> {
    let mut n = 0;
    for (name, d, elems, _) in sets {
        n += suite::length_identity(d, elems, EXEC)
            .map_err(|e| Error::Consistency(format!("{name}: {e}")))?;
    }
    Ok(n)
}

fn b_with_t(n: usize) -> Result<Decomposition> {
    let sys = builtin_system(&format!("B{n}"))?;
    let t = sys.matrix().index_of("t").unwrap();
    Decomposition::new(sys, genset([t]))
}

fn parabolics() -> Result<usize> {
    let mut n = 0;
    for rank in [3, 4] {
        let d = b_with_t(rank)?;
        let g = FiniteGroup::new(d.system().clone())?;
        n += GroupData::new(&d, &g)?.verify_all(EXEC)?.len();
    }
    Ok(n)
}

fn descent() -> Result<usize> {
    let mut n = 0;
    for rank in [2, 3, 4] {
        let start = Instant::now();
        let d = b_with_t(rank)?;
        let g = FiniteGroup::new(d.system().clone())?;
        let data = GroupData::new(&d, &g)?;
        let alg = DescentAlgebras::new(&data)?;
        n += alg.verify_morphism(EXEC)?;
        alg.verify_conjugation()?;
        n += alg.verify_image_fixed()?;
        alg.verify_diagram(EXEC)?;
        within(start, Duration::from_secs(300), 0)?;
    }
    Ok(n)
}

fn root_data(ds: &[(String, Decomposition)]) -> Result<usize> {
    let mut n = 0;
    for (name, d) in ds
        .iter()
        .filter(|(n, _)| n.starts_with("B2 ") || n.starts_with("F4 "))
    {
        let (gram, delta, pi_tilde) = roots_of_decomposition(d);
        let pi = match construct_from_roots(&gram, &delta, &pi_tilde, 1000)? {
            RootVerdict::Based(pi) => pi,
            RootVerdict::Violation(v) => return consistency(format!("{name}: {v}")),
        };
        let sys = d.system();
        let mut want: Vec<_> = (0..sys.rank()).map(|s| sys.simple_root(s)).collect();
        let mut got = pi.clone();
        want.sort_by_key(|v| format!("{v:?}"));
        got.sort_by_key(|v| format!("{v:?}"));
        if want != got {
            return consistency(format!(
                "{name}: rebuilt simple roots differ from the ambient ones"
            ));
        }
        n += 1;
    }
    Ok(n)
}

fn roots() -> Result<usize> {
    let mut n = 0;
    for (label, depth) in [("B3", None), ("~G2", Some(6)), ("~C2", Some(6))] {
        let sys = builtin_system(label)?;
        for c in suite::root_system_suite(&sys, depth, EXEC)? {
            n += c
                .outcome
                .map_err(|e| Error::Consistency(format!("{label} {}: {e}", c.name)))?;
        }
    }
    Ok(n)
}

type Criterion<'a> = Box<dyn Fn() -> Result<usize> + 'a>;

fn main() {
    let rows = table_rows();
    let ds = match decompositions(&rows) {
        Ok(ds) => ds,
        Err(e) => {
            println!("FAIL setup: {e}");
            std::process::exit(1);
        }
    };
    let all: Vec<_> = ds.iter().collect();
    let finite: Vec<_> = ds
        .iter()
        .filter(|(_, d)| ambient_class(d) == GramClass::Finite)
        .collect();
    let affine: Vec<_> = ds
        .iter()
        .filter(|(_, d)| ambient_class(d) == GramClass::Affine)
        .collect();
    let sets = structure_sets(&ds);

    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 golden table", Box::new(|| golden(&rows))),
        (
            "2 M~ by formula, roots and orders",
            Box::new(|| per_row(&all, |d| d.check_tilde_matrix().map(|_| 1))),
        ),
        (
            "3 canonical generators",
            Box::new(|| per_row(&all, suite::canonical)),
        ),
        (
            "4 semidirect factorization",
            Box::new(|| structure(sets.as_ref().map_err(Clone::clone)?)),
        ),
        (
            "5 length identity",
            Box::new(|| lengths(sets.as_ref().map_err(Clone::clone)?)),
        ),
        ("6 parabolic compatibility", Box::new(parabolics)),
        ("7 descent algebras", Box::new(descent)),
        (
            "8 |J~| = |S| and independence",
            Box::new(|| per_row(&finite, suite::cardinality)),
        ),
        (
            "9 affine components",
            Box::new(|| per_row(&affine, suite::affine_components)),
        ),
        (
            "10 external round trip",
            Box::new(|| {
                Ok(per_row(&finite, |d| suite::external_round_trip(d, EXEC))? + root_data(&ds)?)
            }),
        ),
        ("11 root system properties", Box::new(roots)),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let check = Check {
            name,
            outcome: run(),
        };
        println!("criterion {} [{:.1?}]", check.line(), start.elapsed());
        failed += !check.passed() as usize;
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
