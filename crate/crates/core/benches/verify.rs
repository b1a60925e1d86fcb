use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coxdecomp::catalog::{builtin_system, table_rows, verify_rows};
use coxdecomp::coxeter::{genset, FiniteGroup};
use coxdecomp::decomp::{Decomposition, GroupData};
use coxdecomp::suite::root_system_suite;
use coxdecomp::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn golden_table(c: &mut Criterion) {
    let rows = table_rows();
    let mut g = c.benchmark_group("golden_table");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| assert!(verify_rows(&rows, exec).iter().all(Result::is_ok)))
        });
    }
    g.finish();
}

fn parabolics_b4(c: &mut Criterion) {
    let sys = builtin_system("B4").unwrap();
    let d = Decomposition::new(sys.clone(), genset([0])).unwrap();
    let grp = FiniteGroup::new(sys).unwrap();
    let data = GroupData::new(&d, &grp).unwrap();
    let mut g = c.benchmark_group("parabolics_b4");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| data.verify_all(exec).unwrap())
        });
    }
    g.finish();
}

fn root_suite_b3(c: &mut Criterion) {
    let sys = builtin_system("B3").unwrap();
    let mut g = c.benchmark_group("root_suite_b3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| root_system_suite(&sys, None, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, golden_table, parabolics_b4, root_suite_b3);
criterion_main!(benches);
