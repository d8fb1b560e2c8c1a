use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use superanalysis::algebra::{AlgebraElement, Builtin};
use superanalysis::exec::Execution;
use superanalysis::quadrature::{reproduce, BallDomain, QuadratureSpec};
use superanalysis::superfunc::{QsPoly, SuperPoint, Superspace};

fn reproduction(c: &mut Criterion) {
    let sp = Superspace::builtin(Builtin::ComplexGrassmann(1), 1, 1).unwrap().to_f64();
    let t = sp.table();
    let z = QsPoly::z(&sp, 0, 0);
    let f = QsPoly::y(&sp, 0).mul(t, &z).add(&z.mul(t, &z)).add(&QsPoly::constant(&sp, AlgebraElement::basis(4, 0)));
    let domain = BallDomain::new(SuperPoint::origin(&sp), 1.0).unwrap();
    let x = SuperPoint::from_flat(&sp, &[0.2, -0.1, 0.15, 0.05]).unwrap();

    let mut group = c.benchmark_group("reproduce_n1_m1");
    group.sample_size(10);
    for samples in [16_384usize, 131_072] {
        for execution in [Execution::Sequential, Execution::Parallel] {
            let q = QuadratureSpec::monte_carlo(samples, 1).with_execution(execution);
            group.bench_with_input(BenchmarkId::new(format!("{execution:?}").to_lowercase(), samples), &q, |b, q| {
                b.iter(|| reproduce(&sp, &f, &x, &domain, q).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, reproduction);
criterion_main!(benches);
