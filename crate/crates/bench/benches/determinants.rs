use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use spanfactor::graphs::{cartesian_product, complete_graph, hypercube};
use spanfactor::laplacian::{
    determinant_bareiss, determinant_cofactor, determinant_minors, weighted_laplacian,
};
use spanfactor::treebrute::enumerate_sum;
use spanfactor::{Graph, PolyMatrix, TreeStatistic, WeightScheme};

fn product(dims: &[usize]) -> Graph {
    let factors: Vec<_> = dims.iter().map(|&n| complete_graph(n).unwrap()).collect();
    cartesian_product(&factors).unwrap()
}

fn minor(g: &Graph, w: WeightScheme) -> PolyMatrix {
    weighted_laplacian(g, w).unwrap().reduce(0, 0).unwrap().0
}

fn small_minors(c: &mut Criterion) {
    let mut group = c.benchmark_group("det-k5-cayley-prufer");
    let m = minor(&complete_graph(5).unwrap(), WeightScheme::CayleyPrufer);
    group.bench_function("cofactor", |b| {
        b.iter(|| determinant_cofactor(black_box(&m)))
    });
    group.bench_function("minors", |b| b.iter(|| determinant_minors(black_box(&m))));
    group.bench_function("bareiss", |b| b.iter(|| determinant_bareiss(black_box(&m))));
    group.finish();
}

fn product_minors(c: &mut Criterion) {
    let mut group = c.benchmark_group("det-products");
    group.sample_size(10);
    for dims in [vec![2, 3], vec![2, 2, 2]] {
        let label = format!("{dims:?}");
        let m = minor(&product(&dims), WeightScheme::Direction);
        group.bench_with_input(BenchmarkId::new("minors/direction", &label), &m, |b, m| {
            b.iter(|| determinant_minors(black_box(m)))
        });
        group.bench_with_input(BenchmarkId::new("bareiss/direction", &label), &m, |b, m| {
            b.iter(|| determinant_bareiss(black_box(m)))
        });
        let m = minor(&product(&dims), WeightScheme::Decoupled);
        group.bench_with_input(BenchmarkId::new("minors/decoupled", &label), &m, |b, m| {
            b.iter(|| determinant_minors(black_box(m)))
        });
    }
    let m = minor(&hypercube(3).unwrap(), WeightScheme::CubeLaurent);
    group.bench_function("minors/cube-3", |b| {
        b.iter(|| determinant_minors(black_box(&m)))
    });
    group.finish();
}

fn brute_force(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute-force");
    group.sample_size(10);
    let q3 = hypercube(3).unwrap();
    group.bench_function("q3-cube", |b| {
        b.iter(|| enumerate_sum(black_box(&q3), TreeStatistic::CubeSubstituted))
    });
    let k5 = complete_graph(5).unwrap();
    group.bench_function("k5-degree", |b| {
        b.iter(|| enumerate_sum(black_box(&k5), TreeStatistic::Degree))
    });
    group.finish();
}

criterion_group!(benches, small_minors, product_minors, brute_force);
criterion_main!(benches);
