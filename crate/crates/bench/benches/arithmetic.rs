use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use spanfactor::formulas::{cayley_prufer_rhs, directions_rhs_product_form};
use spanfactor::{div_exact, Polynomial, Variable};

fn linear_form(n: u32) -> Polynomial {
    (1..=n).map(|i| Polynomial::var(Variable::x(i))).sum()
}

fn multiplication(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiply");
    for n in [4u32, 6, 8] {
        let a = linear_form(n).pow(3);
        let b = linear_form(n).pow(2);
        group.bench_with_input(
            BenchmarkId::new("power-sums", n),
            &(a, b),
            |bench, (a, b)| bench.iter(|| black_box(a) * black_box(b)),
        );
    }
    group.finish();
}

fn division(c: &mut Criterion) {
    let mut group = c.benchmark_group("div_exact");
    for n in [4usize, 6] {
        let p = cayley_prufer_rhs(n).unwrap();
        let d = linear_form(n as u32);
        group.bench_with_input(
            BenchmarkId::new("cayley-by-linear", n),
            &(p, d),
            |bench, (p, d)| bench.iter(|| div_exact(black_box(p), black_box(d)).unwrap()),
        );
    }
    let p = directions_rhs_product_form(&[3, 3, 2]);
    let d = Polynomial::var(Variable::q(1)) * Polynomial::constant(3)
        + Polynomial::var(Variable::q(3)) * Polynomial::constant(2);
    group.bench_function("directions-3,3,2-by-factor", |bench| {
        bench.iter(|| div_exact(black_box(&p), black_box(&d)).unwrap())
    });
    group.finish();
}

fn text(c: &mut Criterion) {
    let p = cayley_prufer_rhs(6).unwrap();
    let s = p.to_string();
    c.bench_function("format cayley n=6", |b| {
        b.iter(|| black_box(&p).to_string())
    });
    c.bench_function("parse cayley n=6", |b| {
        b.iter(|| black_box(&s).parse::<Polynomial>().unwrap())
    });
}

criterion_group!(benches, multiplication, division, text);
criterion_main!(benches);
