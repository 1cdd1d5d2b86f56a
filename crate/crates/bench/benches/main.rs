use carleson::construction::phi_spectrum;
use carleson::disk::{halfplane_lp_pairing, moment_carleson_square, CarlesonSquare};
use carleson::dyadic::DyadicInterval;
use carleson::embedding::{embedding_form_paper, embedding_form_spectral};
use carleson::index::TaylorIndex;
use carleson::measure::{gram_matrix, largest_eigenvalue};
use carleson::wavelet::{Ramp, WaveletProfile};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn profile() -> WaveletProfile {
    WaveletProfile::new(Ramp::PolynomialC3)
}

fn bench_profile_eval(c: &mut Criterion) {
    let p = profile();
    c.bench_function("psi_hat 1e4 points", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for i in 0..10_000 {
                acc += p.eval(black_box(i as f64 * 2e-4));
            }
            acc
        })
    });
}

fn bench_spectrum(c: &mut Criterion) {
    let p = profile();
    c.bench_function("phi_spectrum N=64", |b| b.iter(|| phi_spectrum(&p, black_box(64)).unwrap()));
    c.bench_function("phi_spectrum N=256", |b| b.iter(|| phi_spectrum(&p, black_box(256)).unwrap()));
}

fn bench_embedding(c: &mut Criterion) {
    let p = profile();
    c.bench_function("embedding spectral N=64", |b| {
        b.iter(|| embedding_form_spectral(&p, black_box(64)).unwrap())
    });
    c.bench_function("embedding paper N=64", |b| {
        b.iter(|| embedding_form_paper(&p, black_box(64)).unwrap())
    });
}

fn bench_measure(c: &mut Criterion) {
    let p = profile();
    let spectrum = phi_spectrum(&p, 32).unwrap();
    let q = CarlesonSquare::new(DyadicInterval::arc(1, 0));
    c.bench_function("gram rank-1 N=32", |b| b.iter(|| gram_matrix(&q, black_box(&spectrum))));
    let gram = gram_matrix(&q, &spectrum);
    c.bench_function("largest eigenvalue 32x32", |b| {
        b.iter(|| largest_eigenvalue(black_box(&gram)).unwrap())
    });
}

fn bench_disk(c: &mut Criterion) {
    let p = profile();
    let q = CarlesonSquare::new(DyadicInterval::arc(3, 5));
    let a = TaylorIndex::from_u64(173);
    let bb = TaylorIndex::from_u64(40);
    c.bench_function("carleson square moment", |be| {
        be.iter(|| moment_carleson_square(black_box(&q), black_box(&a), black_box(&bb)))
    });
    let i = DyadicInterval::new(2, 1);
    let j = DyadicInterval::new(1, 0);
    c.bench_function("half-plane pairing", |b| {
        b.iter(|| halfplane_lp_pairing(&p, black_box(&i), black_box(&j)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = bench_profile_eval, bench_spectrum, bench_embedding, bench_measure, bench_disk
}
criterion_main!(benches);
