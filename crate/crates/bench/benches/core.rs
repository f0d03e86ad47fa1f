use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use cozero::corpus::{generate, CorpusSpec, GeneratorKind, Poset, SizeSpec};
use cozero::cuts::{prime_ideals, prime_ideals_brute};
use cozero::rational::rat;
use cozero::verify::run_suites;
use cozero::{Frame, Op, StepFunction, Suite, VerifyConfig};

fn boolean_cube(exponent: usize) -> Arc<Frame> {
    let antichain = Poset {
        size: exponent,
        covers: Vec::new(),
    };
    Arc::new(antichain.downset_lattice(&format!("b{exponent}")))
}

fn frame_construction(c: &mut Criterion) {
    let antichain = Poset {
        size: 5,
        covers: Vec::new(),
    };
    c.bench_function("downset lattice of a 5-antichain", |b| {
        b.iter(|| antichain.downset_lattice("b5"))
    });
}

fn prime_ideal_routes(c: &mut Criterion) {
    let frame = boolean_cube(4);
    c.bench_function("prime ideals via join-irreducibles (16 elements)", |b| {
        b.iter(|| prime_ideals(&frame).unwrap())
    });
    c.bench_function("prime ideals by subset scan (16 elements)", |b| {
        b.iter(|| prime_ideals_brute(&frame).unwrap())
    });
}

fn combine_and_eval(c: &mut Criterion) {
    let frame = boolean_cube(4);
    let atoms = frame.center_atoms();
    let f = StepFunction::new(
        &frame,
        vec![
            (atoms[0], rat(1, 2)),
            (atoms[1], rat(-3, 1)),
            (frame.join(atoms[2], atoms[3]), rat(0, 1)),
        ],
    )
    .unwrap();
    let g = StepFunction::new(
        &frame,
        vec![
            (frame.join(atoms[0], atoms[1]), rat(2, 1)),
            (atoms[2], rat(1, 3)),
            (atoms[3], rat(0, 1)),
        ],
    )
    .unwrap();
    c.bench_function("pointwise sum via common refinement", |b| {
        b.iter(|| f.combine(&g, Op::Add).unwrap())
    });
    let sum = f.combine(&g, Op::Add).unwrap();
    let (lo, hi) = (rat(-1, 1), rat(5, 2));
    c.bench_function("open interval preimage", |b| {
        b.iter(|| sum.eval_interval(&lo, &hi).unwrap())
    });
}

fn suite_over_small_corpus(c: &mut Criterion) {
    let spec = CorpusSpec {
        kind: GeneratorKind::Chain,
        size: SizeSpec::UpTo(5),
        seed: 0,
    };
    let frames: Vec<Arc<Frame>> = generate(&spec).unwrap().into_iter().map(Arc::new).collect();
    let cfg = VerifyConfig {
        functions_per_frame: 12,
        ..VerifyConfig::default()
    };
    c.bench_function("sigma-frame suite over chains up to length 5", |b| {
        b.iter(|| run_suites(&frames, &[Suite::SigmaFrame], &cfg))
    });
}

criterion_group!(
    benches,
    frame_construction,
    prime_ideal_routes,
    combine_and_eval,
    suite_over_small_corpus
);
criterion_main!(benches);
