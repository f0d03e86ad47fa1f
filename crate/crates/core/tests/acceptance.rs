//! Acceptance gate: twelve criteria over the default corpus. Each test
//! prints one PASS/FAIL line; run with `--nocapture` to see them all.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use cozero::corpus::{self, CorpusSpec, GeneratorKind, SizeSpec};
use cozero::cozpart;
use cozero::cuts;
use cozero::lattice::Frame;
use cozero::report::PropertyReport;
use cozero::verify::{self, VerifyConfig, ALL_SUITES};

fn corpus_frames() -> &'static [Arc<Frame>] {
    static CORPUS: OnceLock<Vec<Arc<Frame>>> = OnceLock::new();
    CORPUS.get_or_init(corpus::default_corpus)
}

fn all_reports() -> &'static [PropertyReport] {
    static REPORTS: OnceLock<Vec<PropertyReport>> = OnceLock::new();
    REPORTS
        .get_or_init(|| verify::run_suites(corpus_frames(), &ALL_SUITES, &VerifyConfig::default()))
}

fn conclude(number: u32, name: &str, checked: usize, failures: Vec<String>) {
    assert!(checked > 0, "criterion {number:02} checked nothing");
    if failures.is_empty() {
        println!("ACCEPTANCE {number:02} {name}: PASS ({checked} checks)");
    } else {
        println!(
            "ACCEPTANCE {number:02} {name}: FAIL ({} of {checked} checks; first: {})",
            failures.len(),
            failures[0]
        );
        panic!("criterion {number:02} {name}: {}", failures.join("; "));
    }
}

/// Collects the verdicts of the named properties across every frame,
/// insisting each frame reported each property exactly once.
fn property_failures(properties: &[&str]) -> (usize, Vec<String>) {
    let wanted: BTreeSet<&str> = properties.iter().copied().collect();
    let mut checked = 0;
    let mut failures = Vec::new();
    for r in all_reports() {
        if wanted.contains(r.property.as_str()) {
            checked += 1;
            if !r.is_pass() {
                failures.push(format!(
                    "{} on {}: {}",
                    r.property,
                    r.frame,
                    serde_json::to_string(&r.counterexample).unwrap_or_default()
                ));
            }
        }
    }
    assert_eq!(
        checked,
        properties.len() * corpus_frames().len(),
        "every frame must report {properties:?} exactly once"
    );
    (checked, failures)
}

#[test]
fn c01_model_laws() {
    let (checked, failures) = property_failures(&[
        "model-laws/interval-meet",
        "model-laws/interval-join",
        "model-laws/interval-refine",
        "model-laws/full-range",
        "model-laws/pointwise-formula",
    ]);
    conclude(1, "model laws R1-R4 and pointwise formula", checked, failures);
}

#[test]
fn c02_indicator_ray_tables() {
    let (checked, failures) =
        property_failures(&["remark3/indicator-rays", "remark3/scaled-rays"]);
    conclude(2, "indicator and scaled-indicator ray tables", checked, failures);
}

#[test]
fn c03_idempotent_pair_tables() {
    let (checked, failures) = property_failures(&[
        "idempotent-tables/sum",
        "idempotent-tables/product",
        "idempotent-tables/max",
        "idempotent-tables/min",
        "idempotent-tables/sum-coz",
    ]);
    conclude(3, "idempotent pair case tables", checked, failures);
}

#[test]
fn c04_cut_lemmas() {
    let (checked, failures) = property_failures(&[
        "cut-lemmas/prime-enumeration",
        "cut-lemmas/coincidence-attainment",
        "cut-lemmas/grid-classification",
        "cut-lemmas/indicator-values",
        "cut-lemmas/scaling",
        "cut-lemmas/pointwise-ops",
        "cut-lemmas/bounded",
    ]);
    conclude(4, "prime-ideal cut lemmas", checked, failures);
}

#[test]
fn c05_linear_combination_cuts() {
    let (checked, failures) = property_failures(&["cut-lemmas/linear-combination"]);
    conclude(5, "linear combination cut additivity", checked, failures);
}

#[test]
fn c06_range_through_cuts() {
    let (checked, failures) = property_failures(&["range-subsets/cut-range"]);
    conclude(6, "range agreement through cuts", checked, failures);
}

#[test]
fn c07_range_inclusions() {
    let (checked, failures) = property_failures(&[
        "range-subsets/linear",
        "range-subsets/binary",
        "range-subsets/series",
    ]);
    conclude(7, "range inclusion propositions", checked, failures);
}

#[test]
fn c08_sigma_frame() {
    let (checked, failures) = property_failures(&[
        "sigma-frame-laws",
        "sigma-frame/countable-restriction",
        "sigma-frame/witnesses",
    ]);
    conclude(8, "cozero part sigma-frame laws", checked, failures);
}

#[test]
fn c09_zero_dimensional_equivalence() {
    let (mut checked, mut failures) =
        property_failures(&["coz-decomposition/zero-dimensional-equivalence"]);
    for frame in corpus_frames() {
        let name = frame.name();
        let expected = match name {
            "b1" | "b2" | "b3" | "b4" | "c2" => Some(true),
            "c3" | "c4" | "c5" | "c6" | "c7" | "c8" => Some(false),
            _ => None,
        };
        let Some(expected) = expected else { continue };
        checked += 2;
        let zd = cozpart::is_zero_dimensional(frame);
        let ccr = cozpart::is_c_completely_regular(frame);
        if zd.verdict != expected {
            failures.push(format!("zero-dimensional on {name} is {}", zd.verdict));
        }
        if ccr.verdict != expected {
            failures.push(format!("c-complete regularity on {name} is {}", ccr.verdict));
        }
    }
    conclude(
        9,
        "zero-dimensional iff c-completely regular",
        checked,
        failures,
    );
}

#[test]
fn c10_separation_and_covers() {
    let names = [
        "regular",
        "normal",
        "perfectly-normal",
        "alexandroff",
        "covers-shrinkable",
        "covers-shrinkable-strict",
        "covers-paracompact",
    ];
    let (checked, mut failures) = property_failures(&names);
    let wanted: BTreeSet<&str> = names.into_iter().collect();
    for r in all_reports() {
        if wanted.contains(r.property.as_str()) && r.witnesses.is_empty() {
            failures.push(format!("{} on {} has no witnesses", r.property, r.frame));
        }
    }
    conclude(10, "cozero part separation and cover properties", checked, failures);
}

#[test]
fn c11_oracle_agreements() {
    let mut checked = 0;
    let mut failures = Vec::new();
    for frame in corpus_frames() {
        let name = frame.name();

        if frame.len() <= 16 {
            checked += 1;
            let canonical: BTreeSet<BTreeSet<String>> = cuts::prime_ideals(frame)
                .expect("corpus frame")
                .iter()
                .map(|p| {
                    p.members()
                        .iter()
                        .map(|&m| frame.element_name(m).to_owned())
                        .collect()
                })
                .collect();
            let brute: BTreeSet<BTreeSet<String>> = cuts::prime_ideals_brute(frame)
                .expect("small frame")
                .iter()
                .map(|members| {
                    members
                        .iter()
                        .map(|&m| frame.element_name(m).to_owned())
                        .collect()
                })
                .collect();
            if canonical != brute {
                failures.push(format!("prime ideal enumerations differ on {name}"));
            }
        }

        if frame.len() <= 32 {
            checked += 1;
            for a in frame.elements() {
                for b in frame.elements() {
                    let direct = frame.rather_below(a, b);
                    let searched = frame.rather_below_witness(a, b).is_some();
                    if direct != searched {
                        failures.push(format!(
                            "rather-below routes disagree on {name} at ({}, {})",
                            frame.element_name(a),
                            frame.element_name(b)
                        ));
                    }
                }
            }
        }

        checked += 1;
        if let Err(e) = corpus::birkhoff_reconstruction_check(frame) {
            failures.push(format!("downset reconstruction failed on {name}: {e}"));
        }
    }
    conclude(11, "independent oracle agreements", checked, failures);
}

#[test]
fn c12_corpus_determinism() {
    let mut checked = 0;
    let mut failures = Vec::new();

    let spec = CorpusSpec {
        kind: GeneratorKind::AllPosets,
        size: SizeSpec::UpTo(4),
        seed: 5,
    };
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    corpus::write_corpus(&spec, dir_a.path()).unwrap();
    corpus::write_corpus(&spec, dir_b.path()).unwrap();
    let mut names: Vec<_> = std::fs::read_dir(dir_a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    checked += names.len();
    if names.is_empty() {
        failures.push("no files written".to_owned());
    }
    for file in &names {
        let a = std::fs::read(dir_a.path().join(file)).unwrap();
        let b = std::fs::read(dir_b.path().join(file)).unwrap_or_default();
        if a != b {
            failures.push(format!("{} differs between runs", file.to_string_lossy()));
        }
    }

    for (n, expected) in [(1usize, 1usize), (2, 2), (3, 5), (4, 16), (5, 63)] {
        checked += 1;
        let found = corpus::enumerate_posets(n).unwrap().len();
        if found != expected {
            failures.push(format!("{found} poset classes at {n} points, expected {expected}"));
        }
    }

    conclude(12, "corpus generation determinism", checked, failures);
}
