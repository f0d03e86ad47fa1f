//! Frame corpus generation and file formats.
//!
//! Frames come from four deterministic sources: exhaustive enumeration of
//! posets up to isomorphism (1, 2, 5, 16, 63, 318 classes for 1..6 points)
//! turned into their downset lattices, Boolean algebras, chains, and
//! open-set lattices of seeded random topologies. The same spec always
//! produces byte-identical files.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Frame, FrameDoc, LatticeError};
use crate::rational::parse_rational;
use crate::realfunc::{FuncError, FunctionDoc, StepFunction};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("size {size} out of range for {kind} (maximum {max})")]
    SizeTooLarge {
        kind: &'static str,
        size: usize,
        max: usize,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid frame")]
    Validation(#[from] LatticeError),
    #[error("invalid step function")]
    Function(#[from] FuncError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Finite poset on points 0..size with an explicit cover relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub size: usize,
    pub covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Full strict order as an adjacency matrix (transitive closure of the
    /// covers).
    pub fn relation(&self) -> Vec<bool> {
        let n = self.size;
        let mut rel = vec![false; n * n];
        for &(a, b) in &self.covers {
            rel[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
        rel
    }

    /// Packs the strict-order matrix into a u64 key (size ≤ 8).
    fn key_of(rel: &[bool], n: usize, perm: &[usize]) -> u64 {
        let mut key = 0u64;
        for i in 0..n {
            for j in 0..n {
                if rel[i * n + j] {
                    key |= 1u64 << (perm[i] * n + perm[j]);
                }
            }
        }
        key
    }

    /// Minimal key over all relabelings: identical exactly for isomorphic
    /// posets.
    pub fn canonical_key(&self) -> u64 {
        let rel = self.relation();
        let perms = permutations(self.size);
        perms
            .iter()
            .map(|p| Self::key_of(&rel, self.size, p))
            .min()
            .unwrap()
    }

    /// Brute-force isomorphism by searching all bijections. Cross-check for
    /// the canonical key, independent of it.
    pub fn is_isomorphic_brute(&self, other: &Poset) -> bool {
        if self.size != other.size {
            return false;
        }
        let n = self.size;
        let ra = self.relation();
        let rb = other.relation();
        permutations(n).iter().any(|p| {
            (0..n).all(|i| (0..n).all(|j| ra[i * n + j] == rb[p[i] * n + p[j]]))
        })
    }

    /// The downset lattice: all down-closed point sets ordered by inclusion.
    /// Always a frame; validation failure would be a bug.
    pub fn downset_lattice(&self, name: &str) -> Frame {
        let n = self.size;
        assert!(n <= 16, "poset too large for a downset lattice");
        let rel = self.relation();
        let mut down_mask = vec![0u32; n];
        for i in 0..n {
            down_mask[i] = 1 << i;
            for j in 0..n {
                if rel[j * n + i] {
                    down_mask[i] |= 1 << j;
                }
            }
        }
        let mut downsets = Vec::new();
        for mask in 0u32..(1 << n) {
            let closed = (0..n).all(|i| mask >> i & 1 == 0 || mask & down_mask[i] == down_mask[i]);
            if closed {
                downsets.push(mask);
            }
        }
        let names: Vec<String> = downsets.iter().map(|&m| point_set_name(m, n)).collect();
        let index: BTreeMap<u32, usize> = downsets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut covers = Vec::new();
        for &mask in &downsets {
            for p in 0..n {
                if mask >> p & 1 == 0 {
                    let bigger = mask | 1 << p;
                    if index.contains_key(&bigger) {
                        covers.push((names[index[&mask]].clone(), names[index[&bigger]].clone()));
                    }
                }
            }
        }
        Frame::build(name, names.iter().map(|s| s.as_str()), covers.iter().map(|(a, b)| (a.as_str(), b.as_str())))
            .expect("downset lattice always validates as a frame")
    }
}

/// Stable 64-bit FNV-1a hash. Seeds derived from frame names must never
/// drift, and the std hasher is not stable across releases.
pub fn fnv1a64(text: &str) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for b in text.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn point_label(i: usize) -> char {
    (b'a' + i as u8) as char
}

fn point_set_name(mask: u32, n: usize) -> String {
    if mask == 0 {
        return "0".to_owned();
    }
    (0..n).filter(|i| mask >> i & 1 == 1).map(point_label).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

pub const MAX_POSET_POINTS: usize = 6;

/// All posets on n points up to isomorphism, in canonical-key order.
///
/// Every finite poset admits a linear extension, so it suffices to scan
/// order relations contained in the natural order of 0..n and deduplicate by
/// canonical key.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>, CorpusError> {
    if n == 0 || n > MAX_POSET_POINTS {
        return Err(CorpusError::SizeTooLarge {
            kind: "poset enumeration",
            size: n,
            max: MAX_POSET_POINTS,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut seen = BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut rel = vec![false; n * n];
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rel[i * n + j] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            ((i + 1)..n).all(|j| {
                !rel[i * n + j]
                    || ((j + 1)..n).all(|k| !rel[j * n + k] || rel[i * n + k])
            })
        });
        if !transitive {
            continue;
        }
        let poset = poset_from_relation(&rel, n);
        seen.insert(poset.canonical_key());
    }
    Ok(seen.into_iter().map(|key| poset_from_key(key, n)).collect())
}

fn poset_from_relation(rel: &[bool], n: usize) -> Poset {
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rel[i * n + j] {
                let direct = (0..n).all(|k| !(rel[i * n + k] && rel[k * n + j]));
                if direct {
                    covers.push((i, j));
                }
            }
        }
    }
    covers.sort();
    Poset { size: n, covers }
}

fn poset_from_key(key: u64, n: usize) -> Poset {
    let mut rel = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if key >> (i * n + j) & 1 == 1 {
                rel[i * n + j] = true;
            }
        }
    }
    poset_from_relation(&rel, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    AllPosets,
    Boolean,
    Chain,
    Topology,
    RandomDownset,
}

impl GeneratorKind {
    pub fn id(&self) -> &'static str {
        match self {
            GeneratorKind::AllPosets => "all-posets",
            GeneratorKind::Boolean => "boolean",
            GeneratorKind::Chain => "chain",
            GeneratorKind::Topology => "topology",
            GeneratorKind::RandomDownset => "random-downset",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl std::str::FromStr for GeneratorKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all-posets" => Ok(GeneratorKind::AllPosets),
            "boolean" => Ok(GeneratorKind::Boolean),
            "chain" => Ok(GeneratorKind::Chain),
            "topology" => Ok(GeneratorKind::Topology),
            "random-downset" => Ok(GeneratorKind::RandomDownset),
            other => Err(format!("unknown generator kind `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SizeSpec {
    Exact(usize),
    UpTo(usize),
}

impl SizeSpec {
    fn range(&self, min: usize) -> std::ops::RangeInclusive<usize> {
        match *self {
            SizeSpec::Exact(n) => n..=n,
            SizeSpec::UpTo(n) => min..=n,
        }
    }

    pub fn limit(&self) -> usize {
        match *self {
            SizeSpec::Exact(n) | SizeSpec::UpTo(n) => n,
        }
    }
}

/// A reproducible corpus request: same spec, byte-identical output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub kind: GeneratorKind,
    pub size: SizeSpec,
    pub seed: u64,
}

pub const MAX_BOOLEAN_EXPONENT: usize = 6;
pub const MAX_CHAIN_LENGTH: usize = 64;
pub const MAX_TOPOLOGY_POINTS: usize = 6;
pub const MAX_RANDOM_POSET_POINTS: usize = 7;

/// Runs one generator. Output order and names are deterministic.
pub fn generate(spec: &CorpusSpec) -> Result<Vec<Frame>, CorpusError> {
    let mut out = Vec::new();
    match spec.kind {
        GeneratorKind::AllPosets => {
            let limit = spec.size.limit();
            if limit == 0 || limit > MAX_POSET_POINTS {
                return Err(CorpusError::SizeTooLarge {
                    kind: "all-posets",
                    size: limit,
                    max: MAX_POSET_POINTS,
                });
            }
            for n in spec.size.range(1) {
                for (i, poset) in enumerate_posets(n)?.iter().enumerate() {
                    out.push(poset.downset_lattice(&format!("p{n}_{i:02}")));
                }
            }
        }
        GeneratorKind::Boolean => {
            let limit = spec.size.limit();
            if limit == 0 || limit > MAX_BOOLEAN_EXPONENT {
                return Err(CorpusError::SizeTooLarge {
                    kind: "boolean",
                    size: limit,
                    max: MAX_BOOLEAN_EXPONENT,
                });
            }
            for e in spec.size.range(1) {
                let antichain = Poset {
                    size: e,
                    covers: Vec::new(),
                };
                out.push(antichain.downset_lattice(&format!("b{e}")));
            }
        }
        GeneratorKind::Chain => {
            let limit = spec.size.limit();
            if limit < 2 || limit > MAX_CHAIN_LENGTH {
                return Err(CorpusError::SizeTooLarge {
                    kind: "chain",
                    size: limit,
                    max: MAX_CHAIN_LENGTH,
                });
            }
            for len in spec.size.range(2) {
                if len < 2 {
                    continue;
                }
                let names: Vec<String> = (0..len).map(|i| format!("c{i:02}")).collect();
                let covers: Vec<(String, String)> = (0..len - 1)
                    .map(|i| (names[i].clone(), names[i + 1].clone()))
                    .collect();
                out.push(Frame::build(
                    format!("c{len}"),
                    names.iter().map(|s| s.as_str()),
                    covers.iter().map(|(a, b)| (a.as_str(), b.as_str())),
                )?);
            }
        }
        GeneratorKind::Topology => {
            let points = spec.size.limit();
            if points == 0 || points > MAX_TOPOLOGY_POINTS {
                return Err(CorpusError::SizeTooLarge {
                    kind: "topology",
                    size: points,
                    max: MAX_TOPOLOGY_POINTS,
                });
            }
            out.push(random_topology_frame(points, spec.seed));
        }
        GeneratorKind::RandomDownset => {
            let points = spec.size.limit();
            if points == 0 || points > MAX_RANDOM_POSET_POINTS {
                return Err(CorpusError::SizeTooLarge {
                    kind: "random-downset",
                    size: points,
                    max: MAX_RANDOM_POSET_POINTS,
                });
            }
            out.push(random_poset_frame(points, spec.seed));
        }
    }
    Ok(out)
}

/// Open-set lattice of a random topology: a seeded random preorder on
/// `points` points, T0-quotiented, then the downset lattice of the quotient
/// poset.
fn random_topology_frame(points: usize, seed: u64) -> Frame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((points as u64) << 48));
    let n = points;
    let mut rel = vec![false; n * n];
    for i in 0..n {
        rel[i * n + i] = true;
        for j in 0..n {
            if i != j && rng.gen_bool(0.35) {
                rel[i * n + j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i * n + k] {
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
    }
    // T0 quotient: classes of mutual reachability, ordered by class
    // representatives in point order.
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        class_of[i] = c;
        reps.push(i);
        for j in (i + 1)..n {
            if rel[i * n + j] && rel[j * n + i] {
                class_of[j] = c;
            }
        }
    }
    let m = reps.len();
    let mut qrel = vec![false; m * m];
    for (a, &ra) in reps.iter().enumerate() {
        for (b, &rb) in reps.iter().enumerate() {
            if a != b && rel[ra * n + rb] {
                qrel[a * m + b] = true;
            }
        }
    }
    let poset = poset_from_relation(&qrel, m);
    poset.downset_lattice(&format!("t{points}s{seed}"))
}

fn random_poset_frame(points: usize, seed: u64) -> Frame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((points as u64) << 40));
    let n = points;
    let mut rel = vec![false; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.3) {
                rel[i * n + j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i * n + k] {
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
    }
    let poset = poset_from_relation(&rel, n);
    poset.downset_lattice(&format!("r{points}s{seed}"))
}

/// The default verification corpus: every poset on at most 5 points as a
/// downset lattice, Boolean algebras 2^1..2^4, chains of 2..8 elements, and
/// twenty seeded random topologies on at most 5 points.
pub fn default_corpus() -> Vec<Arc<Frame>> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for (i, poset) in enumerate_posets(n).unwrap().iter().enumerate() {
            out.push(Arc::new(poset.downset_lattice(&format!("p{n}_{i:02}"))));
        }
    }
    for e in 1..=4 {
        let frames = generate(&CorpusSpec {
            kind: GeneratorKind::Boolean,
            size: SizeSpec::Exact(e),
            seed: 0,
        })
        .unwrap();
        out.extend(frames.into_iter().map(Arc::new));
    }
    let chains = generate(&CorpusSpec {
        kind: GeneratorKind::Chain,
        size: SizeSpec::UpTo(8),
        seed: 0,
    })
    .unwrap();
    out.extend(chains.into_iter().map(Arc::new));
    for i in 0..20u64 {
        let points = 2 + (i as usize % 4);
        let frames = generate(&CorpusSpec {
            kind: GeneratorKind::Topology,
            size: SizeSpec::Exact(points),
            seed: 101 + i,
        })
        .unwrap();
        out.extend(frames.into_iter().map(Arc::new));
    }
    out
}

/// Checks the finite Birkhoff correspondence on one frame: the map sending
/// x to the set of join-irreducibles below x must be an isomorphism onto the
/// downset lattice of the join-irreducible poset. Constructs the map and
/// verifies it elementwise.
pub fn birkhoff_reconstruction_check(frame: &Frame) -> Result<(), String> {
    let irr = frame.join_irreducibles();
    let k = irr.len();
    if k > 63 {
        return Err(format!(
            "frame {} has {k} join-irreducibles; reconstruction check supports at most 63",
            frame.name()
        ));
    }
    // Downsets of the induced poset on the irreducibles.
    let mut down_mask = vec![0u64; k];
    for (i, &ji) in irr.iter().enumerate() {
        for (j, &jj) in irr.iter().enumerate() {
            if frame.leq(jj, ji) {
                down_mask[i] |= 1 << j;
            }
        }
    }
    let mut downsets = BTreeSet::new();
    for x in frame.elements() {
        let mut mask = 0u64;
        for (i, &j) in irr.iter().enumerate() {
            if frame.leq(j, x) {
                mask |= 1 << i;
            }
        }
        let closed = (0..k).all(|i| mask >> i & 1 == 0 || mask & down_mask[i] == down_mask[i]);
        if !closed {
            return Err(format!(
                "image of `{}` is not a downset of the irreducible poset",
                frame.element_name(x)
            ));
        }
        if !downsets.insert(mask) {
            return Err(format!(
                "map is not injective at `{}`",
                frame.element_name(x)
            ));
        }
    }
    // Count all downsets of the irreducible poset; surjectivity is then
    // injectivity plus matching cardinality.
    let mut count = 0usize;
    if k <= 20 {
        for mask in 0u64..(1 << k) {
            if (0..k).all(|i| mask >> i & 1 == 0 || mask & down_mask[i] == down_mask[i]) {
                count += 1;
            }
        }
    } else {
        return Err(format!(
            "frame {} has too many join-irreducibles for exhaustive downset counting",
            frame.name()
        ));
    }
    if count != frame.len() {
        return Err(format!(
            "frame {} has {} elements but its irreducible poset has {count} downsets",
            frame.name(),
            frame.len()
        ));
    }
    // Order and operations must transfer: φ(x∨y) = φx ∪ φy, φ(x∧y) = φx ∩ φy.
    let phi = |x| -> u64 {
        let mut mask = 0u64;
        for (i, &j) in irr.iter().enumerate() {
            if frame.leq(j, x) {
                mask |= 1 << i;
            }
        }
        mask
    };
    for x in frame.elements() {
        for y in frame.elements() {
            if frame.leq(x, y) != (phi(x) & !phi(y) == 0) {
                return Err("order is not reflected".into());
            }
            if phi(frame.join(x, y)) != phi(x) | phi(y) {
                return Err("join is not preserved".into());
            }
            if phi(frame.meet(x, y)) != phi(x) & phi(y) {
                return Err("meet is not preserved".into());
            }
        }
    }
    Ok(())
}

/// Canonical frame file: pretty JSON of the sorted document plus a trailing
/// newline. Byte-stable for equal frames.
pub fn serialize_frame(frame: &Frame) -> String {
    let mut text = serde_json::to_string_pretty(&frame.to_doc()).expect("frame doc serializes");
    text.push('\n');
    text
}

pub fn parse_frame(text: &str) -> Result<Frame, CorpusError> {
    let doc: FrameDoc = serde_json::from_str(text).map_err(|e| CorpusError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(Frame::from_doc(&doc)?)
}

pub fn serialize_function(f: &StepFunction) -> String {
    let mut text = serde_json::to_string_pretty(&f.to_doc()).expect("function doc serializes");
    text.push('\n');
    text
}

pub fn parse_function(text: &str, frame: &Arc<Frame>) -> Result<StepFunction, CorpusError> {
    let doc: FunctionDoc = serde_json::from_str(text).map_err(|e| CorpusError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(StepFunction::from_doc(&doc, frame)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub file: String,
    pub elements: usize,
    pub kind: String,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub spec: CorpusSpec,
    pub frames: Vec<ManifestEntry>,
}

/// Generates a corpus and writes one `<name>.frame.json` per frame plus a
/// `manifest.json`, all byte-deterministic; rerunning with the same spec
/// rewrites identical files.
pub fn write_corpus(spec: &CorpusSpec, dir: &Path) -> Result<Manifest, CorpusError> {
    let frames = generate(spec)?;
    std::fs::create_dir_all(dir)?;
    let mut entries = Vec::new();
    for frame in &frames {
        let file = format!("{}.frame.json", frame.name());
        std::fs::write(dir.join(&file), serialize_frame(frame))?;
        entries.push(ManifestEntry {
            name: frame.name().to_owned(),
            file,
            elements: frame.len(),
            kind: spec.kind.id().to_owned(),
            seed: spec.seed,
        });
    }
    let manifest = Manifest {
        spec: spec.clone(),
        frames: entries,
    };
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    std::fs::write(dir.join("manifest.json"), text)?;
    Ok(manifest)
}

/// Helper to parse a user-supplied rational argument with a positioned error.
pub fn parse_rational_arg(text: &str) -> Result<crate::Rational, CorpusError> {
    parse_rational(text).map_err(|message| CorpusError::Parse {
        line: 1,
        column: 1,
        message,
    })
}
