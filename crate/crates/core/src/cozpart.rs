//! The cozero part of a finite frame and its separation properties.
//!
//! The cozero elements of step functions form a sublattice: the join
//! closure of the complemented elements. Two routes compute it, the closure
//! itself and the joins of complemented atoms reachable as cozero elements
//! of indicator sums, and the countable-restriction flag forces the second
//! route to run and agree. Every property decision here returns a report
//! with replayable witnesses or a counterexample, never a bare boolean.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::corpus::fnv1a64;
use crate::lattice::{Frame, FrameElement};
use crate::realfunc::{Idempotent, Op, StepFunction};
use crate::report::PropertyReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CozError {
    #[error("frame `{0}` has one element; its cozero part is not defined")]
    DegenerateFrame(String),
    #[error("restricting to countable-range generators changed the cozero part of `{frame}`")]
    RestrictionMismatch { frame: String },
    #[error("member `{member}` has no complement inside the cozero part")]
    NotComplementedInside { member: String },
}

/// How large a sublattice is searched exhaustively before deterministic
/// sampling takes over.
const EXHAUSTIVE_LIMIT: usize = 12;
const SAMPLE_COUNT: usize = 1000;

/// The cozero part: all elements realizable as the cozero element of a step
/// function, together with one witnessing function per member.
#[derive(Clone, Debug)]
pub struct CozPart {
    frame: Arc<Frame>,
    members: Vec<FrameElement>,
    member_flags: Vec<bool>,
    witnesses: Vec<StepFunction>,
    countable_only: bool,
}

/// Computes the cozero part by closing the complemented elements under
/// binary joins. With `countable_only` the members are recomputed
/// independently as joins of complemented atoms (the cozero elements of
/// indicator sums, which have countable range by construction) and the two
/// routes must agree; at finite scale the restriction changes nothing, and
/// this is checked rather than assumed.
pub fn coz_part(frame: &Arc<Frame>, countable_only: bool) -> Result<CozPart, CozError> {
    if frame.len() < 2 {
        return Err(CozError::DegenerateFrame(frame.name().to_owned()));
    }
    let n = frame.len();
    let mut flags = vec![false; n];
    for c in frame.center() {
        flags[c.index()] = true;
    }
    loop {
        let current: Vec<FrameElement> = frame
            .elements()
            .filter(|e| flags[e.index()])
            .collect();
        let mut changed = false;
        for &x in &current {
            for &y in &current {
                let j = frame.join(x, y);
                if !flags[j.index()] {
                    flags[j.index()] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    if countable_only {
        let atoms = frame.center_atoms();
        let mut restricted = vec![false; n];
        for mask in 0u64..(1u64 << atoms.len()) {
            let join = frame.big_join(
                atoms
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, a)| *a),
            );
            restricted[join.index()] = true;
        }
        if restricted != flags {
            return Err(CozError::RestrictionMismatch {
                frame: frame.name().to_owned(),
            });
        }
    }

    let members: Vec<FrameElement> = frame.elements().filter(|e| flags[e.index()]).collect();
    let atoms = frame.center_atoms();
    let mut witnesses = Vec::with_capacity(members.len());
    for &m in &members {
        let mut w = StepFunction::constant(frame, crate::rational::int(0))
            .expect("frame has at least two elements");
        for &a in atoms.iter().filter(|a| frame.leq(**a, m)) {
            let e = Idempotent::indicator(frame, a).expect("atoms are complemented");
            w = w.combine(&e, Op::Add).expect("same frame");
        }
        let rebuilt = frame.big_join(w.decompose_coz().iter().map(|e| e.support()));
        assert_eq!(rebuilt, m, "indicator sum must reproduce the member");
        assert_eq!(w.coz(), m, "witness cozero must be the member itself");
        witnesses.push(w);
    }

    let part = CozPart {
        frame: Arc::clone(frame),
        members,
        member_flags: flags,
        witnesses,
        countable_only,
    };
    for &m in &part.members {
        if part.complement_in(m).is_none() {
            return Err(CozError::NotComplementedInside {
                member: frame.element_name(m).to_owned(),
            });
        }
    }
    Ok(part)
}

impl CozPart {
    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn members(&self) -> &[FrameElement] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn countable_only(&self) -> bool {
        self.countable_only
    }

    pub fn contains(&self, el: FrameElement) -> bool {
        self.member_flags[el.index()]
    }

    /// The stored step function whose cozero element is the member.
    pub fn witness_for(&self, el: FrameElement) -> Option<&StepFunction> {
        self.members
            .iter()
            .position(|m| *m == el)
            .map(|i| &self.witnesses[i])
    }

    /// The complement of a member inside the cozero part, if any.
    pub fn complement_in(&self, el: FrameElement) -> Option<FrameElement> {
        let f = &self.frame;
        self.members
            .iter()
            .copied()
            .find(|&x| f.meet(el, x) == f.bottom() && f.join(el, x) == f.top())
    }

    /// Witness for b being rather below a inside the part: some member x
    /// with x∧b = ⊥ and x∨a = ⊤. The complement of b is tried first, then
    /// every member.
    pub fn rather_below_in(&self, b: FrameElement, a: FrameElement) -> Option<FrameElement> {
        let f = &self.frame;
        let fits = |x: FrameElement| f.meet(x, b) == f.bottom() && f.join(x, a) == f.top();
        if let Some(c) = self.complement_in(b) {
            if fits(c) {
                return Some(c);
            }
        }
        self.members.iter().copied().find(|&x| fits(x))
    }

    fn name(&self) -> &str {
        self.frame.name()
    }
}

/// Whether every element of the frame is the join of the complemented
/// elements below it. This is the hypothesis under which the separation
/// statements were originally stated; reports attach it so informational
/// verdicts can be filtered.
pub fn completely_regular_status(frame: &Frame) -> bool {
    let center = frame.center();
    frame.elements().all(|x| {
        frame.big_join(center.iter().copied().filter(|c| frame.leq(*c, x))) == x
    })
}

pub(crate) fn hypothesis_marker(frame: &Frame) -> Value {
    let ok = completely_regular_status(frame);
    json!({
        "frameCompletelyRegular": ok,
        "note": if ok {
            "hypothesis met"
        } else {
            "hypothesis unmet; verdict informational"
        },
    })
}

/// Decides whether every element is a join of complemented elements below
/// it, reporting the first element that is not.
pub fn is_zero_dimensional(frame: &Arc<Frame>) -> PropertyReport {
    let center = frame.center();
    for x in frame.elements() {
        let j = frame.big_join(center.iter().copied().filter(|c| frame.leq(*c, x)));
        if j != x {
            return PropertyReport::fail(
                frame.name(),
                "zero-dimensional",
                json!({
                    "element": frame.element_name(x),
                    "joinOfComplementedBelow": frame.element_name(j),
                }),
            );
        }
    }
    PropertyReport::pass_with(
        frame.name(),
        "zero-dimensional",
        vec![json!({ "base": "complemented elements", "size": center.len() })],
    )
}

/// Decides whether every element is a join of cozero-part members below it.
/// Computed against the countable-restricted part, independently of
/// [`is_zero_dimensional`]; the two verdicts must coincide on every frame.
pub fn is_c_completely_regular(frame: &Arc<Frame>) -> PropertyReport {
    let part = coz_part(frame, true).expect("frame has at least two elements");
    for x in frame.elements() {
        let j = frame.big_join(part.members().iter().copied().filter(|c| frame.leq(*c, x)));
        if j != x {
            return PropertyReport::fail(
                frame.name(),
                "c-completely-regular",
                json!({
                    "element": frame.element_name(x),
                    "joinOfCozBelow": frame.element_name(j),
                }),
            );
        }
    }
    PropertyReport::pass_with(
        frame.name(),
        "c-completely-regular",
        vec![json!({ "base": "cozero part", "size": part.len() })],
    )
}

/// Deterministic subset sampler: masks over the member list.
fn sampled_subsets(part: &CozPart, salt: &str) -> Vec<Vec<FrameElement>> {
    let k = part.len();
    let mut out = Vec::new();
    if k <= EXHAUSTIVE_LIMIT {
        for mask in 0u32..(1 << k) {
            out.push(
                (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| part.members[i])
                    .collect(),
            );
        }
    } else {
        let seed = fnv1a64(part.name()) ^ fnv1a64(salt);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLE_COUNT {
            out.push(
                (0..k)
                    .filter(|_| rng.gen_bool(0.5))
                    .map(|i| part.members[i])
                    .collect(),
            );
        }
    }
    out
}

/// Verifies the lattice laws that make the cozero part a frame in its own
/// right: bounds present, closure under binary meet and join, closure under
/// subset joins, and the distributive law against subset joins, all checked
/// inside the part.
pub fn sigma_frame_check(part: &CozPart) -> PropertyReport {
    let f = part.frame();
    let property = "sigma-frame-laws";
    if !part.contains(f.bottom()) || !part.contains(f.top()) {
        return PropertyReport::fail(
            part.name(),
            property,
            json!({ "reason": "missing a bound" }),
        );
    }
    for &x in part.members() {
        for &y in part.members() {
            if !part.contains(f.meet(x, y)) || !part.contains(f.join(x, y)) {
                return PropertyReport::fail(
                    part.name(),
                    property,
                    json!({
                        "reason": "not closed under a binary operation",
                        "pair": [f.element_name(x), f.element_name(y)],
                    }),
                );
            }
        }
    }
    let subsets = sampled_subsets(part, "sigma-laws");
    for t in &subsets {
        let join = f.big_join(t.iter().copied());
        if !part.contains(join) {
            return PropertyReport::fail(
                part.name(),
                property,
                json!({
                    "reason": "subset join escapes the part",
                    "subset": t.iter().map(|e| f.element_name(*e)).collect::<Vec<_>>(),
                }),
            );
        }
        for &a in part.members() {
            let lhs = f.meet(a, join);
            let rhs = f.big_join(t.iter().map(|&x| f.meet(a, x)));
            if lhs != rhs {
                return PropertyReport::fail(
                    part.name(),
                    property,
                    json!({
                        "reason": "meet does not distribute over the subset join",
                        "a": f.element_name(a),
                        "subset": t.iter().map(|e| f.element_name(*e)).collect::<Vec<_>>(),
                    }),
                );
            }
        }
    }
    PropertyReport::pass_with(
        part.name(),
        property,
        vec![
            hypothesis_marker(f),
            json!({
                "members": part.len(),
                "subsetsChecked": subsets.len(),
                "mode": if part.len() <= EXHAUSTIVE_LIMIT { "exhaustive" } else { "sampled" },
            }),
        ],
    )
}

/// Verifies that every member is the join of the members rather below it,
/// with the rather-below witnesses found inside the part.
pub fn is_regular_sigma(part: &CozPart) -> PropertyReport {
    let f = part.frame();
    let property = "regular";
    let mut detail = Vec::new();
    for &a in part.members() {
        let mut below = Vec::new();
        for &b in part.members() {
            if part.rather_below_in(b, a).is_some() {
                below.push(b);
            }
        }
        let join = f.big_join(below.iter().copied());
        if join != a {
            return PropertyReport::fail(
                part.name(),
                property,
                json!({
                    "member": f.element_name(a),
                    "joinOfRatherBelow": f.element_name(join),
                }),
            );
        }
        if part.len() <= EXHAUSTIVE_LIMIT {
            detail.push(json!({
                "member": f.element_name(a),
                "ratherBelow": below.iter().map(|e| f.element_name(*e)).collect::<Vec<_>>(),
            }));
        }
    }
    let mut witnesses = vec![hypothesis_marker(f)];
    if detail.is_empty() {
        witnesses.push(json!({ "members": part.len(), "witnessesElided": true }));
    } else {
        witnesses.extend(detail);
    }
    PropertyReport::pass_with(part.name(), property, witnesses)
}

/// Verifies normality: whenever two members join to the top, two disjoint
/// members cover them crosswise. The complements inside the part are tried
/// first and an exhaustive search backs them up.
pub fn is_normal(part: &CozPart) -> PropertyReport {
    let f = part.frame();
    let property = "normal";
    let mut checked = 0usize;
    for &a in part.members() {
        for &b in part.members() {
            if f.join(a, b) != f.top() {
                continue;
            }
            checked += 1;
            let found = canonical_normal_pair(part, a, b).or_else(|| {
                part.members.iter().copied().find_map(|u| {
                    part.members
                        .iter()
                        .copied()
                        .find(|&v| {
                            f.meet(u, v) == f.bottom()
                                && f.join(a, u) == f.top()
                                && f.join(v, b) == f.top()
                        })
                        .map(|v| (u, v))
                })
            });
            if found.is_none() {
                return PropertyReport::fail(
                    part.name(),
                    property,
                    json!({
                        "pair": [f.element_name(a), f.element_name(b)],
                        "reason": "no disjoint crosswise pair",
                    }),
                );
            }
        }
    }
    PropertyReport::pass_with(
        part.name(),
        property,
        vec![
            hypothesis_marker(f),
            json!({ "coveringPairs": checked, "witness": "complements inside the part" }),
        ],
    )
}

fn canonical_normal_pair(
    part: &CozPart,
    a: FrameElement,
    b: FrameElement,
) -> Option<(FrameElement, FrameElement)> {
    let f = part.frame();
    let u = part.complement_in(a)?;
    let v = part.complement_in(b)?;
    (f.meet(u, v) == f.bottom() && f.join(a, u) == f.top() && f.join(v, b) == f.top())
        .then_some((u, v))
}

/// Verifies perfect normality: each member has a witness sequence whose
/// joins detect equality of meets against it. The single complement is the
/// canonical sequence; if it fails, every single member is tried while the
/// part stays small.
pub fn is_perfectly_normal(part: &CozPart) -> PropertyReport {
    let f = part.frame();
    let property = "perfectly-normal";
    for &a in part.members() {
        let sequence_works = |x: FrameElement| {
            part.members.iter().all(|&b| {
                part.members.iter().all(|&c| {
                    (f.meet(a, b) == f.meet(a, c)) == (f.join(x, b) == f.join(x, c))
                })
            })
        };
        let canonical = part.complement_in(a).filter(|&x| sequence_works(x));
        let witness = canonical.or_else(|| {
            if part.len() <= EXHAUSTIVE_LIMIT {
                part.members.iter().copied().find(|&x| sequence_works(x))
            } else {
                None
            }
        });
        if witness.is_none() {
            return PropertyReport::fail(
                part.name(),
                property,
                json!({
                    "member": f.element_name(a),
                    "reason": "no single-element witness sequence",
                }),
            );
        }
    }
    PropertyReport::pass_with(
        part.name(),
        property,
        vec![
            hypothesis_marker(f),
            json!({ "witness": "the complement of each member, as a one-term sequence" }),
        ],
    )
}

/// Verifies the covering decomposition of each member: a pair sequence
/// (parts joining to the member, cobounding partners disjoint from them).
/// The bottom member takes the empty sequence; every other member takes the
/// single pair (member, complement).
pub fn is_alexandroff(part: &CozPart) -> PropertyReport {
    let f = part.frame();
    let property = "alexandroff";
    for &a in part.members() {
        if a == f.bottom() {
            continue;
        }
        let Some(b) = part.complement_in(a) else {
            return PropertyReport::fail(
                part.name(),
                property,
                json!({ "member": f.element_name(a), "reason": "no complement in the part" }),
            );
        };
        let sequence = [(a, b)];
        let joins_back = f.big_join(sequence.iter().map(|(an, _)| *an)) == a;
        let cobounds = sequence.iter().all(|(_, bn)| f.join(*bn, a) == f.top());
        let disjoint = sequence.iter().all(|(an, bn)| f.meet(*bn, *an) == f.bottom());
        if !(joins_back && cobounds && disjoint) {
            return PropertyReport::fail(
                part.name(),
                property,
                json!({
                    "member": f.element_name(a),
                    "partner": f.element_name(b),
                }),
            );
        }
    }
    PropertyReport::pass_with(
        part.name(),
        property,
        vec![
            hypothesis_marker(f),
            json!({
                "witness": "pair (member, complement); empty sequence for the bottom member",
            }),
        ],
    )
}

/// Enumerates covers of the part (subsets joining to the top; exhaustive
/// while small, deterministically sampled with a completion step beyond)
/// and checks the three covering properties. Three reports come back: the
/// literal shrinking (always satisfiable by the cover itself), the
/// strengthened shrinking through rather-below, and local finiteness of a
/// refinement, which at finite scale every cover has.
pub fn cover_checks(part: &CozPart) -> Vec<PropertyReport> {
    let f = part.frame();
    let mut covers: Vec<Vec<FrameElement>> = Vec::new();
    for mut t in sampled_subsets(part, "covers") {
        let join = f.big_join(t.iter().copied());
        if join != f.top() {
            if part.len() <= EXHAUSTIVE_LIMIT {
                continue;
            }
            match part.complement_in(join) {
                Some(fixup) => t.push(fixup),
                None => continue,
            }
        }
        covers.push(t);
    }

    let mut literal = None;
    let mut strict = None;
    let mut para = None;
    for cover in &covers {
        if literal.is_none() {
            // Shrinking d_n = a_n: trivially below and still a cover.
            let shrunk = cover.clone();
            let still_covers = f.big_join(shrunk.iter().copied()) == f.top();
            let below = shrunk.iter().zip(cover).all(|(d, a)| f.leq(*d, *a));
            if !(still_covers && below) {
                literal = Some(PropertyReport::fail(
                    part.name(),
                    "covers-shrinkable",
                    cover_json(f, cover),
                ));
            }
        }
        if strict.is_none() {
            // Strengthened shrinking: each d_n rather below a_n, inside the
            // part, with d_n = a_n as the canonical candidate.
            let ok = cover
                .iter()
                .all(|&a| part.rather_below_in(a, a).is_some());
            if !ok {
                strict = Some(PropertyReport::fail(
                    part.name(),
                    "covers-shrinkable-strict",
                    cover_json(f, cover),
                ));
            }
        }
        if para.is_none() {
            // Refinement b_m = a_m; every finite cover is locally finite,
            // with the full index set as the finite neighborhood data, and
            // each refinement element sits below one of the originals.
            let refines = cover.iter().all(|&b| cover.iter().any(|&a| f.leq(b, a)));
            if !refines {
                para = Some(PropertyReport::fail(
                    part.name(),
                    "covers-paracompact",
                    cover_json(f, cover),
                ));
            }
        }
    }
    let marker = hypothesis_marker(f);
    let summary = |what: &str| {
        json!({
            "covers": covers.len(),
            "mode": if part.len() <= EXHAUSTIVE_LIMIT { "exhaustive" } else { "sampled" },
            "witness": what,
        })
    };
    vec![
        literal.unwrap_or_else(|| {
            PropertyReport::pass_with(
                part.name(),
                "covers-shrinkable",
                vec![marker.clone(), summary("the cover shrinks to itself")],
            )
        }),
        strict.unwrap_or_else(|| {
            PropertyReport::pass_with(
                part.name(),
                "covers-shrinkable-strict",
                vec![
                    marker.clone(),
                    summary("each element is rather below itself inside the part"),
                ],
            )
        }),
        para.unwrap_or_else(|| {
            PropertyReport::pass_with(
                part.name(),
                "covers-paracompact",
                vec![
                    marker,
                    summary("finite covers refine themselves with full index sets"),
                ],
            )
        }),
    ]
}

fn cover_json(f: &Frame, cover: &[FrameElement]) -> Value {
    json!({
        "cover": cover.iter().map(|e| f.element_name(*e)).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Poset;
    use crate::testkit::{arc, b2, c3, c4};

    fn names(part: &CozPart) -> Vec<String> {
        part.members()
            .iter()
            .map(|e| part.frame().element_name(*e).to_owned())
            .collect()
    }

    #[test]
    fn cozero_parts_of_the_standard_small_frames() {
        let c = arc(c3());
        let part = coz_part(&c, false).unwrap();
        assert_eq!(names(&part), vec!["0", "1"]);

        let b = arc(b2());
        let part = coz_part(&b, false).unwrap();
        assert_eq!(part.len(), 4);

        let c4 = arc(c4());
        let part = coz_part(&c4, false).unwrap();
        assert_eq!(names(&part), vec!["0", "1"]);
    }

    #[test]
    fn countable_restriction_changes_nothing_and_is_checked() {
        for f in [arc(b2()), arc(c3()), arc(c4())] {
            let full = coz_part(&f, false).unwrap();
            let restricted = coz_part(&f, true).unwrap();
            assert_eq!(full.members(), restricted.members());
            assert!(restricted.countable_only());
        }
    }

    #[test]
    fn every_witness_cozero_is_its_member() {
        let b = arc(b2());
        let part = coz_part(&b, true).unwrap();
        for &m in part.members() {
            let w = part.witness_for(m).unwrap();
            assert_eq!(w.coz(), m);
        }
        assert!(part.witness_for(b.element_by_name("a").unwrap()).is_some());
    }

    #[test]
    fn members_are_complemented_inside_the_part() {
        let b = arc(b2());
        let part = coz_part(&b, false).unwrap();
        let a = b.element_by_name("a").unwrap();
        assert_eq!(
            part.complement_in(a),
            Some(b.element_by_name("b").unwrap())
        );
        assert_eq!(part.complement_in(b.top()), Some(b.bottom()));
    }

    #[test]
    fn degenerate_frames_are_rejected() {
        let pt = arc(Frame::build("pt", ["x"], Vec::<(&str, &str)>::new()).unwrap());
        assert!(matches!(
            coz_part(&pt, false),
            Err(CozError::DegenerateFrame(_))
        ));
    }

    #[test]
    fn sigma_laws_hold_on_small_parts() {
        let v = Poset {
            size: 3,
            covers: vec![(0, 2), (1, 2)],
        }
        .downset_lattice("v3");
        for f in [arc(b2()), arc(c3()), arc(v)] {
            let part = coz_part(&f, false).unwrap();
            let r = sigma_frame_check(&part);
            assert!(r.is_pass(), "{}: {:?}", f.name(), r.counterexample);
        }
    }

    #[test]
    fn zero_dimensionality_is_decided_with_witnesses() {
        let b = arc(b2());
        assert!(is_zero_dimensional(&b).is_pass());
        let c = arc(c3());
        let r = is_zero_dimensional(&c);
        assert!(!r.is_pass());
        assert_eq!(r.counterexample.as_ref().unwrap()["element"], "m");
    }

    #[test]
    fn the_two_regularity_decisions_coincide() {
        let v = Poset {
            size: 3,
            covers: vec![(0, 2), (1, 2)],
        }
        .downset_lattice("v3");
        for f in [arc(b2()), arc(c3()), arc(c4()), arc(v)] {
            let zd = is_zero_dimensional(&f);
            let cr = is_c_completely_regular(&f);
            assert_eq!(zd.verdict, cr.verdict, "on {}", f.name());
        }
    }

    #[test]
    fn a_product_with_a_chain_is_not_zero_dimensional() {
        let b = b2();
        let c = c3();
        let mut els = Vec::new();
        for x in b.elements() {
            for y in c.elements() {
                els.push(format!("{}|{}", b.element_name(x), c.element_name(y)));
            }
        }
        let mut covers = Vec::new();
        for (x, xc) in b.covers() {
            for y in c.elements() {
                covers.push((
                    format!("{}|{}", b.element_name(x), c.element_name(y)),
                    format!("{}|{}", b.element_name(xc), c.element_name(y)),
                ));
            }
        }
        for (y, yc) in c.covers() {
            for x in b.elements() {
                covers.push((
                    format!("{}|{}", b.element_name(x), c.element_name(y)),
                    format!("{}|{}", b.element_name(x), c.element_name(yc)),
                ));
            }
        }
        let prod = arc(
            Frame::build(
                "b2xc3",
                els.iter().map(|s| s.as_str()),
                covers.iter().map(|(a, b)| (a.as_str(), b.as_str())),
            )
            .unwrap(),
        );
        assert_eq!(prod.len(), 12);
        let zd = is_zero_dimensional(&prod);
        let cr = is_c_completely_regular(&prod);
        assert!(!zd.is_pass());
        assert!(!cr.is_pass());
    }

    #[test]
    fn separation_properties_hold_inside_every_small_part() {
        let v = Poset {
            size: 3,
            covers: vec![(0, 2), (1, 2)],
        }
        .downset_lattice("v3");
        for f in [arc(b2()), arc(c3()), arc(c4()), arc(v)] {
            let part = coz_part(&f, false).unwrap();
            assert!(is_regular_sigma(&part).is_pass(), "regular on {}", f.name());
            assert!(is_normal(&part).is_pass(), "normal on {}", f.name());
            assert!(
                is_perfectly_normal(&part).is_pass(),
                "perfectly normal on {}",
                f.name()
            );
            assert!(
                is_alexandroff(&part).is_pass(),
                "alexandroff on {}",
                f.name()
            );
        }
    }

    #[test]
    fn the_hypothesis_marker_tracks_regularity() {
        let b = arc(b2());
        let part = coz_part(&b, false).unwrap();
        let r = is_normal(&part);
        assert_eq!(r.witnesses[0]["frameCompletelyRegular"], true);

        let c = arc(c4());
        let part = coz_part(&c, false).unwrap();
        let r = is_normal(&part);
        assert!(r.is_pass());
        assert_eq!(r.witnesses[0]["frameCompletelyRegular"], false);
    }

    #[test]
    fn cover_reports_come_in_threes_and_pass() {
        for f in [arc(b2()), arc(c3())] {
            let part = coz_part(&f, false).unwrap();
            let reports = cover_checks(&part);
            assert_eq!(reports.len(), 3);
            let props: Vec<&str> = reports.iter().map(|r| r.property.as_str()).collect();
            assert_eq!(
                props,
                vec![
                    "covers-shrinkable",
                    "covers-shrinkable-strict",
                    "covers-paracompact"
                ]
            );
            for r in &reports {
                assert!(r.is_pass(), "{} on {}", r.property, f.name());
            }
        }
    }

    #[test]
    fn regular_reports_include_small_witness_tables() {
        let b = arc(b2());
        let part = coz_part(&b, false).unwrap();
        let r = is_regular_sigma(&part);
        assert!(r.is_pass());
        // First witness is the hypothesis marker, then one entry per member.
        assert_eq!(r.witnesses.len(), 1 + part.len());
    }
}
