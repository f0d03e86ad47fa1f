//! Prime ideals and the Dedekind cuts a step function induces at each one.
//!
//! For a finite frame the prime ideals are exactly the sets {x : j ≰ x} for
//! join-irreducible j, and a step function has exactly one part outside any
//! prime ideal. This makes every cut attained on both sides; the machinery
//! here still computes cuts from the ray definitions and treats the direct
//! part-lookup as a separate route, so the coincidences are checked rather
//! than assumed.

use std::collections::BTreeSet;
use std::sync::Arc;

use num::Signed;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::lattice::{Frame, FrameElement};
use crate::rational::{ceil_abs, format_rational, int, Rational};
use crate::realfunc::{FuncError, Idempotent, Op, StepFunction, ALL_OPS};
use crate::report::PropertyReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error("frame `{0}` has one element and admits no prime ideals")]
    DegenerateFrame(String),
    #[error("inputs live on different frames: `{left}` and `{right}`")]
    FrameMismatch { left: String, right: String },
    #[error("coefficient list has length {left}, function list has length {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("frame has {size} elements; brute-force prime ideal search stops at 16")]
    BruteForceTooLarge { size: usize },
    #[error("canonical and brute-force prime ideal enumeration disagree on `{frame}`")]
    EnumerationMismatch { frame: String },
    #[error("not a prime ideal: {reason}")]
    InvalidPrimeIdeal { reason: String },
    #[error("cut is not well defined: {detail}")]
    CutUndefined { detail: String },
    #[error("additivity failed: combined cut {found}, sum of cuts {expected}")]
    AdditivityFailure { expected: String, found: String },
    #[error("the family of functions is empty")]
    EmptyFamily,
    #[error(transparent)]
    Function(#[from] FuncError),
}

/// A proper, downward-closed, join-closed, prime subset of a frame. The
/// witness records the join-irreducible the ideal avoids when it was built
/// canonically.
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    frame: Arc<Frame>,
    member_flags: Vec<bool>,
    members: Vec<FrameElement>,
    witness: Option<FrameElement>,
}

impl PrimeIdeal {
    /// Builds and fully validates a prime ideal from its member list.
    pub fn from_members(
        frame: &Arc<Frame>,
        members: Vec<FrameElement>,
        witness: Option<FrameElement>,
    ) -> Result<Self, CutError> {
        let mut member_flags = vec![false; frame.len()];
        for el in &members {
            member_flags[el.index()] = true;
        }
        let mut sorted = members;
        sorted.sort_by_key(|el| el.index());
        sorted.dedup();
        let ideal = PrimeIdeal {
            frame: Arc::clone(frame),
            member_flags,
            members: sorted,
            witness,
        };
        ideal.validate()?;
        Ok(ideal)
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn members(&self) -> &[FrameElement] {
        &self.members
    }

    pub fn witness(&self) -> Option<FrameElement> {
        self.witness
    }

    #[track_caller]
    pub fn contains(&self, el: FrameElement) -> bool {
        assert_eq!(
            el.frame_id(),
            self.frame.id(),
            "element belongs to a different frame"
        );
        self.member_flags[el.index()]
    }

    /// Stable identifier for tables: the avoided join-irreducible when
    /// known, otherwise the member list.
    pub fn id(&self) -> String {
        match self.witness {
            Some(j) => format!("P({})", self.frame.element_name(j)),
            None => {
                let names: Vec<&str> = self
                    .members
                    .iter()
                    .map(|el| self.frame.element_name(*el))
                    .collect();
                format!("P{{{}}}", names.join(","))
            }
        }
    }

    /// Checks every defining property: proper, contains bottom, downward
    /// closed, closed under binary joins, and prime.
    pub fn validate(&self) -> Result<(), CutError> {
        let f = &self.frame;
        if f.len() < 2 {
            return Err(CutError::DegenerateFrame(f.name().to_owned()));
        }
        if self.member_flags[f.top().index()] {
            return Err(CutError::InvalidPrimeIdeal {
                reason: "contains the top element".into(),
            });
        }
        if !self.member_flags[f.bottom().index()] {
            return Err(CutError::InvalidPrimeIdeal {
                reason: "misses the bottom element".into(),
            });
        }
        for &x in &self.members {
            for y in f.elements() {
                if f.leq(y, x) && !self.member_flags[y.index()] {
                    return Err(CutError::InvalidPrimeIdeal {
                        reason: format!(
                            "not downward closed: `{}` is below member `{}`",
                            f.element_name(y),
                            f.element_name(x)
                        ),
                    });
                }
            }
        }
        for &x in &self.members {
            for &y in &self.members {
                if !self.member_flags[f.join(x, y).index()] {
                    return Err(CutError::InvalidPrimeIdeal {
                        reason: format!(
                            "not join closed at `{}` and `{}`",
                            f.element_name(x),
                            f.element_name(y)
                        ),
                    });
                }
            }
        }
        for a in f.elements() {
            for b in f.elements() {
                if self.member_flags[f.meet(a, b).index()]
                    && !self.member_flags[a.index()]
                    && !self.member_flags[b.index()]
                {
                    return Err(CutError::InvalidPrimeIdeal {
                        reason: format!(
                            "not prime at `{}` and `{}`",
                            f.element_name(a),
                            f.element_name(b)
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Every prime ideal of the frame, produced canonically as {x : j ≰ x} over
/// the join-irreducibles j. On frames of at most 16 elements the brute-force
/// subset search runs as well and the two enumerations must agree; this
/// happens on every call, there is no caching.
pub fn prime_ideals(frame: &Arc<Frame>) -> Result<Vec<PrimeIdeal>, CutError> {
    if frame.len() < 2 {
        return Err(CutError::DegenerateFrame(frame.name().to_owned()));
    }
    let mut out = Vec::new();
    for j in frame.join_irreducibles() {
        let members: Vec<FrameElement> =
            frame.elements().filter(|x| !frame.leq(j, *x)).collect();
        out.push(PrimeIdeal::from_members(frame, members, Some(j))?);
    }
    if frame.len() <= 16 {
        let brute = prime_ideals_brute(frame)?;
        let canonical_sets: BTreeSet<Vec<usize>> = out
            .iter()
            .map(|p| p.members.iter().map(|el| el.index()).collect())
            .collect();
        let brute_sets: BTreeSet<Vec<usize>> = brute
            .iter()
            .map(|m| m.iter().map(|el| el.index()).collect())
            .collect();
        if canonical_sets != brute_sets {
            return Err(CutError::EnumerationMismatch {
                frame: frame.name().to_owned(),
            });
        }
    }
    Ok(out)
}

/// Brute-force enumeration: every subset of the frame is tested against the
/// prime ideal axioms directly. Kept as an independent oracle for the
/// canonical construction.
pub fn prime_ideals_brute(frame: &Frame) -> Result<Vec<Vec<FrameElement>>, CutError> {
    let n = frame.len();
    if n < 2 {
        return Err(CutError::DegenerateFrame(frame.name().to_owned()));
    }
    if n > 16 {
        return Err(CutError::BruteForceTooLarge { size: n });
    }
    let els: Vec<FrameElement> = frame.elements().collect();
    let bot = frame.bottom().index();
    let top = frame.top().index();
    let mut down_mask = vec![0u32; n];
    for i in 0..n {
        for j in 0..n {
            if frame.leq(els[j], els[i]) {
                down_mask[i] |= 1 << j;
            }
        }
    }
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1 << n) {
        if mask >> bot & 1 == 0 || mask >> top & 1 == 1 {
            continue;
        }
        for i in 0..n {
            if mask >> i & 1 == 1 && mask & down_mask[i] != down_mask[i] {
                continue 'mask;
            }
        }
        for i in 0..n {
            if mask >> i & 1 == 0 {
                continue;
            }
            for j in i..n {
                if mask >> j & 1 == 1
                    && mask >> frame.join(els[i], els[j]).index() & 1 == 0
                {
                    continue 'mask;
                }
            }
        }
        for i in 0..n {
            if mask >> i & 1 == 1 {
                continue;
            }
            for j in i..n {
                if mask >> j & 1 == 0
                    && mask >> frame.meet(els[i], els[j]).index() & 1 == 1
                {
                    continue 'mask;
                }
            }
        }
        out.push(
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| els[i])
                .collect(),
        );
    }
    Ok(out)
}

/// The two rational sets a cut splits into, reduced to their shared boundary
/// value and whether each side contains it. For step functions both sides
/// always attain the value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutDescription {
    #[serde(with = "crate::rational::serde_string")]
    pub value: Rational,
    #[serde(rename = "upperAttained")]
    pub upper_attained: bool,
    #[serde(rename = "lowerAttained")]
    pub lower_attained: bool,
}

impl CutDescription {
    /// Membership of the upper rational set {x : the ray above x lands in
    /// the ideal}.
    pub fn in_upper(&self, x: &Rational) -> bool {
        if self.upper_attained {
            *x >= self.value
        } else {
            *x > self.value
        }
    }

    pub fn in_lower(&self, x: &Rational) -> bool {
        if self.lower_attained {
            *x <= self.value
        } else {
            *x < self.value
        }
    }
}

/// Least part value whose upper ray lands in the ideal, scanning values in
/// ascending order. This is the infimum of the upper cut set.
pub fn upper_cut_scan(alpha: &StepFunction, p: &PrimeIdeal) -> Option<Rational> {
    let mut values: Vec<&Rational> = alpha.parts().iter().map(|(_, v)| v).collect();
    values.sort();
    values
        .into_iter()
        .find(|v| p.contains(alpha.ray_above(v)))
        .cloned()
}

/// Greatest part value whose lower ray lands in the ideal, scanning values
/// in descending order. This is the supremum of the lower cut set.
pub fn lower_cut_scan(alpha: &StepFunction, p: &PrimeIdeal) -> Option<Rational> {
    let mut values: Vec<&Rational> = alpha.parts().iter().map(|(_, v)| v).collect();
    values.sort();
    values
        .into_iter()
        .rev()
        .find(|v| p.contains(alpha.ray_below(v)))
        .cloned()
}

/// The value of the unique part outside the ideal. Independent of the ray
/// scans; the agreement of the three routes is what the cut lemmas assert.
pub fn evaluation_route(alpha: &StepFunction, p: &PrimeIdeal) -> Result<Rational, CutError> {
    check_frames(alpha, p)?;
    let outside: Vec<&Rational> = alpha
        .parts()
        .iter()
        .filter(|(el, _)| !p.contains(*el))
        .map(|(_, v)| v)
        .collect();
    match outside.as_slice() {
        [v] => Ok((*v).clone()),
        _ => Err(CutError::CutUndefined {
            detail: format!(
                "{} parts of the function lie outside {}",
                outside.len(),
                p.id()
            ),
        }),
    }
}

fn check_frames(alpha: &StepFunction, p: &PrimeIdeal) -> Result<(), CutError> {
    if alpha.frame().id() != p.frame.id() {
        return Err(CutError::FrameMismatch {
            left: alpha.frame().name().to_owned(),
            right: p.frame.name().to_owned(),
        });
    }
    Ok(())
}

/// The Dedekind cut of a step function at a prime ideal, computed from the
/// ray definitions by both scans. The two scans must meet at one value;
/// attainment is then checked by evaluating the rays at the value itself.
pub fn cut(alpha: &StepFunction, p: &PrimeIdeal) -> Result<CutDescription, CutError> {
    check_frames(alpha, p)?;
    let up = upper_cut_scan(alpha, p).ok_or_else(|| CutError::CutUndefined {
        detail: format!("no part value has its upper ray in {}", p.id()),
    })?;
    let low = lower_cut_scan(alpha, p).ok_or_else(|| CutError::CutUndefined {
        detail: format!("no part value has its lower ray in {}", p.id()),
    })?;
    if up != low {
        return Err(CutError::CutUndefined {
            detail: format!(
                "upper scan gives {}, lower scan gives {}",
                format_rational(&up),
                format_rational(&low)
            ),
        });
    }
    let upper_attained = p.contains(alpha.ray_above(&up));
    let lower_attained = p.contains(alpha.ray_below(&up));
    Ok(CutDescription {
        value: up,
        upper_attained,
        lower_attained,
    })
}

fn is_zero_one(f: &StepFunction) -> bool {
    Idempotent::from_step(f.clone()).is_ok()
}

/// Checks that taking cuts at one prime ideal commutes with all four
/// pointwise operations. The report flags whether the operands are
/// idempotents (the directly stated case) or general step functions (the
/// stronger finite-scale fact).
pub fn cut_homomorphism_check(
    alpha: &StepFunction,
    beta: &StepFunction,
    p: &PrimeIdeal,
) -> Result<PropertyReport, CutError> {
    check_frames(alpha, p)?;
    check_frames(beta, p)?;
    let frame = alpha.frame().name().to_owned();
    let ca = cut(alpha, p)?;
    let cb = cut(beta, p)?;
    let case = if is_zero_one(alpha) && is_zero_one(beta) {
        "idempotent"
    } else {
        "general"
    };
    let mut values = serde_json::Map::new();
    for op in ALL_OPS {
        let combined = alpha.combine(beta, op)?;
        let cc = cut(&combined, p)?;
        let pointwise = op.apply(&ca.value, &cb.value);
        if cc.value != pointwise {
            return Ok(PropertyReport::fail(
                &frame,
                "cut-homomorphism",
                json!({
                    "case": case,
                    "prime": p.id(),
                    "op": op.id(),
                    "combinedCut": format_rational(&cc.value),
                    "pointwise": format_rational(&pointwise),
                }),
            ));
        }
        values.insert(op.id().to_owned(), json!(format_rational(&cc.value)));
    }
    Ok(PropertyReport::pass_with(
        &frame,
        "cut-homomorphism",
        vec![json!({ "case": case, "prime": p.id(), "values": values })],
    ))
}

/// Builds the linear combination of idempotents with rational coefficients.
pub fn linear_combination_function(
    coeffs: &[Rational],
    idems: &[Idempotent],
    frame: &Arc<Frame>,
) -> Result<StepFunction, CutError> {
    if coeffs.len() != idems.len() {
        return Err(CutError::LengthMismatch {
            left: coeffs.len(),
            right: idems.len(),
        });
    }
    let mut acc = StepFunction::constant(frame, int(0))?;
    for (r, e) in coeffs.iter().zip(idems) {
        acc = acc.combine(&e.scale(r), Op::Add)?;
    }
    Ok(acc)
}

/// Cut of a linear combination of idempotents, checked against the sum of
/// the individual cuts scaled by the coefficients. The two must agree
/// exactly.
pub fn linear_combination_cut(
    coeffs: &[Rational],
    idems: &[Idempotent],
    p: &PrimeIdeal,
) -> Result<Rational, CutError> {
    let combined = linear_combination_function(coeffs, idems, p.frame())?;
    let total = cut(&combined, p)?.value;
    let mut sum = int(0);
    for (r, e) in coeffs.iter().zip(idems) {
        sum += r * cut(e.as_step(), p)?.value;
    }
    if total != sum {
        return Err(CutError::AdditivityFailure {
            expected: format_rational(&sum),
            found: format_rational(&total),
        });
    }
    Ok(total)
}

/// The attained values recovered through cuts: one per prime ideal. Agrees
/// with [`StepFunction::range_set`]; the agreement itself is a checked law,
/// so this route stays independent of the parts.
pub fn range_via_cuts(alpha: &StepFunction) -> BTreeSet<Rational> {
    let primes =
        prime_ideals(alpha.frame()).expect("a frame carrying a function has prime ideals");
    primes
        .iter()
        .map(|p| cut(alpha, p).expect("same frame").value)
        .collect()
}

fn rationals_json(set: &BTreeSet<Rational>) -> Value {
    Value::Array(set.iter().map(|v| json!(format_rational(v))).collect())
}

fn minkowski_sum(sets: &[BTreeSet<Rational>]) -> BTreeSet<Rational> {
    let mut acc: BTreeSet<Rational> = std::iter::once(int(0)).collect();
    for s in sets {
        acc = acc
            .iter()
            .flat_map(|a| s.iter().map(move |b| a + b))
            .collect();
    }
    acc
}

/// One of the three range inclusion statements.
pub enum RangeSubsetCheck<'a> {
    /// Values of a linear combination sit inside the elementwise sum of the
    /// scaled summands' values.
    Linear {
        coeffs: &'a [Rational],
        idems: &'a [Idempotent],
    },
    /// Values of a pointwise combination sit inside the elementwise
    /// combination of the two value sets.
    Binary {
        left: &'a Idempotent,
        right: &'a Idempotent,
        op: Op,
    },
    /// Values of the halving series over a finite idempotent list sit inside
    /// the elementwise sum of the terms' values, and the series' cozero
    /// element is the join of the terms' cozero elements.
    Series { idems: &'a [Idempotent] },
}

/// Verifies one range inclusion, with every value set computed through cuts.
pub fn range_subset_check(check: &RangeSubsetCheck) -> Result<PropertyReport, CutError> {
    match check {
        RangeSubsetCheck::Linear { coeffs, idems } => {
            if coeffs.len() != idems.len() {
                return Err(CutError::LengthMismatch {
                    left: coeffs.len(),
                    right: idems.len(),
                });
            }
            let frame = family_frame(idems)?;
            let alpha = linear_combination_function(coeffs, idems, frame)?;
            let total = range_via_cuts(&alpha);
            let term_ranges: Vec<BTreeSet<Rational>> = coeffs
                .iter()
                .zip(idems.iter())
                .map(|(r, e)| range_via_cuts(&e.scale(r)))
                .collect();
            let superset = minkowski_sum(&term_ranges);
            subset_report(frame.name(), "range-linear-subset", &total, &superset)
        }
        RangeSubsetCheck::Binary { left, right, op } => {
            if left.frame().id() != right.frame().id() {
                return Err(CutError::FrameMismatch {
                    left: left.frame().name().to_owned(),
                    right: right.frame().name().to_owned(),
                });
            }
            let combined = left.combine(right, *op)?;
            let total = range_via_cuts(&combined);
            let ra = range_via_cuts(left.as_step());
            let rb = range_via_cuts(right.as_step());
            let superset: BTreeSet<Rational> = ra
                .iter()
                .flat_map(|a| rb.iter().map(|b| op.apply(a, b)))
                .collect();
            subset_report(
                left.frame().name(),
                "range-binary-subset",
                &total,
                &superset,
            )
        }
        RangeSubsetCheck::Series { idems } => {
            let frame = family_frame(idems)?;
            let mut coeff = int(1);
            let mut terms = Vec::new();
            for e in idems.iter() {
                terms.push(e.scale(&coeff));
                coeff = coeff / int(2);
            }
            let mut alpha = StepFunction::constant(frame, int(0))?;
            for t in &terms {
                alpha = alpha.combine(t, Op::Add)?;
            }
            let total = range_via_cuts(&alpha);
            let term_ranges: Vec<BTreeSet<Rational>> =
                terms.iter().map(range_via_cuts).collect();
            let superset = minkowski_sum(&term_ranges);
            let coz_join = frame.big_join(idems.iter().map(|e| e.coz()));
            if alpha.coz() != coz_join {
                return Ok(PropertyReport::fail(
                    frame.name(),
                    "range-series-subset",
                    json!({
                        "seriesCoz": frame.element_name(alpha.coz()),
                        "termCozJoin": frame.element_name(coz_join),
                    }),
                ));
            }
            subset_report(frame.name(), "range-series-subset", &total, &superset)
        }
    }
}

fn family_frame<'a>(idems: &'a [Idempotent]) -> Result<&'a Arc<Frame>, CutError> {
    let first = idems.first().ok_or(CutError::EmptyFamily)?;
    for e in &idems[1..] {
        if e.frame().id() != first.frame().id() {
            return Err(CutError::FrameMismatch {
                left: first.frame().name().to_owned(),
                right: e.frame().name().to_owned(),
            });
        }
    }
    Ok(first.frame())
}

fn subset_report(
    frame: &str,
    property: &str,
    total: &BTreeSet<Rational>,
    superset: &BTreeSet<Rational>,
) -> Result<PropertyReport, CutError> {
    if let Some(stray) = total.iter().find(|v| !superset.contains(v)) {
        return Ok(PropertyReport::fail(
            frame,
            property,
            json!({
                "value": format_rational(stray),
                "range": rationals_json(total),
                "superset": rationals_json(superset),
            }),
        ));
    }
    Ok(PropertyReport::pass_with(
        frame,
        property,
        vec![json!({
            "range": rationals_json(total),
            "superset": rationals_json(superset),
        })],
    ))
}

/// Confirms the cut exists at every prime ideal, recording the integer bound
/// that traps the function: both scans agree, the value stays within the
/// bound, and the function vanishes outside it.
pub fn bounded_cut_check(alpha: &StepFunction) -> PropertyReport {
    let frame = alpha.frame();
    let name = frame.name();
    let max_abs = alpha
        .parts()
        .iter()
        .map(|(_, v)| v.abs())
        .max()
        .expect("canonical functions have at least one part");
    let bound = ceil_abs(&max_abs) + int(1);
    if alpha.ray_above(&bound) != frame.bottom()
        || alpha.ray_below(&(-bound.clone())) != frame.bottom()
    {
        return PropertyReport::fail(
            name,
            "bounded-cut",
            json!({ "bound": format_rational(&bound), "reason": "function escapes the bound" }),
        );
    }
    let primes = prime_ideals(frame).expect("frame carries a function");
    for p in &primes {
        let up = upper_cut_scan(alpha, p);
        let low = lower_cut_scan(alpha, p);
        match (up, low) {
            (Some(u), Some(l)) if u == l && u.abs() <= bound => {}
            (u, l) => {
                return PropertyReport::fail(
                    name,
                    "bounded-cut",
                    json!({
                        "prime": p.id(),
                        "upperScan": u.as_ref().map(format_rational),
                        "lowerScan": l.as_ref().map(format_rational),
                        "bound": format_rational(&bound),
                    }),
                );
            }
        }
    }
    PropertyReport::pass_with(
        name,
        "bounded-cut",
        vec![json!({ "bound": format_rational(&bound), "primes": primes.len() })],
    )
}
