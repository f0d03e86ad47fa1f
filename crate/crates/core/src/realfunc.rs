//! Rational step functions over a frame.
//!
//! A step function is a finite partition of the top element into pairwise
//! disjoint complemented parts, each carrying a distinct rational value. It
//! assigns to every open interval of rationals the join of the parts whose
//! value falls inside, which is exactly the data of a frame homomorphism out
//! of the rational interval presentation when the frame is finite.
//!
//! Everything here is exact. Values are arbitrary-precision rationals and
//! comparisons are decided, never approximated.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Frame, FrameElement};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FuncError {
    #[error("frame `{0}` has one element; step functions need distinct bottom and top")]
    DegenerateFrame(String),
    #[error("part `{0}` is not complemented")]
    PartNotComplemented(String),
    #[error("parts `{left}` and `{right}` overlap")]
    PartsNotDisjoint { left: String, right: String },
    #[error("parts join to `{join}` instead of the top element")]
    PartsDoNotCover { join: String },
    #[error("interval ({lo}, {hi}) is empty")]
    EmptyInterval { lo: String, hi: String },
    #[error("functions live on different frames: `{left}` and `{right}`")]
    FrameMismatch { left: String, right: String },
    #[error("element `{0}` does not belong to the frame")]
    UnknownElement(String),
    #[error("`{0}` is not a rational value: {1}")]
    InvalidValue(String, String),
    #[error("document names frame `{found}`, expected `{expected}`")]
    WrongFrame { expected: String, found: String },
    #[error("element `{0}` has no complement, so it has no indicator function")]
    NotInCenter(String),
    #[error("value {0} is neither 0 nor 1")]
    NotZeroOne(String),
}

/// Pointwise operation used when combining two step functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Add,
    Mul,
    Max,
    Min,
}

pub const ALL_OPS: [Op; 4] = [Op::Add, Op::Mul, Op::Max, Op::Min];

impl Op {
    pub fn apply(&self, r: &Rational, s: &Rational) -> Rational {
        match self {
            Op::Add => r + s,
            Op::Mul => r * s,
            Op::Max => r.max(s).clone(),
            Op::Min => r.min(s).clone(),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            Op::Add => "add",
            Op::Mul => "mul",
            Op::Max => "max",
            Op::Min => "min",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl std::str::FromStr for Op {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "add" | "+" => Ok(Op::Add),
            "mul" | "*" => Ok(Op::Mul),
            "max" => Ok(Op::Max),
            "min" => Ok(Op::Min),
            other => Err(format!("unknown operation `{other}`")),
        }
    }
}

/// Which side a one-sided cut approaches `r` from; see
/// [`StepFunction::eval_cut`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutSide {
    Upper,
    Lower,
}

/// A rational step function in canonical form: parts sorted by element
/// index, no bottom part, all values distinct.
#[derive(Clone)]
pub struct StepFunction {
    frame: Arc<Frame>,
    parts: Vec<(FrameElement, Rational)>,
}

impl StepFunction {
    /// Builds a step function from any list of part/value pairs.
    /// Bottom parts are dropped and parts with equal values are merged by
    /// join before validation, so the input need not be in canonical form.
    pub fn new<I>(frame: &Arc<Frame>, parts: I) -> Result<Self, FuncError>
    where
        I: IntoIterator<Item = (FrameElement, Rational)>,
    {
        if frame.len() < 2 {
            return Err(FuncError::DegenerateFrame(frame.name().to_owned()));
        }
        let mut merged: Vec<(FrameElement, Rational)> = Vec::new();
        for (el, value) in parts {
            if el == frame.bottom() {
                continue;
            }
            match merged.iter_mut().find(|(_, v)| *v == value) {
                Some(slot) => slot.0 = frame.join(slot.0, el),
                None => merged.push((el, value)),
            }
        }
        for (el, _) in &merged {
            if !frame.is_complemented(*el) {
                return Err(FuncError::PartNotComplemented(
                    frame.element_name(*el).to_owned(),
                ));
            }
        }
        for (i, (a, _)) in merged.iter().enumerate() {
            for (b, _) in &merged[i + 1..] {
                if frame.meet(*a, *b) != frame.bottom() {
                    return Err(FuncError::PartsNotDisjoint {
                        left: frame.element_name(*a).to_owned(),
                        right: frame.element_name(*b).to_owned(),
                    });
                }
            }
        }
        let join = frame.big_join(merged.iter().map(|(a, _)| *a));
        if join != frame.top() {
            return Err(FuncError::PartsDoNotCover {
                join: frame.element_name(join).to_owned(),
            });
        }
        merged.sort_by_key(|(el, _)| el.index());
        Ok(StepFunction {
            frame: Arc::clone(frame),
            parts: merged,
        })
    }

    pub fn constant(frame: &Arc<Frame>, value: Rational) -> Result<Self, FuncError> {
        if frame.len() < 2 {
            return Err(FuncError::DegenerateFrame(frame.name().to_owned()));
        }
        Self::new(frame, [(frame.top(), value)])
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    /// Canonical parts, sorted by element index, values pairwise distinct.
    pub fn parts(&self) -> &[(FrameElement, Rational)] {
        &self.parts
    }

    pub fn part_values(&self) -> BTreeSet<Rational> {
        self.parts.iter().map(|(_, v)| v.clone()).collect()
    }

    /// The element assigned to the open interval between the bounds, where
    /// `None` means unbounded on that side: the join of the parts whose
    /// value lies strictly inside. A bounded interval with `lo >= hi` is
    /// rejected rather than silently treated as empty.
    pub fn eval(
        &self,
        lo: Option<&Rational>,
        hi: Option<&Rational>,
    ) -> Result<FrameElement, FuncError> {
        if let (Some(l), Some(h)) = (lo, hi) {
            if l >= h {
                return Err(FuncError::EmptyInterval {
                    lo: format_rational(l),
                    hi: format_rational(h),
                });
            }
        }
        let selected = self
            .parts
            .iter()
            .filter(|(_, v)| lo.map_or(true, |l| l < v) && hi.map_or(true, |h| v < h))
            .map(|(el, _)| *el);
        Ok(self.frame.big_join(selected))
    }

    pub fn eval_interval(&self, lo: &Rational, hi: &Rational) -> Result<FrameElement, FuncError> {
        self.eval(Some(lo), Some(hi))
    }

    /// The element assigned to the open ray above `r`.
    pub fn ray_above(&self, r: &Rational) -> FrameElement {
        self.eval(Some(r), None).expect("rays are never empty")
    }

    /// The element assigned to the open ray below `r`.
    pub fn ray_below(&self, r: &Rational) -> FrameElement {
        self.eval(None, Some(r)).expect("rays are never empty")
    }

    /// The element a one-sided cut at `r` converges to. For
    /// [`CutSide::Upper`] this is the join of the rays below `r - 1/2^n`,
    /// which stabilizes at the join of the parts with value strictly below
    /// `r`; [`CutSide::Lower`] approaches from above and captures the parts
    /// with value strictly above. When `r` is not an attained value the two
    /// sides complement each other.
    pub fn eval_cut(&self, r: &Rational, side: CutSide) -> FrameElement {
        let mut step = crate::rational::int(1);
        let mut joined = self.frame.bottom();
        loop {
            let probe = match side {
                CutSide::Upper => self.ray_below(&(r - &step)),
                CutSide::Lower => self.ray_above(&(r + &step)),
            };
            joined = self.frame.join(joined, probe);
            let settled = match side {
                CutSide::Upper => {
                    let bound = r - &step;
                    self.parts.iter().all(|(_, v)| v >= r || *v < bound)
                }
                CutSide::Lower => {
                    let bound = r + &step;
                    self.parts.iter().all(|(_, v)| v <= r || *v > bound)
                }
            };
            if settled {
                return joined;
            }
            step = step / crate::rational::int(2);
        }
    }

    /// Pointwise combination through the common refinement: each pair of
    /// overlapping parts contributes the overlap with the operation applied
    /// to the two values.
    pub fn combine(&self, other: &StepFunction, op: Op) -> Result<StepFunction, FuncError> {
        if self.frame.id() != other.frame.id() {
            return Err(FuncError::FrameMismatch {
                left: self.frame.name().to_owned(),
                right: other.frame.name().to_owned(),
            });
        }
        let mut refined = Vec::new();
        for (a, r) in &self.parts {
            for (b, s) in &other.parts {
                let c = self.frame.meet(*a, *b);
                if c != self.frame.bottom() {
                    refined.push((c, op.apply(r, s)));
                }
            }
        }
        Self::new(&self.frame, refined)
    }

    /// Multiplies every value by a rational constant.
    pub fn scale(&self, k: &Rational) -> StepFunction {
        Self::new(
            &self.frame,
            self.parts.iter().map(|(el, v)| (*el, v * k)),
        )
        .expect("scaling keeps the partition intact")
    }

    /// Adds a rational constant to every value.
    pub fn shift(&self, k: &Rational) -> StepFunction {
        Self::new(
            &self.frame,
            self.parts.iter().map(|(el, v)| (*el, v + k)),
        )
        .expect("shifting keeps the partition intact")
    }

    /// The cozero element: the join of the parts with nonzero value, equal
    /// to the complement of where the function vanishes.
    pub fn coz(&self) -> FrameElement {
        self.frame.big_join(
            self.parts
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(el, _)| *el),
        )
    }

    /// The set of attained values, computed from the definition: `v` is
    /// attained when subtracting the constant `v` leaves a function whose
    /// cozero element is not the whole frame. Agrees with the values stored
    /// in the parts; [`part_values`](Self::part_values) is the direct
    /// accessor.
    pub fn range_set(&self) -> BTreeSet<Rational> {
        let mut out = BTreeSet::new();
        for (_, v) in &self.parts {
            let minus_v = StepFunction::constant(&self.frame, -v.clone())
                .expect("frame already carries a function");
            let shifted = self
                .combine(&minus_v, Op::Add)
                .expect("same frame by construction");
            if shifted.coz() != self.frame.top() {
                out.insert(v.clone());
            }
        }
        out
    }

    /// Indicator functions of the nonzero parts. Their cozero elements join
    /// to the cozero element of the function itself, and multiplying the
    /// function by one of them masks it to that part.
    pub fn decompose_coz(&self) -> Vec<Idempotent> {
        self.parts
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(el, _)| {
                Idempotent::indicator(&self.frame, *el).expect("parts are complemented")
            })
            .collect()
    }

    pub fn to_doc(&self) -> FunctionDoc {
        FunctionDoc {
            frame: self.frame.name().to_owned(),
            parts: self
                .parts
                .iter()
                .map(|(el, v)| (self.frame.element_name(*el).to_owned(), format_rational(v)))
                .collect(),
        }
    }

    pub fn from_doc(doc: &FunctionDoc, frame: &Arc<Frame>) -> Result<Self, FuncError> {
        if doc.frame != frame.name() {
            return Err(FuncError::WrongFrame {
                expected: frame.name().to_owned(),
                found: doc.frame.clone(),
            });
        }
        let mut parts = Vec::new();
        for (name, text) in &doc.parts {
            let el = frame
                .element_by_name(name)
                .ok_or_else(|| FuncError::UnknownElement(name.clone()))?;
            let value = parse_rational(text)
                .map_err(|reason| FuncError::InvalidValue(text.clone(), reason))?;
            parts.push((el, value));
        }
        Self::new(frame, parts)
    }
}

impl PartialEq for StepFunction {
    fn eq(&self, other: &Self) -> bool {
        self.frame.id() == other.frame.id() && self.parts == other.parts
    }
}

impl Eq for StepFunction {}

impl fmt::Debug for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StepFunction on {} {{", self.frame.name())?;
        for (i, (el, v)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {}: {}", self.frame.element_name(*el), format_rational(v))?;
        }
        write!(f, " }}")
    }
}

/// A step function whose values all lie in {0, 1}: the indicator of a
/// complemented element. These are exactly the solutions of e·e = e.
#[derive(Clone, PartialEq, Eq)]
pub struct Idempotent(StepFunction);

impl Idempotent {
    /// The indicator of a complemented element: 1 on it, 0 on its
    /// complement.
    pub fn indicator(frame: &Arc<Frame>, el: FrameElement) -> Result<Self, FuncError> {
        if frame.len() < 2 {
            return Err(FuncError::DegenerateFrame(frame.name().to_owned()));
        }
        let co = frame
            .complement(el)
            .map_err(|_| FuncError::NotInCenter(frame.element_name(el).to_owned()))?;
        let f = StepFunction::new(frame, [(el, crate::rational::int(1)), (co, crate::rational::int(0))])?;
        Ok(Idempotent(f))
    }

    /// Reinterprets a step function as an idempotent, rejecting any value
    /// outside {0, 1}.
    pub fn from_step(f: StepFunction) -> Result<Self, FuncError> {
        use num::One;
        for (_, v) in f.parts() {
            if !v.is_zero() && !v.is_one() {
                return Err(FuncError::NotZeroOne(format_rational(v)));
            }
        }
        Ok(Idempotent(f))
    }

    /// Every idempotent on the frame, one per complemented element, in
    /// element order.
    pub fn all(frame: &Arc<Frame>) -> Vec<Self> {
        frame
            .center()
            .into_iter()
            .map(|el| Self::indicator(frame, el).expect("center elements are complemented"))
            .collect()
    }

    /// The complemented element this is the indicator of.
    pub fn support(&self) -> FrameElement {
        self.0.coz()
    }

    pub fn into_inner(self) -> StepFunction {
        self.0
    }

    pub fn as_step(&self) -> &StepFunction {
        &self.0
    }
}

impl Deref for Idempotent {
    type Target = StepFunction;
    fn deref(&self) -> &StepFunction {
        &self.0
    }
}

impl fmt::Debug for Idempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Idempotent({} on {})",
            self.0.frame.element_name(self.support()),
            self.0.frame.name()
        )
    }
}

/// Serialization form: the frame by name, parts as element-name/value-string
/// pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionDoc {
    pub frame: String,
    pub parts: Vec<(String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::testkit::{arc, b2, c3};

    fn el(f: &Arc<Frame>, name: &str) -> FrameElement {
        f.element_by_name(name).unwrap()
    }

    #[test]
    fn constants_have_one_part_and_degenerate_frames_are_rejected() {
        let f = arc(b2());
        let five = StepFunction::constant(&f, int(5)).unwrap();
        assert_eq!(five.parts(), &[(f.top(), int(5))]);

        let pt = arc(
            Frame::build("pt", ["x"], Vec::<(&str, &str)>::new()).unwrap(),
        );
        assert!(matches!(
            StepFunction::constant(&pt, int(0)),
            Err(FuncError::DegenerateFrame(_))
        ));
    }

    #[test]
    fn canonicalization_drops_bottom_and_merges_equal_values() {
        let f = arc(b2());
        let (a, b) = (el(&f, "a"), el(&f, "b"));
        let g = StepFunction::new(
            &f,
            [(a, int(1)), (f.bottom(), int(9)), (b, int(1))],
        )
        .unwrap();
        assert_eq!(g.parts(), &[(f.top(), int(1))]);
    }

    #[test]
    fn invalid_partitions_are_rejected_with_names() {
        let f = arc(b2());
        let (a, top) = (el(&f, "a"), f.top());
        assert!(matches!(
            StepFunction::new(&f, [(a, int(0))]),
            Err(FuncError::PartsDoNotCover { .. })
        ));
        assert!(matches!(
            StepFunction::new(&f, [(a, int(0)), (top, int(1))]),
            Err(FuncError::PartsNotDisjoint { .. })
        ));
        let c = arc(c3());
        let m = el(&c, "m");
        let err = StepFunction::new(&c, [(m, int(0)), (c.top(), int(1))]).unwrap_err();
        assert!(matches!(err, FuncError::PartNotComplemented(ref n) if n == "m"));
    }

    #[test]
    fn on_a_chain_only_constants_exist() {
        let c = arc(c3());
        assert_eq!(Idempotent::all(&c).len(), 2);
        assert!(StepFunction::constant(&c, rat(7, 3)).is_ok());
    }

    #[test]
    fn interval_and_ray_evaluation() {
        let f = arc(b2());
        let (a, b) = (el(&f, "a"), el(&f, "b"));
        let e = StepFunction::new(&f, [(a, int(1)), (b, int(0))]).unwrap();

        assert_eq!(e.ray_above(&int(0)), a);
        assert_eq!(e.ray_above(&int(-1)), f.top());
        assert_eq!(e.ray_above(&int(1)), f.bottom());
        assert_eq!(e.ray_below(&int(1)), b);
        assert_eq!(e.ray_below(&rat(1, 2)), b);
        assert_eq!(e.eval_interval(&rat(-1, 2), &rat(1, 2)).unwrap(), b);
        assert_eq!(e.eval_interval(&int(0), &int(1)).unwrap(), f.bottom());
        assert_eq!(e.eval(None, None).unwrap(), f.top());
        assert!(matches!(
            e.eval_interval(&int(1), &int(0)),
            Err(FuncError::EmptyInterval { .. })
        ));
        assert!(matches!(
            e.eval_interval(&int(1), &int(1)),
            Err(FuncError::EmptyInterval { .. })
        ));
    }

    #[test]
    fn one_sided_cuts_stabilize_onto_the_rays() {
        let f = arc(b2());
        let (a, b) = (el(&f, "a"), el(&f, "b"));
        let e = StepFunction::new(&f, [(a, int(1)), (b, int(0))]).unwrap();

        assert_eq!(e.eval_cut(&rat(1, 2), CutSide::Upper), b);
        assert_eq!(e.eval_cut(&rat(1, 2), CutSide::Lower), a);
        assert_eq!(e.eval_cut(&int(1), CutSide::Upper), b);
        assert_eq!(e.eval_cut(&int(1), CutSide::Lower), f.bottom());

        let c = arc(c3());
        let zero = StepFunction::constant(&c, int(0)).unwrap();
        assert_eq!(zero.eval_cut(&int(-1), CutSide::Lower), c.top());
        assert_eq!(zero.eval_cut(&int(-1), CutSide::Upper), c.bottom());

        let g = StepFunction::new(&f, [(a, int(2)), (b, int(3))]).unwrap();
        for r in [rat(5, 2), int(0), int(7), rat(-13, 4)] {
            assert!(!g.range_set().contains(&r));
            let up = g.eval_cut(&r, CutSide::Upper);
            let low = g.eval_cut(&r, CutSide::Lower);
            assert_eq!(f.join(up, low), f.top());
            assert_eq!(f.meet(up, low), f.bottom());
        }
    }

    #[test]
    fn combining_complementary_indicators_gives_constants() {
        let f = arc(b2());
        let (a, b) = (el(&f, "a"), el(&f, "b"));
        let ea = Idempotent::indicator(&f, a).unwrap();
        let eb = Idempotent::indicator(&f, b).unwrap();

        let one = StepFunction::constant(&f, int(1)).unwrap();
        let zero = StepFunction::constant(&f, int(0)).unwrap();
        assert_eq!(ea.combine(&eb, Op::Add).unwrap(), one);
        assert_eq!(ea.combine(&eb, Op::Mul).unwrap(), zero);
        assert_eq!(ea.combine(&eb, Op::Max).unwrap(), one);
        assert_eq!(ea.combine(&eb, Op::Min).unwrap(), zero);

        let doubled = ea.combine(&ea, Op::Add).unwrap();
        assert_eq!(doubled, ea.scale(&int(2)));
        assert_eq!(ea.scale(&int(0)), zero);
    }

    #[test]
    fn cross_frame_combination_is_rejected_even_for_twins() {
        let f = arc(b2());
        let g = arc(b2());
        let one_f = StepFunction::constant(&f, int(1)).unwrap();
        let one_g = StepFunction::constant(&g, int(1)).unwrap();
        assert!(matches!(
            one_f.combine(&one_g, Op::Add),
            Err(FuncError::FrameMismatch { .. })
        ));
    }

    #[test]
    fn cozero_elements_and_ranges() {
        let f = arc(b2());
        let (a, b) = (el(&f, "a"), el(&f, "b"));
        let ea = Idempotent::indicator(&f, a).unwrap();
        assert_eq!(ea.coz(), a);
        assert_eq!(StepFunction::constant(&f, int(0)).unwrap().coz(), f.bottom());
        assert_eq!(StepFunction::constant(&f, int(7)).unwrap().coz(), f.top());

        let g = StepFunction::new(&f, [(a, int(1)), (b, int(2))]).unwrap();
        assert_eq!(g.coz(), f.top());
        let range: Vec<_> = g.range_set().into_iter().collect();
        assert_eq!(range, vec![int(1), int(2)]);
        assert_eq!(g.range_set(), g.part_values());

        let parts = g.decompose_coz();
        assert_eq!(parts.len(), 2);
        let joined = f.join(parts[0].support(), parts[1].support());
        assert_eq!(joined, g.coz());
    }

    #[test]
    fn scaling_and_shifting_act_on_values() {
        let f = arc(b2());
        let (a, b) = (el(&f, "a"), el(&f, "b"));
        let g = StepFunction::new(&f, [(a, int(2)), (b, int(-1))]).unwrap();
        let h = g.scale(&rat(1, 2));
        assert_eq!(h.parts(), &[(a, int(1)), (b, rat(-1, 2))]);
        let s = g.shift(&int(1));
        assert_eq!(s.parts(), &[(a, int(3)), (b, int(0))]);
        assert_eq!(s.coz(), a);
    }

    #[test]
    fn masking_by_an_idempotent_follows_the_two_case_formula() {
        let f = arc(b2());
        let (a, b) = (el(&f, "a"), el(&f, "b"));
        let alpha = StepFunction::new(&f, [(a, int(2)), (b, int(-1))]).unwrap();
        let ea = Idempotent::indicator(&f, a).unwrap();
        let beta = alpha.combine(&ea, Op::Mul).unwrap();
        assert_eq!(beta.parts(), &[(a, int(2)), (b, int(0))]);

        let zero = int(0);
        for (lo, hi) in [
            (int(1), int(3)),
            (rat(-1, 2), rat(1, 2)),
            (int(-2), int(3)),
            (int(-5), rat(-1, 2)),
        ] {
            let direct = beta.eval_interval(&lo, &hi).unwrap();
            let masked = f.meet(alpha.eval_interval(&lo, &hi).unwrap(), a);
            let expected = if lo < zero && zero < hi {
                f.join(masked, b)
            } else {
                masked
            };
            assert_eq!(direct, expected, "interval ({lo}, {hi})");
        }
    }

    #[test]
    fn idempotent_constructors_enforce_their_contracts() {
        let f = arc(b2());
        let one = Idempotent::indicator(&f, f.top()).unwrap();
        assert_eq!(one.parts(), &[(f.top(), int(1))]);
        let zero = Idempotent::indicator(&f, f.bottom()).unwrap();
        assert_eq!(zero.parts(), &[(f.top(), int(0))]);

        let c = arc(c3());
        let m = el(&c, "m");
        assert!(matches!(
            Idempotent::indicator(&c, m),
            Err(FuncError::NotInCenter(ref n)) if n == "m"
        ));

        let two = StepFunction::constant(&f, int(2)).unwrap();
        assert!(matches!(
            Idempotent::from_step(two),
            Err(FuncError::NotZeroOne(_))
        ));
        let e = Idempotent::from_step(
            StepFunction::new(&f, [(el(&f, "a"), int(1)), (el(&f, "b"), int(0))]).unwrap(),
        )
        .unwrap();
        assert_eq!(e.support(), el(&f, "a"));
    }

    #[test]
    fn all_idempotents_match_the_center() {
        let f = arc(b2());
        let all = Idempotent::all(&f);
        assert_eq!(all.len(), f.center().len());
        for (e, c) in all.iter().zip(f.center()) {
            assert_eq!(e.support(), c);
        }
    }

    #[test]
    fn function_documents_round_trip() {
        let f = arc(b2());
        let (a, b) = (el(&f, "a"), el(&f, "b"));
        let g = StepFunction::new(&f, [(a, rat(7, 3)), (b, int(-2))]).unwrap();
        let doc = g.to_doc();
        let json = serde_json::to_string(&doc).unwrap();
        let back: FunctionDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(StepFunction::from_doc(&back, &f).unwrap(), g);

        let wrong = FunctionDoc {
            frame: "elsewhere".into(),
            parts: vec![],
        };
        assert!(matches!(
            StepFunction::from_doc(&wrong, &f),
            Err(FuncError::WrongFrame { .. })
        ));
        let unknown = FunctionDoc {
            frame: f.name().to_owned(),
            parts: vec![("nope".into(), "1".into())],
        };
        assert!(matches!(
            StepFunction::from_doc(&unknown, &f),
            Err(FuncError::UnknownElement(_))
        ));
        let bad = FunctionDoc {
            frame: f.name().to_owned(),
            parts: vec![("a".into(), "1/0".into())],
        };
        assert!(matches!(
            StepFunction::from_doc(&bad, &f),
            Err(FuncError::InvalidValue(..))
        ));
    }
}
