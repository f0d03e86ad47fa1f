//! Finite frame kernel.
//!
//! A frame here is a finite bounded distributive lattice, built once from a
//! carrier and a cover relation and validated eagerly (partial order, bounds,
//! binary meets and joins, distributivity over every triple). After
//! construction every operation is a table lookup, so the verification
//! suites can quantify over millions of triples cheaply.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

static NEXT_FRAME_ID: AtomicU32 = AtomicU32::new(1);

/// Identity tag for a frame instance. Elements carry it so that feeding an
/// element of one frame to another frame's tables is caught immediately.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FrameId(u32);

/// An element of a specific frame: an index into the carrier plus the
/// identity tag of the frame it belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameElement {
    pub(crate) frame: FrameId,
    pub(crate) index: u16,
}

impl FrameElement {
    pub fn index(&self) -> usize {
        self.index as usize
    }

    pub fn frame_id(&self) -> FrameId {
        self.frame
    }
}

impl fmt::Debug for FrameElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "el#{}", self.index)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("frame has no elements")]
    EmptyCarrier,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("cover pair references unknown element `{0}`")]
    UnknownElement(String),
    #[error("cover relation is cyclic: `{a}` and `{b}` are mutually below each other")]
    CyclicCovers { a: String, b: String },
    #[error("frame has no {missing} element")]
    NoBounds { missing: &'static str },
    #[error("not a lattice: `{a}` and `{b}` have no {which}")]
    NotALattice {
        a: String,
        b: String,
        which: &'static str,
    },
    #[error("not distributive: witness triple ({a}, {b}, {c})")]
    NotDistributive { a: String, b: String, c: String },
    #[error("`{0}` is not complemented")]
    NotComplemented(String),
}

/// Finite bounded distributive lattice with precomputed operation tables.
pub struct Frame {
    id: FrameId,
    name: String,
    names: Vec<String>,
    index_of: BTreeMap<String, u16>,
    n: usize,
    leq: Vec<bool>,
    meet_t: Vec<u16>,
    join_t: Vec<u16>,
    psc: Vec<u16>,
    bottom: u16,
    top: u16,
    join_irr: Vec<u16>,
    center: Vec<u16>,
}

impl Frame {
    /// Builds a frame from named elements and a cover relation. The order is
    /// the reflexive-transitive closure of the covers; validation rejects
    /// cycles, missing bounds, missing binary meets or joins, and any
    /// distributivity failure (with a witness triple).
    pub fn build<S, C, I, J>(name: S, elements: I, covers: J) -> Result<Frame, LatticeError>
    where
        S: Into<String>,
        C: AsRef<str>,
        I: IntoIterator<Item = C>,
        J: IntoIterator<Item = (C, C)>,
    {
        let names: Vec<String> = elements.into_iter().map(|s| s.as_ref().to_owned()).collect();
        if names.is_empty() {
            return Err(LatticeError::EmptyCarrier);
        }
        if names.len() > u16::MAX as usize {
            return Err(LatticeError::NotALattice {
                a: names[0].clone(),
                b: names[names.len() - 1].clone(),
                which: "tractable size",
            });
        }
        let mut index_of = BTreeMap::new();
        for (i, nm) in names.iter().enumerate() {
            if index_of.insert(nm.clone(), i as u16).is_some() {
                return Err(LatticeError::DuplicateName(nm.clone()));
            }
        }
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let lo = *index_of
                .get(lo.as_ref())
                .ok_or_else(|| LatticeError::UnknownElement(lo.as_ref().to_owned()))?
                as usize;
            let hi = *index_of
                .get(hi.as_ref())
                .ok_or_else(|| LatticeError::UnknownElement(hi.as_ref().to_owned()))?
                as usize;
            leq[lo * n + hi] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(LatticeError::CyclicCovers {
                        a: names[a].clone(),
                        b: names[b].clone(),
                    });
                }
            }
        }
        let bottom = (0..n)
            .find(|&x| (0..n).all(|y| leq[x * n + y]))
            .ok_or(LatticeError::NoBounds { missing: "bottom" })? as u16;
        let top = (0..n)
            .find(|&x| (0..n).all(|y| leq[y * n + x]))
            .ok_or(LatticeError::NoBounds { missing: "top" })? as u16;

        let mut meet_t = vec![0u16; n * n];
        let mut join_t = vec![0u16; n * n];
        for a in 0..n {
            for b in a..n {
                let m = (0..n)
                    .filter(|&x| leq[x * n + a] && leq[x * n + b])
                    .find(|&m| {
                        (0..n)
                            .filter(|&x| leq[x * n + a] && leq[x * n + b])
                            .all(|x| leq[x * n + m])
                    });
                let m = m.ok_or_else(|| LatticeError::NotALattice {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    which: "meet",
                })? as u16;
                meet_t[a * n + b] = m;
                meet_t[b * n + a] = m;
                let j = (0..n)
                    .filter(|&x| leq[a * n + x] && leq[b * n + x])
                    .find(|&j| {
                        (0..n)
                            .filter(|&x| leq[a * n + x] && leq[b * n + x])
                            .all(|x| leq[j * n + x])
                    });
                let j = j.ok_or_else(|| LatticeError::NotALattice {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    which: "join",
                })? as u16;
                join_t[a * n + b] = j;
                join_t[b * n + a] = j;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = meet_t[a * n + join_t[b * n + c] as usize];
                    let rhs = join_t[meet_t[a * n + b] as usize * n + meet_t[a * n + c] as usize];
                    if lhs != rhs {
                        return Err(LatticeError::NotDistributive {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            c: names[c].clone(),
                        });
                    }
                }
            }
        }
        let mut psc = vec![0u16; n];
        for a in 0..n {
            let mut acc = bottom;
            for x in 0..n {
                if meet_t[a * n + x] == bottom {
                    acc = join_t[acc as usize * n + x];
                }
            }
            psc[a] = acc;
        }
        let mut join_irr = Vec::new();
        for j in 0..n {
            if j as u16 == bottom {
                continue;
            }
            let mut irr = true;
            'outer: for a in 0..n {
                for b in a..n {
                    if join_t[a * n + b] as usize == j && a != j && b != j {
                        irr = false;
                        break 'outer;
                    }
                }
            }
            if irr {
                join_irr.push(j as u16);
            }
        }
        let center: Vec<u16> = (0..n as u16)
            .filter(|&a| join_t[a as usize * n + psc[a as usize] as usize] == top)
            .collect();

        let id = FrameId(NEXT_FRAME_ID.fetch_add(1, Ordering::Relaxed));
        Ok(Frame {
            id,
            name: name.into(),
            names,
            index_of,
            n,
            leq,
            meet_t,
            join_t,
            psc,
            bottom,
            top,
            join_irr,
            center,
        })
    }

    pub fn id(&self) -> FrameId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn el(&self, index: u16) -> FrameElement {
        FrameElement {
            frame: self.id,
            index,
        }
    }

    #[track_caller]
    fn check(&self, e: FrameElement) -> usize {
        assert!(
            e.frame == self.id,
            "element belongs to a different frame than `{}`",
            self.name
        );
        e.index as usize
    }

    pub fn element(&self, index: usize) -> FrameElement {
        assert!(index < self.n, "element index out of range");
        self.el(index as u16)
    }

    pub fn element_by_name(&self, name: &str) -> Option<FrameElement> {
        self.index_of.get(name).map(|&i| self.el(i))
    }

    pub fn element_name(&self, e: FrameElement) -> &str {
        let i = self.check(e);
        &self.names[i]
    }

    pub fn elements(&self) -> impl Iterator<Item = FrameElement> + '_ {
        (0..self.n as u16).map(move |i| self.el(i))
    }

    pub fn bottom(&self) -> FrameElement {
        self.el(self.bottom)
    }

    pub fn top(&self) -> FrameElement {
        self.el(self.top)
    }

    pub fn leq(&self, a: FrameElement, b: FrameElement) -> bool {
        let (a, b) = (self.check(a), self.check(b));
        self.leq[a * self.n + b]
    }

    pub fn meet(&self, a: FrameElement, b: FrameElement) -> FrameElement {
        let (a, b) = (self.check(a), self.check(b));
        self.el(self.meet_t[a * self.n + b])
    }

    pub fn join(&self, a: FrameElement, b: FrameElement) -> FrameElement {
        let (a, b) = (self.check(a), self.check(b));
        self.el(self.join_t[a * self.n + b])
    }

    /// Join of any finite family; the empty join is the bottom element.
    pub fn big_join<I>(&self, items: I) -> FrameElement
    where
        I: IntoIterator<Item = FrameElement>,
    {
        let mut acc = self.bottom();
        for x in items {
            acc = self.join(acc, x);
        }
        acc
    }

    /// Largest x with a ∧ x = ⊥.
    pub fn pseudocomplement(&self, a: FrameElement) -> FrameElement {
        let a = self.check(a);
        self.el(self.psc[a])
    }

    /// Largest x with a ∧ x ≤ b.
    pub fn heyting(&self, a: FrameElement, b: FrameElement) -> FrameElement {
        let (ai, bi) = (self.check(a), self.check(b));
        let mut acc = self.bottom;
        for x in 0..self.n {
            if self.leq[self.meet_t[ai * self.n + x] as usize * self.n + bi] {
                acc = self.join_t[acc as usize * self.n + x];
            }
        }
        self.el(acc)
    }

    pub fn is_complemented(&self, a: FrameElement) -> bool {
        let ai = self.check(a);
        self.join_t[ai * self.n + self.psc[ai] as usize] == self.top
    }

    pub fn complement(&self, a: FrameElement) -> Result<FrameElement, LatticeError> {
        if self.is_complemented(a) {
            Ok(self.pseudocomplement(a))
        } else {
            Err(LatticeError::NotComplemented(
                self.element_name(a).to_owned(),
            ))
        }
    }

    /// a ≺ b, decided by a* ∨ b = ⊤.
    pub fn rather_below(&self, a: FrameElement, b: FrameElement) -> bool {
        let s = self.pseudocomplement(a);
        self.join(s, b) == self.top()
    }

    /// Independent route for ≺: searches for any x with a ∧ x = ⊥ and
    /// x ∨ b = ⊤. Used as an oracle against `rather_below`.
    pub fn rather_below_witness(&self, a: FrameElement, b: FrameElement) -> Option<FrameElement> {
        let (ai, bi) = (self.check(a), self.check(b));
        for x in 0..self.n {
            if self.meet_t[ai * self.n + x] == self.bottom
                && self.join_t[x * self.n + bi] == self.top
            {
                return Some(self.el(x as u16));
            }
        }
        None
    }

    pub fn join_irreducibles(&self) -> Vec<FrameElement> {
        self.join_irr.iter().map(|&i| self.el(i)).collect()
    }

    /// The complemented elements. For a distributive lattice this is a
    /// Boolean sublattice.
    pub fn center(&self) -> Vec<FrameElement> {
        self.center.iter().map(|&i| self.el(i)).collect()
    }

    /// Minimal non-bottom elements of the center; every complemented element
    /// is the join of the center atoms below it.
    pub fn center_atoms(&self) -> Vec<FrameElement> {
        let mut atoms = Vec::new();
        for &c in &self.center {
            if c == self.bottom {
                continue;
            }
            let minimal = self
                .center
                .iter()
                .all(|&d| d == self.bottom || d == c || !self.leq[d as usize * self.n + c as usize]);
            if minimal {
                atoms.push(self.el(c));
            }
        }
        atoms
    }

    /// Cover pairs (a, b) with a strictly below b and nothing in between.
    pub fn covers(&self) -> Vec<(FrameElement, FrameElement)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a == b || !self.leq[a * self.n + b] {
                    continue;
                }
                let gap = (0..self.n).any(|c| {
                    c != a && c != b && self.leq[a * self.n + c] && self.leq[c * self.n + b]
                });
                if !gap {
                    out.push((self.el(a as u16), self.el(b as u16)));
                }
            }
        }
        out
    }

    /// Canonical document form: elements sorted lexicographically, covers
    /// sorted as name pairs.
    pub fn to_doc(&self) -> FrameDoc {
        let mut elements: Vec<String> = self.names.clone();
        elements.sort();
        let mut covers: Vec<(String, String)> = self
            .covers()
            .into_iter()
            .map(|(a, b)| {
                (
                    self.element_name(a).to_owned(),
                    self.element_name(b).to_owned(),
                )
            })
            .collect();
        covers.sort();
        FrameDoc {
            name: self.name.clone(),
            elements,
            covers,
        }
    }

    pub fn from_doc(doc: &FrameDoc) -> Result<Frame, LatticeError> {
        Frame::build(
            doc.name.clone(),
            doc.elements.iter().map(|s| s.as_str()),
            doc.covers.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame({}, {} elements)", self.name, self.n)
    }
}

/// Structural equality by element names: same frame name, same carrier, and
/// the same order relation under the name correspondence. Indices may differ.
impl PartialEq for Frame {
    fn eq(&self, other: &Frame) -> bool {
        if self.name != other.name || self.n != other.n {
            return false;
        }
        let mut mine: Vec<&String> = self.names.iter().collect();
        let mut theirs: Vec<&String> = other.names.iter().collect();
        mine.sort();
        theirs.sort();
        if mine != theirs {
            return false;
        }
        for a in &self.names {
            for b in &self.names {
                let sa = self.index_of[a] as usize;
                let sb = self.index_of[b] as usize;
                let oa = other.index_of[a] as usize;
                let ob = other.index_of[b] as usize;
                if self.leq[sa * self.n + sb] != other.leq[oa * other.n + ob] {
                    return false;
                }
            }
        }
        true
    }
}

impl Eq for Frame {}

/// On-disk frame form: `{"name", "elements", "covers"}` with elements sorted
/// lexicographically and covers sorted as pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameDoc {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}
