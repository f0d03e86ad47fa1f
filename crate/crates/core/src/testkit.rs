//! Small frames shared by unit tests.

use std::sync::Arc;

use crate::lattice::{Frame, LatticeError};

/// Two-element chain 0 < 1.
pub fn b1() -> Frame {
    Frame::build("b1", ["0", "1"], [("0", "1")]).unwrap()
}

/// Four-element Boolean algebra: downsets of the two-point antichain,
/// atoms named a and b.
pub fn b2() -> Frame {
    Frame::build(
        "b2",
        ["0", "a", "ab", "b"],
        [("0", "a"), ("0", "b"), ("a", "ab"), ("b", "ab")],
    )
    .unwrap()
}

/// Three-element chain 0 < m < 1.
pub fn c3() -> Frame {
    Frame::build("c3", ["0", "m", "1"], [("0", "m"), ("m", "1")]).unwrap()
}

/// Four-element chain.
pub fn c4() -> Frame {
    Frame::build("c4", ["0", "x", "y", "1"], [("0", "x"), ("x", "y"), ("y", "1")]).unwrap()
}

/// The diamond M3: a lattice, but not distributive.
pub fn m3_input() -> Result<Frame, LatticeError> {
    Frame::build(
        "m3",
        ["0", "a", "b", "c", "1"],
        [
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    )
}

pub fn arc(f: Frame) -> Arc<Frame> {
    Arc::new(f)
}
