//! Small reference instances used by tests, benches and the CLI docs.

/// Two job types on four unit-capacity machines, one part each.
pub const EXAMPLE1: &str = include_str!("../../../instances/example1.fms");

/// [`EXAMPLE1`] with two parts per job and two units per machine.
pub const EXAMPLE3: &str = include_str!("../../../instances/example1-lot2.fms");

/// Two robots and four machines, one part per job, a flexible second step
/// for `b1`.
pub const TABLE3: &str = include_str!("../../../instances/table3.fms");

/// Explicit transitions of the reference partition for [`EXAMPLE1`].
pub const EXAMPLE1_EXPLICIT: [&str; 5] = ["t121", "t122", "tE1", "t221", "tE2"];

/// Explicit transitions of the reference partition for [`TABLE3`].
pub const TABLE3_EXPLICIT: [&str; 7] = ["t121", "t122", "t141", "tE1", "t221", "t241", "tE2"];

/// Six alternative implicit transition sets for [`TABLE3`].
pub const TABLE3_IMPLICIT_SETS: [&[&str]; 6] = [
    &["t111", "t141", "t211", "t241"],
    &["t121", "t132", "t151", "t221", "t241"],
    &["t121", "t122", "t151", "t211", "t231"],
    &["t121", "t132", "t151", "t211", "t231"],
    &["t122", "t131", "t151", "t211", "t231", "t251"],
    &["t111", "t131", "t132", "t151", "t211", "t231", "t251"],
];

/// The eleven basis markings `M0..M10` of [`EXAMPLE1`] under
/// [`EXAMPLE1_EXPLICIT`], in reference order.
pub const EXAMPLE1_BASIS: [[u32; 15]; 11] = [
    [1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1, 1],
    [0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 1],
    [0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 1],
    [1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 1],
    [0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1],
    [0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1],
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 1, 0, 1],
    [0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1],
    [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 1],
    [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1, 1, 1],
];
