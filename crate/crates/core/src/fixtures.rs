//! Small structures used throughout the docs, tests and examples.

use crate::structure::{parse_text, ParseOptions, Structure};

/// Seven equations over seven variables; `x4` and `x5` end up strongly
/// coupled.
pub const COUPLED: &str = "\
f1: x1
f2: x2
f3: x3
f4: x1 x2 x3 x4 x5
f5: x1 x3 x4 x5
f6: x4 x6
f7: x5 x7
";

/// Four equations whose first three form a single minimal substructure.
pub const TRIANGLE: &str = "\
f1: x1 x3
f2: x1 x2
f3: x2 x3
f4: x1 x2 x3 x4
";

pub fn coupled() -> Structure {
    parse_text(COUPLED, ParseOptions::default()).expect("fixture parses")
}

pub fn triangle() -> Structure {
    parse_text(TRIANGLE, ParseOptions::default()).expect("fixture parses")
}
