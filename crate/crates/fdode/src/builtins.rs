//! Named built-in problems, resolvable without a file path.

use crate::problem::ProblemSpec;

const PAPER_EXAMPLE: &str = include_str!("../../../problems/paper_example.toml");
const LINEAR_DECAY: &str = include_str!("../../../problems/linear_decay.toml");
const CUBIC_1D: &str = include_str!("../../../problems/cubic_1d.toml");

pub const NAMES: &[&str] = &["paper_example", "linear_decay", "cubic_1d"];

/// Problem-file source text for a built-in name.
pub fn source(name: &str) -> Option<&'static str> {
    match name {
        "paper_example" => Some(PAPER_EXAMPLE),
        "linear_decay" => Some(LINEAR_DECAY),
        "cubic_1d" => Some(CUBIC_1D),
        _ => None,
    }
}

/// Parsed built-in problem.
pub fn load(name: &str) -> Option<ProblemSpec> {
    source(name).map(|text| ProblemSpec::parse(text).expect("built-in problem file parses"))
}
