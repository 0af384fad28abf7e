//! Polynomial grammar and scenario documents.

pub mod parser;
pub mod scenario;

pub use parser::{parse_poly, print_poly};
pub use scenario::{load_scenario, load_scenario_file, save_scenario, BranchEntry, Expected, FSpec, Scenario, Tagged};
