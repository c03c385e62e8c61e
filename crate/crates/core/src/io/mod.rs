pub mod cli;
pub mod ep;
pub mod output;
pub mod parse;

pub use cli::{execute, run, CommandError, Outcome, Request};
pub use ep::{emit_ep_solution, solution_shape, ComponentOperators};
pub use output::{OperatorRecord, OutputDocument, SolutionDocument, TermRecord};
pub use parse::{parse_problem, Component, ParseError, ProblemSpec};
