//! Library side of the `framecurv` command-line tool.

pub mod app;
pub mod input;

pub use app::{execute, run, Cli, Command, MethodChoice, Options, Outcome};
pub use input::{parse_input, parse_point, read_input, InputError, ManifoldInput};
