//! File formats, parallel verification and the command-line front end for
//! [`cfcode_core`].

pub mod cli;
pub mod matrix_file;
pub mod parallel;
pub mod parse;
pub mod report;

pub use cli::run;
pub use matrix_file::{parse_matrix, read_matrix, write_matrix, MatrixFile};
pub use parallel::verify_parallel;
