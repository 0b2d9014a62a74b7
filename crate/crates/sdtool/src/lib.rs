//! Library half of the sdtool command line tool: wire formats and the
//! command runner, kept out of main.rs so integration tests can call them.

pub mod run;
pub mod wire;
