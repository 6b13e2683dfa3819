//! File formats, the parallel oracle driver and the `ramsey` command, on
//! top of `ramsey-core`.

pub mod commands;
pub mod io;
pub mod parallel;

pub use commands::run;
