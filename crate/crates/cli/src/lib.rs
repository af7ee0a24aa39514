//! Tables, analysis reports and verification suites for asynchronous
//! elementary cellular automata, on top of `aca-core`.

pub mod jobs;
pub mod report;
pub mod table;
pub mod tables;
pub mod verify;
