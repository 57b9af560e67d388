//! IO companion of the core crate: exact JSON system files, machine-readable
//! reports with replayable evidence, OFF geometry export, and the command
//! implementations behind the binary.

pub mod commands;
pub mod formats;
pub mod off;
pub mod parallel;
pub mod report;
