#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod construct;
pub mod encoding;
pub mod fixtures;
pub mod matrix;
pub mod outcome;
pub mod perturb;
pub mod polytope;
pub mod rational;
pub mod roots;
pub mod solver;
pub mod system;
pub mod testgen;
