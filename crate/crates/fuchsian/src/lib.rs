pub mod cli;
pub mod error;
pub mod input;
pub mod json;
pub mod obj;
pub mod repro;
