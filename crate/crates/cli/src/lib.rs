//! Batch driver for computing and checking modular equations: argument
//! handling, the plain-text file formats and the jobs behind each mode.

pub mod config;
pub mod formats;
pub mod jobs;
