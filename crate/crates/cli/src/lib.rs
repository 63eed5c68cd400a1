//! Command line and HTTP front ends over `ludigroup-core`.

pub mod api;
pub mod cli;
pub mod store;
