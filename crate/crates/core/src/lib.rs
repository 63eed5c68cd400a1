//! Group actions on puzzle configurations: permutations and groupoids,
//! orbit machinery, word factorization, game sessions and a game catalog.

pub mod action;
pub mod algebra;
pub mod rng;
pub mod solver;
pub mod game;
pub mod catalog;
