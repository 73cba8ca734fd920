//! Exact algebra for Floer-type chain complexes over the integral Novikov ring.

pub mod arnold;
pub mod cli;
pub mod equipoly;
pub mod fixtures;
pub mod flowcat;
pub mod linalg;
pub mod novikov;
pub mod strata;
