pub mod geograph;
pub mod geometry;
pub mod solver;
pub mod strategies;
pub mod constructions;
pub mod ensembles;
pub mod cli;
