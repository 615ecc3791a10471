//! Exact exterior calculus over polynomial-coefficient differential forms,
//! with toolkits for closed G₂-structures on seven-dimensional charts and
//! for the standard symplectic structure.

pub mod algebra;
pub mod cli;
pub mod exterior;
pub mod g2;
pub mod numeric;
pub mod registry;
pub mod samples;
pub mod symplectic;
