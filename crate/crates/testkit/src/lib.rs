//! Shared test support: seeded random graphs, hand-written fixtures and a
//! naive reference reasoner.

pub mod fixtures;
pub mod generate;
pub mod oracle;
