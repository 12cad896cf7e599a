//! Odd annular Khovanov homology of links in the thickened annulus, together
//! with its chain-level gl(1|1) action.
//!
//! The pipeline: an annular diagram ([`diagram::AnnularDiagram`]) resolves
//! into a cube of circle configurations ([`cube::ResolutionCube`]); exterior
//! algebras on the circles assemble into a triply graded chain complex
//! ([`algebra::ChainComplex`]); the superalgebra gl(1|1) acts on every chain
//! group by explicit matrices ([`gl11`]) commuting with the annular part of
//! the differential, hence acting on homology. An independent mod-2 oracle
//! ([`oracle`]) and a library of verification routines ([`check`]) guard the
//! sign conventions, and a small corpus of annular diagrams related by
//! Reidemeister moves ([`corpus`]) exercises invariance.

pub mod algebra;
pub mod check;
pub mod cli;
pub mod corpus;
pub mod cube;
pub mod diagram;
pub mod gl11;
pub mod matrix;
pub mod oracle;
