//! Coxeter systems as labelled graphs, their nerves and Davis complexes,
//! exact simplicial homology, colouring-induced torsion-free subgroups and
//! finitely presented group tooling for right-angled Coxeter groups.

pub mod battery;
pub mod coloring;
pub mod coxeter;
mod error;
pub mod fixtures;
pub mod homology;
pub mod nerve;
pub mod presentations;
pub mod simplicial;

pub use error::{Error, Result};

pub use coloring::{Coloring, ColoringReport, Graph};
pub use coxeter::{CoxeterSystem, GroupOrder, Label, SphericalSubset};
pub use homology::{AbelianGroup, AbelianInvariants, CoefficientRing, DeltaComplexData, HomologyGroup, IntegerMatrix};
pub use nerve::{DavisQuotientCells, Nerve, TwoGroupHom};
pub use presentations::{Letter, Presentation, Word};
pub use simplicial::{Simplex, SimplicialComplex};
