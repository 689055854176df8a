//! Finite involutive quantales, their right modules, inner products and
//! Hilbert bases, with exhaustive checkers for the canonical Hilbert
//! structure on desk-scale instances.

pub mod constructions;
pub mod corpus;
pub mod lattice;
pub mod matrix;
pub mod qmodule;
pub mod quantale;

pub use lattice::{CompleteLattice, LatticeError, MonotoneMap, SupMap};
pub use qmodule::{HilbertStructure, InnerProduct, ModuleError, ModuleMorphism, QModule};
pub use quantale::{InvolutiveQuantale, Quantale, QuantaleError};
