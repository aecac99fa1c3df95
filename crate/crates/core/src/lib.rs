//! Exact computations with q-oscillator representations of quantum affine
//! (super)algebras of type A.
//!
//! Layering, bottom to top: [`scalars`] (exact fields), [`lattice`]
//! (weights and bilinear forms), [`engine`] (generator actions and tensor
//! products), [`structure`] (singular vectors, components, projectors),
//! [`rmat`] (normalized R matrices, fusion), with [`chars`], [`trunc`] and
//! [`drinfeld`] on the side. [`report`] bundles the checks into JSON reports.

pub mod scalars;
pub mod lattice;
pub mod engine;
pub mod linalg;
pub mod chars;
pub mod structure;
pub mod rmat;
pub mod trunc;
pub mod drinfeld;
pub mod report;
