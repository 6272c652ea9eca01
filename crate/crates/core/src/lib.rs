//! Exact-arithmetic building blocks for hermitian lattices over the fifth
//! cyclotomic integers, their reflections and anti-unitary involutions, the
//! Fourier/Pontryagin calculus on the integral cohomology of abelian
//! varieties, and the Galois-equivariant layer of real abelian varieties.
//!
//! Everything that can be decided exactly is decided exactly: rationals are
//! arbitrary precision, sign tests at real embeddings are rational
//! comparisons, and integer lattices are handled through normal forms. The
//! only floating-point corners are the hyperbolic triangle model (open
//! conditions at fixed tolerance) and the high-precision arithmetic for
//! Möbius stabilizers.

pub mod cohomology;
pub mod equivariant;
pub mod glue;
pub mod hermitian;
pub mod involution;
pub mod linalg;
pub mod quintic;
pub mod rings;
pub mod triangle;

pub use rings::{CycInt, CycRat, Embedding, Fp5, GoldInt, GoldRat};
