//! Generalized Jack polynomials for instanton moduli spaces.
//!
//! The crate computes the expansion of generalized Jack polynomials in the
//! basis of (colored) Schur polynomials through combinatorial transition
//! matrices, entirely in exact arithmetic, and verifies the result against
//! the independent identities the construction satisfies: duality under the
//! Fock-space scalar product, Cauchy identities, u- and t-symmetries, the
//! Schur degeneration at t1 + t2 = 0, and the Calogero-Moser eigenvector
//! property.
//!
//! Module map:
//! - [`partition`]: partitions, r-tuples, boxes, canonical box ordering
//! - [`ring`]: exact rational functions in t1, t2, u1..ur
//! - [`symfunc`]: the colored Fock space, Schur bases, scalar product
//! - [`envelope`]: transition matrices T, T*, U, U* and the Jack expansion
//! - [`oracle`]: independent verification suites

pub mod envelope;
pub mod oracle;
pub mod partition;
pub mod ring;
pub mod symfunc;
