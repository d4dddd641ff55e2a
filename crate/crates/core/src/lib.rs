//! Exact Rota-Baxter machinery for Feynman-graph renormalization.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact`]: rationals, sparse multivariate and Laurent polynomials,
//!   graded exterior algebras with Koszul signs.
//! * [`graph`]: Feynman multigraphs, spanning trees, cut-sets, divergent
//!   subgraphs, quotients and canonical keys.
//! * [`hopf`]: the Connes-Kreimer Hopf algebra of 1PI graphs.
//! * [`rb`]: Rota-Baxter operators of weight -1 on Laurent series and on
//!   algebras of forms with poles along divisors.
//! * [`birkhoff`]: characters, convolution, Birkhoff factorization and the
//!   Atkinson fixed-point solution.
//! * [`symanzik`]: Kirchhoff and second Symanzik polynomials, the graph
//!   matrix and its embedding map.
//! * [`motive`]: Grothendieck classes as polynomials in the Lefschetz class.

pub mod birkhoff;
pub mod exact;
pub mod graph;
pub mod hopf;
pub mod motive;
pub mod rb;
pub mod symanzik;

pub use exact::{
    ExteriorContext, ExteriorElement, Generator, GeneratorKind, LaurentContext, LaurentPoly,
    MultiPoly, Rational, Vars,
};
