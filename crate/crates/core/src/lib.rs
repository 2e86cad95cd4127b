//! Exact-arithmetic engine for the quantum Kähler sub-ring of degree-k
//! hypersurfaces in CP^(N-1).
//!
//! The pipeline, bottom to top:
//!
//! 1. [`polyd`] builds the homogeneous polynomials `Poly_d` by iterated
//!    residues over factored rational expressions ([`residue`]) with
//!    exact sparse-polynomial arithmetic ([`poly`], [`rational`]).
//! 2. [`comb`] converts each monomial of `Poly_d`, through its comb type
//!    and shift vector, into one term of the degree-d recursion formula.
//! 3. [`gw`] runs the recursions down from the Beauville range to compute
//!    structure constants `L_n^{N,k,d}`, and iterates them formally to
//!    `N = k` for the virtual constants.
//! 4. [`mirror`] forms generating functions of the virtual constants,
//!    inverts the mirror map, and checks them against the hypergeometric
//!    coefficients.
//! 5. [`qring`] assembles multiplication tables and verifies the ring
//!    relations.
//!
//! Everything is exact: scalars are arbitrary-precision rationals and no
//! operation ever rounds.

pub mod comb;
pub mod gw;
pub mod linear;
pub mod mirror;
pub mod poly;
pub mod polyd;
pub mod qring;
pub mod rational;
pub mod residue;

pub use rational::Rational;
