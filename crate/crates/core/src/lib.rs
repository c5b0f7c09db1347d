//! Exact computation of totally mixed Nash equilibria of finite games with
//! rational payoffs.
//!
//! A game is turned into a polynomial system whose real solutions in the
//! open simplex are the totally mixed equilibria. One lex Gröbner basis is
//! computed, a single solution is sampled in a number field, and the rest
//! are recovered by conjugation.

pub mod galois;
pub mod game;
pub mod gamefile;
pub mod groebner;
pub mod interval;
pub mod multipoly;
pub mod numberfield;
pub mod rational;
pub mod solver;
pub mod tower;
pub mod unipoly;
