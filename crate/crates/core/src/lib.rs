//! Core arithmetic for the classification of quaternionic lattice quotients
//! of the polydisc with the Betti numbers of products of projective lines.

pub mod arith;
pub mod dirichlet;
pub mod dyadic;
pub mod intpoly;
pub mod polyfield;
pub mod quatvol;
pub mod primedec;
pub mod zetacalc;
