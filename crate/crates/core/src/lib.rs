//! Exact computation of graded codimensions, proper codimensions and proper
//! cocharacters of finite-dimensional algebras graded by a finite group, with
//! degree-bounded certification of identity bases and T_G-equivalence.

pub mod catalog;
pub mod cli;
pub mod codim;
pub mod freepoly;
pub mod galgebra;
pub mod group;
pub mod idealkit;
pub mod io;
pub mod linalg;
pub mod parallel;
pub mod rational;
pub mod repn;
pub mod suite;
