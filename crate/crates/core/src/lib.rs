//! Exact enumeration and asymptotics for the Hilbert series of the cohomology
//! ring of the genus-zero moduli space of stable pointed curves.

pub mod asymptotics;
pub mod cli;
pub mod conjecture;
pub mod exp_poly;
pub mod fj;
pub mod formulas;
pub mod lambert;
pub mod output;
pub mod poly;
pub mod rational;
pub mod triangle;
pub mod verify;
