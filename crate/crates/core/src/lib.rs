//! Decides whether a finite binary operation, presented as a full Cayley
//! table and treated as a (simulated) quantum multiplication oracle, is the
//! multiplication of a solvable group or is far from every solvable group.
//!
//! The pipeline samples generators, builds a polycyclic normal chain,
//! derives each relative order with a Fourier-sampling subroutine run on a
//! sparse state simulator, extends the certified structure one cyclic level
//! at a time, and checks the extension against the table with a randomized
//! homomorphism test plus a coverage test over the ground set. Brute-force
//! oracles (subgroup enumeration, exact violation rates, table edit
//! distance over a small-group catalog) validate every subroutine at desk
//! scale.

pub mod chain;
pub mod cli;
pub mod editdist;
pub mod extension;
pub mod families;
pub mod harness;
pub mod homtest;
pub mod magma;
pub mod qsim;
pub mod qsub;
pub mod rng;
pub mod tester;
pub mod transcript;

pub use magma::{Element, MagmaTable};
pub use tester::{run_test, Decision, RejectReason, Verdict};
