//! Experimental check of the series: Macaulay-matrix ranks of random linear
//! instances over a prime field.

pub mod field;
pub mod instance;
pub mod macaulay;
pub mod matrix;
pub mod plucker;
pub mod verify;

pub use field::{is_prime, Fp};
pub use instance::{gen_instance, sm_equations, Instance, SmEquation};
pub use macaulay::{macaulay_rank, MacaulayRank, MonomialIndex, PluckerBases, RankOptions, RowSelection, SmSystem};
pub use matrix::{Echelon, PrimeFieldMatrix, SparseRow};
pub use plucker::{expand_plucker, PluckerBasis};
pub use verify::{derive_seed, genericity_trials, predicted_hf, run_trial, run_trial_with, verify_series, CellReport, TrialOutcome, TrialsReport};
