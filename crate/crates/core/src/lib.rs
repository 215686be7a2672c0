//! Blockage-peeking: a zero-sum positioning game between a mobile mmWave
//! receiver and a mobile blocker.
//!
//! * [`channel`] computes the surrogate 60 GHz channel and spectral efficiency
//!   for any receiver/obstacle placement.
//! * [`game`] builds the 15x15 payoff matrix over the angular action grid and
//!   solves it exactly by linear programming, with fictitious play as an
//!   independent check.
//! * [`experiment`] runs seeded Monte-Carlo sweeps over obstacle distances
//!   and fading realizations.
//!
//! ```
//! use blockpeek::channel::Scenario;
//! use blockpeek::experiment::run_realization;
//!
//! let outcome = run_realization(&Scenario::default(), 42).unwrap();
//! assert!(outcome.equilibrium.value < 14.1);
//! ```

pub mod channel;
pub mod experiment;
pub mod game;
