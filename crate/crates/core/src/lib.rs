//! The matching game: rules, classical strategies, the colouring argument
//! that bounds them, and a simulator of the entangled winning strategy.

pub mod cli;
pub mod coloring;
pub mod error;
pub mod figures;
pub mod format;
pub mod game;
pub mod matchings;
pub mod quantum;
pub mod search;
pub mod strategy;

pub use error::{GameError, Result};
pub use game::{dot, encode_index, wins_round, Answer, BitString, Edge, GameInstance, Question};
pub use matchings::{enumerate_matchings, validate_matching, PerfectMatching};
pub use strategy::{
    success, verify_winning, BobOutput, DeterministicStrategy, PartialStrategy, StrategyTable,
    SuccessRatio,
};
