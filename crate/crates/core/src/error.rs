use std::io;

use crate::gridworld::{MapError, StepError};
use crate::rl::PlanError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Step(#[from] StepError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error("action set is empty")]
    EmptyActions,
    #[error("unknown latent state {0}")]
    UnknownLatent(String),
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot transfer a {train} agent into a {test} agent: interaction paradigms differ")]
    ParadigmMismatch { train: String, test: String },
    #[error("run {run}: {source}")]
    Run { run: usize, source: Box<Error> },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
