use thiserror::Error;

/// Errors from model construction and bump building.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("parameter {param} = {value} out of range {expected}")]
    ParamOutOfRange {
        param: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("bump construction infeasible: {0}")]
    InfeasibleBump(String),

    #[error("bump rejected, violated constraint: {0}")]
    RejectedBump(String),

    #[error("unknown model '{0}'")]
    UnknownModel(String),

    #[error("unknown parameter '{key}' for model '{model}'")]
    UnknownParam { model: String, key: String },

    #[error("model '{model}' requires parameter '{key}'")]
    MissingParam { model: String, key: String },
}
