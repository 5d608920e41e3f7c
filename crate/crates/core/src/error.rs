use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {what} has {size} elements (limit {limit})")]
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// Several elements share the maximal length; all of them are listed by reduced word.
    #[error("maximal-length element is not unique: {} candidates of length {length}", .candidates.len())]
    Ambiguous {
        length: usize,
        candidates: Vec<Vec<usize>>,
    },

    #[error("numerical quality: {what} (residual {residual:.3e}, tolerance {tolerance:.1e})")]
    Numerical {
        what: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{}", parse_message(*.line, *.column, .message))]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

fn parse_message(line: usize, column: usize, message: &str) -> String {
    if line == 0 {
        format!("parse error: {message}")
    } else {
        format!("parse error at line {line}, column {column}: {message}")
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// A parse error without a source position (`line == 0`).
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse {
            line: 0,
            column: 0,
            message: msg.into(),
        }
    }

    pub(crate) fn numerical(what: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Error::Numerical {
            what: what.into(),
            residual,
            tolerance,
        }
    }
}
