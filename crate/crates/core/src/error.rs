use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} exceeds the configured limit of {limit}")]
    SizeLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_limit(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::SizeLimit { what, value, limit })
    } else {
        Ok(())
    }
}
