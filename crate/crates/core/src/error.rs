use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact computation produced a value that violates a known identity
    /// (for example a non-integral count). Always indicates a bug.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("mean degeneracy undefined for n={n}, V={v}: no degeneracy classes")]
    UndefinedDegeneracy { n: u64, v: u64 },

    #[error("enumeration cap exceeded: {what} = {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("no length assigned to bond ({0}, {1})")]
    MissingBondLength(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
