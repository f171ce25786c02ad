use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("query point lies outside the polygon")]
    QueryOutsidePolygon,
    #[error("edge {0} is not a mirror")]
    NotAMirror(usize),
    #[error("line budget of {0} exceeded")]
    LineBudgetExceeded(usize),
    #[error("temp-sub-region is not contained in its cell")]
    TsrOutsideCell,
    #[error("point lies outside the cell")]
    PointOutsideCell,
    #[error("universe element {0} is not covered by any subset")]
    Uncoverable(usize),
    #[error("exact cover exceeded its cap of {0} subsets")]
    CapExceeded(usize),
    #[error("region has zero area")]
    DegenerateRegion,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
