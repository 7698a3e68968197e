//! Multi-adjoint concept lattices over finite lattices, computed as fixed
//! points of Isbell, Kan and dual Kan adjunctions between presheaf fibres of
//! a finite quantaloid.
//!
//! ```
//! use macl::engine::{compute, Options};
//! use macl::frame::{Context, MultiAdjointFrame};
//!
//! let frame = MultiAdjointFrame::from_json(r#"{
//!     "mode": "formal",
//!     "L1": {"elements": ["0", "1"], "leq": [[true, true], [false, true]]},
//!     "L2": {"elements": ["0", "1"], "leq": [[true, true], [false, true]]},
//!     "P":  {"elements": ["0", "1"], "leq": [[true, true], [false, true]]},
//!     "triples": [{"conjunction": [["0", "0"], ["0", "1"]]}]
//! }"#).unwrap();
//! let context = Context::from_json(r#"{
//!     "attributes": ["a", "b"],
//!     "objects": [{"name": "o", "type": 1}],
//!     "phi": [["1"], ["0"]]
//! }"#, &frame).unwrap();
//! let lattice = compute(&frame, &context, Options::default()).unwrap();
//! assert_eq!(lattice.len(), 2);
//! ```

pub mod adjunctions;
pub mod cli;
pub mod concept;
pub mod engine;
pub mod frame;
pub mod lattice;
pub mod oracle;
pub mod qrel;
pub mod quantaloid;
pub mod triple;

use adjunctions::AdjunctionError;
use frame::{FrameError, Mode};
use qrel::QRelError;
use quantaloid::QuantaloidError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Quantaloid(#[from] QuantaloidError),
    #[error(transparent)]
    QRel(#[from] QRelError),
    #[error(transparent)]
    Adjunction(#[from] AdjunctionError),
    #[error("frame has mode {frame} but {requested} was requested")]
    ModeMismatch { frame: Mode, requested: Mode },
    #[error("oracle would enumerate {size} vectors, above the limit of {limit}")]
    OracleTooLarge { size: u128, limit: usize },
    #[error("engine and oracle disagree: {}", .0.join("; "))]
    OracleMismatch(Vec<String>),
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// 1 for unreadable or malformed input, 3 when two computations of the
    /// same lattice disagree, 2 for every other failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 1,
            Error::Frame(e) if e.is_parse() => 1,
            Error::OracleMismatch(_) | Error::Adjunction(AdjunctionError::StrategyMismatch { .. }) => 3,
            _ => 2,
        }
    }
}
