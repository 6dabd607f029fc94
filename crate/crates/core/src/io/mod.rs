//! Instance files, reports, built-in fixtures and barcodes.

mod barcode;
pub mod fixtures;
mod instance;
pub mod report;

use thiserror::Error;

use crate::artin::AlgebraError;
use crate::catmod::ModuleError;
use crate::decomp::DecompError;

pub use barcode::{barcode, render_barcode, Bar};
pub use instance::{load_instance, parse_instance, save_instance, Instance, SCHEMA_VERSION};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid instance: {0}")]
    Validation(String),
    #[error("invalid algebra: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("invalid quiver: {0}")]
    Quiver(#[from] ModuleError),
    #[error("invalid module {name}: {source}")]
    Module { name: String, source: ModuleError },
    #[error("invalid lift {name}: {source}")]
    Lift { name: String, source: ModuleError },
    #[error("unknown module {0:?}")]
    UnknownModule(String),
    #[error("unknown lift {0:?}")]
    UnknownLift(String),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error("barcodes need a relation-free linearly oriented quiver and R = k")]
    NotTotallyOrdered,
    #[error("summand {index} is not an interval module")]
    NonIntervalSummand { index: usize },
}
