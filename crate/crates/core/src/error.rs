use thiserror::Error;

use crate::deform::DeformError;
use crate::framework::FrameworkError;
use crate::laurent::LaurentError;
use crate::sparsity::SparsityError;
use crate::symbol::SymbolError;

/// Crate-level error; every variant names the module that raised it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("framework: {0}")]
    Framework(#[from] FrameworkError),
    #[error("laurent: {0}")]
    Laurent(#[from] LaurentError),
    #[error("symbol: {0}")]
    Symbol(#[from] SymbolError),
    #[error("sparsity: {0}")]
    Sparsity(#[from] SparsityError),
    #[error("deform: {0}")]
    Deform(#[from] DeformError),
}
