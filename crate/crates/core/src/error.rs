use thiserror::Error;

use crate::context::VarId;
use crate::wire::WireType;

/// Failures of the IR meta-operations (context construction, freshening, unboxing).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IrError {
    #[error("variable {var} cannot have non-base type {ty}")]
    NonBaseVariable { var: VarId, ty: WireType },
    #[error("cannot allocate fresh variables in an invalid context")]
    InvalidContext,
    #[error("pattern of type {found} does not match box input type {expected}")]
    PatternTypeMismatch { expected: WireType, found: WireType },
    #[error("variable {0} occurs more than once in pattern")]
    DuplicateVar(VarId),
}
