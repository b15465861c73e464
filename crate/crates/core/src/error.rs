use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("empty carrier")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry {value} at ({row},{col}) is outside 0..{order}")]
    IndexOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NonAssociative { x: usize, y: usize, z: usize },
    #[error("generators do not generate the carrier")]
    GeneratorsDoNotGenerate,
    #[error("subset has width {found}, semigroup has order {expected}")]
    SubsetWidthMismatch { expected: usize, found: usize },
    #[error("subset is not closed: {a}*{b} escapes")]
    NotClosed { a: usize, b: usize },
    #[error("more than {max_count} subsemigroups")]
    Truncated { max_count: usize },
    #[error("order {order} exceeds the limit {limit}")]
    TooLarge { order: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InverseError {
    #[error("not regular: {a} has no inverse")]
    NotRegular { a: usize },
    #[error("idempotents {e} and {f} do not commute")]
    IdempotentsDontCommute { e: usize, f: usize },
    #[error("{a} has {count} inverses")]
    MultipleInverses { a: usize, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Inverse(#[from] InverseError),
    #[error("lemma violated ({lemma}): {detail}")]
    LemmaViolation { lemma: &'static str, detail: String },
    #[error("subset is not a straight left I-order")]
    PreconditionNotStraight,
    #[error("relation is not a preorder: witness {witness:?}")]
    NotPreorder { witness: Vec<usize> },
    #[error("M-axioms do not all hold")]
    MAxiomsNotEstablished,
    #[error("relation is not a left compatible equivalence: {reason}")]
    RelationMalformed { reason: String },
    #[error("semigroup is not right ample")]
    NotRightAmple,
    #[error("semigroup is not ample")]
    NotAmple,
    #[error("{check} failed: witness {witness:?}")]
    Verification { check: String, witness: Vec<usize> },
    #[error("certification failed at {stage}: witness {witness:?}")]
    CertificationFailed { stage: &'static str, witness: Vec<usize> },
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl FormatError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> Self {
        FormatError::Parse {
            line,
            message: message.into(),
        }
    }
}
