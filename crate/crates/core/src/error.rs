use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{order}")]
    InvalidEdge { u: usize, v: usize, order: usize },
    #[error("loop at vertex {0} rejected; graphs are simple")]
    LoopRejected(usize),
    #[error("vertex set over {got} vertices used with a graph of order {expected}")]
    DimensionError { expected: usize, got: usize },
    #[error("order {order} exceeds the supported maximum of {max}")]
    TooLarge { order: usize, max: usize },
    #[error("input graph is disconnected")]
    DisconnectedInput,
    #[error("product factor has no vertices")]
    EmptyFactor,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("vertices {from} and {to} at step {step} are not adjacent")]
    NotAWalk { step: usize, from: usize, to: usize },
    #[error("projected product order {order} exceeds the cap of {cap}")]
    ScaleExceeded { order: usize, cap: usize },
    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
    #[error("bad graph6 header: {0}")]
    BadHeader(String),
    #[error("graph6 body has {got} bytes, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("graph6 byte {byte:#04x} at offset {offset} is outside 63..=126")]
    BadChar { offset: usize, byte: u8 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
