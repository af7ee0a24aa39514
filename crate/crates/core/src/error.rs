use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rule number must be an integer in 0..=255")]
    InvalidRule,
    #[error("tag must be four symbols from {{1, 0, -, x}}")]
    InvalidTag,
    #[error("state must be a string of 0s and 1s")]
    InvalidState,
    #[error("word must be 1 to 32 binary digits or a known abbreviation")]
    InvalidWord,
    #[error("update order must be a comma-separated list of vertices")]
    InvalidOrder,
    #[error("update order does not visit every vertex")]
    UnfairOrder,
    #[error("n = {n} is outside the supported range {min}..={max}")]
    UnsupportedSize { n: u32, min: u32, max: u32 },
    #[error("word of length {len} does not fit on a cycle of length {n}")]
    WordTooLong { len: u32, n: u32 },
    #[error("vertex {vertex} is out of range for n = {n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("map at vertex {vertex} does not restrict to the given set")]
    NotInvariant { vertex: u32 },
    #[error("image array is not a bijection")]
    NotBijective,
    #[error("permutations have different degrees")]
    DegreeMismatch,
    #[error("rule {0} is not omega-independent")]
    NotOmegaIndependent(u8),
    #[error("rule {0} has a trivial dynamics group")]
    TrivialGroup(u8),
    #[error("rule {0} has non-constant adjacent Coxeter orders")]
    NonConstantCoxeterLabel(u8),
    #[error("parameter {name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: u64 },
    #[error("unknown set name {0:?}")]
    UnknownSet(alloc::string::String),
}
