use alloc::string::String;

/// Errors reported by the core operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid symbol {found:?} at position {position}")]
    InvalidSymbol { position: usize, found: char },
    #[error("a cycle needs at least 3 letters, got {0}")]
    CycleTooShort(usize),
    #[error("empty input where a non-empty word is required")]
    EmptyWord,
    #[error("digraph is not a reflexive path: {0}")]
    NotAPath(&'static str),
    #[error("digraph is not a reflexive cycle: {0}")]
    NotACycle(&'static str),
    #[error("vertex {vertex} out of range for a digraph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("subpath length {length} out of range for girth {girth}")]
    SubpathLength { length: usize, girth: usize },
    #[error("map is not a homomorphism: arc ({0}, {1}) is not preserved")]
    NotAHomomorphism(usize, usize),
    #[error("map has {got} entries, expected {expected}")]
    MapSize { got: usize, expected: usize },
    #[error("source digraph is disconnected")]
    Disconnected,
    #[error("girth {girth} exceeds the brute-force budget of {budget}")]
    BudgetExceeded { girth: usize, budget: usize },
    #[error("operation table has {got} entries, expected {expected}")]
    TableSize { got: usize, expected: usize },
    #[error("operation is not a surjective polymorphism")]
    NotSurjectivePolymorphism,
    #[error("cycle {0} does not have the shape C(P+) with P self-dual")]
    ShapeMismatch(String),
    #[error("the two extension routes disagree")]
    RoutesDisagree,
    #[error("unsupported size: {0}")]
    Unsupported(&'static str),
}
