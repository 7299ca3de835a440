use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("empty input")]
    EmptyInput,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("duplicate vertex at index {0}")]
    DuplicateVertex(usize),
    #[error("vertices are not strictly convex in counterclockwise order (at index {0})")]
    NotStrictlyConvex(usize),
    #[error("container polygon needs at least 3 vertices, got {0}")]
    ContainerTooSmall(usize),
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("smooth bodies (disks, ellipses) require float mode")]
    SmoothBodyInExactMode,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SectorError {
    #[error("sector arc has zero width")]
    DegenerateArc,
    #[error("expansion {alpha} + {beta} exceeds the clockwise gap {gap}")]
    ExpansionTooWide { alpha: f64, beta: f64, gap: f64 },
    #[error("contact point ({x}, {y}) lies outside the container")]
    ContactOutsideG { x: f64, y: f64 },
    #[error("boundary endpoint ({x}, {y}) is not at a vertex of the container")]
    EndpointNotVertex { x: f64, y: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CarouselError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Sector(#[from] SectorError),
    #[error("body A{0} is not contained in the container polygon")]
    BodyOutsideContainer(usize),
    #[error("constructive procedure requires s < n (s = {s}, n = {n})")]
    PreconditionSNotLessThanN { s: usize, n: usize },
    #[error("degenerate scene: {0}")]
    DegenerateScene(String),
    #[error("case 2 of the construction was reached (the ordering of endpoints is impossible for convex inputs)")]
    CaseTwoReached,
    #[error("no adjacent pair produced a witness: {0}")]
    ConstructionExhausted(String),
    #[error("constructive witness (i = {i}, j = {j}) fails brute-force re-validation")]
    Disagreement { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("sharpness construction needs an even n >= 4, got {0}")]
    OddN(usize),
    #[error("rejection limit of {0} draws exceeded")]
    RejectionLimitExceeded(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Carousel(#[from] CarouselError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
