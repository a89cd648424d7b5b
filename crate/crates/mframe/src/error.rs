use thiserror::Error;

/// Errors produced by the codec, harness and evaluation layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("frame {dim} {value} is not divisible by block edge {edge}")]
    DimensionNotDivisible {
        dim: &'static str,
        value: usize,
        edge: usize,
    },

    #[error("unsupported block edge {0} (expected 4, 8 or 16)")]
    UnsupportedBlockEdge(usize),

    #[error("quantizer step must be positive, got {0}")]
    NonPositiveQuantizer(f64),

    #[error("frame dimensions differ: {w0}x{h0} vs {w1}x{h1}")]
    DimensionMismatch {
        w0: usize,
        h0: usize,
        w1: usize,
        h1: usize,
    },

    #[error("need at least one side-information frame")]
    NoSideInformation,

    #[error("coefficient blocks have mismatched lengths ({expected} vs {got})")]
    BlockLengthMismatch { expected: usize, got: usize },

    #[error("step size {w} does not exceed coefficient spread {spread}")]
    InfeasibleStep { w: i64, spread: i64 },

    #[error("fixed-target step size must be even, got {0}")]
    OddFixedStep(i64),

    #[error("empty feasible shift set")]
    EmptyFeasibleSet,

    #[error("shift {shift} outside [0, {w})")]
    ShiftOutOfRange { shift: i64, w: i64 },

    #[error("bitstream checksum mismatch (stored {stored:#010x}, computed {computed:#010x})")]
    ChecksumMismatch { stored: u32, computed: u32 },

    #[error("malformed bitstream: {0}")]
    MalformedStream(String),

    #[error("trace references edge {from}->{to} not present in the graph")]
    InvalidTraceEdge { from: usize, to: usize },

    #[error("interactivity graph marked acyclic but contains a cycle")]
    CyclicGraph,

    #[error("rate-distortion curves do not overlap in PSNR")]
    NonOverlappingCurves,

    #[error("rate-distortion curve needs at least {needed} points, got {got}")]
    CurveTooShort { needed: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
