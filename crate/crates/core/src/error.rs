use thiserror::Error;

#[derive(Debug, Error)]
pub enum PhageError {
    #[error("syntax error at line {line}: {msg}")]
    QcSyntax { line: usize, msg: String },

    #[error("line {line}: undeclared wire `{name}`")]
    UndeclaredWire { line: usize, name: String },

    #[error("line {line}: gate `{gate}` applied to {got} wires, expected {expected}")]
    ArityMismatch {
        line: usize,
        gate: String,
        got: usize,
        expected: String,
    },

    #[error("line {line}: unknown gate mnemonic `{gate}`")]
    UnknownGate { line: usize, gate: String },

    #[error("line {line}: repeated wire argument in gate `{gate}`")]
    RepeatedWire { line: usize, gate: String },

    #[error("parity set width {got} does not match polynomial width {expected}")]
    WidthMismatch { expected: u32, got: u32 },

    #[error("phase level 2^-{0} is not representable over Z8")]
    UnsupportedPhaseLevel(i32),

    #[error("spider nest requires support of size >= {min}, got {got}")]
    SupportTooSmall { min: u32, got: u32 },

    #[error("identity verification supports at most {max} wires, got {got}")]
    SupportTooLarge { max: u32, got: u32 },

    #[error("subset-parity identity requires |V| > k = {k}, got |V| = {got}")]
    SubsetTooSmall { k: u32, got: u32 },

    #[error("simulation cap of {cap} wires exceeded: circuit has {got}")]
    SimCapExceeded { cap: u32, got: u32 },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("post-selected contraction produced a zero-norm column (pipeline bug)")]
    ZeroNormContraction,

    #[error("phase function is not an exact integer combination of parities")]
    InexactPhaseFunction,

    #[error("malformed phase polynomial text at line {line}")]
    PolyTextSyntax { line: usize },

    #[error("internal error: non-diagonal gate `{0}` left in main body")]
    NonDiagonalResidue(String),

    #[error("post-pass command failed: {0}")]
    PostPass(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
