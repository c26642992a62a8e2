use alloc::string::String;
use core::fmt;

/// Errors surfaced by the engine. Internal invariant violations panic via
/// `assert!`; these variants cover bad caller input and size guards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vertex or edge index points outside the graph.
    IndexOutOfRange { what: &'static str, index: usize, len: usize },
    /// A desk-scale guard was exceeded (brute-force enumeration would blow up).
    SizeGuard { what: &'static str, actual: usize, max: usize },
    /// Two arguments that must live on the same graph (or curve) do not.
    ShapeMismatch { what: &'static str, left: usize, right: usize },
    /// The canonical polarization needs genus at least 2.
    GenusTooSmall { genus: i64 },
    /// A polarization whose per-component degree is not integral can never
    /// admit semistable divisors; such inputs are rejected up front.
    DegeneratePolarization { component: usize },
    /// Operation requires a connected graph.
    NotConnected,
    /// The divisor degree does not match the polarization degree.
    DegreeMismatch { divisor: i64, polarization: String },
    /// A precondition of the operation failed (message names it).
    Precondition(&'static str),
    /// The divisor is not semistable; the offending vertex subset is
    /// reported as a bitmask.
    NotSemistable { witness_bits: u32 },
    /// Several specialization witnesses yield different interpolants.
    AmbiguousInterpolation,
    /// A marked-point move would leave the open edge it lives on.
    CellExit { edge: usize },
    /// Edge lengths must be strictly positive.
    NonPositiveLength { edge: usize },
    /// Marked-point positions must be interior to their edge.
    PositionOutOfRange { edge: usize },
    /// Linear-program size outside what the exact solvers accept.
    LpTooLarge { vars: usize, max: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { what, index, len } => {
                write!(f, "{what} index {index} out of range (len {len})")
            }
            Error::SizeGuard { what, actual, max } => {
                write!(f, "size guard: {what} = {actual} exceeds supported maximum {max}")
            }
            Error::ShapeMismatch { what, left, right } => {
                write!(f, "{what} sizes differ: {left} vs {right}")
            }
            Error::GenusTooSmall { genus } => {
                write!(f, "canonical polarization needs genus >= 2, got {genus}")
            }
            Error::DegeneratePolarization { component } => {
                write!(f, "polarization degree on component {component} is not an integer")
            }
            Error::NotConnected => write!(f, "operation requires a connected graph"),
            Error::DegreeMismatch { divisor, polarization } => {
                write!(f, "divisor degree {divisor} does not match polarization degree {polarization}")
            }
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::NotSemistable { witness_bits } => {
                write!(f, "divisor is not semistable (violating vertex set {witness_bits:#b})")
            }
            Error::AmbiguousInterpolation => {
                write!(f, "specialization witnesses disagree; interpolant is not unique")
            }
            Error::CellExit { edge } => {
                write!(f, "move pushes the marked point off the interior of edge {edge}")
            }
            Error::NonPositiveLength { edge } => {
                write!(f, "edge {edge} must have strictly positive length")
            }
            Error::PositionOutOfRange { edge } => {
                write!(f, "marked point on edge {edge} must lie strictly inside the edge")
            }
            Error::LpTooLarge { vars, max } => {
                write!(f, "linear program with {vars} variables exceeds solver limit {max}")
            }
        }
    }
}
