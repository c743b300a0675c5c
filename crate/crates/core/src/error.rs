use thiserror::Error;

/// Errors surfaced by the operator algebra, transforms and solvers.
#[derive(Debug, Error)]
pub enum QesError {
    /// A ladder action raised a populated Fock component past the vector's cutoff.
    #[error("truncation overflow: component |{n1},{n2}> exceeds cutoff {cutoff}")]
    TruncationOverflow { n1: u32, n2: u32, cutoff: u32 },

    /// An operator was used in a charge sector it does not conserve.
    #[error("charge violation: monomial shift ({dn1},{dn2}) breaks Q = {c1}*n1 + {c2}*n2")]
    ChargeViolation { c1: i64, c2: i64, dn1: i64, dn2: i64 },

    /// A state-level similarity transform needs alpha*n1 to be an integer.
    #[error("non-integer shift: alpha*n1 = {shift} on component with n1 = {n1}")]
    NonIntegerShift { n1: u32, shift: String },

    /// A transformed operator retained non-integer powers of mode-2 operators.
    #[error("fractional residue after transform: a2^+ power {rho}, a2 power {sigma}")]
    FractionalResidue { rho: String, sigma: String },

    /// Two canonical forms of the same operator disagree.
    #[error("identity failure: {0}")]
    IdentityFailure(String),

    /// A polynomial subspace claimed invariant leaks to higher degree.
    #[error("not invariant: acting on x^{degree} produces degree {leak_degree}")]
    NotInvariant { degree: u32, leak_degree: u32 },

    /// Forward solve of a recurrence hit a vanishing leading coefficient.
    #[error("forward solve blocked: {0}")]
    ForwardSolveBlocked(String),

    /// The inverse similarity transform does not exist on an annihilated component.
    #[error("inverse undefined on component |{n1},{n2}>")]
    InverseUndefined { n1: u32, n2: u32 },

    /// The dense eigensolver failed to converge.
    #[error("eigensolver failed to converge on a {dim}x{dim} matrix")]
    ConvergenceFailure { dim: usize },

    /// Cutoff-ladder spectra drifted more than the configured tolerance.
    #[error("oracle not converged: eigenvalue drift {drift:.3e} exceeds tolerance {tol:.3e}")]
    NonConvergent { drift: f64, tol: f64 },

    /// Richardson-paired finite-difference grids disagree.
    #[error("finite-difference grids disagree: {delta:.3e} after refinement to n = {n}")]
    GridDisagreement { delta: f64, n: usize },

    /// Malformed input (parse errors, bad parameter combinations).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, QesError>;
