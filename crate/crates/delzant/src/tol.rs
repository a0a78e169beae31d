//! Central numeric tolerances. Exact (rational/integer) paths never consult
//! these; they only govern floating-point kernels and classifiers.

/// Relative singular-value cutoff for numeric rank. A singular value counts
/// toward the rank when it exceeds `RANK_REL * max(sigma_max, 1)`.
pub const RANK_REL: f64 = 1e-8;

/// Least-squares residual below which a stratum's log-linear system is
/// declared solvable.
pub const LOGLIN_RESIDUAL: f64 = 1e-9;

/// Relative tolerance for the subtorus equivariance identity
/// f(i_V(t) z) = T(t) f(z).
pub const EQUIVARIANCE_REL: f64 = 1e-10;

/// Residual bound for parameterized points of C(V) under the f-system.
pub const PARAM_RESIDUAL: f64 = 1e-10;

/// Leftover imaginary part after phase normalization.
pub const PHASE_IMAG: f64 = 1e-12;

/// Newton convergence for the Legendre inverse: |grad G(xi) - x|.
pub const LEGENDRE_NEWTON: f64 = 1e-10;

/// Maximum Newton iterations before `NoConvergence`.
pub const NEWTON_MAX_ITERS: usize = 200;

/// Fraction-to-boundary rule for interior line searches.
pub const FRACTION_TO_BOUNDARY: f64 = 0.95;

/// Legendre round-trip accuracy target.
pub const LEGENDRE_ROUNDTRIP: f64 = 1e-9;

/// Gradient vs central finite differences, relative.
pub const GRAD_FD_REL: f64 = 1e-6;

/// Step for finite-difference gradient checks.
pub const FD_STEP: f64 = 1e-5;

/// Consistency residual for the chart transform: grad G^l(Psi_l(xi)) = grad G(xi).
pub const PSI_CONSISTENCY: f64 = 1e-8;

/// g-system residual bound for traced curve points.
pub const CURVE_RESIDUAL: f64 = 1e-9;

/// Facet-value magnitude below which a point counts as lying on the facet.
pub const ON_FACET: f64 = 1e-8;

/// Target facet value when bisecting a curve parameter toward the boundary.
pub const BOUNDARY_L: f64 = 1e-10;

/// Radius for deduplicating intersection points.
pub const INTERSECT_DEDUP: f64 = 1e-7;

/// Residual bound both curves must satisfy at a reported intersection.
pub const INTERSECT_RESIDUAL: f64 = 1e-8;

/// Default sample budget per feasible stratum.
pub const STRATUM_SAMPLES: usize = 8;
