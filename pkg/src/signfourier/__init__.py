"""Exact sign-correlation sums of the signed discrete cosine matrix.

The sign of cos(2 pi a k / n) is decided by integer comparisons, vectors
are bit packed, and correlations reduce to XOR + popcount, so every sigma
value is exact.  On top of that sit three independently checked estimate
routes for prime moduli, an exact residue-class analysis of shifted pairs
at composite moduli, sign-Gram matrices of Legendre and Chebyshev
systems, and deterministic PGM/CSV/JSON artifact output with a CLI.
"""

from .residues import (
    MAX_MODULUS,
    Modulus,
    NotInvertible,
    OutOfRange,
    is_prime,
    mod_inverse,
    toroidal_norm,
)
from .signs import (
    LengthMismatch,
    SignVector,
    SigmaRecord,
    build_sign_vector,
    correlation,
    cos_sign_exact,
    negative_set,
    sigma_exact,
)
from .tables import (
    CompositeModulus,
    EmptyTable,
    SigmaTable,
    ZeroFrequency,
    build_class_table,
    build_dense_table,
    build_table,
    resolve_threads,
    sigma_via_class,
    threshold_pattern,
)
from .prime_estimates import (
    A_IDENTITY_SLACK,
    ET_SLACK,
    RECONSTRUCTION_TOL,
    OrbitMeasure,
    PrimeEstimateReport,
    Spectrum,
    analyze_modulus,
    analyze_pair,
    class_distance,
    erdos_turan_best,
    erdos_turan_bound,
    half_arc_fourier_coeff,
    main_term,
    main_term_envelope,
    overlap_count,
    reconstruct_sigma,
    sign_product_line_integral,
)
from .composite_shifts import (
    CLASS_RESIDUAL_R,
    SHIFT_ENVELOPE_C,
    CircleSignPartition,
    EquispacedReport,
    EvenPrimeUnsupported,
    InvalidQuery,
    ResidueClassReport,
    ShiftQuery,
    ShiftRecord,
    ShiftReport,
    analyze_shift,
    class_partition,
    class_sum,
    equispaced_check,
    predicted_class_sum,
    same_sign_arcs,
    sigma_shift,
    verify_grid,
)
from .orthopoly import (
    BreakpointPartition,
    ConvergenceFailure,
    SignGram,
    chebyshev_pair_coeff,
    legendre_eval,
    legendre_roots,
    quadrature_oracle,
    sign_gram_chebyshev,
    sign_gram_legendre,
)
from .artifacts import IoFailure, RenderSpec, render_pgm, write_pgm, write_report

__version__ = "0.1.0"
