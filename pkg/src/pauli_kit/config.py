"""Central numeric tolerances.

Every equality or inequality test in the package pulls its default from
here, so a single edit retunes the whole library.  Functions still accept
an explicit ``tol`` argument for local overrides, and the command line
honours the ``PAULI_KIT_TOL`` environment variable.
"""

FROBENIUS_TOL = 1e-10
"""Default absolute tolerance for matrix equality in Frobenius norm."""

HERMITICITY_TOL = 1e-12
"""Allowed Hermiticity defect of a dynamical (Choi) matrix."""

BRANCH_CUT_TOL = 1e-12
"""Eigenvalues within this distance of (-inf, 0] count as on the log branch cut."""

EIG_COND_BOUND = 1e8
"""Refuse spectral matrix functions when the eigenvector matrix is worse conditioned."""

PROBABILITY_TOL = 1e-10
"""Slack below zero tolerated for probability components."""

SIMPLEX_SUM_TOL = 1e-12
"""Allowed deviation of a probability vector's sum from one."""

CLOSURE_TOL = 1e-10
"""Membership slack for the closed set of semigroup-embeddable channels."""

BOUNDARY_TOL = 1e-9
"""Half-width of the margin band classified as boundary in region labelling."""

UNITARITY_TOL = 1e-12
"""Allowed defect of U^dagger U from the identity."""

DEFAULT_SEED = 42
"""Seed used by the command line check suites unless overridden."""
