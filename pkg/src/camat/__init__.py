"""camat: linear algebra over the ring of circulant scalars K_k.

Scalars are length-``k`` circulant vectors; matrices over them decouple
into ``k`` independent complex matrices under the FFT, which is how every
operation here is computed.
"""

from .errors import (
    CamatError,
    CapExceededError,
    DefectiveSliceError,
    NoConvergenceError,
    NonRealSpectrumError,
    SingularSliceError,
    SymmetryViolationError,
    TieWarning,
    ZeroDivisorError,
)
from .scalar import (
    CircScalar,
    OrderingOutcome,
    Relation,
    add,
    inverse,
    magnitude,
    mul,
    parse_scalar,
    partial_order,
    scalar_from_vec,
    spectral_map,
    to_circ_matrix,
)
from .transform import FourierBlocks, cft, icft, is_real_spectrum, project_real
from .linalg import (
    CircMatrix,
    conj_transpose,
    determinant,
    hstack,
    inner_product,
    inv,
    is_basis,
    matmul,
    norm,
    normalize,
    singular_slices,
    solve,
    spans,
)
from .eigen import CanonicalEigenSet, canonical_eig, enumerate_eigenvalues, slice_sorted_eig, verify_eigenpair
from .iterative import (
    ArnoldiFactorization,
    ConvergenceRecord,
    GMRESResult,
    PowerResult,
    arnoldi,
    gmres,
    power_method,
    random_vector,
    rayleigh_quotient,
)
from .poisson import PoissonSystem, build_poisson, poisson_canonical_eigs, poisson_rates, slice_rates
from .experiments import fit_rate, find_drop, run_gmres_experiment, run_power_experiment

__version__ = "0.1.0"
