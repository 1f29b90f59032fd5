"""Exact integral-lattice tools for polarization types of K3^[n]-type fibrations."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    CertificateError,
    InputError,
    InternalMismatchError,
    K3PolError,
    VerificationError,
)
from .lattice import (  # noqa: F401
    Lattice,
    LatticeVector,
    direct_sum,
    divisibility,
    is_even,
    is_isotropic,
    is_primitive,
    is_unimodular,
    pairing,
    signature,
    standard_lattice,
)
from .zlinalg import (  # noqa: F401
    PolarizationType,
    hermite_normal_form,
    integer_kernel,
    orthogonal_complement,
    polarization_type,
    saturation,
    smith_normal_form,
    symplectic_normal_form,
)
from .mukai import (  # noqa: F401
    InvariantClass,
    MukaiVector,
    beauville_mukai_vector,
    canonical_embedding,
    canonical_invariant,
    div_in_sublattice,
    enumerate_invariant_set,
    h_lambda,
    isometry_orbit_oracle,
    moduli_dimension,
    mukai_pairing,
    mukai_vector_of_sheaf,
)
from .certificate import principality_certificate  # noqa: F401
