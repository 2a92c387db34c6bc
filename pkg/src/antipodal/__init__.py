"""Edge-isoperimetry of antipodal families in the discrete cube Q_n."""

from .binary_order import F_value, hart_gap, initial_segment, lemma4_margin
from .certificate import Certificate, trace_induction, verify_certificate
from .constructions import (
    enumerate_antipodal,
    extremal_family,
    nested_chain,
    sample_antipodal,
    theorem_rhs,
)
from .cube import (
    EdgeProfile,
    Family,
    antipodal_image,
    apply_automorphism,
    complement_family,
    edge_boundary,
    encode_vertex,
    internal_edges,
    potential_f,
    section,
)
from .errors import CapabilityError, InputError, InvariantBreach
from .report import VerificationReport

__version__ = "0.1.0"
