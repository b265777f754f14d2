"""Dimensions of secant varieties of osculating varieties of Veronese embeddings."""

__version__ = "0.1.0"

from .combinatorics import (  # noqa: E402
    HomogeneousMonomial,
    MultiIndex,
    binomial,
    derive_monomial,
    monomial_basis,
    multiindices_up_to,
)
from .linalg import (  # noqa: E402
    DEFAULT_PRIME,
    MatrixSizeError,
    PrimeField,
    rank_exact_integer,
    rank_mod_p,
)
from .osculating import (  # noqa: E402
    osculating_frame,
    osculating_span_dim,
    random_points,
    veronese_point,
)
from .join import (  # noqa: E402
    DimensionReport,
    JoinSpec,
    expected_join_dim,
    join_dim,
    lemma_iii_bound,
    terracini_frame,
)
from .interpolation import (  # noqa: E402
    InterpReport,
    LinearSystemSpec,
    actual_dim,
    cremona_reduce,
    speciality,
    virtual_dim,
)
from .classify import (  # noqa: E402
    PredictedStatus,
    SweepConfig,
    SweepRow,
    emit_report,
    parse_report,
    predicted_status,
    sweep,
)
