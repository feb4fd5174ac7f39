"""Information geometry of relative alpha-entropy on finite alphabets.

Divergences and escort distributions, Bayesian alpha-manifolds, their
Eguchi metrics and connections, and a quadrature-based Bayesian
alpha-Cramer-Rao bound verifier.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AlphaGeoError,
    ConfigError,
    DomainError,
    NumericalWarning,
    PriorError,
    SingularInformation,
)
from .measures import (  # noqa: E402
    FinitePmf,
    PositiveMeasure,
    bayesian_relative_alpha_entropy,
    entropy,
    escort,
    kld,
    relative_alpha_entropy,
)
from .manifold import (  # noqa: E402
    BayesianModel,
    FamilySpec,
    ParamDomain,
    PriorSpec,
    family_from_spec,
    prior_from_spec,
    validate_model,
)
from .geometry import alpha_fim, bayesian_alpha_metric, eguchi_metric_fd  # noqa: E402
from .bounds import EstimatorTable, verify_bound  # noqa: E402
from .quadrature import QuadratureGrid  # noqa: E402
