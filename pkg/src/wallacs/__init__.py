"""Almost complex structures on (n-1)-connected 2n-manifolds from Wall invariants."""

__version__ = "0.1.0"

from .charnum import CharNumbers, char_numbers  # noqa: E402
from .decision import Answer, decide_acs, decide_stable  # noqa: E402
from .quadrep import RepProblem, RepStatus, solve  # noqa: E402
from .wall import WallInvariants, signature, validate  # noqa: E402

__all__ = [
    "Answer",
    "CharNumbers",
    "RepProblem",
    "RepStatus",
    "WallInvariants",
    "char_numbers",
    "decide_acs",
    "decide_stable",
    "signature",
    "solve",
    "validate",
]
