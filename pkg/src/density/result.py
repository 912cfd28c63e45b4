from typing import Any, Dict, Optional, Tuple
from dataclasses import dataclass, field, replace
from math import e, log, pi, sqrt
import logging

from ..arithmetic.modulus import EULER_GAMMA, ResiduePair, is_square_mod, modulus_context, rho
from ..variance.variance import variance_V

logger = logging.getLogger(__name__)

ERF_MIN_VARIANCE = 531.0
LARGE_PHI = 80

METHODS = (
    "symmetric",
    "erf_bounds",
    "series",
    "zeros_quadrature",
    "order2_arithmetic",
    "NR",
)


@dataclass(frozen=True)
class DensityResult:
    """A computed logarithmic density with its enclosure"""
    q: int
    a: Optional[int]
    b: Optional[int]
    value: float
    lower: float
    upper: float
    method: str
    error_budget: Dict[str, float] = field(default_factory=dict)
    order: Optional[int] = None
    tag: Optional[str] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"Unknown density method {self.method}")
        if not 0 < self.value < 1:
            raise ValueError(f"Density {self.value} for {self.label} is outside (0, 1)")
        if not self.lower <= self.value <= self.upper:
            raise ValueError(
                f"Density {self.value} for {self.label} not inside [{self.lower}, {self.upper}]"
            )

    @property
    def label(self) -> str:
        if self.tag:
            return f"{self.q};{self.tag}"
        return f"{self.q};{self.a},{self.b}"

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def complement(self) -> "DensityResult":
        """delta(q;b,a) = 1 - delta(q;a,b)"""
        return replace(
            self,
            a=self.b,
            b=self.a,
            value=1 - self.value,
            lower=1 - self.upper,
            upper=1 - self.lower,
        )

    def to_record(self) -> Dict[str, Any]:
        record = {
            "q": self.q,
            "a": self.a if self.tag is None else self.tag.split(",")[0],
            "b": self.b if self.tag is None else self.tag.split(",")[1],
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "method": self.method,
            "order": self.order,
        }
        record.update({f"err_{name}": value for name, value in self.error_budget.items()})
        return record


def enclosure(
    q: int,
    pair: Optional[ResiduePair],
    value: float,
    budget: Dict[str, float],
    method: str,
    **extra
) -> DensityResult:
    """DensityResult with a symmetric interval of half-width sum(budget)"""
    radius = sum(budget.values())
    return DensityResult(
        q=q,
        a=pair.a if pair else None,
        b=pair.b if pair else None,
        value=value,
        lower=value - radius,
        upper=value + radius,
        method=method,
        error_budget=dict(budget),
        **extra,
    )


def symmetric_result(q: int, pair: ResiduePair) -> DensityResult:
    return DensityResult(q, pair.a, pair.b, 0.5, 0.5, 0.5, "symmetric")


def require_biased_pair(q: int, pair: ResiduePair) -> None:
    """a must be a nonsquare and b a square modulo q"""
    pair.require_distinct()
    if is_square_mod(q, pair.a):
        raise ValueError(f"Residue {pair.a} is a square modulo {q}; race the pair the other way round")
    if not is_square_mod(q, pair.b):
        raise ValueError(f"Residue {pair.b} is not a square modulo {q}")


def square_classes(q: int, pair: ResiduePair) -> Tuple[bool, bool]:
    return is_square_mod(q, pair.a), is_square_mod(q, pair.b)


def choose_method(q: int, pair: ResiduePair, V: Optional[float] = None) -> str:
    """Pick the computation route for delta(q;a,b)

    Args:
        q: Modulus
        pair: Distinct reduced residues
        V: Variance of the race; computed from L-values when omitted and
            phi(q) is large enough for the erf route to be possible

    Returns:
        'symmetric', 'zeros' or 'erf'
    """
    pair.require_distinct()
    a_square, b_square = square_classes(q, pair)
    if a_square == b_square:
        return "symmetric"
    phi = modulus_context(q).phi
    if phi < LARGE_PHI:
        return "zeros"
    if V is None:
        V = variance_V(q, pair).V
    return "zeros" if V < ERF_MIN_VARIANCE else "erf"


def _plot_scale(q: int) -> float:
    return log(q / (2 * pi * e ** EULER_GAMMA))


def normalized_plot_coords(q: int, a: int, delta: float) -> Tuple[int, float]:
    """(q, y) with y = 2 sqrt(pi phi L^3)/rho (delta - 1/2) - L, L = log(q / 2 pi e^gamma0)

    For prime q this is sqrt(pi (q-1)) L^(3/2) (delta - 1/2) - L; the value 0
    marks the default density 1/2 + rho / (2 sqrt(pi phi L)).
    """
    modulus_context(q).check_reduced(a)
    L = _plot_scale(q)
    if L <= 0:
        raise ValueError(f"Plot normalization needs q > 2 pi e^gamma0, got {q}")
    phi = modulus_context(q).phi
    y = 2 * sqrt(pi * phi * L ** 3) / rho(q) * (delta - 0.5) - L
    return q, y


def normalized_plot_inverse(q: int, y: float) -> float:
    """The density whose normalized plot coordinate is y"""
    L = _plot_scale(q)
    if L <= 0:
        raise ValueError(f"Plot normalization needs q > 2 pi e^gamma0, got {q}")
    phi = modulus_context(q).phi
    return 0.5 + (y + L) * rho(q) / (2 * sqrt(pi * phi * L ** 3))
