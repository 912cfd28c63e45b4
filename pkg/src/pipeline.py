from typing import Dict, Optional, Tuple
from pathlib import Path
import logging
import os

from dotenv import load_dotenv

from .arithmetic.modulus import ResiduePair, is_square_mod, require_race_modulus
from .characters.dirichlet import character_group
from .density.erf_bounds import delta_erf_bounds
from .density.quadrature import DEFAULT_TARGET, delta_NR, delta_zeros_quadrature, quadratic_character
from .density.result import DensityResult, choose_method, symmetric_result
from .density.series import DEFAULT_SERIES_CONSTANT, delta_order2_arithmetic, delta_series
from .empirical.counts import PrimeCounter, sieve_pi
from .empirical.experiments import empirical_logdensity, mirror_variance_groups
from .lfunctions.zeros import ZeroList, find_zero_pair, load_zeros, save_zeros, zeros_filename
from .variance.variance import VarianceReport, variance_V

logger = logging.getLogger(__name__)

DEFAULT_ZERO_HEIGHT = 2500.0
DENSITY_METHODS = ("auto", "erf", "zeros", "series", "order2")


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"Environment variable {name}={raw!r} is not a number")


class RacePipeline:
    """Composition root: configuration, zero caching and method dispatch"""

    def __init__(
        self,
        zeros_dir: Optional[str] = None,
        zero_height: Optional[float] = None,
        quad_target: Optional[float] = None,
        series_constant: Optional[float] = None,
        arithmetic_constant: Optional[float] = None,
        prime_cache: Optional[str] = None
    ):
        """Initialize the pipeline

        Explicit arguments win over RACE_* environment variables, which win
        over the built-in defaults.

        Args:
            zeros_dir: Directory of zero files, read and written
            zero_height: Height for zero finding
            quad_target: Quadrature and truncation error target
            series_constant: Heuristic constant of the series error budget
            arithmetic_constant: Heuristic constant of the truncated arithmetic M*
            prime_cache: Optional on-disk prime cache
        """
        # Load environment variables
        load_dotenv()

        self.zeros_dir = zeros_dir or os.getenv("RACE_ZEROS_DIR") or None
        self.zero_height = zero_height if zero_height is not None else _env_float("RACE_ZERO_HEIGHT", DEFAULT_ZERO_HEIGHT)
        self.quad_target = quad_target if quad_target is not None else _env_float("RACE_QUAD_TARGET", DEFAULT_TARGET)
        self.series_constant = (
            series_constant if series_constant is not None
            else _env_float("RACE_SERIES_CONSTANT", DEFAULT_SERIES_CONSTANT)
        )
        self.arithmetic_constant = (
            arithmetic_constant if arithmetic_constant is not None
            else _env_float("RACE_ARITHMETIC_CONSTANT", 1.0)
        )
        self.prime_cache = prime_cache or os.getenv("RACE_PRIME_CACHE") or None

        if self.zero_height <= 0:
            raise ValueError(f"Zero height must be positive, got {self.zero_height}")
        if self.quad_target <= 0:
            raise ValueError(f"Quadrature target must be positive, got {self.quad_target}")

        # Per-modulus caches
        self._zeros: Dict[int, Dict[int, ZeroList]] = {}
        self._primitive_zeros: Dict[Tuple[int, int], ZeroList] = {}
        self._variances: Dict[Tuple[int, int, int], VarianceReport] = {}
        self._counters: Dict[int, PrimeCounter] = {}

    def _zero_file(self, q: int, label: int) -> Optional[Path]:
        if not self.zeros_dir:
            return None
        path = Path(self.zeros_dir) / zeros_filename(q, label)
        return path if path.exists() else None

    def _primitive_zero_list(self, chi) -> ZeroList:
        """Zeros of a primitive character, found once per conjugate pair"""
        key = (chi.modulus, chi.label)
        if key not in self._primitive_zeros:
            path = self._zero_file(chi.modulus, chi.label)
            if path is not None:
                self._primitive_zeros[key] = load_zeros(str(path), q=chi.modulus, label=chi.label)
            else:
                zeros, conjugate = find_zero_pair(chi, self.zero_height)
                self._primitive_zeros[key] = zeros
                self._primitive_zeros[(chi.modulus, chi.conjugate_label)] = conjugate
                if self.zeros_dir:
                    save_zeros(zeros, self.zeros_dir)
                    if not chi.is_real:
                        save_zeros(conjugate, self.zeros_dir)
        return self._primitive_zeros[key]

    def zeros_of(self, q: int, label: int) -> ZeroList:
        """Zero list of the single character modulo q with the given label"""
        if q in self._zeros and label in self._zeros[q]:
            return self._zeros[q][label]
        path = self._zero_file(q, label)
        if path is not None:
            return load_zeros(str(path), q=q, label=label)
        group = character_group(q)
        chi = group.character(label)
        if chi.is_principal:
            raise ValueError(f"The principal character modulo {q} has no zero list")
        primitive = group.primitive(chi)
        found = self._primitive_zero_list(primitive)
        return ZeroList(q, label, primitive.modulus, found.ordinates, found.height, found.source)

    def zeros_for(self, q: int) -> Dict[int, ZeroList]:
        """Zero lists for every nonprincipal character modulo q, keyed by label

        Args:
            q: Modulus

        Returns:
            Dictionary of ZeroList with modulus q
        """
        if q in self._zeros:
            return self._zeros[q]

        group = character_group(q)
        zeros: Dict[int, ZeroList] = {
            chi.label: self.zeros_of(q, chi.label) for chi in group if not chi.is_principal
        }

        lowest = min((z.height for z in zeros.values()), default=self.zero_height)
        logger.info(f"Zeros ready for {len(zeros)} characters modulo {q} (covered height {lowest:g})")
        self._zeros[q] = zeros
        return zeros

    def variance(self, q: int, a: int, b: int, method: str = "lvalues") -> VarianceReport:
        """V(q;a,b), cached for the default route"""
        pair = ResiduePair.of(q, a, b)
        if method != "lvalues":
            zeros = self.zeros_for(q) if method == "zeros" else None
            return variance_V(q, pair, method=method, zeros=zeros, constant=self.arithmetic_constant)
        key = (q, pair.a, pair.b)
        if key not in self._variances:
            self._variances[key] = variance_V(q, pair)
        return self._variances[key]

    def density(self, q: int, a: int, b: int, method: str = "auto", K: int = 1) -> DensityResult:
        """delta(q;a,b) by the requested or automatically chosen method

        Args:
            q: Modulus
            a: First residue
            b: Second residue
            method: 'auto', 'erf', 'zeros', 'series' or 'order2'
            K: Series order for the series method

        Returns:
            DensityResult
        """
        if method not in DENSITY_METHODS:
            raise ValueError(f"Unknown density method {method}")
        pair = ResiduePair.of(q, a, b)
        pair.require_distinct()
        if is_square_mod(q, pair.a) == is_square_mod(q, pair.b):
            logger.info(f"delta({q};{pair.a},{pair.b}) = 1/2 (same square class)")
            return symmetric_result(q, pair)
        if is_square_mod(q, pair.a):
            return self.density(q, pair.b, pair.a, method=method, K=K).complement()

        require_race_modulus(q)

        report = self.variance(q, pair.a, pair.b)
        if method == "auto":
            method = "zeros" if choose_method(q, pair, report.V) == "zeros" else "erf"
            logger.info(f"Method for {q};{pair.a},{pair.b}: {method} (V = {report.V:.4f})")

        if method == "erf":
            return delta_erf_bounds(q, pair, variance=report)
        if method == "zeros":
            return delta_zeros_quadrature(q, pair, self.zeros_for(q), variance=report, target=self.quad_target)
        if method == "series":
            zeros = self.zeros_for(q) if K >= 2 else None
            logger.warning(f"Series error budget for {q};{pair.a},{pair.b} uses heuristic constant {self.series_constant}")
            return delta_series(q, pair, K=K, variance=report, zeros=zeros, constant=self.series_constant)
        logger.warning(f"Order-two error budget for {q};{pair.a},{pair.b} uses heuristic constant {self.arithmetic_constant}")
        return delta_order2_arithmetic(q, pair, constant=self.arithmetic_constant)

    def density_NR(self, q: int, method: str = "erf") -> DensityResult:
        """delta(q;N,R) by the Gaussian main term or the zeros of the quadratic character"""
        zeros = None
        if method == "zeros":
            chi = quadratic_character(q)
            zeros = self.zeros_of(q, chi.label)
        return delta_NR(q, method=method, zeros=zeros, target=self.quad_target, constant=self.series_constant)

    def counter(self, q: int, X: float) -> PrimeCounter:
        """Prime counting structure modulo q reaching at least X"""
        counter = self._counters.get(q)
        if counter is None or counter.limit < X:
            counter = sieve_pi(q, X, cache_path=self.prime_cache)
            self._counters[q] = counter
        return counter

    def empirical_density(self, q: int, a: int, b: int, X: float, npoints: int) -> float:
        return empirical_logdensity(q, a, b, X, npoints, counter=self.counter(q, X))

    def mirror_groups(self, q: int, X: float, n: int):
        return mirror_variance_groups(q, X, n, counter=self.counter(q, X))
