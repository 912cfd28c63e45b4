from typing import List, Optional, Tuple
from dataclasses import dataclass, field
from math import ceil, e, log, pi
from pathlib import Path
import logging

import numpy as np
from scipy.optimize import brentq

from ..characters.dirichlet import DirichletCharacter, character_group
from ..errors import ZeroCountError, ZeroFileError
from .critical_line import CriticalLineEvaluator

logger = logging.getLogger(__name__)

FINDER_MAX_CONDUCTOR = 200
FINDER_LARGE_CONDUCTOR_HEIGHT = 600
FINDER_MAX_HEIGHT = 5000
STEP_FRACTION = 0.2
ZERO_TOLERANCE = 1e-10
MAX_REFINEMENTS = 40


@dataclass(frozen=True)
class ZeroList:
    """Positive ordinates of the critical zeros of one L-function"""
    modulus: int
    label: int
    conductor: int
    ordinates: np.ndarray = field(repr=False)
    height: float
    source: str = "finder"

    def __post_init__(self):
        ordinates = np.asarray(self.ordinates, dtype=np.float64)
        object.__setattr__(self, "ordinates", ordinates)
        if len(ordinates) and ordinates[0] <= 0:
            raise ValueError(f"Zero ordinates of {self.name} must be positive")
        if np.any(np.diff(ordinates) <= 0):
            raise ValueError(f"Zero ordinates of {self.name} must be strictly increasing")

    @property
    def name(self) -> str:
        return f"{self.modulus}.{self.label}"

    def __len__(self) -> int:
        return len(self.ordinates)

    def up_to(self, height: float) -> np.ndarray:
        return self.ordinates[self.ordinates <= height]


def _log_density(q_star: int, T: float) -> float:
    return log(q_star * T / (2 * pi * e))


def zero_count_upper(q_star: int, T: float) -> float:
    """Upper bound for the number of zeros with |gamma| <= T"""
    if T < 1:
        raise ValueError(f"Zero-count upper bound needs T >= 1, got {T}")
    L = _log_density(q_star, T)
    return T / pi * L + 0.68884 * L + 10.6035


def zero_count_lower(q_star: int, T: float) -> float:
    """Lower bound for the number of zeros with |gamma| <= T"""
    if T < 100:
        raise ValueError(f"Zero-count lower bound needs T >= 100, got {T}")
    return 44 * T / (45 * pi) * _log_density(q_star, T) - 10.551


def N_T_bounds(q_star: int, T: float) -> Tuple[float, float]:
    return zero_count_lower(q_star, T), zero_count_upper(q_star, T)


def scan_step(q_star: int, T: float) -> float:
    """A fixed fraction of the mean zero spacing at height T"""
    return STEP_FRACTION * pi / log(max(q_star * T / (2 * pi), 2.0))


def _check_envelope(chi: DirichletCharacter, T: float) -> None:
    if chi.is_principal:
        raise ValueError("Zeros of the principal character are not needed")
    if T > FINDER_MAX_HEIGHT:
        raise ValueError(f"Height {T} beyond the finder limit {FINDER_MAX_HEIGHT}; supply zero files")
    if chi.conductor > FINDER_MAX_CONDUCTOR:
        if T > FINDER_LARGE_CONDUCTOR_HEIGHT:
            raise ValueError(
                f"Conductor {chi.conductor} beyond the finder limit {FINDER_MAX_CONDUCTOR}; supply zero files"
            )
        logger.warning(f"Finding zeros of conductor {chi.conductor} beyond the tested envelope")


def _refine(evaluator: CriticalLineEvaluator, grid: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Roots of Z from the sign changes of a scan, refined together"""
    signs = np.sign(values)
    exact = grid[signs == 0]
    idx = np.flatnonzero(signs[:-1] * signs[1:] < 0)
    a, b = grid[idx].copy(), grid[idx + 1].copy()
    fa, fb = values[idx].copy(), values[idx + 1].copy()
    x = (a * fb - b * fa) / (fb - fa)
    side = np.zeros(len(idx), dtype=np.int8)
    active = np.ones(len(idx), dtype=bool)

    # Illinois false position, all brackets at once
    for _ in range(MAX_REFINEMENTS):
        if not active.any():
            break
        live = np.flatnonzero(active)
        fx = evaluator.Z(x[live])
        left = np.sign(fx) == np.sign(fa[live])
        hit = fx == 0

        keep_b = live[left]
        stale = keep_b[side[keep_b] == 1]
        fb[stale] *= 0.5
        a[keep_b] = x[keep_b]
        fa[keep_b] = fx[left]
        side[keep_b] = 1

        keep_a = live[~left]
        stale = keep_a[side[keep_a] == -1]
        fa[stale] *= 0.5
        b[keep_a] = x[keep_a]
        fb[keep_a] = fx[~left]
        side[keep_a] = -1

        new_x = (a[live] * fb[live] - b[live] * fa[live]) / (fb[live] - fa[live])
        done = hit | (np.abs(new_x - x[live]) < ZERO_TOLERANCE) | (b[live] - a[live] < ZERO_TOLERANCE)
        x[live] = np.where(hit, x[live], new_x)
        active[live[done]] = False

    stragglers = np.flatnonzero(active)
    if len(stragglers):
        logger.debug(f"Bracketing {len(stragglers)} slow roots with brentq")
        for i in stragglers:
            x[i] = brentq(lambda t: float(evaluator.Z(t)[0]), a[i], b[i], xtol=ZERO_TOLERANCE)
    return np.sort(np.concatenate([x, exact]))


def find_zero_pair(chi: DirichletCharacter, T: float) -> Tuple["ZeroList", "ZeroList"]:
    """Zeros of L(s, chi) and L(s, conj chi) up to height T from one scan

    Args:
        chi: Primitive nonprincipal character
        T: Height

    Returns:
        Tuple of (zeros of chi, zeros of the conjugate character)
    """
    if not chi.is_primitive:
        raise ValueError(f"Character {chi.name} is not primitive")
    _check_envelope(chi, T)
    q = chi.modulus
    evaluator = CriticalLineEvaluator(chi)
    start = 0.0 if chi.is_real else -T
    upper = zero_count_upper(q, T)
    lower = zero_count_lower(q, T) if T >= 100 else 0.0

    for attempt, factor in enumerate((1.0, 0.25)):
        step = factor * scan_step(q, T)
        count = int(ceil((T - start) / step)) + 1
        logger.debug(f"Scanning {chi.name} on [{start}, {T}] with step {step:.5f} ({count} points)")
        grid, values = evaluator.scan(start, step, count)
        roots = _refine(evaluator, grid, values)
        roots = roots[(np.abs(roots) <= T) & (roots != 0)]
        positive = roots[roots > 0]
        negative = np.sort(-roots[roots < 0])
        found = 2 * len(positive) if chi.is_real else len(positive) + len(negative)
        if lower <= found <= upper:
            break
        if attempt == 0:
            logger.warning(
                f"Found {found} zeros for {chi.name} outside [{lower:.1f}, {upper:.1f}]; "
                f"rescanning at a quarter step"
            )
    else:
        raise ZeroCountError(chi.name, found, lower, upper)

    logger.info(f"Found {len(positive)} zeros of L(s, {chi.name}) up to height {T}")
    zeros = ZeroList(q, chi.label, q, positive, float(T), "finder")
    if chi.is_real:
        return zeros, zeros
    conjugate = ZeroList(q, chi.conjugate_label, q, negative, float(T), "finder")
    return zeros, conjugate


def find_zeros(chi: DirichletCharacter, T: float) -> ZeroList:
    """Critical zeros of L(s, chi) with 0 < gamma <= T

    Imprimitive characters share the critical zeros of their primitive
    inducing character.
    """
    primitive = character_group(chi.modulus).primitive(chi)
    zeros, _ = find_zero_pair(primitive, T)
    return ZeroList(chi.modulus, chi.label, primitive.modulus, zeros.ordinates, zeros.height, zeros.source)


def zeros_filename(q: int, label: int) -> str:
    return f"q{q}.chi{label}.txt"


def save_zeros(zeros: ZeroList, directory: str) -> Path:
    """Write a zero list in the plain-text zero file format

    Args:
        zeros: Zero list to write
        directory: Target directory (created if missing)

    Returns:
        Path of the written file
    """
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    path = target / zeros_filename(zeros.modulus, zeros.label)
    lines = [
        f"# q={zeros.modulus}",
        f"# chi={zeros.label}",
        f"# height={zeros.height!r}",
        f"# conductor={zeros.conductor}",
    ]
    lines.extend(f"{gamma:.12f}" for gamma in zeros.ordinates)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info(f"Wrote {len(zeros)} zeros to {path}")
    return path


def load_zeros(path: str, q: Optional[int] = None, label: Optional[int] = None) -> ZeroList:
    """Read and validate a zero file

    Args:
        path: File to read
        q: Expected modulus, checked against the header when given
        label: Expected character label, checked against the header when given

    Returns:
        ZeroList with source 'file'
    """
    header = {}
    ordinates: List[float] = []
    text = Path(path).read_text(encoding="utf-8")
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line.lstrip("#").strip().partition("=")
            if sep:
                header[key.strip()] = value.strip()
            continue
        try:
            gamma = float(line)
        except ValueError:
            raise ZeroFileError(str(path), f"cannot parse ordinate {line!r}", number)
        if gamma <= 0:
            raise ZeroFileError(str(path), f"ordinate {gamma} is not positive", number)
        if ordinates and gamma <= ordinates[-1]:
            raise ZeroFileError(str(path), f"ordinate {gamma} out of order", number)
        ordinates.append(gamma)

    try:
        file_q = int(header["q"]) if "q" in header else q
        file_label = int(header["chi"]) if "chi" in header else label
        height = float(header["height"]) if "height" in header else None
        conductor = int(header["conductor"]) if "conductor" in header else None
    except ValueError as exc:
        raise ZeroFileError(str(path), f"malformed header: {exc}")
    if file_q is None or file_label is None:
        raise ZeroFileError(str(path), "modulus and character label unknown")
    if q is not None and file_q != q:
        raise ZeroFileError(str(path), f"header modulus {file_q} does not match {q}")
    if label is not None and file_label != label:
        raise ZeroFileError(str(path), f"header label {file_label} does not match {label}")
    if height is None:
        height = ordinates[-1] if ordinates else 0.0
    if conductor is None:
        conductor = character_group(file_q).character(file_label).conductor

    logger.debug(f"Loaded {len(ordinates)} zeros for {file_q}.{file_label} from {path}")
    return ZeroList(file_q, file_label, conductor, np.array(ordinates), height, "file")
