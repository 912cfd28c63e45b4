"""Exact Dirichlet character groups with Conrey-style labels.

A character is stored as a row of integer exponents k, meaning the value
exp(2 pi i k / N) with N the exponent of the unit group, and -1 marking
residues that share a factor with q.  Complex numbers are produced only
when values are requested.
"""

from typing import Dict, List, Optional, Tuple
from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm
import logging

import numpy as np
from sympy import divisors, primitive_root

from ..arithmetic.modulus import ModulusContext, modulus_context

logger = logging.getLogger(__name__)

# Rows of the exponent table built per matrix product
_ROW_CHUNK = 512


@dataclass(frozen=True)
class GeneratorComponent:
    """One cyclic factor of the unit group"""
    prime: int
    modulus: int
    generator: int
    order: int
    lifted: int


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """A character modulo q with exact exponent values"""
    modulus: int
    label: int
    index: int
    group_exponent: int
    conductor: int
    parity: int
    exponents: np.ndarray = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.modulus}.{self.label}"

    @property
    def is_principal(self) -> bool:
        return self.label == 1 or self.modulus == 1

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_real(self) -> bool:
        reduced = self.exponents[self.exponents >= 0]
        return bool(np.all((2 * reduced) % self.group_exponent == 0))

    @property
    def kappa(self) -> int:
        """0 for even characters, 1 for odd ones"""
        return 0 if self.parity == 1 else 1

    @property
    def conjugate_label(self) -> int:
        return pow(self.label, -1, self.modulus) if self.modulus > 1 else 1

    def exponent(self, n: int) -> int:
        return int(self.exponents[n % self.modulus])

    def value(self, n: int) -> complex:
        k = self.exponent(n)
        if k < 0:
            return 0j
        return complex(np.exp(2j * np.pi * k / self.group_exponent))

    def values(self) -> np.ndarray:
        """Complex values at 0, 1, ..., q-1"""
        roots = np.exp(2j * np.pi * np.arange(self.group_exponent) / self.group_exponent)
        result = np.zeros(self.modulus, dtype=np.complex128)
        reduced = self.exponents >= 0
        result[reduced] = roots[self.exponents[reduced]]
        return result


def _odd_component(p: int, k: int, q: int) -> Tuple[GeneratorComponent, np.ndarray]:
    m = p ** k
    g = int(primitive_root(p * p))
    order = m - m // p
    logs = np.full(m, -1, dtype=np.int64)
    x = 1
    for e in range(order):
        logs[x] = e
        x = x * g % m
    component = GeneratorComponent(p, m, g, order, _crt_lift(g, m, q))
    return component, logs


def _two_components(k: int, q: int) -> List[Tuple[GeneratorComponent, np.ndarray]]:
    m = 2 ** k
    n = np.arange(m)
    minus_one = np.where(n % 2 == 1, (n % 4 == 3).astype(np.int64), -1)
    components = [(GeneratorComponent(2, m, m - 1, 2, _crt_lift(m - 1, m, q)), minus_one)]
    if k >= 3:
        order = m // 4
        log5 = np.full(m, -1, dtype=np.int64)
        x = 1
        for e in range(order):
            log5[x] = e
            x = x * 5 % m
        folded = np.where(n % 4 == 1, n, (-n) % m)
        logs = np.where(n % 2 == 1, log5[folded], -1)
        components.append((GeneratorComponent(2, m, 5, order, _crt_lift(5, m, q)), logs))
    return components


def _crt_lift(g: int, m: int, q: int) -> int:
    """Residue modulo q that is g modulo m and 1 modulo q/m"""
    rest = q // m
    if rest == 1:
        return g % q
    return (g * rest * pow(rest, -1, m) + m * pow(m, -1, rest)) % q


class CharacterGroup:
    """All phi(q) characters modulo q, ordered by label"""

    def __init__(self, context: ModulusContext):
        """Build the character table

        Args:
            context: Modulus data for q
        """
        self.context = context
        self.q = context.q
        q = self.q

        # Decompose the unit group into cyclic components
        parts: List[Tuple[GeneratorComponent, np.ndarray]] = []
        for p, k in context.factors:
            if p == 2:
                if k >= 2:
                    parts.extend(_two_components(k, q))
            else:
                parts.append(_odd_component(p, k, q))
        self.components = [component for component, _ in parts]
        orders = np.array([c.order for c in self.components], dtype=np.int64)
        self.exponent = lcm(*orders.tolist()) if len(orders) else 1

        # Discrete logarithms of every residue on every component
        n = np.arange(q, dtype=np.int64)
        self.units = np.flatnonzero(np.gcd(n, q) == 1)
        logs = np.zeros((q, len(parts)), dtype=np.int64)
        for i, (component, table) in enumerate(parts):
            logs[:, i] = table[n % component.modulus]
        self._logs = logs

        # Build exponent table: rows are characters, columns residues
        self.labels = self.units.copy() if q > 1 else np.array([1])
        unit_logs = logs[self.units]
        scale = self.exponent // orders if len(orders) else orders
        table = np.full((len(self.labels), q), -1, dtype=np.int32)
        for start in range(0, len(self.labels), _ROW_CHUNK):
            rows = unit_logs[start:start + _ROW_CHUNK] * scale
            table[start:start + _ROW_CHUNK, self.units] = (rows @ unit_logs.T) % self.exponent
        self.table = table

        self.conductors = self._conductors()
        if q > 2:
            minus_one = table[:, q - 1]
            self.parities = np.where(minus_one == 0, 1, -1)
        else:
            self.parities = np.ones(len(self.labels), dtype=np.int64)
        self.characters = [
            DirichletCharacter(
                modulus=q,
                label=int(label),
                index=i,
                group_exponent=self.exponent,
                conductor=int(self.conductors[i]),
                parity=int(self.parities[i]),
                exponents=table[i],
            )
            for i, label in enumerate(self.labels)
        ]
        self._label_index = {int(label): i for i, label in enumerate(self.labels)}
        self._primitive_keys: Dict[int, Dict[Tuple[int, ...], int]] = {}

        logger.debug(
            f"Built {len(self.characters)} characters modulo {q} "
            f"(exponent {self.exponent}, {len(self.components)} components)"
        )

    def __len__(self) -> int:
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    @property
    def generators(self) -> List[int]:
        return [c.lifted for c in self.components]

    def character(self, label: int) -> DirichletCharacter:
        key = label % self.q if self.q > 1 else 1
        if key not in self._label_index:
            raise ValueError(f"No character with label {label} modulo {self.q}")
        return self.characters[self._label_index[key]]

    @property
    def principal(self) -> DirichletCharacter:
        return self.character(1)

    @property
    def real_mask(self) -> np.ndarray:
        return np.all((2 * self.table[:, self.units]) % self.exponent == 0, axis=1)

    def _conductors(self) -> np.ndarray:
        """Smallest d | q whose kernel condition holds, per character"""
        result = np.zeros(len(self.labels), dtype=np.int64)
        pending = np.ones(len(self.labels), dtype=bool)
        for d in divisors(self.q):
            columns = self.units[self.units % d == 1 % d]
            induced = np.all(self.table[:, columns] == 0, axis=1) & pending
            result[induced] = d
            pending &= ~induced
            if not pending.any():
                break
        return result

    def primitive(self, chi: DirichletCharacter) -> DirichletCharacter:
        """The primitive character inducing chi"""
        if chi.conductor == self.q:
            return chi
        d = chi.conductor
        sub = character_group(d)
        keys = self._primitive_keys.get(d)
        if keys is None:
            keys = {}
            scale = self.exponent // sub.exponent
            residues = [g % d for g in self.generators]
            for psi in sub.characters:
                if psi.conductor != d:
                    continue
                key = tuple(int(psi.exponents[r]) * scale % self.exponent for r in residues)
                keys[key] = psi.index
            self._primitive_keys[d] = keys
        target = tuple(int(chi.exponents[g]) for g in self.generators)
        return sub.characters[keys[target]]

    def exponent_differences(self, a: int, b: int) -> np.ndarray:
        """Exponents of chi(a) chi(b)^(-1) for every character"""
        a = self.context.check_reduced(a)
        b = self.context.check_reduced(b)
        return (self.table[:, a].astype(np.int64) - self.table[:, b]) % self.exponent

    def race_weights(self, a: int, b: int, n: int = 1, sign: int = -1) -> np.ndarray:
        """|chi(a) - chi(b)|^(2n) (sign=-1) or |chi(a) + chi(b)|^(2n) (sign=+1)"""
        diff = self.exponent_differences(a, b)
        cosine = np.cos(2 * np.pi * diff / self.exponent)
        base = 2.0 - 2.0 * cosine if sign < 0 else 2.0 + 2.0 * cosine
        if sign < 0:
            base[diff == 0] = 0.0
        else:
            base[2 * diff == self.exponent] = 0.0
        return base ** n


@lru_cache(maxsize=64)
def character_group(q: int) -> CharacterGroup:
    return CharacterGroup(modulus_context(q))


def enumerate_characters(ctx: ModulusContext) -> CharacterGroup:
    """All characters modulo ctx.q in deterministic label order"""
    return character_group(ctx.q)


def conductor_and_primitive(chi: DirichletCharacter) -> Tuple[int, DirichletCharacter]:
    group = character_group(chi.modulus)
    primitive = group.primitive(chi)
    return primitive.modulus, primitive


def find_character(q: int, label: int) -> Optional[DirichletCharacter]:
    try:
        return character_group(q).character(label)
    except ValueError:
        return None
