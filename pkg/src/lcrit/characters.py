"""Exact Dirichlet characters mod q.

Characters are built from the dual group of (Z/qZ)* via CRT: each prime-power
factor contributes a cyclic component (two for 2^e, e >= 3), and a character
is a tuple of exponents against the component generators.  Values are stored
as exact rational angles (fractions of a turn), so multiplicativity and
orthogonality hold exactly; conversion to complex happens only at evaluation.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import factorint, primitive_root


@dataclass(frozen=True)
class Character:
    """A Dirichlet character mod q with exact root-of-unity values.

    ``angles[n]`` is the value at residue n as a rational number of turns
    (chi(n) = e^{2 pi i angles[n]}), or None when gcd(n, q) > 1.
    """

    modulus: int
    label: int
    angles: tuple  # tuple[Fraction | None], length q, index = residue
    is_primitive: bool
    parity: int  # chi(-1), +1 or -1
    conductor: int
    order: int = field(default=1)

    def angle(self, n: int) -> Fraction | None:
        """Exact angle of chi(n) in turns, or None if chi(n) = 0."""
        return self.angles[n % self.modulus]

    def __call__(self, n: int) -> complex:
        return chi_value(self, n)

    @property
    def is_principal(self) -> bool:
        return self.label == 0

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def conjugate(self) -> "Character":
        """The conjugate character chi-bar (exact)."""
        for other in enumerate_characters(self.modulus):
            if all(
                (a is None and b is None)
                or (a is not None and b is not None and (a + b) % 1 == 0)
                for a, b in zip(self.angles, other.angles)
            ):
                return other
        raise RuntimeError("dual group not closed under conjugation")

    def coeff_array(self) -> np.ndarray:
        """chi(0..q-1) as complex128, for vectorized residue lookup."""
        out = np.zeros(self.modulus, dtype=np.complex128)
        for n, a in enumerate(self.angles):
            if a is not None:
                out[n] = cmath.exp(2j * cmath.pi * float(a))
        return out


def _component_generators(p: int, e: int) -> list[tuple[int, int]]:
    """Generators and orders of the cyclic components of (Z/p^e Z)*."""
    pe = p**e
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [(3, 2)]
        return [(pe - 1, 2), (5, pe // 4)]  # {-1} x <5>
    g = primitive_root(pe)
    return [(int(g), pe - pe // p)]


@lru_cache(maxsize=None)
def _group_data(q: int):
    """CRT component generators, orders, and residue -> exponent-tuple map."""
    factors = sorted(factorint(q).items())
    gens: list[int] = []  # generators lifted to mod q
    orders: list[int] = []
    for p, e in factors:
        pe = p**e
        cof = q // pe
        # lift g mod pe to a residue mod q that is 1 mod q/pe
        inv = pow(cof, -1, pe)
        for g, ordg in _component_generators(p, e):
            lifted = (1 + cof * ((g - 1) * inv % pe)) % q
            gens.append(lifted)
            orders.append(ordg)
    # enumerate the full group to build the discrete-log map
    dlog: dict[int, tuple[int, ...]] = {}
    exps = [0] * len(gens)
    total = 1
    for o in orders:
        total *= o
    for _ in range(total):
        r = 1
        for g, a in zip(gens, exps):
            r = r * pow(g, a, q) % q
        dlog[r] = tuple(exps)
        for i in range(len(exps)):
            exps[i] += 1
            if exps[i] < orders[i]:
                break
            exps[i] = 0
    return tuple(gens), tuple(orders), dlog


def _char_angles(q: int, char_exps: tuple[int, ...]) -> tuple:
    _, orders, dlog = _group_data(q)
    angles: list[Fraction | None] = [None] * q
    for r, exps in dlog.items():
        a = Fraction(0)
        for c, x, o in zip(char_exps, exps, orders):
            a += Fraction(c * x, o)
        angles[r] = a % 1
    return tuple(angles)


def _conductor(q: int, angles: tuple) -> int:
    divisors = sorted(d for d in range(1, q + 1) if q % d == 0)
    for d in divisors:
        if all(
            angles[n % q] == 0
            for n in range(1, q + 1)
            if n % d == 1 % d and math.gcd(n, q) == 1
        ):
            return d
    return q


@lru_cache(maxsize=None)
def enumerate_characters(q: int) -> tuple[Character, ...]:
    """All phi(q) Dirichlet characters mod q; label 0 is principal.

    The modulus must be at least 3 (q > 2 throughout).
    """
    if q < 3:
        raise ValueError(f"modulus must be >= 3, got {q}")
    _, orders, _ = _group_data(q)
    chars = []
    n_chars = 1
    for o in orders:
        n_chars *= o
    for label in range(n_chars):
        exps = []
        rem = label
        for o in orders:
            exps.append(rem % o)
            rem //= o
        angles = _char_angles(q, tuple(exps))
        cond = _conductor(q, angles)
        pa = angles[(q - 1) % q]
        parity = 1 if pa == 0 else -1
        order = 1  # lcm over components of o/gcd(c, o)
        for c, o in zip(exps, orders):
            oo = o // math.gcd(c, o)
            order = order * oo // math.gcd(order, oo)
        chars.append(
            Character(
                modulus=q,
                label=label,
                angles=angles,
                is_primitive=(cond == q),
                parity=parity,
                conductor=cond,
                order=order,
            )
        )
    return tuple(chars)


def primitive_characters(q: int) -> list[Character]:
    return [c for c in enumerate_characters(q) if c.is_primitive]


def chi_value(chr: Character, n: int) -> complex:
    """chi(n) as a complex number (exact angle, one rounding at conversion)."""
    a = chr.angle(n)
    if a is None:
        return 0j
    if a == 0:
        return 1 + 0j
    if 2 * a == 1:
        return -1 + 0j
    return cmath.exp(2j * cmath.pi * float(a))


def unit_density(q: int) -> float:
    """phi(q)/q as an exact rational, converted once."""
    if q < 1:
        raise ValueError("q must be positive")
    frac = Fraction(1)
    for p in factorint(q):
        frac *= Fraction(p - 1, p)
    return float(frac)


def euler_phi(q: int) -> int:
    num = q
    for p in factorint(q):
        num = num // p * (p - 1)
    return num


def ramified_product(q: int) -> float:
    """Product over primes p | q of (p+1)/p (empty product for q = 1)."""
    if q < 1:
        raise ValueError("q must be positive")
    frac = Fraction(1)
    for p in factorint(q):
        frac *= Fraction(p + 1, p)
    return float(frac)


def character_to_json(chr: Character) -> dict:
    """JSON-ready table: zeros omitted, angles as (numerator, denominator)."""
    values = [
        [n, a.numerator, a.denominator]
        for n, a in enumerate(chr.angles)
        if a is not None
    ]
    return {
        "q": chr.modulus,
        "label": chr.label,
        "conductor": chr.conductor,
        "parity": chr.parity,
        "values": values,
    }


def character_json_dumps(chr: Character) -> str:
    return json.dumps(character_to_json(chr))
