"""Dirichlet characters with exact values, and the twisted sequences x_chi(t).

A character mod ``q`` is stored as a table of rotation numbers: the value at
``k`` is ``exp(2 pi i r_k)`` with ``r_k`` a :class:`fractions.Fraction` in
``[0, 1)``, or ``None`` when ``gcd(k, q) > 1``. Characters are enumerated
from a fixed generator list of ``(Z/qZ)^*`` (one cyclic factor per odd prime
power, and ``-1``, ``5`` at ``2^e`` for ``e >= 3``) and indexed
lexicographically by their exponent tuples, so index 0 is always principal.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np


def factorize(q):
    """Prime factorization as a sorted list of ``(p, e)``."""
    out = []
    p = 2
    while p * p <= q:
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            out.append((p, e))
        p += 1
    if q > 1:
        out.append((q, 1))
    return out


def euler_phi(q):
    result = q
    for p, _ in factorize(q):
        result = result // p * (p - 1)
    return result


def _order_mod(g, n):
    k, x = 1, g % n
    while x != 1:
        x = x * g % n
        k += 1
    return k


def _primitive_root(pe, phi):
    for g in range(2, pe):
        if gcd(g, pe) == 1 and _order_mod(g, pe) == phi:
            return g
    raise ArithmeticError(f"no primitive root mod {pe}")


def _crt_lift(g, pe, q):
    """The residue mod ``q`` that is ``g`` mod ``pe`` and 1 mod ``q / pe``."""
    rest = q // pe
    # x = 1 + rest * y with rest * y = g - 1 (mod pe)
    y = (g - 1) * pow(rest, -1, pe) % pe
    return (1 + rest * y) % q


@lru_cache(maxsize=None)
def unit_group_generators(q):
    """Generators and their orders for ``(Z/qZ)^*`` as a direct product.

    Returns a tuple of ``(generator, order)`` pairs; the empty tuple when the
    group is trivial.
    """
    gens = []
    for p, e in factorize(q):
        pe = p ** e
        if p == 2:
            if e == 2:
                gens.append((_crt_lift(3, pe, q), 2))
            elif e >= 3:
                gens.append((_crt_lift(pe - 1, pe, q), 2))
                gens.append((_crt_lift(5, pe, q), 2 ** (e - 2)))
        else:
            phi = pe // p * (p - 1)
            gens.append((_crt_lift(_primitive_root(pe, phi), pe, q), phi))
    return tuple(gens)


@lru_cache(maxsize=None)
def discrete_logs(q):
    """Map each unit mod ``q`` to its exponent tuple over the generators."""
    gens = unit_group_generators(q)
    table = {}
    for exps in itertools.product(*(range(o) for _, o in gens)):
        x = 1
        for (g, _), k in zip(gens, exps):
            x = x * pow(g, k, q) % q
        table[x % q] = exps
    if len(table) != euler_phi(q):
        raise ArithmeticError(f"generator list for q={q} does not span the units")
    return table


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod ``modulus`` with values ``exp(2 pi i rotation)``."""

    modulus: int
    index: int
    exponents: tuple
    rotations: tuple = field(repr=False)

    @property
    def principal(self):
        return all(r is None or r == 0 for r in self.rotations)

    @property
    def is_real(self):
        return all(r is None or r.denominator <= 2 for r in self.rotations)

    def rotation(self, k):
        """Exact rotation number of ``chi(k)``, ``None`` if ``chi(k) = 0``."""
        return self.rotations[k % self.modulus]

    def __call__(self, k):
        r = self.rotation(k)
        if r is None:
            return 0j
        return _root_of_unity(r)

    def values(self, ks):
        """Complex values on an integer array."""
        table = np.array([0j if r is None else _root_of_unity(r) for r in self.rotations])
        return table[np.asarray(ks) % self.modulus]

    def conjugate(self):
        return self._from_rotations(
            tuple(None if r is None else (-r) % 1 for r in self.rotations))

    def __mul__(self, other):
        if other.modulus != self.modulus:
            raise ValueError("characters must share a modulus")
        return self._from_rotations(tuple(
            None if r is None else (r + s) % 1
            for r, s in zip(self.rotations, other.rotations)))

    def _from_rotations(self, rotations):
        for chi in characters_mod(self.modulus):
            if chi.rotations == rotations:
                return chi
        raise ArithmeticError("rotation table is not a character")

    def label(self):
        return {"modulus": self.modulus, "index": self.index}


def _root_of_unity(r):
    if r == 0:
        return 1 + 0j
    if r == Fraction(1, 2):
        return -1 + 0j
    if r == Fraction(1, 4):
        return 1j
    if r == Fraction(3, 4):
        return -1j
    return complex(np.exp(2j * np.pi * float(r)))


@lru_cache(maxsize=None)
def characters_mod(q):
    """All ``phi(q)`` characters mod ``q``, principal first."""
    if q < 1:
        raise ValueError("modulus must be positive")
    gens = unit_group_generators(q)
    logs = discrete_logs(q)
    chars = []
    for index, exps in enumerate(itertools.product(*(range(o) for _, o in gens))):
        rot = []
        for k in range(q):
            if gcd(k, q) != 1:
                rot.append(None)
                continue
            r = sum((Fraction(a * l, o) for a, l, (_, o) in zip(exps, logs[k % q], gens)),
                    Fraction(0))
            rot.append(r % 1)
        chars.append(DirichletCharacter(q, index, tuple(exps), tuple(rot)))
    return tuple(chars)


def character(q, index):
    chars = characters_mod(q)
    if not 0 <= index < len(chars):
        raise IndexError(f"character index {index} out of range for q={q} "
                         f"({len(chars)} characters)")
    return chars[index]


@dataclass(frozen=True)
class FiniteSequence:
    """Finitely supported complex sequence indexed from 1."""

    indices: tuple
    coefficients: tuple

    def __post_init__(self):
        if len(self.indices) != len(self.coefficients):
            raise ValueError("indices and coefficients differ in length")
        if any(k < 1 for k in self.indices):
            raise ValueError("indices start at 1")

    @classmethod
    def from_dense(cls, values):
        """Sequence with ``x(k) = values[k - 1]``; zeros are dropped from the support."""
        values = np.asarray(values, dtype=complex)
        idx = np.flatnonzero(values)
        return cls(tuple(int(i) + 1 for i in idx), tuple(complex(values[i]) for i in idx))

    @classmethod
    def delta(cls, n):
        return cls((n,), (1 + 0j,))

    @property
    def max_index(self):
        return max(self.indices, default=0)

    def to_dense(self, N=None):
        N = self.max_index if N is None else N
        out = np.zeros(N, dtype=complex)
        for k, c in zip(self.indices, self.coefficients):
            out[k - 1] += c
        return out

    def __add__(self, other):
        N = max(self.max_index, other.max_index)
        return FiniteSequence.from_dense(self.to_dense(N) + other.to_dense(N))

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        return FiniteSequence(self.indices, tuple(scalar * c for c in self.coefficients))

    def as_function(self):
        from .kernel import dirichlet_polynomial
        return dirichlet_polynomial(self.indices, self.coefficients)


@dataclass(frozen=True)
class TwistedSequence:
    """The sequence ``x_chi(t)``: ``(-1)^k k^{it}`` for principal ``chi``, else ``chi(k) k^{it}``."""

    character: DirichletCharacter
    shift: float

    def base_coefficients(self, N):
        """The ``t = 0`` coefficients for ``k = 1..N``."""
        k = np.arange(1, N + 1)
        if self.character.principal:
            return np.where(k % 2 == 0, 1.0, -1.0).astype(complex)
        return self.character.values(k)

    def term(self, k):
        return twisted_term(self, k)

    def dense(self, N):
        """Coefficients ``k = 1..N`` as a complex array."""
        return self.base_coefficients(N) * unimodular(self.shift, N)


def unimodular(t, N):
    """``k^{it}`` for ``k = 1..N``, built so that negating ``t`` conjugates exactly."""
    phase = t * np.log(np.arange(1, N + 1, dtype=float))
    return np.cos(phase) + 1j * np.sin(phase)


def twisted_term(seq, k):
    if k < 1:
        raise ValueError(f"index {k} < 1")
    if seq.character.principal:
        c = -1.0 if k % 2 else 1.0
    else:
        c = seq.character(k)
    phase = seq.shift * np.log(k)
    return c * complex(np.cos(phase), np.sin(phase))


def truncated_vector(seq, N):
    if N < 1:
        raise ValueError("N must be positive")
    return FiniteSequence.from_dense(seq.dense(N))


def difference_vector(chi, t, N):
    """Dense ``x_chi(t) - x_chi(0)`` on ``1..N``."""
    seq = TwistedSequence(chi, t)
    return seq.base_coefficients(N) * (unimodular(t, N) - 1.0)
