"""Ideals with a lazily computed reduced Groebner basis, and the ideal calculus."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .core import (
    DEGREVLEX,
    Exponent,
    Polynomial,
    Ring,
    RingMismatchError,
    block_order,
    divides,
    monomial_str,
)
from .groebner import buchberger, divide_exact, interreduce, normal_form


class NotZeroDimensionalError(ValueError):
    """The quotient ring is not finite dimensional."""


class ContainmentError(ValueError):
    """A required ideal containment does not hold."""


class IterationCapError(RuntimeError):
    """An iterative search (saturation, multiplicity) hit its cap."""


def max_iter(default: int = 64) -> int:
    """Iteration cap, overridable through ``NILFILT_MAX_ITER``."""
    raw = os.environ.get("NILFILT_MAX_ITER")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"NILFILT_MAX_ITER must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("NILFILT_MAX_ITER must be positive")
    return value


class Ideal:
    """Finitely generated ideal. Equality means equal reduced Groebner bases."""

    __slots__ = ("ring", "gens", "_gb")

    def __init__(self, ring: Ring, gens: Sequence[Polynomial] = ()):
        gens = tuple(ring(g) if isinstance(g, str) else g for g in gens)
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} lives in {g.ring}, not {ring}")
        self.ring = ring
        self.gens = tuple(g for g in gens if g)
        self._gb = None

    @classmethod
    def _with_gb(cls, ring: Ring, gb: Sequence[Polynomial]) -> "Ideal":
        ideal = cls(ring, gb)
        ideal._gb = tuple(gb)
        return ideal

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls._with_gb(ring, [ring.one()])

    @property
    def gb(self) -> Tuple[Polynomial, ...]:
        # racing threads may both compute; the results are identical
        gb = self._gb
        if gb is None:
            gb = tuple(buchberger(self.gens, self.ring)) if self.gens else ()
            self._gb = gb
        return gb

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.gb)

    def __contains__(self, f) -> bool:
        return is_member(f, self)

    def is_unit(self) -> bool:
        return len(self.gb) == 1 and self.gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def leading_monomials(self) -> List[Exponent]:
        return [g.lm for g in self.gb]

    def in_order(self, order) -> "Ideal":
        ring = self.ring.with_order(order)
        return Ideal(ring, [g.change_ring(ring) for g in self.gens])

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return equals(self, other)

    def __hash__(self):
        return hash((self.ring, self.gb))

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return product(self, other)

    def __pow__(self, k: int) -> "Ideal":
        return power(self, k)

    def __and__(self, other: "Ideal") -> "Ideal":
        return intersect(self, other)

    def __truediv__(self, other: "Ideal") -> "Ideal":
        return colon(self, other)

    def generator_strings(self) -> List[str]:
        """Canonical printing: reduced GB elements, largest leading monomial first."""
        if not self.gb:
            return ["0"]
        return [str(g) for g in reversed(self.gb)]

    def __str__(self):
        return "(" + ", ".join(self.generator_strings()) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatchError(f"{I.ring} vs {J.ring}")


def ideal(ring: Ring, *gens) -> Ideal:
    return Ideal(ring, [ring(g) if isinstance(g, str) else g for g in gens])


# --------------------------------------------------------------------------
# membership and comparison
# --------------------------------------------------------------------------

def is_member(f: Polynomial, I: Ideal) -> bool:
    if f.ring != I.ring:
        raise RingMismatchError(f"{f.ring} vs {I.ring}")
    if not f:
        return True
    return not normal_form(f, I.gb)


def contains(I: Ideal, J: Ideal) -> bool:
    """True iff ``J`` is a subset of ``I``."""
    _same_ring(I, J)
    if I.is_unit():
        return True
    gb = I.gb
    return all(not normal_form(g, gb) for g in J.gens)


def equals(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    return I.gb == J.gb


# --------------------------------------------------------------------------
# sum, product, power
# --------------------------------------------------------------------------

def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, interreduce(I.gens + J.gens))


def product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    a = I.gb if I._gb is not None and len(I.gb) <= len(I.gens) else I.gens
    b = J.gb if J._gb is not None and len(J.gb) <= len(J.gens) else J.gens
    return Ideal(I.ring, interreduce([f * g for f in a for g in b]))


def power(I: Ideal, k: int) -> Ideal:
    if not isinstance(k, int) or k < 0:
        raise ValueError("power exponent must be a nonnegative integer")
    if k == 0:
        return Ideal.unit(I.ring)
    result = Ideal(I.ring, interreduce(I.gens))
    for _ in range(k - 1):
        result = product(result, I)
    return result


# --------------------------------------------------------------------------
# intersection, colon, saturation
# --------------------------------------------------------------------------

def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via t*I + (1-t)*J with t eliminated by a block order."""
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    t = "_t"
    while t in ring.vars:
        t = "_" + t
    big = Ring((t,) + ring.vars, ring.field, block_order(1, DEGREVLEX, ring.order))

    def lift(f: Polynomial, shift_t: int) -> Polynomial:
        return Polynomial._from_clean_dict(big, {(shift_t,) + e: c for e, c in f._dict.items()})

    gens = [lift(f, 1) for f in I.gb] + [lift(g, 0) - lift(g, 1) for g in J.gb]
    gb = buchberger(gens, big)
    kept = [
        Polynomial._from_clean_dict(ring, {e[1:]: c for e, c in g._dict.items()})
        for g in gb
        if g.lm[0] == 0
    ]
    # elimination: the t-free part of a reduced GB is the reduced GB of I ∩ J
    return Ideal._with_gb(ring, sorted(kept, key=lambda g: ring.order.key(g.lm)))


def colon_principal(I: Ideal, g: Polynomial) -> Ideal:
    """I : g = (I ∩ (g)) / g."""
    ring = I.ring
    if not g:
        raise ValueError("colon by the zero polynomial")
    if g.is_constant() or I.is_unit():
        return I
    meet = intersect(I, Ideal(ring, [g]))
    return Ideal(ring, [divide_exact(h, g) for h in meet.gb])


def colon(I: Ideal, J: Ideal) -> Ideal:
    """Ideal quotient I : J, intersecting I : g over the generators of J."""
    _same_ring(I, J)
    if J.is_zero():
        raise ValueError("colon by the zero ideal")
    if I.is_unit() or contains(I, J):
        return Ideal.unit(I.ring)
    gens = J.gb if len(J.gb) <= len(J.gens) else J.gens
    result = None
    for g in gens:
        part = colon_principal(I, g)
        result = part if result is None else intersect(result, part)
        if equals(result, I):
            break
    return result


def saturate(I: Ideal, J: Ideal, cap: int | None = None) -> Ideal:
    """I : J^∞ by iterating colons until stable."""
    _same_ring(I, J)
    cap = max_iter() if cap is None else cap
    K = I
    for _ in range(cap):
        nxt = colon(K, J)
        if equals(nxt, K):
            return K
        K = nxt
    raise IterationCapError(f"saturation did not stabilize within {cap} steps")


# --------------------------------------------------------------------------
# zero-dimensional linear algebra
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientBasis:
    """Standard monomials of R/I, ascending in the ring order."""

    ideal: Ideal
    monomials: Tuple[Exponent, ...]

    def __len__(self):
        return len(self.monomials)

    def index(self, exp: Exponent) -> int:
        return self.monomials.index(exp)

    def labels(self) -> List[str]:
        return [monomial_str(e, self.ideal.ring.vars) for e in self.monomials]

    def element(self, vec: Sequence) -> Polynomial:
        ring = self.ideal.ring
        return Polynomial(ring, {e: c for e, c in zip(self.monomials, vec) if c})


def is_zero_dimensional(I: Ideal) -> bool:
    if I.is_unit():
        return True
    lms = I.leading_monomials()
    n = I.ring.nvars
    for i in range(n):
        if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms):
            return False
    return True


def standard_monomials(I: Ideal) -> List[Exponent]:
    if not is_zero_dimensional(I):
        raise NotZeroDimensionalError(f"R/{I} is not finite dimensional")
    lms = I.leading_monomials()
    n = I.ring.nvars
    if any(not any(lm) for lm in lms):
        return []
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(n):
                f = e[:i] + (e[i] + 1,) + e[i + 1:]
                if f in seen or any(divides(lm, f) for lm in lms):
                    continue
                seen.add(f)
                nxt.append(f)
        frontier = nxt
    key = I.ring.order.key
    return sorted(seen, key=key)


def quotient_basis(I: Ideal) -> QuotientBasis:
    return QuotientBasis(I, tuple(standard_monomials(I)))


def quotient_dim(I: Ideal) -> int:
    return len(standard_monomials(I))


def subquotient_dim(A: Ideal, B: Ideal) -> int:
    """dim_k A/B; requires B ⊆ A."""
    _same_ring(A, B)
    if not contains(A, B):
        raise ContainmentError(f"{B} is not contained in {A}")
    return quotient_dim(B) - quotient_dim(A)


def coordinates(f: Polynomial, Q: QuotientBasis) -> List:
    """Coordinates of the class of ``f`` in the standard-monomial basis."""
    nf = normal_form(f, Q.ideal.gb)
    zero = Q.ideal.ring.field.zero
    vec = [zero] * len(Q.monomials)
    pos = {e: i for i, e in enumerate(Q.monomials)}
    for e, c in nf.terms:
        vec[pos[e]] = c
    return vec


__all__ = [
    "ContainmentError",
    "Ideal",
    "IterationCapError",
    "NotZeroDimensionalError",
    "QuotientBasis",
    "colon",
    "colon_principal",
    "contains",
    "coordinates",
    "equals",
    "ideal",
    "ideal_sum",
    "intersect",
    "is_member",
    "is_zero_dimensional",
    "max_iter",
    "power",
    "product",
    "quotient_basis",
    "quotient_dim",
    "saturate",
    "standard_monomials",
    "subquotient_dim",
]
