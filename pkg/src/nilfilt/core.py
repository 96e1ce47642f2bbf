"""Exact coefficients, monomial orders and sparse multivariate polynomials."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Exponent = Tuple[int, ...]


class RingMismatchError(ValueError):
    """Operands live in different rings (or are compared under different orders)."""


# --------------------------------------------------------------------------
# coefficient fields
# --------------------------------------------------------------------------

class ModP:
    """Residue class modulo a prime. Only produced by :class:`Field` for GF(p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> "ModP":
        if isinstance(other, ModP):
            if other.p != self.p:
                raise RingMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other
        if isinstance(other, Fraction):
            return ModP(other.numerator, self.p) / ModP(other.denominator, self.p)
        if isinstance(other, int):
            return ModP(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.value == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModP(self.value * pow(other.value, -1, self.p), self.p)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        # symmetric representative reads better in printed polynomials
        v = self.value
        return str(v - self.p if v > self.p // 2 else v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """QQ when ``characteristic == 0``, otherwise GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic and not _is_prime(self.characteristic):
            raise ValueError(f"GF({self.characteristic}): modulus is not prime")

    @property
    def name(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __call__(self, value) -> Union[Fraction, ModP]:
        p = self.characteristic
        if p == 0:
            if isinstance(value, ModP):
                raise RingMismatchError("cannot lift a GF(p) element to QQ")
            return Fraction(value)
        if isinstance(value, ModP):
            if value.p != p:
                raise RingMismatchError(f"GF({value.p}) element used in GF({p})")
            return value
        value = Fraction(value)
        return ModP(value.numerator, p) / ModP(value.denominator, p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __str__(self):
        return self.name


QQ = Field(0)


def GF(p: int) -> Field:
    warnings.warn(
        f"computing over GF({p}); the cuspidal theory assumes characteristic 0",
        stacklevel=2,
    )
    return Field(p)


# --------------------------------------------------------------------------
# monomial orders
# --------------------------------------------------------------------------

class MonomialOrder:
    """A monomial order given by a flat integer sort key.

    ``key(a) > key(b)`` (tuple comparison) iff ``a > b`` in the order.
    """

    def __init__(self, name: str, key: Callable[[Exponent], Tuple[int, ...]]):
        self.name = name
        self.key = key

    def compare(self, a: Exponent, b: Exponent) -> int:
        if len(a) != len(b):
            raise RingMismatchError(f"monomial arity {len(a)} vs {len(b)}")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"MonomialOrder({self.name!r})"

    def __str__(self):
        return self.name


def _lex_key(e: Exponent) -> Tuple[int, ...]:
    return e


def _degrevlex_key(e: Exponent) -> Tuple[int, ...]:
    return (sum(e),) + tuple(-c for c in reversed(e))


LEX = MonomialOrder("lex", _lex_key)
DEGREVLEX = MonomialOrder("degrevlex", _degrevlex_key)


def block_order(k: int, outer: MonomialOrder, inner: MonomialOrder) -> MonomialOrder:
    """Elimination order: the first ``k`` variables compared by ``outer`` first."""
    if k < 0:
        raise ValueError("block size must be nonnegative")
    okey, ikey = outer.key, inner.key

    def key(e):
        return okey(e[:k]) + ikey(e[k:])

    return MonomialOrder(f"block({k},{outer.name},{inner.name})", key)


def order_from_name(name: str) -> MonomialOrder:
    try:
        return {"lex": LEX, "degrevlex": DEGREVLEX}[name]
    except KeyError:
        raise ValueError(f"unknown monomial order {name!r}") from None


def cmp_monomials(a: Exponent, b: Exponent, order: MonomialOrder) -> int:
    """Three-way comparison: -1, 0 or 1."""
    return order.compare(tuple(a), tuple(b))


# --------------------------------------------------------------------------
# rings and polynomials
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Ring:
    vars: Tuple[str, ...]
    field: Field = QQ
    order: MonomialOrder = DEGREVLEX

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if not self.vars:
            raise ValueError("a ring needs at least one variable")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.vars, self.field, order)

    def index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def gen(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.gen(v) for v in self.vars)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exp: Sequence[int], coeff=1) -> "Polynomial":
        if len(exp) != self.nvars:
            raise RingMismatchError(f"exponent {tuple(exp)} has wrong arity for {self}")
        return Polynomial(self, {tuple(exp): coeff})

    def __call__(self, text: str) -> "Polynomial":
        from .parser import parse_polynomial

        return parse_polynomial(text, self)

    def __str__(self):
        return f"{self.field.name}[{','.join(self.vars)}] order {self.order.name}"


def monomial_str(exp: Exponent, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial with terms kept sorted by the ring's order.

    ``terms`` is a tuple of ``(exponent, coefficient)`` pairs, strictly
    descending; the zero polynomial has no terms.
    """

    __slots__ = ("ring", "terms", "_dict", "_hash")

    def __init__(self, ring: Ring, coeffs: Mapping[Exponent, object] | Iterable = ()):
        field = ring.field
        n = ring.nvars
        d: Dict[Exponent, object] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != n:
                raise RingMismatchError(f"exponent {exp} has wrong arity for {ring}")
            c = field(c)
            if exp in d:
                c = d[exp] + c
            if c:
                d[exp] = c
            else:
                d.pop(exp, None)
        self.ring = ring
        self._dict = d
        key = ring.order.key
        self.terms = tuple(sorted(d.items(), key=lambda t: key(t[0]), reverse=True))
        self._hash = None

    @classmethod
    def _from_clean_dict(cls, ring: Ring, d: Dict[Exponent, object]) -> "Polynomial":
        # d must already hold nonzero field elements of the right arity
        self = object.__new__(cls)
        self.ring = ring
        self._dict = d
        key = ring.order.key
        self.terms = tuple(sorted(d.items(), key=lambda t: key(t[0]), reverse=True))
        self._hash = None
        return self

    # -- access ------------------------------------------------------------
    def as_dict(self) -> Dict[Exponent, object]:
        return dict(self._dict)

    def coefficient(self, exp: Exponent):
        return self._dict.get(tuple(exp), self.ring.field.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Exponent, object]]:
        return iter(self.terms)

    def leading_term(self) -> Tuple[Exponent, object]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        return self.terms[0]

    @property
    def lm(self) -> Exponent:
        return self.leading_term()[0]

    @property
    def lc(self):
        return self.leading_term()[1]

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return all(not any(e) for e, _ in self.terms)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = 1 / self.terms[0][1]
        if inv == 1:
            return self
        return Polynomial._from_clean_dict(self.ring, {e: c * inv for e, c in self._dict.items()})

    def change_ring(self, ring: Ring) -> "Polynomial":
        """Reinterpret in a ring with the same variables (e.g. another order)."""
        if ring.vars != self.ring.vars or ring.field != self.ring.field:
            raise RingMismatchError(f"cannot move {self.ring} element into {ring}")
        return Polynomial._from_clean_dict(ring, dict(self._dict))

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, ModP)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        d = dict(self._dict)
        for e, c in other._dict.items():
            s = d.get(e)
            if s is None:
                d[e] = c
            else:
                s = s + c
                if s:
                    d[e] = s
                else:
                    del d[e]
        return Polynomial._from_clean_dict(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_clean_dict(self.ring, {e: -c for e, c in self._dict.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ModP)):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero()
            return Polynomial._from_clean_dict(self.ring, {e: v * c for e, v in self._dict.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        d: Dict[Exponent, object] = {}
        for e1, c1 in self._dict.items():
            for e2, c2 in other._dict.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = d.get(e)
                d[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._from_clean_dict(self.ring, {e: c for e, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, exp: Exponent, coeff) -> "Polynomial":
        return Polynomial._from_clean_dict(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): c * coeff for e, c in self._dict.items()},
        )

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._dict == other._dict
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.vars, frozenset(self._dict.items())))
        return self._hash

    # -- printing -----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.vars
        out = []
        for i, (e, c) in enumerate(self.terms):
            s = str(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = monomial_str(e, names)
            if mono == "1":
                body = s
            elif s == "1":
                body = mono
            else:
                body = f"{s}*{mono}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f * g


def leading_term(f: Polynomial) -> Tuple[Exponent, object]:
    return f.leading_term()
