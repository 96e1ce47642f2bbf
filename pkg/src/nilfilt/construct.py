"""Step-by-step construction of the cuspidal structures C_{2,n} and C_{3,n}.

Bundles are trivialized near the point, so every map of the construction is
a matrix over the field. Each step works on a fibre A/I·A (I the maximal
ideal of the reduced support), expressed in a basis of polynomial
representatives. Bases are computed by row reduction in the standard
monomials of I·A taken in descending order; a basis element is named by its
pivot monomial, and functionals are given as ``{pivot: [row values]}``.

Steps, with l running 2..n+1:

* l = 2:   p: I/I^2 -> E = L + K (rank 2), q = L-row of p.
* 3..n-1:  q: I_(l-1)/I·I_(l-1) -> L^(l-1) retracts the line of I^(l-1);
           p = q∘ι where ι: J_(l-1)/I·J_(l-1) -> I_(l-1)/I·I_(l-1).
           For C3, p gains a K^2 row at l = 3 and q a K row at l = n-1.
* l = n:   p kills ker ι and is nonzero on the line of I^(n-1); I_n = J_n.
* l = n+1: φ on I_n/I·I_n is nonzero on the lines of I^n and of the K^m
           piece; J_(n+1) = ker φ.

J_l and I_l are I times the previous ideal plus lifts of the kernel.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .core import QQ, Field, Polynomial, monomial_str
from .filtration import (
    Check,
    CuspidalExpectation,
    FiltrationReport,
    LocalModel,
    cuspidal_model,
    fingerprint,
    verify,
)
from .ideal import Ideal, contains, equals, power, product, quotient_dim, standard_monomials
from .linalg import complement, nullspace, prescribe, rank, rref


class ConstructionError(ValueError):
    """A functional violates the constraints of its step."""

    def __init__(self, step: str, message: str):
        self.step = step
        self.message = message
        super().__init__(f"{step}: {message}")


# --------------------------------------------------------------------------
# fibres A/I·A
# --------------------------------------------------------------------------

class Fiber:
    """The k-space A/I·A with a row-reduced basis of representatives."""

    def __init__(self, A: Ideal, I: Ideal):
        self.A = A
        self.B = product(I, A)
        ring = A.ring
        self.ring = ring
        self.field = ring.field
        self.columns = standard_monomials(self.B)[::-1]
        self._col = {e: i for i, e in enumerate(self.columns)}
        rows = [v for v in (self._vec(g) for g in A.gb) if any(v)]
        self.rows, self.pivots = rref(rows)
        self.keys = [monomial_str(self.columns[c], ring.vars) for c in self.pivots]
        self.lifts = [self._poly(r) for r in self.rows]

    def __len__(self):
        return len(self.rows)

    def _vec(self, f: Polynomial) -> list:
        v = [self.field.zero] * len(self.columns)
        for e, c in self.B.reduce(f).terms:
            v[self._col[e]] = c
        return v

    def _poly(self, v: Sequence) -> Polynomial:
        return Polynomial(self.ring, {self.columns[i]: c for i, c in enumerate(v) if c})

    def coords(self, f: Polynomial) -> list:
        """Coordinates of the class of ``f`` (which must lie in A)."""
        v = self._vec(f)
        out = []
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            out.append(c)
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        if any(v):
            raise ValueError(f"{f} does not lie in {self.A}")
        return out

    def image(self, C: Ideal) -> list:
        """Row-reduced basis of (C + I·A)/I·A for C inside A."""
        gens = C.gb if len(C.gb) <= len(C.gens) else C.gens
        return rref([self.coords(g) for g in gens])[0]

    def lift(self, vec: Sequence) -> Polynomial:
        out = self.ring.zero()
        for c, g in zip(vec, self.lifts):
            if c:
                out = out + g * c
        return out

    def kernel_ideal(self, M: Sequence[Sequence]) -> Ideal:
        ker = nullspace(M, len(self), self.field.one)
        return Ideal(self.ring, list(self.B.gb) + [self.lift(v) for v in ker])


def _apply(row: Sequence, v: Sequence, zero):
    return sum((a * b for a, b in zip(row, v)), zero)


# --------------------------------------------------------------------------
# functionals
# --------------------------------------------------------------------------

def _scalar(value, fld: Field):
    if isinstance(value, str):
        value = Fraction(value)
    return fld(value)


@dataclass
class FunctionalSpec:
    """Row values per basis class, keyed by the class's pivot monomial."""

    values: Dict[str, object]

    @classmethod
    def coerce(cls, obj) -> Optional["FunctionalSpec"]:
        if obj is None or isinstance(obj, FunctionalSpec):
            return obj
        if isinstance(obj, Mapping):
            return cls(dict(obj))
        raise TypeError(f"functional must be a mapping from basis keys to values, got {type(obj).__name__}")

    def matrix(self, keys: Sequence[str], width: int, fld: Field, where: str) -> List[list]:
        unknown = set(self.values) - set(keys)
        if unknown:
            raise ConstructionError(where, f"unknown basis keys {sorted(unknown)} (basis: {', '.join(keys)})")
        cols = []
        for k in keys:
            v = self.values.get(k, [0] * width)
            if not isinstance(v, (list, tuple)):
                v = [v]
            if len(v) != width:
                raise ConstructionError(where, f"key {k!r} has {len(v)} values, the target has rank {width}")
            cols.append([_scalar(x, fld) for x in v])
        return [[col[i] for col in cols] for i in range(width)]

    @staticmethod
    def from_matrix(keys: Sequence[str], M: Sequence[Sequence]) -> Dict[str, List[str]]:
        return {k: [str(M[i][j]) for i in range(len(M))] for j, k in enumerate(keys) if any(M[i][j] for i in range(len(M)))}


@dataclass
class StepRecord:
    step: int
    label: str
    kind: str
    maps: Dict[str, Dict[str, List[str]]]
    bases: Dict[str, List[str]]
    J: Ideal
    I: Ideal
    checks: List[Check] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "label": self.label,
            "kind": self.kind,
            "bases": self.bases,
            "maps": self.maps,
            "J": self.J.generator_strings(),
            "I": self.I.generator_strings(),
            "checks": [c.to_json() for c in self.checks],
        }


@dataclass
class ConstructionState:
    mtype: int
    n: int
    r: int
    expectation: CuspidalExpectation
    model: LocalModel
    step: int = 2
    J: List[Ideal] = field(default_factory=list)
    I: List[Ideal] = field(default_factory=list)
    log: List[StepRecord] = field(default_factory=list)
    final: Optional[Ideal] = None

    @property
    def ring(self):
        return self.model.ring

    @property
    def maximal(self) -> Ideal:
        return self.model.I

    def label(self, l: int) -> str:
        if l == self.n + 1:
            return "Step n+1"
        if l == self.n:
            return "Step n"
        return f"Step {l}"

    def table(self, chain: str, l: int) -> Optional[Ideal]:
        for row in self.expectation.rows:
            if row.chain == chain and row.index == l:
                return row.expected
        return None


# value choosers: default (fixed units / zeros) or random admissible scalars
Chooser = Callable[[str], object]


def _default_chooser(kind: str):
    return {"unit": 1, "neg": -1, "free": 0}[kind]


def _random_chooser(rng: random.Random) -> Chooser:
    def choose(kind: str):
        if kind in ("unit", "neg"):
            return rng.choice([1, -1, 2, -2, 3])
        return rng.choice([-1, 0, 0, 1, 2])

    return choose


def _build_row(dim: int, fixed: Sequence[Tuple[list, object]], free: Callable[[], object], fld: Field, where: str):
    vecs = [list(v) for v, _ in fixed]
    if rank(vecs) < len(vecs):
        raise ConstructionError(where, "distinguished classes are linearly dependent")
    comp = complement(vecs, dim, fld.one)
    vals = [[fld(val)] for _, val in fixed] + [[fld(free())] for _ in comp]
    return prescribe(vecs + comp, vals, fld.one)[0]


def _single_line(space: list, where: str, what: str) -> list:
    if len(space) != 1:
        raise ConstructionError(where, f"image of {what} has dimension {len(space)}, expected a line")
    return space[0]


def _maps_json(**mats) -> Dict[str, Dict[str, List[str]]]:
    return {name: FunctionalSpec.from_matrix(keys, M) for name, (keys, M) in mats.items()}


# --------------------------------------------------------------------------
# steps
# --------------------------------------------------------------------------

def construct_init(mtype: int, n: int, r: int, fld: Field = QQ) -> ConstructionState:
    """Ring k[x, y, z..], I = (x, y, z..); Step 1 (the line bundles) is free locally."""
    model, expectation = cuspidal_model(mtype, n, r, fld)
    unit = Ideal.unit(model.ring)
    return ConstructionState(mtype, n, r, expectation, model, J=[unit, model.I], I=[unit, model.I])


def _accept(state: ConstructionState, l: int, Jl: Ideal, Il: Ideal, kind: str, maps, bases, defaults: bool):
    where = state.label(l)
    exp = state.expectation
    Jp, Ip = state.J[l - 1], state.I[l - 1]
    if not contains(Jp, Jl):
        raise ConstructionError(where, "J_l is not contained in J_(l-1)")
    dJ = quotient_dim(Jl) - quotient_dim(Jp)
    if dJ != exp.rankA[l - 1]:
        raise ConstructionError(where, f"dim J_(l-1)/J_l = {dJ}, expected {exp.rankA[l - 1]}")
    if not contains(Ip, Il):
        raise ConstructionError(where, "I_l is not contained in I_(l-1)")
    dI = quotient_dim(Il) - quotient_dim(Ip)
    if dI != exp.rankM[l - 1]:
        raise ConstructionError(where, f"dim I_(l-1)/I_l = {dI}, expected {exp.rankM[l - 1]}")
    if not contains(Il, Jl):
        raise ConstructionError(where, "J_l is not contained in I_l")
    checks = [
        Check(f"{where} dim J_(l-1)/J_l = {dJ}", True, "dimension ledger"),
        Check(f"{where} dim I_(l-1)/I_l = {dI}", True, "dimension ledger"),
    ]
    for chain, got in (("y", Jl), ("x", Il)):
        want = state.table(chain, l)
        if want is not None:
            name = "J" if chain == "y" else "I"
            checks.append(Check(f"{where} {name}_{l} normal form", equals(got, want), f"{got} vs {want}", not defaults))
    state.J.append(Jl)
    state.I.append(Il)
    state.log.append(StepRecord(l, where, kind, maps, bases, Jl, Il, checks))
    state.step = l + 1


def _retry(build: Callable[[], None], randomized: bool, tries: int = 200):
    if not randomized:
        return build()
    last = None
    for _ in range(tries):
        try:
            return build()
        except ConstructionError as exc:
            last = exc
    raise last


def step2(state: ConstructionState, p=None, q=None, rng: Optional[random.Random] = None) -> ConstructionState:
    """p2: I/I^2 -> E onto rows (L, K); q2 = L-row of p2."""
    where = state.label(2)
    if state.step != 2:
        raise ConstructionError(where, f"state is at step {state.step}")
    fld = state.ring.field
    V = Fiber(state.maximal, state.maximal)
    p, q = FunctionalSpec.coerce(p), FunctionalSpec.coerce(q)

    def build():
        if p is not None:
            P = p.matrix(V.keys, 2, fld, where)
        elif rng is not None:
            P = [[fld(rng.choice([-2, -1, 0, 1, 2])) for _ in V.keys] for _ in range(2)]
        else:
            P = FunctionalSpec({"x": [1, 0], "y": [0, 1]}).matrix(V.keys, 2, fld, where)
        if rank(P) != 2:
            raise ConstructionError(where, "p2 is not surjective onto E")
        Q = [P[0]]
        if q is not None:
            Q = q.matrix(V.keys, 1, fld, where)
            if Q[0] != P[0]:
                raise ConstructionError(where, "q2 does not commute with p2 and the projection E -> L")
        return P, Q

    P, Q = _retry(build, rng is not None and p is None)
    J2, I2 = V.kernel_ideal(P), V.kernel_ideal(Q)
    maps = _maps_json(p=(V.keys, P), q=(V.keys, Q))
    _accept(state, 2, J2, I2, "p2/q2", maps, {"p": V.keys, "q": V.keys}, p is None and q is None and rng is None)
    return state


def _iota(V: Fiber, W: Fiber) -> List[list]:
    # columns are images of V's basis; returned as a dim W x dim V matrix
    cols = [W.coords(v) for v in V.lifts]
    return [[col[i] for col in cols] for i in range(len(W))]


def _compose(row: Sequence, iota: Sequence[Sequence], zero) -> list:
    return [sum((row[i] * iota[i][j] for i in range(len(row))), zero) for j in range(len(iota[0]) if iota else 0)]


def step_middle(state: ConstructionState, p=None, q=None, rng: Optional[random.Random] = None) -> ConstructionState:
    """Steps 3..n-1: q retracts the line of I^(l-1); p = q∘ι (plus the C3 extra rows)."""
    l, n = state.step, state.n
    where = state.label(l)
    if not 3 <= l <= n - 1:
        raise ConstructionError(where, "not a middle step")
    fld = state.ring.field
    zero = fld.zero
    p_rank = 2 if state.mtype == 3 and l == 3 else 1
    q_rank = 2 if state.mtype == 3 and l == n - 1 else 1
    V = Fiber(state.J[l - 1], state.maximal)
    W = Fiber(state.I[l - 1], state.maximal)
    iota = _iota(V, W)
    image_iota = rref([list(col) for col in zip(*iota)])[0] if iota else []
    Ipow = power(state.maximal, l - 1)
    lineW = _single_line(W.image(Ipow), where, f"I^{l - 1} in I_{l - 1}/I·I_{l - 1}")
    p, q = FunctionalSpec.coerce(p), FunctionalSpec.coerce(q)
    randomized = rng is not None
    choose = _random_chooser(rng) if randomized else _default_chooser
    if p_rank == 2:
        I2 = state.I[2]
        lineK = _single_line(V.image(product(I2, I2)), where, "I_2^2 in J_2/I·J_2")
        sq_image = V.image(power(state.maximal, 2))

    def build():
        if q is not None:
            Q = q.matrix(W.keys, q_rank, fld, where)
        else:
            Q = [_build_row(len(W), [(lineW, choose("unit"))], lambda: choose("free"), fld, where)]
            if q_rank == 2:
                fixed = [(v, 0) for v in image_iota]
                comp = complement(image_iota, len(W), fld.one)
                if not comp:
                    raise ConstructionError(where, "ι is onto; q cannot gain a K row")
                fixed.append((comp[0], choose("unit")))
                Q.append(_build_row(len(W), fixed, lambda: choose("free"), fld, where))
        if not _apply(Q[0], lineW, zero):
            raise ConstructionError(where, f"q_{l} is not a retract: it vanishes on the image of I^{l - 1}")
        if q_rank == 2:
            if any(_apply(Q[1], v, zero) for v in image_iota):
                raise ConstructionError(where, f"the K row of q_{l} does not vanish on the image of J_{l - 1}")
            if rank(Q) != 2:
                raise ConstructionError(where, f"q_{l} is not surjective onto F'")
        P0 = _compose(Q[0], iota, zero)
        if p is not None:
            P = p.matrix(V.keys, p_rank, fld, where)
            if P[0] != P0:
                raise ConstructionError(where, f"p_{l} does not commute with q_{l} and the inclusion J_{l - 1} -> I_{l - 1}")
        elif p_rank == 2:
            P = [P0, _build_row(len(V), [(lineK, choose("unit"))], lambda: choose("free"), fld, where)]
        else:
            P = [P0]
        if p_rank == 2:
            if not _apply(P[1], lineK, zero):
                raise ConstructionError(where, f"the K^2 row of p_{l} vanishes on the image of I_2^2")
            restricted = [[_apply(row, v, zero) for v in sq_image] for row in P]
            if rank(restricted) != 2:
                raise ConstructionError(where, f"p_{l} has rank < 2 on the image of I^2")
        elif not any(P[0]):
            raise ConstructionError(where, f"p_{l} is zero")
        return P, Q

    P, Q = _retry(build, randomized and p is None and q is None)
    Jl, Il = V.kernel_ideal(P), W.kernel_ideal(Q)
    maps = _maps_json(p=(V.keys, P), q=(W.keys, Q))
    _accept(state, l, Jl, Il, f"p{l}/q{l}", maps, {"p": V.keys, "q": W.keys}, p is None and q is None and not randomized)
    return state


def _step_n(state: ConstructionState, p=None, rng: Optional[random.Random] = None):
    l = n = state.n
    where = state.label(l)
    fld = state.ring.field
    zero = fld.zero
    V = Fiber(state.J[n - 1], state.maximal)
    W = Fiber(state.I[n - 1], state.maximal)
    iota = _iota(V, W)
    ker_iota = nullspace(iota, len(V), fld.one)
    # for n >= 4 this image is the line L^(n-1); for C_{2,3} it is all of I^2/I·J_2
    image = V.image(power(state.maximal, n - 1))
    outside = [v for v in image if rank(ker_iota + [v]) > len(ker_iota)]
    if not outside:
        raise ConstructionError(where, f"the image of I^{n - 1} lies in the kernel of ι")
    line = outside[0]
    p = FunctionalSpec.coerce(p)
    randomized = rng is not None
    choose = _random_chooser(rng) if randomized else _default_chooser

    def build():
        if p is not None:
            P = p.matrix(V.keys, 1, fld, where)
        else:
            fixed = [(line, choose("unit"))] + [(v, 0) for v in ker_iota]
            P = [_build_row(len(V), fixed, lambda: choose("free"), fld, where)]
        if any(_apply(P[0], v, zero) for v in ker_iota):
            raise ConstructionError(where, f"p_{n} does not kill the kernel of J_(n-1)/I·J_(n-1) -> I_(n-1)/I·I_(n-1)")
        if not any(_apply(P[0], v, zero) for v in image):
            raise ConstructionError(where, f"p_{n} vanishes on the image of I^{n - 1}")
        return P

    P = _retry(build, randomized and p is None)
    Jn = V.kernel_ideal(P)
    _accept(state, n, Jn, Jn, f"p{n}", _maps_json(p=(V.keys, P)), {"p": V.keys}, p is None and not randomized)


def _step_last(state: ConstructionState, phi=None, rng: Optional[random.Random] = None) -> Ideal:
    n, m = state.n, state.mtype
    l = n + 1
    where = state.label(l)
    fld = state.ring.field
    zero = fld.zero
    W = Fiber(state.I[n], state.maximal)
    lineL = _single_line(W.image(power(state.maximal, n)), where, f"I^{n} in I_n/I·I_n")
    I2 = state.I[2]
    if m == 2:
        Kpiece, what = product(I2, state.I[n - 1]), "I_2·I_(n-1)"
    else:
        Kpiece, what = product(product(I2, I2), state.I[n - 2]), "I_2^2·I_(n-2)"
    lineK = _single_line(W.image(Kpiece), where, f"{what} in I_n/I·I_n")
    if rank([lineL, lineK]) != 2:
        raise ConstructionError(where, f"the L^n and K^{m} lines coincide")
    mixed = complement([lineL, lineK], len(W), fld.one)
    phi = FunctionalSpec.coerce(phi)
    randomized = rng is not None
    choose = _random_chooser(rng) if randomized else _default_chooser

    def build():
        if phi is not None:
            F = phi.matrix(W.keys, 1, fld, where)
        else:
            fixed = [(lineL, choose("unit")), (lineK, choose("neg"))]
            F = [_build_row(len(W), fixed, lambda: choose("free"), fld, where)]
        if not _apply(F[0], lineL, zero):
            raise ConstructionError(where, f"φ vanishes on the L^{n} line (not a retract of the L^n inclusion)")
        if not _apply(F[0], lineK, zero):
            raise ConstructionError(where, f"φ vanishes on the K^{m} line (not a retract of the K^{m} inclusion)")
        return F

    F = _retry(build, randomized and phi is None)
    final = W.kernel_ideal(F)
    defaults = phi is None and not randomized
    _accept(state, l, final, final, "φ", _maps_json(phi=(W.keys, F)), {"phi": W.keys}, defaults)
    rec = state.log[-1]
    # with φ zero on the mixed classes over the monomial chain, the output is (y^m + c x^n, xy, z)
    table_In = state.table("x", n)
    if table_In is not None and equals(state.I[n], table_In) and not any(_apply(F[0], v, zero) for v in mixed):
        a, b = _apply(F[0], lineL, zero), _apply(F[0], lineK, zero)
        c = -b / a
        ring = state.ring
        x, y = ring.gen("x"), ring.gen("y")
        target = Ideal(ring, [y ** m + x ** n * c, x * y] + [ring.gen(z) for z in ring.vars[2:]])
        ok = equals(final, target)
        rec.checks.append(Check(f"{where} normal form (y^{m} + c·x^{n}, xy, z), c = {c}", ok, str(final)))
        if not ok:
            raise ConstructionError(where, f"result {final} is not (y^{m} + {c}·x^{n}, xy, z)")
    state.final = final
    return final


def step_final(state: ConstructionState, p=None, phi=None, rng: Optional[random.Random] = None) -> Ideal:
    """Steps n and n+1; returns J_(n+1)."""
    if state.step == state.n:
        _step_n(state, p, rng)
    if state.step != state.n + 1:
        raise ConstructionError(state.label(state.step), "earlier steps are still pending")
    return _step_last(state, phi, rng)


# --------------------------------------------------------------------------
# end to end
# --------------------------------------------------------------------------

def _step_spec(functionals: Optional[Mapping], l: int, n: int) -> dict:
    # steps are keyed by number; "n" and "n+1" are accepted as aliases
    if not functionals:
        return {}
    aliases = {n: "n", n + 1: "n+1"}
    for key in (l, str(l), aliases.get(l)):
        if key is not None and key in functionals:
            return dict(functionals[key] or {})
    return {}


def _check_step_keys(functionals: Optional[Mapping], n: int):
    if not functionals:
        return
    valid = {str(l) for l in range(2, n + 2)} | {"n", "n+1"}
    bad = [k for k in functionals if str(k) not in valid]
    if bad:
        raise ConstructionError("functionals", f"unknown step keys {bad}; steps run 2..{n + 1}")


def run_steps(
    mtype: int,
    n: int,
    r: int,
    functionals: Optional[Mapping] = None,
    seed: Optional[int] = None,
    fld: Field = QQ,
) -> ConstructionState:
    """Run all steps. ``seed`` draws random admissible scalars where none are given."""
    rng = random.Random(seed) if seed is not None else None
    _check_step_keys(functionals, n)
    state = construct_init(mtype, n, r, fld)
    s = _step_spec(functionals, 2, n)
    step2(state, s.get("p"), s.get("q"), rng)
    for l in range(3, n):
        s = _step_spec(functionals, l, n)
        step_middle(state, s.get("p"), s.get("q"), rng)
    s_n, s_last = _step_spec(functionals, n, n), _step_spec(functionals, n + 1, n)
    step_final(state, s_n.get("p"), s_last.get("phi", s_last.get("p")), rng)
    return state


def construct_run(
    mtype: int,
    n: int,
    r: int,
    functionals: Optional[Mapping] = None,
    seed: Optional[int] = None,
    fld: Field = QQ,
) -> Tuple[Ideal, FiltrationReport]:
    """Construct J_(n+1) and verify it; defaults reproduce the model ideal exactly."""
    state = run_steps(mtype, n, r, functionals, seed, fld)
    final = state.final
    model = LocalModel(state.ring, state.maximal, final).validate()
    defaults = not functionals and seed is None
    expectation = state.expectation if defaults else None
    rep = verify(model, expectation, f"C{mtype}")
    checks = []
    for rec in state.log:
        checks.extend(rec.checks)
    if defaults:
        checks.append(Check("default output equals the model ideal", equals(final, state.model.J), str(final)))
    for l in range(2, min(n, rep.m) + 1):
        checks.append(Check(f"constructed J_{l} = J:(J:I^{l})", equals(state.J[l], rep.ys[l]), str(state.J[l])))
        checks.append(Check(f"constructed I_{l} = J:I^{rep.m + 1 - l}", equals(state.I[l], rep.xs[l]), str(state.I[l])))
    target_fp, target_label = fingerprint(state.model)
    checks.append(Check(f"fingerprint equals {target_label}", rep.fingerprint == target_fp, f"got {rep.label}"))
    rep.checks = checks + rep.checks
    rep.construction = state
    return final, rep


def construction_json(state: ConstructionState) -> dict:
    return {
        "type": state.mtype,
        "n": state.n,
        "r": state.r,
        "steps": [rec.to_json() for rec in state.log],
        "final": state.final.generator_strings() if state.final is not None else None,
    }


def functionals_from_log(state: ConstructionState) -> Dict[str, dict]:
    """The functionals actually used, in the input format of ``construct_run``."""
    return {str(rec.step): rec.maps for rec in state.log}
