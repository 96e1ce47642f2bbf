"""The three canonical filtrations of a multiple structure and their checks.

A local model is a polynomial ring ``k[x, y, z1..zr]`` with the ideal ``I``
of the reduced support (generated by variables) and the ideal ``J`` of the
structure, supported at the origin so that ``R/J`` is finite dimensional.
Ranks of graded pieces are then plain k-dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .core import QQ, Field, Polynomial, Ring
from .ideal import (
    ContainmentError,
    Ideal,
    IterationCapError,
    colon,
    contains,
    equals,
    ideal_sum,
    intersect,
    is_zero_dimensional,
    max_iter,
    power,
    product,
    quotient_dim,
    saturate,
    subquotient_dim,
)


class ModelError(ValueError):
    """The pair (I, J) is not a valid local model."""


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    informational: bool = False

    def to_json(self) -> dict:
        return {"name": self.name, "pass": bool(self.passed), "detail": self.detail}


@dataclass
class LocalModel:
    ring: Ring
    I: Ideal
    J: Ideal

    def validate(self) -> "LocalModel":
        for g in self.I.gb:
            if not (g.is_monomial() and g.degree() == 1):
                raise ModelError(f"I = {self.I} is not generated by variables")
        if self.I.is_zero():
            raise ModelError("I is the zero ideal")
        if not contains(self.I, self.J):
            raise ModelError(f"J = {self.J} is not contained in I = {self.I}")
        if not is_zero_dimensional(self.J):
            raise ModelError(f"R/J is not finite dimensional for J = {self.J}")
        if equals(self.I, self.J):
            raise ModelError("J equals I: the structure is reduced, there is no multiple structure")
        return self

    @classmethod
    def from_strings(cls, variables: Sequence[str], I: Sequence[str], J: Sequence[str], field: Field = QQ):
        ring = Ring(tuple(variables), field)
        return cls(ring, Ideal(ring, [ring(s) for s in I]), Ideal(ring, [ring(s) for s in J])).validate()


@dataclass(frozen=True)
class Fingerprint:
    m: int
    rankA: Tuple[int, ...]
    rankM: Tuple[int, ...]
    top_equal: bool
    duality: bool

    def to_json(self, label: str) -> dict:
        return {"label": label, "m": self.m, "rankA": list(self.rankA), "rankM": list(self.rankM)}


@dataclass
class TableRow:
    label: str
    chain: str  # "x" (I_l = J:I^k) or "y" (J_l = J:(J:I^k))
    index: int
    expected: Ideal


@dataclass
class CuspidalExpectation:
    mtype: int
    n: int
    r: int
    rows: List[TableRow]
    rankA: List[int]
    rankM: List[int]
    multiplicity: int

    def override(self, entries: Dict[str, Sequence[str]]) -> "CuspidalExpectation":
        """Replace expected table entries by label, e.g. ``{"J:I^2": ["x", "y"]}``."""
        rows = []
        known = {row.label for row in self.rows}
        unknown = set(entries) - known
        if unknown:
            raise KeyError(f"unknown table rows: {', '.join(sorted(unknown))}")
        for row in self.rows:
            if row.label in entries:
                ring = row.expected.ring
                row = TableRow(row.label, row.chain, row.index, Ideal(ring, [ring(g) for g in entries[row.label]]))
            rows.append(row)
        return CuspidalExpectation(self.mtype, self.n, self.r, rows, self.rankA, self.rankM, self.multiplicity)


@dataclass
class FiltrationReport:
    model: LocalModel
    m: int
    bf: List[Ideal]
    xs: List[Ideal]
    ys: List[Ideal]
    rankB: List[int]
    rankA: List[int]
    rankM: List[int]
    checks: List[Check] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    table: List[dict] = field(default_factory=list)
    fingerprint: Optional[Fingerprint] = None
    label: str = ""
    construction: Optional[object] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]


# --------------------------------------------------------------------------
# filtrations
# --------------------------------------------------------------------------

def _next_bf(K: Ideal, model: LocalModel) -> Ideal:
    # I*(I^l + J) + J = I^(l+1) + J; multiplying the small GB keeps Buchberger cheap
    gens = [g * v for g in K.gb for v in model.I.gb] + list(model.J.gb)
    return Ideal(model.ring, gens)


def compute_m(model: LocalModel, cap: Optional[int] = None) -> int:
    """The m with I^m not inside J but I^(m+1) inside J."""
    cap = max_iter() if cap is None else cap
    K = ideal_sum(model.I, model.J)
    for k in range(1, cap + 2):
        if equals(K, model.J):
            if k == 1:
                raise ModelError("I is contained in J: no multiple structure")
            return k - 1
        K = _next_bf(K, model)
    raise IterationCapError(f"no power I^k with k <= {cap + 1} lies in J")


def bf_filtration(model: LocalModel, m: int, W: Optional[Ideal] = None) -> List[Ideal]:
    """I^(l) = I^l + J for l = 0..m+1, optionally saturated with respect to W."""
    out = [Ideal.unit(model.ring)]
    K = ideal_sum(model.I, model.J)
    for _ in range(1, m + 2):
        out.append(saturate(K, W) if W is not None else K)
        K = _next_bf(K, model)
    return out


def _colon_powers(model: LocalModel, m: int) -> List[Ideal]:
    # J : I^k for k = 0..m+1, using (J : I^(k-1)) : I = J : I^k
    chain = [model.J]
    for _ in range(m + 1):
        chain.append(colon(chain[-1], model.I))
    return chain


def x_filtration(model: LocalModel, m: int) -> List[Ideal]:
    """I_l = J : I^(m+1-l) for l = 0..m+1."""
    chain = _colon_powers(model, m)
    return [chain[m + 1 - l] for l in range(m + 2)]


def y_filtration(model: LocalModel, m: int, colon_chain: Optional[List[Ideal]] = None) -> List[Ideal]:
    """J_l = J : (J : I^l) for l = 0..m+1."""
    chain = colon_chain if colon_chain is not None else _colon_powers(model, m)
    return [colon(model.J, chain[l]) for l in range(m + 2)]


def _profile(chain: Sequence[Ideal], m: int) -> List[int]:
    return [subquotient_dim(chain[l], chain[l + 1]) for l in range(m + 1)]


def filtrations(model: LocalModel, W: Optional[Ideal] = None) -> FiltrationReport:
    """Compute m, the three chains and the rank profiles (no checks yet)."""
    m = compute_m(model)
    chain = _colon_powers(model, m)
    xs = [chain[m + 1 - l] for l in range(m + 2)]
    ys = y_filtration(model, m, chain)
    bf = bf_filtration(model, m, W)
    return FiltrationReport(
        model=model,
        m=m,
        bf=bf,
        xs=xs,
        ys=ys,
        rankB=_profile(bf, m),
        rankA=_profile(ys, m),
        rankM=_profile(xs, m),
    )


def rank_profiles(model: LocalModel) -> Tuple[List[int], List[int], List[int]]:
    rep = filtrations(model)
    return rep.rankB, rep.rankA, rep.rankM


ReportLike = Union[LocalModel, FiltrationReport]


def _report(data: ReportLike) -> FiltrationReport:
    return data if isinstance(data, FiltrationReport) else filtrations(data)


# --------------------------------------------------------------------------
# checks
# --------------------------------------------------------------------------

def duality_check(data: ReportLike, informational: bool = False) -> Check:
    """Rank duality rank A_l = rank M_(m-l), rank-one top pieces, A_m = M_m."""
    rep = _report(data)
    m = rep.m
    mirrored = all(rep.rankA[l] == rep.rankM[m - l] for l in range(m + 1))
    top = rep.rankA[m] == 1 and rep.rankM[m] == 1
    same = equals(rep.ys[m], rep.xs[m])
    ok = mirrored and top and same
    detail = (
        f"rankA={rep.rankA} reversed rankM={rep.rankM[::-1]}; "
        f"top ranks {rep.rankA[m]},{rep.rankM[m]}; J_m {'=' if same else '!='} I_m"
    )
    return Check("duality", ok, detail, informational)


def multiplication_nonzero(data: ReportLike, l1: int, l2: int) -> Tuple[bool, bool]:
    rep = _report(data)
    if l1 < 0 or l2 < 0 or l1 + l2 > rep.m:
        raise IndexError(f"need l1, l2 >= 0 and l1 + l2 <= m = {rep.m}, got ({l1}, {l2})")
    k = l1 + l2 + 1
    aa = not contains(rep.ys[k], product(rep.ys[l1], rep.ys[l2]))
    am = not contains(rep.xs[k], product(rep.ys[l1], rep.xs[l2]))
    return aa, am


def multiplication_checks(data: ReportLike, informational: bool = False) -> List[Check]:
    rep = _report(data)
    bad_aa, bad_am = [], []
    total = 0
    for l1 in range(rep.m + 1):
        for l2 in range(rep.m + 1 - l1):
            aa, am = multiplication_nonzero(rep, l1, l2)
            total += 1
            if not aa:
                bad_aa.append((l1, l2))
            if not am:
                bad_am.append((l1, l2))

    def record(name, bad):
        detail = f"{total} pairs nonzero" if not bad else f"zero on {bad}"
        return Check(name, not bad, detail, informational)

    return [record("multiplication A·A nonzero", bad_aa), record("multiplication A·M nonzero", bad_am)]


def _dim_check(name: str, A: Ideal, B: Ideal, expected: int) -> Check:
    try:
        d = subquotient_dim(A, B)
    except ContainmentError:
        return Check(name, False, "containment fails")
    return Check(name, d == expected, f"dim = {d}, expected {expected}")


def exactness_suite(data: ReportLike, type_tag: str) -> List[Check]:
    """Dimension counts behind the exact sequences of the cuspidal analysis."""
    rep = _report(data)
    tag = str(type_tag).upper().lstrip("C")
    I = rep.model.I
    xs, ys, m = rep.xs, rep.ys, rep.m
    checks: List[Check] = []
    if m < 3:
        return [Check(f"exactness C{tag}", False, f"needs m >= 3, got m = {m}")]
    I2 = power(I, 2)
    IJ2 = product(I, ys[2])
    II2 = product(I, xs[2])
    meet = intersect(I2, ys[3])
    K2 = product(xs[2], xs[2])
    if tag == "2":
        checks.append(Check("C2(a) IJ2 ⊆ I^2∩J3", contains(meet, IJ2), "containment"))
        checks.append(_dim_check("C2(b) dim (I^2∩J3)/IJ2 = 1 [L⊗K]", meet, IJ2, 1))
        checks.append(_dim_check("C2(c) dim II2/IJ2 = 2 [E⊗K]", II2, IJ2, 2))
        checks.append(_dim_check("C2(d) dim II2/(I^2∩J3) = 1 [K^2]", II2, meet, 1))
        top = product(xs[2], xs[m - 1])
        low = ideal_sum(product(xs[2], ys[m - 1]), product(xs[m - 1], ys[2]))
        checks.append(_dim_check("C2(e) dim I2·I_(m-1)/(I2·J_(m-1)+I_(m-1)·J2) = 1 [K^2]", top, low, 1))
        checks.append(_dim_check("C2 K^2 = I2^2/I2J2 rank 1", K2, product(xs[2], ys[2]), 1))
        checks.append(_dim_check("C2 K = I2/J2 rank 1", xs[2], ys[2], 1))
    elif tag == "3":
        checks.append(_dim_check("C3(f) dim I^2/IJ2 = 3 [S^2E]", I2, IJ2, 3))
        I3J2 = intersect(xs[3], ys[2])
        checks.append(_dim_check("C3(g) dim J2/J3 = 2 [F]", ys[2], ys[3], 2))
        checks.append(_dim_check("C3(g) dim (I3∩J2)/J3 = 1 [K^2]", I3J2, ys[3], 1))
        checks.append(_dim_check("C3(g) dim J2/(I3∩J2) = 1 [L^2]", ys[2], I3J2, 1))
        checks.append(_dim_check("C3(g) dim I2^2/I2J2 = 1 [K^2]", K2, product(xs[2], ys[2]), 1))
        checks.append(_dim_check("C3(g) dim II2/(I^2∩J3) = 1 [K^2]", II2, meet, 1))
        checks.append(_dim_check("C3(g) dim (I^2∩J3)/IJ2 = 1 [L⊗K]", meet, IJ2, 1))
        sub = ideal_sum(ys[m - 2], xs[m - 1])
        checks.append(_dim_check("C3(h) dim I_(m-2)/I_(m-1) = 2 [F']", xs[m - 2], xs[m - 1], 2))
        checks.append(_dim_check("C3(h) dim (J_(m-2)+I_(m-1))/I_(m-1) = 1 [L^(n-2)]", sub, xs[m - 1], 1))
        checks.append(_dim_check("C3(h) dim I_(m-2)/(J_(m-2)+I_(m-1)) = 1 [K]", xs[m - 2], sub, 1))
        sub = ideal_sum(ys[m - 1], xs[m])
        checks.append(_dim_check("C3(i) dim I_(m-1)/I_m = 2 [E']", xs[m - 1], xs[m], 2))
        checks.append(_dim_check("C3(i) dim (J_(m-1)+I_m)/I_m = 1 [L^(n-1)]", sub, xs[m], 1))
        checks.append(_dim_check("C3(i) dim I_(m-1)/(J_(m-1)+I_m) = 1 [K^2]", xs[m - 1], sub, 1))
    else:
        raise ValueError(f"type tag must be C2 or C3, got {type_tag!r}")
    return checks


def _relation(A: Ideal, B: Ideal) -> str:
    # relation between the ideals A and B as subsets of R
    ab, ba = contains(B, A), contains(A, B)
    if ab and ba:
        return "="
    if ab:
        return "⊆"
    if ba:
        return "⊇"
    return "incomparable"


def containment_report(data: ReportLike) -> List[Check]:
    """I^l + J ⊆ J_l ⊆ I_l for 1 <= l <= m, with the observed relations."""
    rep = _report(data)
    out = []
    for l in range(1, rep.m + 1):
        b, y, x = rep.bf[l], rep.ys[l], rep.xs[l]
        ok1 = contains(y, b)
        ok2 = contains(x, y)
        detail = f"bf {_relation(b, y)} y, y {_relation(y, x)} x, bf {_relation(b, x)} x"
        out.append(Check(f"containment l={l}: I^l+J ⊆ J_l ⊆ I_l", ok1 and ok2, detail))
    return out


def structure_checks(rep: FiltrationReport) -> List[Check]:
    """Chain monotonicity, end points and dimension telescoping."""
    J = rep.model.J
    m = rep.m
    total = quotient_dim(J)
    out = []
    for name, chain in (("bf", rep.bf), ("x", rep.xs), ("y", rep.ys)):
        desc = all(contains(chain[l], chain[l + 1]) for l in range(m + 1))
        ends = chain[0].is_unit() and equals(chain[m + 1], J)
        out.append(Check(f"chain {name} descending, unit to J", desc and ends, f"length {len(chain)}"))
    out.append(Check("J_1 = I", equals(rep.ys[1], rep.model.I), str(rep.ys[1])))
    for name, prof in (("B", rep.rankB), ("A", rep.rankA), ("M", rep.rankM)):
        out.append(Check(f"telescoping sum rank{name} = dim R/J", sum(prof) == total, f"{sum(prof)} vs {total}"))
    out.append(Check("rankA[0] = rankM[0] = 1", rep.rankA[0] == 1 and rep.rankM[0] == 1, f"{rep.rankA[0]}, {rep.rankM[0]}"))
    return out


# --------------------------------------------------------------------------
# cuspidal models and their tables
# --------------------------------------------------------------------------

def cuspidal_ring(r: int, field: Field = QQ) -> Ring:
    zs = ("z",) if r == 1 else tuple(f"z{i}" for i in range(1, r + 1))
    return Ring(("x", "y") + zs, field)


def _check_range(mtype: int, n: int, r: int):
    if mtype not in (2, 3):
        raise ValueError(f"cuspidal type must be 2 or 3, got {mtype}")
    lo = 3 if mtype == 2 else 4
    if n < lo:
        raise ValueError(f"type C{mtype},n needs n >= {lo}, got n = {n}")
    if r < 0:
        raise ValueError("r must be nonnegative")


def cuspidal_model(mtype: int, n: int, r: int, field: Field = QQ) -> Tuple[LocalModel, CuspidalExpectation]:
    """J = (y^mtype + x^n, xy, z1..zr) together with its closed-form table."""
    _check_range(mtype, n, r)
    ring = cuspidal_ring(r, field)
    zs = list(ring.vars[2:])

    def ideal(*gens):
        return Ideal(ring, [ring(g) for g in list(gens) + zs])

    J = ideal(f"y^{mtype} + x^{n}", "x*y")
    I = ideal("x", "y")
    model = LocalModel(ring, I, J).validate()
    unit = Ideal.unit(ring)

    xs = {0: unit, n + 1: J}
    ys = {0: unit, 1: I, n + 1: J}
    if mtype == 2:
        for l in range(1, n):
            xs[l] = ideal(f"x^{l}", "y")
        xs[n] = ideal(f"x^{n}", "x*y", "y^2")
        for l in range(2, n + 1):
            ys[l] = ideal(f"x^{l}", "x*y", "y^2")
        rankA = [1, 2] + [1] * (n - 1)
        rankM = [1] * (n - 1) + [2, 1]
        mult = n + 2
    else:
        for l in range(1, n - 1):
            xs[l] = ideal(f"x^{l}", "y")
        xs[n - 1] = ideal(f"x^{n - 1}", "x*y", "y^2")
        xs[n] = ideal(f"x^{n}", "x*y", "y^3")
        ys[2] = ideal("x^2", "x*y", "y^2")
        for l in range(3, n + 1):
            ys[l] = ideal(f"x^{l}", "x*y", "y^3")
        rankA = [1, 2, 2] + [1] * (n - 2)
        rankM = [1] * (n - 2) + [2, 2, 1]
        mult = n + 3
    rows = []
    for k in range(n + 2):
        rows.append(TableRow(f"J:I^{k}", "x", n + 1 - k, xs[n + 1 - k]))
        rows.append(TableRow(f"J:(J:I^{k})", "y", k, ys[k]))
    return model, CuspidalExpectation(mtype, n, r, rows, rankA, rankM, mult)


J1_NOTE = "table prints J:(J:I^1) = (x,y,z) = J = J_1; the computed value is I, read as a typo for '= I'"


def verify(
    model: LocalModel,
    expectation: Optional[CuspidalExpectation] = None,
    type_tag: Optional[str] = None,
    W: Optional[Ideal] = None,
) -> FiltrationReport:
    """All filtrations and checks; table comparisons when an expectation is given."""
    rep = filtrations(model, W)
    checks = structure_checks(rep)
    if expectation is not None:
        n = expectation.n
        checks.append(Check("m = n", rep.m == n, f"m = {rep.m}, n = {n}"))
        dim = quotient_dim(model.J)
        checks.append(Check("multiplicity dim R/J", dim == expectation.multiplicity, f"{dim}, expected {expectation.multiplicity}"))
        for row in expectation.rows:
            chain = rep.xs if row.chain == "x" else rep.ys
            name = f"I_{row.index}" if row.chain == "x" else f"J_{row.index}"
            if row.index < len(chain):
                got = chain[row.index]
                ok = equals(got, row.expected)
                got_s = str(got)
            else:
                ok, got_s = False, "missing (m differs from n)"
            rep.table.append({"row": row.label, "name": name, "computed": got_s, "expected": str(row.expected), "pass": ok})
            checks.append(Check(f"table {row.label} = {name}", ok, f"computed {got_s}, expected {row.expected}"))
        checks.append(Check("rankA closed form", rep.rankA == expectation.rankA, f"{rep.rankA} vs {expectation.rankA}"))
        checks.append(Check("rankM closed form", rep.rankM == expectation.rankM, f"{rep.rankM} vs {expectation.rankM}"))
        rep.notes.append(J1_NOTE)
        if type_tag is None:
            type_tag = f"C{expectation.mtype}"
    informational = expectation is None and type_tag is None
    checks.append(duality_check(rep, informational))
    checks.extend(multiplication_checks(rep, informational))
    if type_tag is not None:
        checks.extend(exactness_suite(rep, type_tag))
    checks.extend(containment_report(rep))
    rep.checks = checks
    rep.fingerprint, rep.label = fingerprint(rep)
    return rep


def verify_cuspidal(
    mtype: int,
    n: int,
    r: int,
    expectation: Optional[CuspidalExpectation] = None,
    field: Field = QQ,
) -> FiltrationReport:
    model, expected = cuspidal_model(mtype, n, r, field)
    return verify(model, expectation or expected)


def analyze(model: LocalModel, W: Optional[Ideal] = None) -> FiltrationReport:
    """Filtrations of an arbitrary model; duality and products are informational."""
    return verify(model, None, None, W)


# --------------------------------------------------------------------------
# fingerprints
# --------------------------------------------------------------------------

def _fingerprint_of(rep: FiltrationReport) -> Fingerprint:
    m = rep.m
    return Fingerprint(
        m=m,
        rankA=tuple(rep.rankA),
        rankM=tuple(rep.rankM),
        top_equal=equals(rep.ys[m], rep.xs[m]),
        duality=duality_check(rep).passed,
    )


def _catalog_ideal(kind: str, n: int) -> Tuple[str, ...]:
    return {
        "primitive": (f"x^{n}", "y"),
        "M4": (f"x^{n}", "y^2"),
        "C2": (f"y^2 + x^{n}", "x*y"),
        "C3": (f"y^3 + x^{n}", "x*y"),
    }[kind]


@lru_cache(maxsize=None)
def catalog_fingerprint(kind: str, n: int) -> Fingerprint:
    """Fingerprint of a catalog class, computed from its model ideal in k[x, y]."""
    model = LocalModel.from_strings(("x", "y"), ("x", "y"), _catalog_ideal(kind, n))
    return _fingerprint_of(filtrations(model))


def catalog_label(kind: str, n: int) -> str:
    return {"primitive": f"primitive({n})", "M4": f"M4({n})", "C2": f"C_{{2,{n}}}", "C3": f"C_{{3,{n}}}"}[kind]


def _candidates(m: int) -> List[Tuple[str, int]]:
    out = [("primitive", m + 1)]
    if m >= 2:
        out.append(("M4", m))
    if m >= 3:
        out.append(("C2", m))
    if m >= 4:
        out.append(("C3", m))
    return out


def fingerprint(data: ReportLike) -> Tuple[Fingerprint, str]:
    """Fingerprint plus the unique matching catalog label, else ``"unknown"``.

    A match is a necessary condition only; no coordinate change is searched.
    """
    rep = _report(data)
    fp = _fingerprint_of(rep)
    matches = [catalog_label(k, n) for k, n in _candidates(fp.m) if catalog_fingerprint(k, n) == fp]
    return fp, matches[0] if len(matches) == 1 else "unknown"
