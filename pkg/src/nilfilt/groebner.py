"""Normal forms and reduced Groebner bases (Buchberger with the usual criteria)."""

from __future__ import annotations

import heapq
from typing import Dict, List, Sequence, Tuple

from .core import Exponent, MonomialOrder, Polynomial, Ring, RingMismatchError, divides


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class _Basis:
    """Working copy of a polynomial list keyed for fast reduction."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.key = ring.order.key
        self.lms: List[Exponent] = []
        self.lcs: List[object] = []
        self.polys: List[Dict[Exponent, object]] = []

    def append(self, d: Dict[Exponent, object]):
        key = self.key
        lm = max(d, key=key)
        self.lms.append(lm)
        self.lcs.append(d[lm])
        self.polys.append(d)

    def divisor(self, e: Exponent, skip: int = -1) -> int:
        for i, lm in enumerate(self.lms):
            if i != skip and divides(lm, e):
                return i
        return -1


def _reduce(d: Dict[Exponent, object], basis: _Basis, skip: int = -1) -> Dict[Exponent, object]:
    """Full reduction of ``d``: always the largest reducible term, first divisor."""
    key = basis.key
    p = dict(d)
    heap = [tuple(-k for k in key(e)) + (e,) for e in p]
    heapq.heapify(heap)
    rem: Dict[Exponent, object] = {}
    while heap:
        item = heapq.heappop(heap)
        e = item[-1]
        c = p.pop(e, None)
        if c is None:
            continue
        i = basis.divisor(e, skip)
        if i < 0:
            rem[e] = c
            continue
        shift = _sub(e, basis.lms[i])
        factor = c / basis.lcs[i]
        for ge, gc in basis.polys[i].items():
            if ge == basis.lms[i]:
                continue
            te = tuple(a + b for a, b in zip(ge, shift))
            v = p.get(te)
            if v is None:
                p[te] = -factor * gc
                heapq.heappush(heap, tuple(-k for k in key(te)) + (te,))
            else:
                v = v - factor * gc
                if v:
                    p[te] = v
                else:
                    del p[te]
    return rem


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of ``f`` on division by ``G`` (deterministic full reduction)."""
    ring = f.ring
    if order is not None and order != ring.order:
        raise RingMismatchError(f"order {order} differs from ring order {ring.order}")
    basis = _Basis(ring)
    for g in G:
        if g.ring != ring:
            raise RingMismatchError(f"{g.ring} vs {ring}")
        if g:
            basis.append(g._dict)
    if not basis.polys:
        return f
    return Polynomial._from_clean_dict(ring, _reduce(f._dict, basis))


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return ``f / g``; raises ``ValueError`` if ``g`` does not divide ``f``."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    key = ring.order.key
    lm, lc = g.leading_term()
    q: Dict[Exponent, object] = {}
    p = dict(f._dict)
    while p:
        e = max(p, key=key)
        if not divides(lm, e):
            raise ValueError(f"{g} does not divide {f}")
        shift = _sub(e, lm)
        factor = p[e] / lc
        q[shift] = factor
        for ge, gc in g._dict.items():
            te = tuple(a + b for a, b in zip(ge, shift))
            v = p.get(te, 0) - factor * gc
            if v:
                p[te] = v
            else:
                p.pop(te, None)
    return Polynomial._from_clean_dict(ring, q)


def _spoly(basis: _Basis, i: int, j: int) -> Dict[Exponent, object]:
    lm_i, lm_j = basis.lms[i], basis.lms[j]
    l = _lcm(lm_i, lm_j)
    si, sj = _sub(l, lm_i), _sub(l, lm_j)
    fi = 1 / basis.lcs[i]
    fj = 1 / basis.lcs[j]
    out: Dict[Exponent, object] = {}
    for e, c in basis.polys[i].items():
        te = tuple(a + b for a, b in zip(e, si))
        out[te] = c * fi
    for e, c in basis.polys[j].items():
        te = tuple(a + b for a, b in zip(e, sj))
        v = out.get(te, 0) - c * fj
        if v:
            out[te] = v
        else:
            out.pop(te, None)
    return out


def _monic(d: Dict[Exponent, object], key) -> Dict[Exponent, object]:
    lm = max(d, key=key)
    inv = 1 / d[lm]
    return {e: c * inv for e, c in d.items()}


def buchberger(gens: Sequence[Polynomial], ring: Ring | None = None) -> List[Polynomial]:
    """Reduced, monic Groebner basis sorted by leading monomial ascending.

    Pairs are taken by the normal strategy (smallest lcm first). Pairs are
    dropped by Buchberger's product criterion and by the chain criterion.
    """
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    key = ring.order.key
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError(f"{g.ring} vs {ring}")

    basis = _Basis(ring)
    # seed with an inter-reduced, deduplicated copy of the input
    seeds = sorted((g._dict for g in gens if g), key=lambda d: key(max(d, key=key)))
    for d in seeds:
        r = _reduce(d, basis) if basis.polys else dict(d)
        if r:
            basis.append(_monic(r, key))
    if any(not any(lm) for lm in basis.lms):
        return [ring.one()]

    # live pairs in a set, ordered through a heap of (lcm key, i, j)
    pairs = set()
    heap: List[Tuple] = []

    def add_pairs(k: int):
        for i in range(k):
            l = _lcm(basis.lms[i], basis.lms[k])
            pairs.add((i, k))
            heapq.heappush(heap, (key(l), i, k))

    for k in range(len(basis.polys)):
        add_pairs(k)

    while heap:
        _, i, j = heapq.heappop(heap)
        pairs.discard((i, j))
        lm_i, lm_j = basis.lms[i], basis.lms[j]
        l = _lcm(lm_i, lm_j)
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(lm_i, lm_j)):
            continue
        # chain criterion
        chained = False
        for k in range(len(basis.polys)):
            if k == i or k == j or not divides(basis.lms[k], l):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                chained = True
                break
        if chained:
            continue
        r = _reduce(_spoly(basis, i, j), basis)
        if not r:
            continue
        basis.append(_monic(r, key))
        if not any(basis.lms[-1]):
            return [ring.one()]
        add_pairs(len(basis.polys) - 1)

    return _reduced(basis, ring)


def _reduced(basis: _Basis, ring: Ring) -> List[Polynomial]:
    key = basis.key
    keep = []
    lms = basis.lms
    for i, lm in enumerate(lms):
        redundant = False
        for j, other in enumerate(lms):
            if j == i or not divides(other, lm):
                continue
            if other != lm or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    minimal = _Basis(ring)
    for i in keep:
        minimal.append(basis.polys[i])
    out = []
    for idx in range(len(minimal.polys)):
        d = minimal.polys[idx]
        lm = minimal.lms[idx]
        tail = {e: c for e, c in d.items() if e != lm}
        tail = _reduce(tail, minimal, skip=idx) if tail else {}
        inv = 1 / d[lm]
        full = {e: c * inv for e, c in tail.items()}
        full[lm] = ring.field.one
        out.append(Polynomial._from_clean_dict(ring, full))
    out.sort(key=lambda g: key(g.lm))
    return out


def is_groebner(G: Sequence[Polynomial]) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    G = [g for g in G if g]
    if not G:
        return True
    ring = G[0].ring
    basis = _Basis(ring)
    for g in G:
        basis.append(g._dict)
    for j in range(len(G)):
        for i in range(j):
            if _reduce(_spoly(basis, i, j), basis):
                return False
    return True


def interreduce(polys: Sequence[Polynomial]) -> List[Polynomial]:
    """Reduce each polynomial by the others until stable; drop zeros, make monic.

    Generates the same ideal; this is not a Groebner basis computation.
    """
    items = [p.monic() for p in polys if p]
    if not items:
        return []
    ring = items[0].ring
    key = ring.order.key
    # dedupe and sort so results do not depend on input order
    uniq = {}
    for p in items:
        uniq.setdefault(frozenset(p._dict.items()), p)
    items = sorted(uniq.values(), key=lambda p: (key(p.lm), str(p)))
    changed = True
    while changed:
        changed = False
        for idx in range(len(items)):
            others = _Basis(ring)
            for j, q in enumerate(items):
                if j != idx and q:
                    others.append(q._dict)
            if not others.polys:
                continue
            r = _reduce(items[idx]._dict, others)
            if r != items[idx]._dict:
                changed = True
                items[idx] = Polynomial._from_clean_dict(ring, _monic(r, key)) if r else ring.zero()
        items = [p for p in items if p]
        items.sort(key=lambda p: (key(p.lm), str(p)))
    return items
