"""Buchberger's algorithm over Q for ordinary multivariate polynomials.

Polynomials enter and leave as :class:`~ctrec.laurent.LaurentPoly` values with
nonnegative exponents.  Internally they are dicts ``monomial -> int`` kept
primitive; reduction is fraction-free (pseudo-division with content removal),
which is exact over Q up to a nonzero scalar that is tracked where the caller
needs the true remainder.

Pair handling follows the Gebauer-Moeller update, which implements both of
Buchberger's criteria (coprime leading monomials and the chain criterion).
Pairs are selected by the normal strategy.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .laurent import LaurentPoly, as_coeff

Mono = tuple[int, ...]
Poly = dict  # Mono -> int


class ResourceLimitExceeded(RuntimeError):
    """Buchberger stopped early; ``stats`` records how far it got."""

    def __init__(self, message: str, stats: dict):
        self.stats = stats
        super().__init__(f"{message} (stats: {stats})")


@dataclass(frozen=True)
class ResourceLimits:
    max_spairs: int = 1_000_000
    max_terms: int = 1_000_000
    timeout_seconds: float = 600.0


# -- monomial orders --------------------------------------------------------

@dataclass(frozen=True)
class OrderSpec:
    """A monomial order.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``.  Variables are ordered
    ``x_0 > x_1 > ...`` by index.  A block order compares the ``elim`` block by
    grevlex first and breaks ties with grevlex on the ``keep`` block; both hold
    0-based variable indices.
    """

    kind: str = "grevlex"
    elim: tuple[int, ...] = ()
    keep: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown order {self.kind!r}")
        object.__setattr__(self, "elim", tuple(self.elim))
        object.__setattr__(self, "keep", tuple(self.keep))

    @classmethod
    def grevlex(cls) -> "OrderSpec":
        return cls("grevlex")

    @classmethod
    def lex(cls) -> "OrderSpec":
        return cls("lex")

    @classmethod
    def block(cls, elim: Iterable[int], keep: Iterable[int]) -> "OrderSpec":
        return cls("block", tuple(sorted(elim)), tuple(sorted(keep)))

    def validate(self, nvars: int) -> None:
        if self.kind != "block":
            return
        seen = sorted(self.elim + self.keep)
        if seen != list(range(nvars)):
            raise ValueError(f"block order does not partition {nvars} variables: {self.elim} | {self.keep}")

    def key(self, m: Mono) -> tuple[int, ...]:
        """Flat integer sort key; larger key means larger monomial."""
        if self.kind == "grevlex":
            return (sum(m),) + tuple(-v for v in reversed(m))
        if self.kind == "lex":
            return m
        e = [m[i] for i in self.elim]
        k = [m[i] for i in self.keep]
        return (sum(e),) + tuple(-v for v in reversed(e)) + (sum(k),) + tuple(-v for v in reversed(k))

    def as_dict(self) -> dict:
        return {"kind": self.kind, "elim": list(self.elim), "keep": list(self.keep)}


@dataclass(frozen=True)
class IdealBasis:
    nvars: int
    gens: tuple[LaurentPoly, ...]
    order: OrderSpec = field(default_factory=OrderSpec.grevlex)

    def __post_init__(self):
        gens = tuple(self.gens)
        object.__setattr__(self, "gens", gens)
        self.order.validate(self.nvars)
        for g in gens:
            if g.nvars != self.nvars:
                raise ValueError(f"generator has {g.nvars} variables, basis has {self.nvars}")
            if g.is_zero():
                raise ValueError("zero generator")
            if not g.is_polynomial():
                raise ValueError(f"generator with negative exponent: {g}")

    def to_text(self, var_names: Sequence[str] | None = None) -> list[str]:
        return [g.to_text(var_names) for g in self.gens]

    def is_unit(self) -> bool:
        return any(len(g) == 1 and sum(next(iter(g.terms))) == 0 for g in self.gens)


# -- internal polynomial helpers --------------------------------------------

def _to_int_poly(p: LaurentPoly) -> tuple[Poly, Fraction]:
    """Integer polynomial ``q`` and scalar ``s`` with ``q == s * p``."""
    den = 1
    for c in p.terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    return {e: int(c * den) for e, c in p.items()}, Fraction(den)


def _content(p: Poly) -> int:
    g = 0
    for c in p.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _primitive(p: Poly, order: OrderSpec) -> Poly:
    """Divide out the content and make the leading coefficient positive."""
    if not p:
        return p
    g = _content(p)
    lm = max(p, key=order.key)
    if p[lm] < 0:
        g = -g
    if g == 1:
        return p
    return {e: c // g for e, c in p.items()}


def _divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Mono, b: Mono) -> Mono:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: Mono, b: Mono) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Gen:
    """A basis element with cached leading data."""

    __slots__ = ("poly", "lm", "lc", "key", "tail")

    def __init__(self, poly: Poly, order: OrderSpec):
        self.poly = poly
        self.lm = max(poly, key=order.key)
        self.lc = poly[self.lm]
        self.key = order.key(self.lm)
        self.tail = [(e, c) for e, c in poly.items() if e != self.lm]


class _Budget:
    def __init__(self, limits: ResourceLimits):
        self.limits = limits
        self.start = time.monotonic()
        self.stats = {"spairs": 0, "zero_reductions": 0, "basis_size": 0, "max_terms_seen": 0}

    def check_terms(self, size: int) -> None:
        if size > self.stats["max_terms_seen"]:
            self.stats["max_terms_seen"] = size
            if size > self.limits.max_terms:
                raise ResourceLimitExceeded(f"polynomial exceeded {self.limits.max_terms} terms", self.snapshot())

    def check_time(self) -> None:
        if time.monotonic() - self.start > self.limits.timeout_seconds:
            raise ResourceLimitExceeded(f"time budget {self.limits.timeout_seconds}s exhausted", self.snapshot())

    def snapshot(self) -> dict:
        s = dict(self.stats)
        s["elapsed_seconds"] = round(time.monotonic() - self.start, 3)
        return s


def _reduce(
    p: Poly,
    gens: Sequence[_Gen],
    order: OrderSpec,
    *,
    full: bool = True,
    budget: _Budget | None = None,
) -> tuple[Poly, Fraction]:
    """Fraction-free division of ``p`` by ``gens``.

    Returns ``(r, lam)`` with ``r == lam * (true remainder over Q)``.  ``gens``
    must already be sorted by ascending leading monomial; the first divisor in
    that order is used.  With ``full=False`` only the leading term is reduced.
    """
    key = order.key
    work = dict(p)
    rem: Poly = {}
    lam = Fraction(1)
    heap = [(tuple(-v for v in key(e)), e) for e in work]
    heapq.heapify(heap)
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m)
        if c is None:
            continue
        reducer = None
        for g in gens:
            if _divides(g.lm, m):
                reducer = g
                break
        if reducer is None:
            del work[m]
            rem[m] = c
            if not full:
                for e in work:
                    rem[e] = work[e]
                work = {}
                break
            continue
        d = reducer.lc
        gcd = math.gcd(c, d)
        mult_p = d // gcd
        mult_g = c // gcd
        if mult_p < 0:
            mult_p, mult_g = -mult_p, -mult_g
        if mult_p != 1:
            for e in work:
                work[e] *= mult_p
            for e in rem:
                rem[e] *= mult_p
            lam *= mult_p
        del work[m]
        q = tuple(x - y for x, y in zip(m, reducer.lm))
        for e, gc in reducer.tail:
            t = tuple(x + y for x, y in zip(e, q))
            v = work.get(t)
            if v is None:
                work[t] = -mult_g * gc
                heapq.heappush(heap, (tuple(-v for v in key(t)), t))
            else:
                v -= mult_g * gc
                if v:
                    work[t] = v
                else:
                    del work[t]
        steps += 1
        if steps % 16 == 0:
            g = math.gcd(_content(work), _content(rem)) if (work or rem) else 1
            if g > 1:
                work = {e: v // g for e, v in work.items()}
                rem = {e: v // g for e, v in rem.items()}
                lam /= g
            if budget is not None:
                budget.check_terms(len(work) + len(rem))
                budget.check_time()
    g = _content(rem) if rem else 1
    if g > 1:
        rem = {e: v // g for e, v in rem.items()}
        lam /= g
    return rem, lam


def _sorted_gens(polys: Iterable[Poly], order: OrderSpec) -> list[_Gen]:
    gens = [_Gen(p, order) for p in polys if p]
    gens.sort(key=lambda g: g.key)
    return gens


def _from_int_poly(p: Poly, nvars: int, scale: Fraction = Fraction(1)) -> LaurentPoly:
    if scale == 1:
        return LaurentPoly(nvars, p)
    return LaurentPoly(nvars, {e: Fraction(c) / scale for e, c in p.items()})


# -- public operations ------------------------------------------------------

def leading_term(p: LaurentPoly, order: OrderSpec) -> tuple[Mono, object]:
    if p.is_zero():
        raise ValueError("zero polynomial has no leading term")
    m = max(p.terms, key=order.key)
    return m, p.coeff(m)


def normal_form(p: LaurentPoly, basis: IdealBasis) -> LaurentPoly:
    """Remainder of ``p`` on division by ``basis.gens`` (exact over Q)."""
    if p.nvars != basis.nvars:
        raise ValueError("polynomial and basis have different variable counts")
    if p.is_zero():
        return p
    q, s = _to_int_poly(p)
    gens = _sorted_gens((_to_int_poly(g)[0] for g in basis.gens), basis.order)
    r, lam = _reduce(q, gens, basis.order)
    return _from_int_poly(r, p.nvars, lam * s)


def s_polynomial(f: LaurentPoly, g: LaurentPoly, order: OrderSpec) -> LaurentPoly:
    """``(L/LT(f)) f - (L/LT(g)) g`` with ``L`` the lcm of the leading monomials."""
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    mf, cf = leading_term(f, order)
    mg, cg = leading_term(g, order)
    lcm = _lcm(mf, mg)
    uf = LaurentPoly.monomial(tuple(a - b for a, b in zip(lcm, mf)), Fraction(1) / Fraction(cf))
    ug = LaurentPoly.monomial(tuple(a - b for a, b in zip(lcm, mg)), Fraction(1) / Fraction(cg))
    return uf * f - ug * g


def _spoly_int(f: _Gen, g: _Gen) -> Poly:
    lcm = _lcm(f.lm, g.lm)
    qf = tuple(a - b for a, b in zip(lcm, f.lm))
    qg = tuple(a - b for a, b in zip(lcm, g.lm))
    gcd = math.gcd(f.lc, g.lc)
    mf, mg = g.lc // gcd, f.lc // gcd
    out: Poly = {}
    for e, c in f.tail:
        t = tuple(x + y for x, y in zip(e, qf))
        out[t] = out.get(t, 0) + mf * c
    for e, c in g.tail:
        t = tuple(x + y for x, y in zip(e, qg))
        v = out.get(t, 0) - mg * c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return {e: c for e, c in out.items() if c}


def _interreduce(polys: list[Poly], order: OrderSpec) -> list[Poly]:
    """Minimal, fully reduced basis in primitive normalisation."""
    gens = _sorted_gens(polys, order)
    minimal: list[_Gen] = []
    for g in gens:
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r, _ = _reduce(g.poly, others, order)
        out.append(_primitive(r, order))
    out = [p for p in out if p]
    out.sort(key=lambda p: order.key(max(p, key=order.key)))
    return out


def _buchberger_int(polys: list[Poly], order: OrderSpec, limits: ResourceLimits) -> tuple[list[Poly], dict]:
    budget = _Budget(limits)
    store: list[_Gen] = []
    active: list[int] = []
    pairs: list[tuple[int, int, Mono]] = []

    def update(h_idx: int) -> None:
        nonlocal active, pairs
        h = store[h_idx]
        cand = [(g_idx, _lcm(h.lm, store[g_idx].lm)) for g_idx in active]
        kept = []
        for k, (g_idx, lcm) in enumerate(cand):
            if _coprime(h.lm, store[g_idx].lm):
                kept.append((g_idx, lcm))
                continue
            rest = [l for _, l in cand[k + 1:]] + [l for _, l in kept]
            if not any(_divides(l, lcm) for l in rest):
                kept.append((g_idx, lcm))
        new_pairs = [(g_idx, h_idx, lcm) for g_idx, lcm in kept if not _coprime(h.lm, store[g_idx].lm)]
        survivors = []
        for i, j, lcm in pairs:
            if (
                _divides(h.lm, lcm)
                and _lcm(store[i].lm, h.lm) != lcm
                and _lcm(store[j].lm, h.lm) != lcm
            ):
                continue
            survivors.append((i, j, lcm))
        pairs = survivors + new_pairs
        active = [g for g in active if not _divides(h.lm, store[g].lm)] + [h_idx]

    def add(poly: Poly) -> None:
        store.append(_Gen(_primitive(poly, order), order))
        update(len(store) - 1)

    for p in sorted((q for q in polys if q), key=lambda q: order.key(max(q, key=order.key))):
        add(p)

    def pair_key(pr):
        i, j, lcm = pr
        return (sum(lcm), order.key(lcm), i, j)

    while pairs:
        budget.check_time()
        if budget.stats["spairs"] >= limits.max_spairs:
            raise ResourceLimitExceeded(f"S-pair budget {limits.max_spairs} exhausted", budget.snapshot())
        best = min(range(len(pairs)), key=lambda k: pair_key(pairs[k]))
        i, j, _ = pairs.pop(best)
        budget.stats["spairs"] += 1
        s = _spoly_int(store[i], store[j])
        if s:
            reducers = sorted((store[k] for k in active), key=lambda g: g.key)
            s, _ = _reduce(s, reducers, order, budget=budget)
        if not s:
            budget.stats["zero_reductions"] += 1
            continue
        budget.check_terms(len(s))
        add(s)
        budget.stats["basis_size"] = len(active)
        if len(s) == 1 and sum(next(iter(s))) == 0:
            # unit ideal
            break
    result = _interreduce([store[k].poly for k in active], order)
    return result, budget.snapshot()


def buchberger(basis: IdealBasis, limits: ResourceLimits | None = None) -> IdealBasis:
    """Reduced Groebner basis of ``basis`` under ``basis.order``.

    Output generators have integer coefficients with content 1 and a positive
    leading coefficient.
    """
    gb, _ = buchberger_with_stats(basis, limits)
    return gb


def buchberger_with_stats(basis: IdealBasis, limits: ResourceLimits | None = None) -> tuple[IdealBasis, dict]:
    limits = limits or ResourceLimits()
    polys = [_to_int_poly(g)[0] for g in basis.gens]
    result, stats = _buchberger_int(polys, basis.order, limits)
    gens = tuple(LaurentPoly(basis.nvars, p) for p in result)
    return IdealBasis(basis.nvars, gens, basis.order), stats


def eliminate(
    basis: IdealBasis, drop_vars: Iterable[int], limits: ResourceLimits | None = None
) -> IdealBasis:
    """Groebner basis of the elimination ideal ``I ∩ Q[kept variables]``.

    ``drop_vars`` are 0-based variable indices.  The result keeps the ambient
    variable count (dropped coordinates are identically zero) and carries the
    block order used for the computation.
    """
    drop = tuple(sorted(set(drop_vars)))
    if any(not 0 <= v < basis.nvars for v in drop):
        raise ValueError(f"drop_vars {drop} outside 0..{basis.nvars - 1}")
    if not drop:
        return buchberger(basis, limits)
    keep = tuple(v for v in range(basis.nvars) if v not in drop)
    order = OrderSpec.block(drop, keep)
    gb = buchberger(IdealBasis(basis.nvars, basis.gens, order), limits)
    kept = tuple(g for g in gb.gens if all(e[v] == 0 for e in g.terms for v in drop))
    return IdealBasis(basis.nvars, kept, order)


def is_groebner(basis: IdealBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    gens = list(basis.gens)
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            s = s_polynomial(gens[a], gens[b], basis.order)
            if not normal_form(s, basis).is_zero():
                return False
    return True


def ideal_contains(basis: IdealBasis, p: LaurentPoly) -> bool:
    """Membership test; ``basis`` must already be a Groebner basis."""
    return normal_form(p, basis).is_zero()


def serialize_basis(basis: IdealBasis, var_names: Sequence[str] | None = None) -> str:
    lines = [f"order {basis.order.kind} elim={list(basis.order.elim)} keep={list(basis.order.keep)}"]
    lines += basis.to_text(var_names)
    return "\n".join(lines) + "\n"
