"""Groebner bases, normal forms, radical membership and quotient dimensions."""
from __future__ import annotations

import hashlib
import json
import heapq
import time
from pathlib import Path
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .polykernel import (
    Exps,
    Polynomial,
    Ring,
    Terms,
    UsageError,
    mono_coprime,
    mono_divides,
    mono_lcm,
)


class ResourceLimitExceeded(RuntimeError):
    """A Groebner computation ran past its deadline."""


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: Tuple[Polynomial, ...]

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        for g in gens:
            if g.ring != self.ring:
                raise UsageError("generator ring differs from ideal ring")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, generators: Sequence[Polynomial], ring: Ring | None = None) -> "Ideal":
        gens = tuple(generators)
        if ring is None:
            if not gens:
                raise UsageError("ring required for an empty generator list")
            ring = gens[0].ring
        return cls(ring, gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def generators_hash(self) -> str:
        return generators_hash(self.ring, self.generators)


def generators_hash(ring: Ring, generators: Sequence[Polynomial]) -> str:
    payload = json.dumps({"context": ring.to_json(), "generators": [g.to_json() for g in generators]},
                         sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis, sorted by increasing leading monomial."""

    ring: Ring
    basis: Tuple[Polynomial, ...]
    log: Dict[str, int] = field(default_factory=dict, compare=False)
    _leads: Tuple[Exps, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_leads", tuple(g.leading_monomial() for g in self.basis))

    @property
    def leading_monomials(self) -> Tuple[Exps, ...]:
        return self._leads

    def is_unit(self) -> bool:
        return any(not any(m) for m in self._leads)

    def __len__(self):
        return len(self.basis)

    # ---- cache file format ---------------------------------------------
    def to_json(self, generators_hash: str) -> dict:
        return {
            "context": self.ring.to_json(),
            "generators_hash": generators_hash,
            "basis": [g.to_json() for g in self.basis],
        }

    @classmethod
    def from_json(cls, data: dict, expected_hash: str | None = None) -> "GroebnerBasis":
        ring = Ring(tuple(data["context"]["vars"]), tuple(data["context"]["weights"]))
        if expected_hash is not None and data.get("generators_hash") != expected_hash:
            raise ValueError("generators hash mismatch")
        basis = tuple(Polynomial.from_json(ring, g) for g in data["basis"])
        return cls(ring, basis, {"loaded": 1})


# ---- raw dict kernels ------------------------------------------------------

def _support(m: Exps) -> int:
    mask = 0
    for i, e in enumerate(m):
        if e:
            mask |= 1 << i
    return mask


def _reduce(f: Terms, leads: List[Exps], polys: List[Terms], key, full: bool = True, deadline=None) -> Terms:
    """Remainder of ``f`` on division by monic ``polys`` (leading monomials ``leads``)."""
    f = dict(f)
    rem: Terms = {}
    masks = [_support(lt) for lt in leads]
    nl = len(leads)

    def hkey(m):  # smallest for the largest monomial
        d, tail = key(m)
        return (-d, tuple(-x for x in tail)), m

    heap = [hkey(m) for m in f]
    heapq.heapify(heap)
    steps = 0
    while heap:
        steps += 1
        if deadline is not None and not steps & 1023 and time.monotonic() > deadline:
            raise ResourceLimitExceeded("deadline reached during reduction")
        _, m = heapq.heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue  # stale entry
        mm_mask = _support(m)
        for idx in range(nl):
            if masks[idx] & ~mm_mask:
                continue
            lt = leads[idx]
            if all(x <= y for x, y in zip(lt, m)):
                q = tuple(y - x for x, y in zip(lt, m))
                for gm, gc in polys[idx].items():
                    if gm == lt:
                        continue
                    mm = tuple(x + y for x, y in zip(gm, q))
                    old = f.get(mm)
                    if old is None:
                        f[mm] = -c * gc
                        heapq.heappush(heap, hkey(mm))
                    else:
                        v = old - c * gc
                        if v:
                            f[mm] = v
                        else:
                            del f[mm]
                break
        else:
            rem[m] = c
            if not full:
                rem.update(f)
                return rem
    return rem


def _monic(f: Terms, key) -> Tuple[Exps, Terms]:
    lt = max(f, key=key)
    c = f[lt]
    if c != 1:
        inv = 1 / c
        f = {m: v * inv for m, v in f.items()}
    return lt, f


def _spoly(f: Terms, lf: Exps, g: Terms, lg: Exps) -> Terms:
    lcm = mono_lcm(lf, lg)
    qf = tuple(a - b for a, b in zip(lcm, lf))
    qg = tuple(a - b for a, b in zip(lcm, lg))
    out: Terms = {}
    for m, c in f.items():
        if m != lf:
            out[tuple(x + y for x, y in zip(m, qf))] = c
    for m, c in g.items():
        if m == lg:
            continue
        mm = tuple(x + y for x, y in zip(m, qg))
        v = out.get(mm, 0) - c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def buchberger(spec: Ideal, deadline: float | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``spec`` under the ring's term order.

    Pairs are chosen by smallest sugar degree, ties broken by the smallest
    lcm; useless pairs are discarded with the Gebauer-Moeller criteria.
    ``deadline`` is a ``time.monotonic()`` value; passing it raises
    :class:`ResourceLimitExceeded`.
    """
    ring = spec.ring
    key = ring.key
    deg = ring.degree
    polys: List[Terms] = []
    leads: List[Exps] = []
    sugar: List[int] = []
    G: List[int] = []
    B: list = []  # heap of (sugar, lcm key, i, j, lcm)
    log = {"pairs": 0, "zero_reductions": 0, "criteria_skipped": 0, "basis_added": 0}

    def update(h: int):
        nonlocal G, B
        lh = leads[h]
        lc = {g: mono_lcm(lh, leads[g]) for g in G}
        C = list(G)
        D: List[int] = []
        for pos, g1 in enumerate(C):
            l1 = lc[g1]
            if mono_coprime(lh, leads[g1]):
                D.append(g1)
                continue
            dominated = False
            for g2 in C[pos + 1:]:
                if mono_divides(lc[g2], l1):
                    dominated = True
                    break
            if not dominated:
                for g2 in D:
                    if mono_divides(lc[g2], l1):
                        dominated = True
                        break
            if dominated:
                log["criteria_skipped"] += 1
            else:
                D.append(g1)
        E = []
        for g in D:
            if mono_coprime(lh, leads[g]):
                log["criteria_skipped"] += 1
            else:
                E.append((_pair_sugar((g, h), leads, sugar, deg), key(lc[g]), g, h, lc[g]))
        newB = []
        for item in B:
            g1, g2, l12 = item[2], item[3], item[4]
            if mono_divides(lh, l12):
                a = lc.get(g1) or mono_lcm(leads[g1], lh)
                b = lc.get(g2) or mono_lcm(lh, leads[g2])
                if a != l12 and b != l12:
                    log["criteria_skipped"] += 1
                    continue
            newB.append(item)
        B = newB + E
        heapq.heapify(B)
        G = [g for g in G if not mono_divides(lh, leads[g])] + [h]

    def add(f: Terms, s: int):
        lt, f = _monic(f, key)
        polys.append(f)
        leads.append(lt)
        sugar.append(s)
        log["basis_added"] += 1
        update(len(polys) - 1)

    # interreduce the input a little: sort by leading monomial so small ones come first
    inputs = []
    for g in spec.generators:
        inputs.append(dict(g.terms))
    inputs.sort(key=lambda f: key(max(f, key=key)))
    for f in inputs:
        r = _reduce(f, [leads[i] for i in G], [polys[i] for i in G], key, deadline=deadline)
        if r:
            add(r, max(deg(m) for m in f))
            if not any(leads[-1]):
                break

    while B:
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceLimitExceeded("groebner basis deadline exceeded")
        if any(not any(leads[g]) for g in G):
            break
        ps, _, i, j, _ = heapq.heappop(B)
        log["pairs"] += 1
        s = _spoly(polys[i], leads[i], polys[j], leads[j])
        r = _reduce(s, [leads[g] for g in G], [polys[g] for g in G], key, deadline=deadline)
        if r:
            add(r, ps)
        else:
            log["zero_reductions"] += 1

    basis = _reduce_basis([polys[g] for g in G], key)
    return GroebnerBasis(ring, tuple(Polynomial(ring, f) for f in basis), log)


def _pair_sugar(p, leads, sugar, deg) -> int:
    i, j = p
    lcm = mono_lcm(leads[i], leads[j])
    return max(sugar[i] + deg(lcm) - deg(leads[i]), sugar[j] + deg(lcm) - deg(leads[j]))


def _reduce_basis(gs: List[Terms], key) -> List[Terms]:
    items = [_monic(g, key) for g in gs if g]
    if any(not any(lt) for lt, _ in items):
        one = next(lt for lt, _ in items if not any(lt))
        return [{one: Fraction(1)}]
    items.sort(key=lambda t: key(t[0]))
    minimal = []
    for lt, g in items:
        if not any(mono_divides(l2, lt) for l2, _ in minimal):
            minimal.append((lt, g))
    out = []
    for idx, (lt, g) in enumerate(minimal):
        others = [m for j, m in enumerate(minimal) if j != idx]
        tail = {m: c for m, c in g.items() if m != lt}
        red = _reduce(tail, [l2 for l2, _ in others], [g2 for _, g2 in others], key)
        red[lt] = Fraction(1)
        out.append(red)
    out.sort(key=lambda f: key(max(f, key=key)))
    return out


def groebner(generators: Sequence[Polynomial], ring: Ring | None = None, deadline: float | None = None) -> GroebnerBasis:
    return buchberger(Ideal.of(generators, ring), deadline)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if p.ring != gb.ring:
        raise UsageError("polynomial and basis live in different rings")
    if not gb.basis or not p.terms:
        return p
    r = _reduce(p.terms, list(gb.leading_monomials), [g.terms for g in gb.basis], gb.ring.key)
    return Polynomial(gb.ring, r)


def contains(gb: GroebnerBasis, p: Polynomial) -> bool:
    return normal_form(p, gb).is_zero()


def is_standard(m: Exps, gb: GroebnerBasis) -> bool:
    return not any(mono_divides(lt, m) for lt in gb.leading_monomials)


def standard_monomials(gb: GroebnerBasis, d: int) -> List[Exps]:
    """Standard monomials of weighted degree ``d``, in decreasing term order."""
    ring = gb.ring
    leads = gb.leading_monomials
    out: List[Exps] = []
    w = ring.weights
    n = len(w)

    def rec(i, rem, cur):
        if i == n:
            if rem == 0:
                m = tuple(cur)
                if not any(mono_divides(lt, m) for lt in leads):
                    out.append(m)
            return
        for e in range(rem // w[i] + 1):
            cur.append(e)
            # prune: partial monomial (rest zero) divisible by a leading term
            part = tuple(cur) + (0,) * (n - i - 1)
            if any(mono_divides(lt, part) for lt in leads):
                cur.pop()
                break
            rec(i + 1, rem - e * w[i], cur)
            cur.pop()

    if d >= 0:
        rec(0, d, [])
    out.sort(key=ring.key, reverse=True)
    return out


@dataclass(frozen=True)
class GradedDimensions:
    dims: Tuple[int, ...]

    def __getitem__(self, d):
        return self.dims[d] if 0 <= d < len(self.dims) else 0

    def total(self) -> int:
        return sum(self.dims)

    def top_degree(self) -> int:
        nz = [d for d, v in enumerate(self.dims) if v]
        return nz[-1] if nz else -1


def graded_dimensions(gb: GroebnerBasis, max_degree: int) -> GradedDimensions:
    """Count standard monomials in each weighted degree ``0..max_degree``."""
    ring = gb.ring
    leads = gb.leading_monomials
    w = ring.weights
    n = len(w)
    counts = [0] * (max_degree + 1)
    cur = [0] * n

    def rec(i, d):
        if i == n:
            counts[d] += 1
            return
        e = 0
        while d + e * w[i] <= max_degree:
            cur[i] = e
            if e and any(mono_divides(lt, cur) for lt in leads):
                break
            rec(i + 1, d + e * w[i])
            e += 1
        cur[i] = 0

    if max_degree >= 0:
        rec(0, 0)
    return GradedDimensions(tuple(counts))


# ---- cache files -------------------------------------------------------------

def _basis_digest(data: dict) -> str:
    body = json.dumps({k: data[k] for k in ("context", "generators_hash", "basis")},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


def load_cached_basis(path: Path, spec: Ideal) -> Optional[GroebnerBasis]:
    """Basis stored at ``path`` if it belongs to ``spec`` and is intact, else ``None``."""
    try:
        data = json.loads(Path(path).read_text())
        if data.get("basis_hash") != _basis_digest(data):
            return None
        if data["context"] != spec.ring.to_json():
            return None
        return GroebnerBasis.from_json(data, spec.generators_hash())
    except (OSError, ValueError, KeyError, TypeError):
        return None


def write_cached_basis(path: Path, spec: Ideal, gb: GroebnerBasis) -> None:
    data = gb.to_json(spec.generators_hash())
    data["basis_hash"] = _basis_digest(data)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data, sort_keys=True, indent=1))
    tmp.replace(path)


def cache_path(cache_dir, label: str, spec: Ideal) -> Path:
    return Path(cache_dir) / f"gb-{label}-{spec.generators_hash()[:16]}.json"


def cached_groebner(spec: Ideal, cache_dir=None, label: str = "ideal") -> Tuple[GroebnerBasis, bool]:
    """Groebner basis of ``spec``, read from / written to ``cache_dir`` when given.

    Returns ``(basis, cache_hit)``.  Files whose hashes do not verify are rebuilt.
    """
    if cache_dir is None:
        return buchberger(spec), False
    path = cache_path(cache_dir, label, spec)
    if path.exists():
        gb = load_cached_basis(path, spec)
        if gb is not None:
            return gb, True
    gb = buchberger(spec)
    write_cached_basis(path, spec, gb)
    return gb, False


# ---- radical membership ----------------------------------------------------

RABINOWITSCH_VAR = "_y"


def radical_contains(spec: Ideal, u: Polynomial, deadline: float | None = None,
                     gb: GroebnerBasis | None = None, max_power: int = 0) -> bool:
    """Whether ``u`` vanishes on the variety of ``spec`` over the algebraic closure.

    Decided by the Rabinowitsch trick: ``1`` lies in ``spec + <1 - y*u>``.
    With a precomputed ``gb`` of ``spec`` and ``max_power > 0``, powers
    ``u, u^2, ..., u^max_power`` are first tried for plain membership.
    """
    if u.ring != spec.ring:
        raise UsageError("element and ideal live in different rings")
    if u.is_zero():
        return True
    if gb is not None and max_power > 0:
        acc = normal_form(u, gb)
        for _ in range(max_power):
            if acc.is_zero():
                return True
            acc = normal_form(acc * u, gb)
    name = RABINOWITSCH_VAR
    while name in spec.ring.names:
        name += "_"
    big = spec.ring.extend([name], [1])
    lift = lambda p: Polynomial(big, {m + (0,): c for m, c in p.terms.items()})  # noqa: E731
    y = big.var(name)
    gens = [lift(g) for g in spec.generators] + [big.one() - y * lift(u)]
    return buchberger(Ideal.of(gens, big), deadline).is_unit()


__all__ = [
    "Ideal", "GroebnerBasis", "GradedDimensions", "ResourceLimitExceeded", "buchberger",
    "groebner", "normal_form", "contains", "radical_contains", "graded_dimensions",
    "standard_monomials", "is_standard", "generators_hash", "cached_groebner",
    "load_cached_basis", "write_cached_basis", "cache_path",
]
