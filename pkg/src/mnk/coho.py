"""Presentations of H*(SO(2n)/T^n; Q) and H*(M_{n,k}; Q) and the map between them.

``F_n = Q[t_1..t_n] / I_n`` with ``I_n`` generated by ``e_i(t_1^2..t_n^2)``
(``i < n``) and ``t_1...t_n``.

``R_{n,k} = Q[c_1..c_k, p_1..p_{n-k-1}, e] / I_{n,k}`` where the generators of
``I_{n,k}`` are the degree-``4j`` parts of the total Pontryagin class of the
Whitney sum (``j = 1..n-1``) together with ``c_k * e``.  The top Pontryagin
class ``p_{n-k}`` of the real bundle is ``e^2`` and is not a generator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .ideal import GradedDimensions, GroebnerBasis, Ideal, cached_groebner, graded_dimensions, normal_form
from .polykernel import Polynomial, Ring, UsageError, elementary_symmetric, substitute


def _check_nk(n: int, k: int):
    if not (isinstance(n, int) and isinstance(k, int)) or not 1 <= k < n:
        raise UsageError(f"need integers 1 <= k < n, got n={n}, k={k}")


def flag_ring(n: int) -> Ring:
    return Ring(tuple(f"t{i}" for i in range(1, n + 1)), (2,) * n)


def partial_ring(n: int, k: int) -> Ring:
    _check_nk(n, k)
    names = [f"c{i}" for i in range(1, k + 1)] + [f"p{j}" for j in range(1, n - k)] + ["e"]
    weights = [2 * i for i in range(1, k + 1)] + [4 * j for j in range(1, n - k)] + [2 * (n - k)]
    return Ring(tuple(names), tuple(weights))


def complex_dim(n: int, k: int) -> int:
    _check_nk(n, k)
    return 2 * n * k - k * k - k * (k + 1) // 2


# ---- relations -------------------------------------------------------------

def q_polynomial(a: int, k: int, ring: Ring | None = None) -> Polynomial:
    """``c_a^2 + 2 sum_{r>=1} (-1)^r c_{a-r} c_{a+r}`` with ``c_0 = 1``, ``c_s = 0`` for ``s > k``.

    Under the embedding this is ``e_a(t_1^2, ..., t_k^2)``.
    """
    if a < 1:
        raise UsageError("q index must be >= 1")
    if ring is None:
        ring = Ring(tuple(f"c{i}" for i in range(1, k + 1)), tuple(2 * i for i in range(1, k + 1)))

    def c(s):
        if s == 0:
            return ring.one()
        if s > k:
            return ring.zero()
        return ring.var(f"c{s}")

    out = c(a) * c(a)
    for r in range(1, a + 1):
        out = out + (c(a - r) * c(a + r)).scale(2 * (-1) ** r)
    return out


def _row(n: int, k: int, j: int, ring: Ring) -> Polynomial:
    def pont(b):
        if b == 0:
            return ring.one()
        if b == n - k:
            e = ring.var("e")
            return e * e
        return ring.var(f"p{b}")

    out = ring.zero()
    for b in range(0, min(j, n - k) + 1):
        a = j - b
        qa = ring.one() if a == 0 else q_polynomial(a, k, ring)
        out = out + qa * pont(b)
    return out


def relation_rows(n: int, k: int) -> List[Polynomial]:
    """Generators of ``I_{n,k}``: rows ``R_1..R_{n-1}`` then ``c_k * e``."""
    ring = partial_ring(n, k)
    rows = [_row(n, k, j, ring) for j in range(1, n)]
    rows.append(ring.var(f"c{k}") * ring.var("e"))
    return rows


def top_row(n: int, k: int) -> Polynomial:
    """``R_n``, which must already lie in the ideal of :func:`relation_rows`."""
    return _row(n, k, n, partial_ring(n, k))


def flag_generators(n: int) -> List[Polynomial]:
    ring = flag_ring(n)
    sq = [t * t for t in ring.gens()]
    gens = [elementary_symmetric(i, sq) for i in range(1, n)]
    top = ring.one()
    for t in ring.gens():
        top = top * t
    gens.append(top)
    return gens


# ---- presentations ---------------------------------------------------------

@dataclass(frozen=True)
class FlagPresentation:
    n: int
    ring: Ring
    generators: Tuple[Polynomial, ...]
    gb: GroebnerBasis
    cache_hit: bool = field(default=False, compare=False)

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)

    @property
    def top_degree(self) -> int:
        # twice the number of positive roots of D_n
        return 2 * self.n * (self.n - 1)

    def t(self, i: int) -> Polynomial:
        return self.ring.var(f"t{i}")

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.gb)

    def dimensions(self) -> GradedDimensions:
        return graded_dimensions(self.gb, self.top_degree + 2)


@dataclass(frozen=True)
class PartialFlagPresentation:
    n: int
    k: int
    ring: Ring
    generators: Tuple[Polynomial, ...]
    gb: GroebnerBasis
    cache_hit: bool = field(default=False, compare=False)

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)

    @property
    def N(self) -> int:
        return complex_dim(self.n, self.k)

    @property
    def generator_names(self) -> Tuple[str, ...]:
        return self.ring.names

    def var(self, name: str) -> Polynomial:
        return self.ring.var(name)

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.gb)

    def dimensions(self) -> GradedDimensions:
        return graded_dimensions(self.gb, 2 * self.N + 2)


def build_flag(n: int, cache_dir: str | Path | None = None, verify: bool = True) -> FlagPresentation:
    if not isinstance(n, int) or n < 2:
        raise UsageError(f"need n >= 2, got {n}")
    return _build_flag(n, str(cache_dir) if cache_dir else None, verify)


@lru_cache(maxsize=None)
def _build_flag(n, cache_dir, verify):
    gens = tuple(flag_generators(n))
    ring = gens[0].ring
    gb, hit = cached_groebner(Ideal(ring, gens), cache_dir, f"flag-n{n}")
    pres = FlagPresentation(n, ring, gens, gb, hit)
    if verify:
        dims = pres.dimensions()
        if dims.top_degree() != pres.top_degree:
            raise AssertionError(f"F_{n}: top degree {dims.top_degree()} != {pres.top_degree}")
    return pres


def build_partial(n: int, k: int, cache_dir: str | Path | None = None, verify: bool = True) -> PartialFlagPresentation:
    _check_nk(n, k)
    return _build_partial(n, k, str(cache_dir) if cache_dir else None, verify)


@lru_cache(maxsize=None)
def _build_partial(n, k, cache_dir, verify):
    gens = tuple(relation_rows(n, k))
    ring = gens[0].ring
    gb, hit = cached_groebner(Ideal(ring, gens), cache_dir, f"partial-n{n}-k{k}")
    pres = PartialFlagPresentation(n, k, ring, gens, gb, hit)
    if verify:
        d = betti_from(pres)
        N = pres.N
        if d[0] != 1 or len(d) != N + 1 or d != d[::-1]:
            raise AssertionError(f"R_{{{n},{k}}}: graded dimensions {d} violate duality with N={N}")
    return pres


# ---- embedding p* ------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingMap:
    n: int
    k: int
    source: Ring
    target: Ring
    images: Dict[str, Polynomial]

    def __call__(self, x: Polynomial) -> Polynomial:
        if x.ring != self.source:
            raise UsageError("element is not in the partial flag ring")
        return substitute(x, self.images, self.target)


@lru_cache(maxsize=None)
def embedding(n: int, k: int) -> EmbeddingMap:
    """``c_i -> e_i(t_1..t_k)``, ``p_j -> e_j(t_{k+1}^2..t_n^2)``, ``e -> t_{k+1}...t_n``."""
    _check_nk(n, k)
    src, tgt = partial_ring(n, k), flag_ring(n)
    ts = tgt.gens()
    lower, upper = ts[:k], ts[k:]
    images = {f"c{i}": elementary_symmetric(i, lower) for i in range(1, k + 1)}
    sq = [t * t for t in upper]
    for j in range(1, n - k):
        images[f"p{j}"] = elementary_symmetric(j, sq)
    e = tgt.one()
    for t in upper:
        e = e * t
    images["e"] = e
    return EmbeddingMap(n, k, src, tgt, images)


def pullback(x: Polynomial, n: int, k: int) -> Polynomial:
    return embedding(n, k)(x)


# ---- Betti numbers -----------------------------------------------------------

def betti_from(pres: PartialFlagPresentation) -> List[int]:
    N = pres.N
    dims = graded_dimensions(pres.gb, 2 * N + 2)
    if any(dims[d] for d in range(1, 2 * N + 3, 2)) or dims[2 * N + 2]:
        raise AssertionError("odd-degree classes or classes above the top degree")
    return [dims[2 * j] for j in range(N + 1)]


def betti(n: int, k: int, cache_dir: str | Path | None = None) -> List[int]:
    """``[d_0, d_2, ..., d_{2N}]`` with ``d_{2j} = dim H^{2j}(M_{n,k}; Q)``."""
    return betti_from(build_partial(n, k, cache_dir))


def euler_characteristic(n: int, k: int, cache_dir: str | Path | None = None) -> int:
    return sum(betti(n, k, cache_dir))


def _mul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _one_minus(deg: int) -> List[int]:
    return [1] + [0] * (deg - 1) + [-1]


def _divide_exact(num: List[int], den: List[int]) -> List[int]:
    num = list(num)
    dq = len(num) - len(den)
    if dq < 0:
        raise ArithmeticError("denominator has larger degree")
    if den[0] != 1:
        raise ArithmeticError("denominator must have constant term 1")
    quo = [0] * (dq + 1)
    for i in range(dq + 1):
        c = num[i]
        quo[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num):
        raise ArithmeticError(f"non-exact Poincare series division, remainder {num}")
    return quo


def hilbert_oracle(n: int, k: int) -> List[int]:
    """Poincare polynomial from invariant degrees, coefficient of ``q^{2j}`` at index ``j``."""
    _check_nk(n, k)
    num = [1]
    for i in range(1, n):
        num = _mul(num, _one_minus(2 * i))
    num = _mul(num, _one_minus(n))
    den = [1]
    for i in range(1, k + 1):
        den = _mul(den, _one_minus(i))
    for j in range(1, n - k):
        den = _mul(den, _one_minus(2 * j))
    den = _mul(den, _one_minus(n - k))
    quo = _divide_exact(num, den)
    while len(quo) > 1 and quo[-1] == 0:
        quo.pop()
    return quo


def weyl_index(n: int, k: int) -> int:
    """``|W(D_n)| / |W(U(k) x SO(2n-2k))| = 2^k C(n, k)``, the Euler characteristic."""
    return 2 ** k * comb(n, k)
