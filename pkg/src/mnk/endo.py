"""Ring endomorphisms of R_{n,k}, their linear lifts to F_n, and Lefschetz numbers."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Dict, List, Sequence, Tuple

from .coho import (
    FlagPresentation,
    PartialFlagPresentation,
    betti,
    build_flag,
    build_partial,
    complex_dim,
    pullback,
)
from .ideal import normal_form, standard_monomials
from .polykernel import Polynomial, UsageError, substitute

Matrix = Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class GeneratorEndo:
    """An algebra map of ``R_{n,k}`` given by the images of ``c_i``, ``p_j`` and ``e``."""

    pres: PartialFlagPresentation
    images: Dict[str, Polynomial] = field(hash=False)

    def __post_init__(self):
        ring = self.pres.ring
        if set(self.images) != set(ring.names):
            raise UsageError(f"need an image for each of {ring.names}")
        clean = {}
        for name in ring.names:
            img = self.images[name]
            if img.ring != ring:
                raise UsageError(f"image of {name} lives in another ring")
            w = ring.weights[ring.index(name)]
            if any(ring.degree(m) != w for m in img.terms):
                raise UsageError(f"image of {name} must be homogeneous of degree {w}")
            clean[name] = self.pres.reduce(img)
        object.__setattr__(self, "images", clean)

    @property
    def n(self) -> int:
        return self.pres.n

    @property
    def k(self) -> int:
        return self.pres.k

    def __eq__(self, other):
        if not isinstance(other, GeneratorEndo):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and self.images == other.images

    def __repr__(self):
        body = ", ".join(f"{x} -> {self.images[x]}" for x in self.pres.ring.names)
        return f"GeneratorEndo(n={self.n}, k={self.k}: {body})"

    def __call__(self, x: Polynomial) -> Polynomial:
        return apply(self, x)


def _pres(n, k, pres):
    return pres if pres is not None else build_partial(n, k)


def classified_endo(n: int, k: int, m, sign: int = 1, pres: PartialFlagPresentation | None = None) -> GeneratorEndo:
    """``c_i -> m^i c_i``, ``p_j -> m^{2j} p_j``, ``e -> sign * m^{n-k} e``."""
    m = Fraction(m)
    if m == 0:
        raise UsageError("m must be nonzero; the zero case is handled by zerocheck")
    if sign not in (1, -1):
        raise UsageError("sign must be +1 or -1")
    pres = _pres(n, k, pres)
    ring = pres.ring
    images = {f"c{i}": ring.var(f"c{i}").scale(m ** i) for i in range(1, k + 1)}
    images.update({f"p{j}": ring.var(f"p{j}").scale(m ** (2 * j)) for j in range(1, n - k)})
    images["e"] = ring.var("e").scale(sign * m ** (n - k))
    return GeneratorEndo(pres, images)


def adams_endo(n: int, k: int, m: int, pres: PartialFlagPresentation | None = None) -> GeneratorEndo:
    """Multiplication by ``m^i`` on ``H^{2i}``, written on generators."""
    if int(m) != m:
        raise UsageError("Adams maps need an integer type")
    pres = _pres(n, k, pres)
    ring = pres.ring
    images = {x: ring.var(x).scale(Fraction(m) ** (w // 2)) for x, w in zip(ring.names, ring.weights)}
    return GeneratorEndo(pres, images)


def zero_endo(n: int, k: int, pres: PartialFlagPresentation | None = None) -> GeneratorEndo:
    pres = _pres(n, k, pres)
    return GeneratorEndo(pres, {x: pres.ring.zero() for x in pres.ring.names})


def apply(endo: GeneratorEndo, x: Polynomial) -> Polynomial:
    return endo.pres.reduce(substitute(x, endo.images, endo.pres.ring))


def compose(f: GeneratorEndo, g: GeneratorEndo) -> GeneratorEndo:
    """``f o g``."""
    if f.pres.ring != g.pres.ring:
        raise UsageError("endomorphisms of different rings")
    return GeneratorEndo(f.pres, {x: apply(f, img) for x, img in g.images.items()})


def is_ring_endomorphism(endo: GeneratorEndo) -> bool:
    """Every generator of ``I_{n,k}`` must map into ``I_{n,k}``."""
    return all(apply(endo, r).is_zero() for r in endo.pres.generators)


def endo_matrix(endo: GeneratorEndo, degree: int) -> List[List[Fraction]]:
    """Matrix of the induced map on the degree-``degree`` part, in the standard monomial basis.

    Column ``j`` holds the coordinates of the image of basis element ``j``.
    """
    basis = standard_monomials(endo.pres.gb, degree)
    ring = endo.pres.ring
    index = {m: i for i, m in enumerate(basis)}
    cols = []
    for m in basis:
        img = apply(endo, ring.monomial(m))
        col = [Fraction(0)] * len(basis)
        for mm, c in img.terms.items():
            col[index[mm]] = c
        cols.append(col)
    return [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]


def lefschetz_by_trace(endo: GeneratorEndo) -> Fraction:
    """Sum of traces on ``H^{2j}``; all cohomology is in even degrees."""
    total = Fraction(0)
    for j in range(endo.pres.N + 1):
        mat = endo_matrix(endo, 2 * j)
        total += sum((mat[i][i] for i in range(len(mat))), Fraction(0))
    return total


# ---- linear lifts -----------------------------------------------------------------

def as_matrix(H: Sequence[Sequence]) -> Matrix:
    rows = tuple(tuple(Fraction(x) for x in row) for row in H)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise UsageError("lift matrix must be square")
    return rows


def lift_images(H: Sequence[Sequence], flag: FlagPresentation) -> Dict[str, Polynomial]:
    """``t_i -> sum_j H[i][j] t_j``."""
    H = as_matrix(H)
    ring = flag.ring
    if len(H) != flag.n:
        raise UsageError(f"lift matrix must be {flag.n}x{flag.n}")
    ts = ring.gens()
    images = {}
    for i, row in enumerate(H):
        img = ring.zero()
        for j, a in enumerate(row):
            if a:
                img = img + ts[j].scale(a)
        images[f"t{i + 1}"] = img
    return images


def apply_lift(H, x: Polynomial, flag: FlagPresentation) -> Polynomial:
    return flag.reduce(substitute(x, lift_images(H, flag), flag.ring))


def lift_is_endomorphism(H, n: int, flag: FlagPresentation | None = None) -> bool:
    flag = flag if flag is not None else build_flag(n)
    images = lift_images(H, flag)
    return all(flag.reduce(substitute(g, images, flag.ring)).is_zero() for g in flag.generators)


def lift_restricts_to(H, endo: GeneratorEndo, flag: FlagPresentation | None = None) -> bool:
    """Whether ``p* o h = h~ o p*`` on every generator of ``R_{n,k}``."""
    n, k = endo.n, endo.k
    flag = flag if flag is not None else build_flag(n)
    images = lift_images(H, flag)
    for x in endo.pres.ring.gens():
        down = pullback(apply(endo, x), n, k)
        up = substitute(pullback(x, n, k), images, flag.ring)
        if not flag.reduce(down - up).is_zero():
            return False
    return True


@dataclass(frozen=True)
class LinearLift:
    H: Matrix
    sign: int  # product of the signs in the lower block

    def as_lists(self) -> List[List[Fraction]]:
        return [list(r) for r in self.H]


def _signed_perm_block(perm, signs, scale) -> List[List[Fraction]]:
    size = len(perm)
    block = [[Fraction(0)] * size for _ in range(size)]
    for i, (j, s) in enumerate(zip(perm, signs)):
        block[i][j] = scale * s
    return block


def enumerate_classified_lifts(n: int, k: int, m) -> List[LinearLift]:
    """All ``diag(m P, m S Q)``: ``P`` a k x k permutation, ``S Q`` a signed (n-k) x (n-k) permutation."""
    if not 1 <= k < n:
        raise UsageError(f"need 1 <= k < n, got n={n}, k={k}")
    m = Fraction(m)
    if m == 0:
        raise UsageError("m must be nonzero")
    out = []
    for pa in permutations(range(k)):
        A = _signed_perm_block(pa, (1,) * k, m)
        for pb in permutations(range(n - k)):
            for signs in product((1, -1), repeat=n - k):
                B = _signed_perm_block(pb, signs, m)
                H = [[Fraction(0)] * n for _ in range(n)]
                for i in range(k):
                    H[i][:k] = A[i]
                for i in range(n - k):
                    H[k + i][k:] = B[i]
                s = 1
                for x in signs:
                    s *= x
                out.append(LinearLift(as_matrix(H), s))
    out.sort(key=lambda L: tuple(tuple(r) for r in L.H))
    return out


@dataclass(frozen=True)
class LiftCount:
    n: int
    k: int
    m: Fraction
    total: int
    per_sign: Dict[int, int]
    expected: int


def count_lifts(n: int, k: int, m) -> LiftCount:
    lifts = enumerate_classified_lifts(n, k, m)
    per = {1: 0, -1: 0}
    for L in lifts:
        per[L.sign] += 1
    expected = factorial(k) * factorial(n - k) * 2 ** (n - k)
    return LiftCount(n, k, Fraction(m), len(lifts), per, expected)


@dataclass(frozen=True)
class GramReport:
    G: Matrix
    is_scalar: bool
    D: Fraction | None
    off_diagonal_max: Fraction


def gram_report(H) -> GramReport:
    """``H^T H``; its entries are the pairwise products of the columns of ``H``."""
    H = as_matrix(H)
    n = len(H)
    G = tuple(tuple(sum((H[r][i] * H[r][j] for r in range(n)), Fraction(0)) for j in range(n)) for i in range(n))
    off = max((abs(G[i][j]) for i in range(n) for j in range(n) if i != j), default=Fraction(0))
    diag = {G[i][i] for i in range(n)}
    scalar = off == 0 and len(diag) == 1
    return GramReport(G, scalar, G[0][0] if scalar else None, off)


# ---- Lefschetz numbers ---------------------------------------------------------------

@dataclass(frozen=True)
class LefschetzReport:
    n: int
    k: int
    m: Fraction
    N: int
    betti: Tuple[int, ...]
    direct: Fraction
    split: Fraction
    remark: Fraction | None  # closed forms for m = -1

    @property
    def value(self) -> Fraction:
        return self.direct


def lefschetz_forms(n: int, k: int, m, d: Sequence[int] | None = None) -> LefschetzReport:
    m = Fraction(m)
    d = list(d) if d is not None else betti(n, k)
    N = complex_dim(n, k)
    if len(d) != N + 1:
        raise UsageError("betti list length does not match the complex dimension")
    direct = sum((m ** j * d[j] for j in range(N + 1)), Fraction(0))
    if N % 2:
        split = sum(((m ** j + m ** (N - j)) * d[j] for j in range((N - 1) // 2 + 1)), Fraction(0))
    else:
        split = sum(((m ** j + m ** (N - j)) * d[j] for j in range((N - 2) // 2 + 1)), Fraction(0))
        split += m ** (N // 2) * d[N // 2]
    remark = None
    if m == -1:
        if N % 2:
            remark = Fraction(0)
        else:
            remark = 2 * sum((Fraction((-1) ** j * d[j]) for j in range((N - 2) // 2 + 1)), Fraction(0))
            remark += (-1) ** (N // 2) * d[N // 2]
    rep = LefschetzReport(n, k, m, N, tuple(d), direct, split, remark)
    if split != direct or (remark is not None and remark != direct):
        raise AssertionError(f"Lefschetz forms disagree: {rep}")
    return rep


def lefschetz(n: int, k: int, m) -> Fraction:
    """``sum_j m^j d_{2j}``; the split closed forms are checked against it."""
    return lefschetz_forms(n, k, m).direct
