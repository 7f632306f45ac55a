"""Constraint systems for partially pinned endomorphisms and the forced-zero decision.

An unpinned generator ``x`` gets a generic image ``sum_b u_b * b`` over the
standard monomials ``b`` of its degree, with fresh unknowns ``u_b``.  Each
relation of the presentation is mapped, reduced to normal form with the
unknowns carried along as coefficients, and every coefficient of a standard
monomial becomes one polynomial equation in the unknowns.

``forced_zero`` asks whether every unknown lies in the radical of the
equations (over the algebraic closure).  Where that fails, a real refinement
adds the summands of any sum of squares found in the radical; this is sound
over R, hence over Q.
"""
from __future__ import annotations

import logging
import time
from itertools import permutations
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .coho import FlagPresentation, PartialFlagPresentation, build_flag, build_partial, pullback
from .ideal import (
    GroebnerBasis,
    Ideal,
    ResourceLimitExceeded,
    buchberger,
    normal_form,
    radical_contains,
    standard_monomials,
)
from .polykernel import Exps, Polynomial, Ring, UsageError, format_poly, mono_divides

log = logging.getLogger(__name__)

GENERATOR_LEVEL_MAX_N = 6
LIFT_LEVEL_MAX_N = 5

SymElem = Dict[Exps, Polynomial]  # monomial in the presentation ring -> coefficient in the unknowns


# ---- symbolic arithmetic -----------------------------------------------------------

def _sym_add_into(acc: SymElem, s: SymElem, scale=None):
    for m, c in s.items():
        if scale is not None:
            c = c * scale
        v = acc.get(m)
        v = c if v is None else v + c
        if v.is_zero():
            acc.pop(m, None)
        else:
            acc[m] = v


def _sym_mul(a: SymElem, b: SymElem) -> SymElem:
    out: SymElem = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m)
            prod = ca * cb
            v = prod if v is None else v + prod
            if v.is_zero():
                out.pop(m, None)
            else:
                out[m] = v
    return out


def _sym_const(p: Polynomial, U: Ring) -> SymElem:
    return {m: U.const(c) for m, c in p.terms.items()}


def _sym_substitute(p: Polynomial, images: Mapping[str, SymElem], U: Ring) -> SymElem:
    ring = p.ring
    one = ring.one_exps()
    powers: Dict[Tuple[int, int], SymElem] = {}

    def power(i, e):
        if (i, e) not in powers:
            base = images[ring.names[i]]
            powers[(i, e)] = base if e == 1 else _sym_mul(power(i, e - 1), base)
        return powers[(i, e)]

    out: SymElem = {}
    for m, c in p.terms.items():
        term: SymElem = {one: U.const(c)}
        for i, e in enumerate(m):
            if e:
                term = _sym_mul(term, power(i, e))
                if not term:
                    break
        _sym_add_into(out, term)
    return out


class _NormalFormTable:
    """Normal forms of monomials, so that reduction extends linearly to unknown coefficients."""

    def __init__(self, ring: Ring, gb: GroebnerBasis):
        self.ring = ring
        self.gb = gb
        self._cache: Dict[Exps, Polynomial] = {}

    def __call__(self, m: Exps) -> Polynomial:
        nf = self._cache.get(m)
        if nf is None:
            nf = normal_form(self.ring.monomial(m), self.gb)
            self._cache[m] = nf
        return nf

    def reduce(self, s: SymElem) -> SymElem:
        out: SymElem = {}
        for m, coeff in s.items():
            for mm, c in self(m).terms.items():
                v = out.get(mm)
                add = coeff.scale(c)
                v = add if v is None else v + add
                if v.is_zero():
                    out.pop(mm, None)
                else:
                    out[mm] = v
        return out


def _monomial_label(ring: Ring, m: Exps) -> str:
    s = format_poly(ring.monomial(m))
    return s


# ---- data types ------------------------------------------------------------------------

@dataclass(frozen=True)
class SymbolicPin:
    """Pin ``x -> symbol * image`` with ``symbol`` a fresh unknown scalar."""

    symbol: str
    image: Polynomial


@dataclass(frozen=True)
class GenericImage:
    generator: str
    degree: int
    basis: Tuple[Exps, ...]
    symbols: Tuple[str, ...]


@dataclass
class ConstraintSystem:
    kind: str  # "generator" or "lift"
    n: int
    k: int
    unknowns: Ring
    equations: List[Polynomial]
    provenance: List[str]
    pins: Dict[str, str]
    generic: Dict[str, GenericImage] = field(default_factory=dict)
    sos_hints: List[Polynomial] = field(default_factory=list)

    @property
    def unknown_names(self) -> Tuple[str, ...]:
        return self.unknowns.names

    def ideal(self, equations: Sequence[Polynomial] | None = None) -> Ideal:
        return Ideal(self.unknowns, tuple(self.equations if equations is None else equations))

    def evaluate(self, assignment: Mapping[str, Fraction]) -> List[Fraction]:
        """Value of every equation at a full assignment of the unknowns."""
        vals = [Fraction(assignment[v]) for v in self.unknowns.names]
        out = []
        for eq in self.equations:
            total = Fraction(0)
            for m, c in eq.terms.items():
                t = c
                for v, e in zip(vals, m):
                    if e:
                        t *= v ** e
                total += t
            out.append(total)
        return out

    def is_solution(self, assignment: Mapping[str, Fraction]) -> bool:
        return all(v == 0 for v in self.evaluate(assignment))

    def add_equations(self, eqs: Sequence[Polynomial], label: str) -> "ConstraintSystem":
        extra = [e for e in eqs if not e.is_zero()]
        return ConstraintSystem(self.kind, self.n, self.k, self.unknowns, self.equations + extra,
                                self.provenance + [label] * len(extra), dict(self.pins),
                                dict(self.generic), list(self.sos_hints))

    def is_homogeneous(self) -> bool:
        return all(e.is_homogeneous() for e in self.equations)


def _collect(table: _NormalFormTable, s: SymElem, label: str, eqs: list, prov: list, seen: set):
    red = table.reduce(s)
    for m in sorted(red, key=table.ring.key, reverse=True):
        eq = red[m]
        if eq.is_zero():
            continue
        eq = eq.monic()
        if eq in seen:
            continue
        seen.add(eq)
        eqs.append(eq)
        prov.append(f"{label}[{_monomial_label(table.ring, m)}]")


# ---- generator-level systems ----------------------------------------------------------

def build_generator_system(n: int, k: int, pins: Mapping[str, object], extra_zero: Sequence[Polynomial] = (),
                           pres: PartialFlagPresentation | None = None) -> ConstraintSystem:
    """Unknown-coefficient system for endomorphisms of ``R_{n,k}`` extending ``pins``.

    ``pins`` maps generator names to a fixed image (a polynomial in the
    presentation ring) or to a :class:`SymbolicPin`.  ``extra_zero`` lists
    further elements whose image is required to vanish.
    """
    if n > GENERATOR_LEVEL_MAX_N:
        raise UsageError(f"generator-level systems are capped at n <= {GENERATOR_LEVEL_MAX_N}")
    pres = pres if pres is not None else build_partial(n, k)
    ring = pres.ring
    for name in pins:
        ring.index(name)

    names: List[str] = []
    weights: List[int] = []
    generic: Dict[str, GenericImage] = {}
    for x, w in zip(ring.names, ring.weights):
        pin = pins.get(x)
        if pin is None:
            basis = tuple(standard_monomials(pres.gb, w))
            syms = tuple(f"{x}[{_monomial_label(ring, b)}]" for b in basis)
            generic[x] = GenericImage(x, w, basis, syms)
            names.extend(syms)
            weights.extend([w // 2] * len(syms))
        elif isinstance(pin, SymbolicPin):
            if pin.symbol in names:
                raise UsageError(f"symbol {pin.symbol!r} used twice")
            names.append(pin.symbol)
            weights.append(w // 2)
    U = Ring(tuple(names), tuple(weights))

    images: Dict[str, SymElem] = {}
    pin_desc: Dict[str, str] = {}
    for x, w in zip(ring.names, ring.weights):
        pin = pins.get(x)
        if pin is None:
            g = generic[x]
            images[x] = {b: U.var(s) for b, s in zip(g.basis, g.symbols)}
            continue
        img = pin.image if isinstance(pin, SymbolicPin) else pin
        if not isinstance(img, Polynomial) or img.ring != ring:
            raise UsageError(f"pin for {x} must be a polynomial in the presentation ring")
        if any(ring.degree(m) != w for m in img.terms):
            raise UsageError(f"pin for {x} must be homogeneous of degree {w}")
        img = pres.reduce(img)
        if isinstance(pin, SymbolicPin):
            images[x] = {m: U.var(pin.symbol).scale(c) for m, c in img.terms.items()}
            pin_desc[x] = f"{pin.symbol}*({img})"
        else:
            images[x] = _sym_const(img, U)
            pin_desc[x] = str(img)

    table = _NormalFormTable(ring, pres.gb)
    eqs: List[Polynomial] = []
    prov: List[str] = []
    seen: set = set()
    for i, r in enumerate(pres.generators, start=1):
        _collect(table, _sym_substitute(r, images, U), f"R{i}", eqs, prov, seen)
    for i, z in enumerate(extra_zero, start=1):
        if z.ring != ring:
            raise UsageError("extra_zero elements must live in the presentation ring")
        pin_desc[f"zero{i}"] = f"h({z}) = 0"
        _collect(table, _sym_substitute(z, images, U), f"Z{i}", eqs, prov, seen)
    return ConstraintSystem("generator", n, k, U, eqs, prov, pin_desc, generic)


def generic_assignment(cs: ConstraintSystem, endo_images: Mapping[str, Polynomial],
                       symbols: Mapping[str, Fraction] | None = None) -> Dict[str, Fraction]:
    """Unknown values describing a concrete endomorphism (images already in normal form)."""
    out: Dict[str, Fraction] = {}
    for x, g in cs.generic.items():
        img = endo_images[x]
        stray = set(img.terms) - set(g.basis)
        if stray:
            raise UsageError(f"image of {x} is not in normal form")
        for b, s in zip(g.basis, g.symbols):
            out[s] = img.terms.get(b, Fraction(0))
    for name, v in (symbols or {}).items():
        out[name] = Fraction(v)
    return out


# ---- lift-level systems -----------------------------------------------------------------

LIFT_PINS = ("c1_zero", "p1_zero", "euler_zero")


def _psd_hint(q: Polynomial) -> bool:
    return q.is_homogeneous() and not q.is_zero() and q.degree() == 2 and bool(sos_components(q))


def build_lift_system(n: int, k: int, pin: str, flag: FlagPresentation | None = None) -> ConstraintSystem:
    """Unknowns ``a_ij`` with ``t_i -> sum_j a_ij t_j``; equations say the map preserves
    ``I_n`` and satisfies ``pin``."""
    if pin not in LIFT_PINS:
        raise UsageError(f"pin must be one of {LIFT_PINS}")
    if not 1 <= k < n:
        raise UsageError(f"need 1 <= k < n, got n={n}, k={k}")
    if n > LIFT_LEVEL_MAX_N:
        raise UsageError(f"lift-level systems are capped at n <= {LIFT_LEVEL_MAX_N}")
    if pin == "euler_zero" and n - k != 2:
        raise UsageError("euler_zero needs n - k = 2")
    flag = flag if flag is not None else build_flag(n)
    T = flag.ring
    names = [f"a{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
    U = Ring(tuple(names), (1,) * len(names))
    images: Dict[str, SymElem] = {}
    for i in range(1, n + 1):
        img: SymElem = {}
        for j in range(1, n + 1):
            e = [0] * n
            e[j - 1] = 1
            img[tuple(e)] = U.var(f"a{i}_{j}")
        images[f"t{i}"] = img

    table = _NormalFormTable(T, flag.gb)
    eqs: List[Polynomial] = []
    prov: List[str] = []
    seen: set = set()
    hints: List[Polynomial] = []

    def harvest(s: SymElem):
        # diagonal entries of a quadratic form in the t's
        for m, coeff in s.items():
            if sum(m) == 2 and max(m) == 2 and _psd_hint(coeff) and coeff not in hints:
                hints.append(coeff)

    ts = T.gens()
    if pin == "c1_zero":
        target = sum(ts[:k], T.zero())
        label = "pin:h(c1)"
    elif pin == "p1_zero":
        target = sum((t * t for t in ts[k:]), T.zero())
        label = "pin:h(p1)"
    else:
        target = ts[k] * ts[k + 1]
        label = "pin:h(e)"
    s = _sym_substitute(target, images, U)
    harvest(s)
    _collect(table, s, label, eqs, prov, seen)
    for i, g in enumerate(flag.generators, start=1):
        s = _sym_substitute(g, images, U)
        harvest(s)
        _collect(table, s, f"I{i}", eqs, prov, seen)
    pins = {"pin": pin, "pullback": str(target)}
    return ConstraintSystem("lift", n, k, U, eqs, prov, pins, {}, hints)


def lift_assignment(H) -> Dict[str, Fraction]:
    return {f"a{i + 1}_{j + 1}": Fraction(x) for i, row in enumerate(H) for j, x in enumerate(row)}


def gram_equations(cs: ConstraintSystem) -> List[Polynomial]:
    """Off-diagonal entries and diagonal differences of ``H^T H``."""
    n = cs.n
    U = cs.unknowns
    a = lambda i, j: U.var(f"a{i}_{j}")  # noqa: E731
    G = [[sum((a(r, i) * a(r, j) for r in range(1, n + 1)), U.zero()) for j in range(1, n + 1)]
         for i in range(1, n + 1)]
    out = [G[i][j] for i in range(n) for j in range(i + 1, n)]
    out += [G[i][i] - G[0][0] for i in range(1, n)]
    return out


# ---- real refinement helpers ------------------------------------------------------------

def sos_components(f: Polynomial) -> List[Polynomial]:
    """Polynomials ``g_i`` with ``f = sum d_i g_i^2``, all ``d_i`` of one strict sign.

    Recognises quadratic forms (exact LDL^T) and sums of even monomials with
    coefficients of one sign.  Returns ``[]`` when no pattern applies.
    """
    if f.is_zero():
        return []
    signs = {c > 0 for c in f.terms.values()}
    if len(signs) == 1 and all(e % 2 == 0 for m in f.terms for e in m):
        return [f.ring.monomial(tuple(e // 2 for e in m)) for m in sorted(f.terms, key=f.ring.key, reverse=True)]
    if not (f.is_homogeneous() and all(sum(m) == 2 for m in f.terms)):
        return []
    U = f.ring
    idx = sorted({i for m in f.terms for i, e in enumerate(m) if e})
    pos = {v: p for p, v in enumerate(idx)}
    size = len(idx)
    A = [[Fraction(0)] * size for _ in range(size)]
    for m, c in f.terms.items():
        vs = [i for i, e in enumerate(m) if e]
        if len(vs) == 1:
            A[pos[vs[0]]][pos[vs[0]]] = c
        else:
            i, j = pos[vs[0]], pos[vs[1]]
            A[i][j] = A[j][i] = c / 2
    # symmetric Gaussian elimination; a zero pivot with a nonzero row means indefinite
    forms = []
    pivots = []
    A = [row[:] for row in A]
    for p in range(size):
        d = A[p][p]
        if d == 0:
            if any(A[p][q] for q in range(p, size)):
                return []
            continue
        pivots.append(d)
        row = A[p][:]
        form = U.zero()
        for q in range(p, size):
            if row[q]:
                form = form + U.var(U.names[idx[q]]).scale(row[q] / d)
        forms.append(form)
        for i in range(p, size):
            for j in range(p, size):
                A[i][j] -= row[i] * row[j] / d
    if not pivots or len({d > 0 for d in pivots}) != 1:
        return []
    return forms


# ---- the decision procedure ----------------------------------------------------------------

@dataclass
class ZeroCheckReport:
    forced_zero: bool
    outcome: str  # forced_zero | not_forced | undecided
    complex_verdict: Optional[bool]
    real_verdict: Optional[bool]
    per_unknown: Dict[str, Dict[str, Optional[bool]]]
    constraint_count: int
    unknown_count: int
    stage: str
    real_constraints: List[str] = field(default_factory=list)
    elapsed: float = 0.0
    notes: List[str] = field(default_factory=list)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "forced_zero": self.forced_zero,
            "outcome": self.outcome,
            "complex_verdict": self.complex_verdict,
            "real_verdict": self.real_verdict,
            "per_unknown": {k: dict(v) for k, v in self.per_unknown.items()},
            "constraint_count": self.constraint_count,
            "unknown_count": self.unknown_count,
            "stage": self.stage,
            "real_constraints": list(self.real_constraints),
            "notes": list(self.notes),
        }
        if timing:
            out["elapsed_sec"] = round(self.elapsed, 3)
        return out


def _pure_power_unknowns(gb: GroebnerBasis) -> set:
    out = set()
    for lt in gb.leading_monomials:
        nz = [i for i, e in enumerate(lt) if e]
        if len(nz) == 1:
            out.add(nz[0])
    return out


def _all_nilpotent(gb: GroebnerBasis, homogeneous: bool) -> bool:
    """For a weighted-homogeneous ideal, zero-dimensionality means the variety is the origin."""
    if gb.is_unit():
        return True
    return homogeneous and len(_pure_power_unknowns(gb)) == gb.ring.nvars


def _stages(cs: ConstraintSystem) -> List[List[Polynomial]]:
    deg = [e.degree() for e in cs.equations]
    stages = []
    for d in sorted(set(deg)):
        sub = [e for e, de in zip(cs.equations, deg) if de <= d]
        if not stages or len(sub) != len(stages[-1]):
            stages.append(sub)
    return stages or [[]]


def _in_radical(U: Ring, eqs: List[Polynomial], gb: GroebnerBasis, u: Polynomial, deadline, max_power: int) -> bool:
    if gb.is_unit():
        return True
    return radical_contains(Ideal(U, tuple(eqs)), u, deadline, gb=gb, max_power=max_power)


def _real_refine(U: Ring, eqs: List[Polynomial], hints: List[Polynomial], deadline, max_power: int,
                 added: List[str], gb: GroebnerBasis | None = None) -> Tuple[List[Polynomial], GroebnerBasis]:
    current = list(eqs)
    used: set = set()
    while True:
        if gb is None:
            gb = buchberger(Ideal(U, tuple(current)), deadline)
        if gb.is_unit():
            return current, gb
        new: List[Polynomial] = []
        for g in gb.basis:
            comps = sos_components(g) if g not in used else []
            if comps:
                used.add(g)
                new += comps
                added.append(f"{g} = 0 is a sum of squares")
        pending = [h for h in hints if h not in used]
        if not new:
            # cheap test first: some power of the hint already in the ideal
            for h in pending:
                acc = normal_form(h, gb)
                for _ in range(max_power):
                    if acc.is_zero():
                        break
                    acc = normal_form(acc * h, gb)
                if acc.is_zero():
                    used.add(h)
                    new += sos_components(h)
                    added.append(f"{h} lies in the radical and is a sum of squares")
        if not new:
            # one full radical test at a time; its consequences usually settle the rest cheaply
            for h in pending:
                log.debug("radical test for %s", h)
                if _in_radical(U, current, gb, h, deadline, 0):
                    used.add(h)
                    new += sos_components(h)
                    added.append(f"{h} lies in the radical and is a sum of squares")
                    break
        new = [c for c in new if not normal_form(c, gb).is_zero()]
        if not new:
            return current, gb
        current += new
        gb = None


# ---- determinant certificate for lift systems -------------------------------------------

def _in_linear_span(gens: Sequence[Polynomial], targets: Sequence[Polynomial]) -> bool:
    """Exact linear-algebra membership of each target in the Q-span of ``gens``."""
    if not targets:
        return True
    key = targets[0].ring.key
    pivots: Dict[Exps, Dict[Exps, Fraction]] = {}

    def reduce(row: Dict[Exps, Fraction]) -> Dict[Exps, Fraction]:
        row = dict(row)
        while row:
            m = max(row, key=key)
            piv = pivots.get(m)
            if piv is None:
                return row
            c = row[m]
            for mm, v in piv.items():
                w = row.get(mm, 0) - c * v
                if w:
                    row[mm] = w
                else:
                    row.pop(mm, None)
        return row

    for g in gens:
        r = reduce(g.terms)
        if r:
            m = max(r, key=key)
            c = r[m]
            pivots[m] = {mm: v / c for mm, v in r.items()}
    return all(not reduce(t.terms) for t in targets)


def _determinant(rows: Sequence[Sequence[Polynomial]], U: Ring) -> Polynomial:
    n = len(rows)
    total = U.zero()
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = U.const(-1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total + term
    return total


def lift_determinant_certificate(cs: ConstraintSystem, deadline=None, max_power: int = 8) -> Optional[List[str]]:
    """Proof over R that a lift system forces ``H = 0``, or ``None``.

    1. The Gram relations (``H^T H`` scalar) lie in the degree-2 span of the
       equations, so ``det(H^T H) - D^n`` lies in the ideal with ``D`` the
       first column norm; since ``det(H^T H) = det(H)^2`` so does
       ``det(H)^2 - D^n``.
    2. ``det(H)`` vanishes on the real points of the pin equations: it reduces
       to zero, or each of its terms is divisible by a monomial nilpotent
       modulo the (real-refined) pin equations.
    3. Hence ``D`` vanishes; ``D`` and every other column norm (equal to it
       modulo the ideal) are sums of squares, so every entry vanishes.
    """
    if cs.kind != "lift":
        return None
    U = cs.unknowns
    n = cs.n
    a = [[U.var(f"a{i}_{j}") for j in range(1, n + 1)] for i in range(1, n + 1)]
    hom = [e for e in cs.equations if e.is_homogeneous()]
    span = [e for e in hom if e.degree() == 2]
    span += [e * v for e in hom if e.degree() == 1 for v in U.gens()]
    if not _in_linear_span(span, gram_equations(cs)):
        return None
    steps = ["H^T H is scalar modulo the degree-2 equations, so det(H)^2 - D^n lies in the ideal"]

    pin = [e for e, p in zip(cs.equations, cs.provenance) if p.startswith("pin")]
    added: List[str] = []
    pin, gb = _real_refine(U, pin, cs.sos_hints, deadline, max_power, added)
    steps += [f"pin equations, real step: {s}" for s in added]
    det = _determinant(a, U)
    rest = normal_form(det, gb)
    if rest.is_zero():
        steps.append("det(H) reduces to 0 modulo the pin equations")
    else:
        used = sorted({i for e in pin for m in e.terms for i, x in enumerate(m) if x})
        cands = [U.monomial(tuple(1 if t == i else 0 for t in range(U.nvars))) for i in used]
        cands += [U.monomial(tuple((t == i) + (t == j) for t in range(U.nvars)))
                  for pos, i in enumerate(used) for j in used[pos:]]
        nilpotent = []
        for m in cands:
            acc = normal_form(m, gb)
            for _ in range(max_power):
                if acc.is_zero():
                    break
                acc = normal_form(acc * m, gb)
            if acc.is_zero():
                nilpotent.append(m.leading_monomial())
        if not all(any(mono_divides(q, t) for q in nilpotent) for t in rest.terms):
            return None
        steps.append(f"det(H) lies in the radical: each term is divisible by one of {len(nilpotent)} "
                     "monomials nilpotent modulo the pin equations")
    D = sum((a[i][0] * a[i][0] for i in range(n)), U.zero())
    steps.append(f"so D = {D} vanishes, and every column norm equals D modulo the ideal; "
                 "sums of squares force every entry to 0 over R")
    return steps


def forced_zero(cs: ConstraintSystem, timeout: float | None = None, complex_budget: float | None = 60.0,
                max_power: int | None = None, strategy: str = "auto") -> ZeroCheckReport:
    """Decide whether every unknown of ``cs`` vanishes on all solutions.

    Subsystems made of the lowest-degree equations are tried first; by
    monotonicity a forced-zero verdict there carries over to the whole
    system.  ``timeout`` bounds the whole run, ``complex_budget`` the
    per-unknown analysis over C once the real verdict is known.
    """
    t0 = time.monotonic()
    deadline = None if timeout is None else t0 + timeout
    U = cs.unknowns
    names = U.names
    if max_power is None:
        max_power = max(4, 2 * cs.n)
    homogeneous = cs.is_homogeneous()
    per: Dict[str, Dict[str, Optional[bool]]] = {v: {"complex": None, "real": None} for v in names}
    report = ZeroCheckReport(False, "undecided", None, None, per, len(cs.equations), len(names), "none")

    def finish():
        report.elapsed = time.monotonic() - t0
        return report

    if not names:
        report.forced_zero, report.outcome = True, "forced_zero"
        report.complex_verdict = report.real_verdict = True
        report.stage = "no unknowns"
        return finish()

    if strategy not in ("auto", "staged"):
        raise UsageError("strategy must be 'auto' or 'staged'")
    stages = _stages(cs)
    try:
        if strategy == "auto" and cs.kind == "lift":
            steps = lift_determinant_certificate(cs, deadline, max_power)
            if steps is not None:
                for v in names:
                    per[v]["real"] = True
                report.real_verdict = True
                report.forced_zero, report.outcome = True, "forced_zero"
                report.stage = "real:determinant certificate"
                report.real_constraints = steps
        # over C first, then the real refinement, cheapest subsystems first
        for sub in (stages if not report.real_verdict else []):
            log.debug("stage with %d equations, %.1fs", len(sub), time.monotonic() - t0)
            gb = buchberger(Ideal(U, tuple(sub)), deadline)
            log.debug("basis of %d elements, %.1fs", len(gb), time.monotonic() - t0)
            if _all_nilpotent(gb, homogeneous):
                for v in names:
                    per[v] = {"complex": True, "real": True}
                report.forced_zero, report.outcome = True, "forced_zero"
                report.complex_verdict = report.real_verdict = True
                report.stage = f"complex:{len(sub)}/{len(cs.equations)} equations"
                return finish()
            added: List[str] = []
            refined, rgb = _real_refine(U, sub, cs.sos_hints, deadline, max_power, added, gb)
            hom = all(e.is_homogeneous() for e in refined)
            if _all_nilpotent(rgb, hom) or (not hom and all(
                    _in_radical(U, refined, rgb, U.var(v), deadline, max_power) for v in names)):
                for v in names:
                    per[v]["real"] = True
                report.real_verdict = True
                report.forced_zero, report.outcome = True, "forced_zero"
                report.stage = f"real:{len(sub)}/{len(cs.equations)} equations"
                report.real_constraints = added
                break
    except ResourceLimitExceeded:
        report.notes.append("resource limit reached before a verdict")
        return finish()

    # 3. exact per-unknown verdicts over C on the full system
    budget_deadline = deadline
    if report.real_verdict and complex_budget is not None:
        cap = time.monotonic() + complex_budget
        budget_deadline = cap if deadline is None else min(cap, deadline)
    try:
        full = stages[-1]
        gb = buchberger(Ideal(U, tuple(full)), budget_deadline)
        verdicts = []
        for v in names:
            r = _in_radical(U, full, gb, U.var(v), budget_deadline, max_power)
            per[v]["complex"] = r
            verdicts.append(r)
        report.complex_verdict = all(verdicts)
        if report.complex_verdict:
            for v in names:
                per[v]["real"] = True
            report.real_verdict = True
            report.forced_zero, report.outcome = True, "forced_zero"
            if report.stage == "none":
                report.stage = "complex:per-unknown"
        elif not report.real_verdict:
            report.outcome = "not_forced"
            report.notes.append("some unknown is not forced over C; the real refinement found no proof")
    except ResourceLimitExceeded:
        report.notes.append("per-unknown analysis over C not finished within budget")
        if not report.real_verdict:
            report.outcome = "undecided"
    return finish()


# ---- propositions -------------------------------------------------------------------------

PROPOSITIONS = ("P1_4", "P6_2", "P1_5", "P6_4", "P6_5", "EX7_1", "EX7_2")


def proposition_system(prop: str, n: int, k: int) -> ConstraintSystem:
    if prop not in PROPOSITIONS:
        raise UsageError(f"unknown proposition {prop!r}; choose from {PROPOSITIONS}")
    if not 1 <= k < n:
        raise UsageError(f"need 1 <= k < n, got n={n}, k={k}")
    if prop in ("P6_5", "EX7_1", "EX7_2") and n - k != 2:
        raise UsageError(f"{prop} needs n - k = 2")
    if prop in ("P6_2", "P6_4") and n - k < 2:
        raise UsageError(f"{prop} needs n - k >= 2 so that p1 is a generator")
    if prop == "EX7_1" and (n, k) != (5, 3):
        raise UsageError("EX7_1 is the case n=5, k=3")
    if prop == "EX7_2" and (n, k) != (6, 4):
        raise UsageError("EX7_2 is the case n=6, k=4")
    if prop == "P1_5":
        return build_lift_system(n, k, "c1_zero")
    if prop == "P6_4":
        return build_lift_system(n, k, "p1_zero")
    if prop == "P6_5":
        return build_lift_system(n, k, "euler_zero")
    pres = build_partial(n, k)
    ring = pres.ring
    if prop == "P1_4":
        return build_generator_system(n, k, {f"c{i}": ring.zero() for i in range(1, k + 1)}, pres=pres)
    if prop == "P6_2":
        pins = {f"p{j}": ring.zero() for j in range(1, n - k)}
        e = ring.var("e")
        return build_generator_system(n, k, pins, extra_zero=[e * e], pres=pres)
    # EX7_*: h(p1) = 0 and h(c1) = m c1 with m unknown
    return build_generator_system(n, k, {"p1": ring.zero(), "c1": SymbolicPin("m", ring.var("c1"))}, pres=pres)


def verify_proposition(prop: str, n: int, k: int, timeout: float | None = None,
                       complex_budget: float | None = 60.0) -> ZeroCheckReport:
    cs = proposition_system(prop, n, k)
    report = forced_zero(cs, timeout=timeout, complex_budget=complex_budget)
    if prop.startswith("EX7") and "m" in report.per_unknown:
        m = report.per_unknown["m"]
        report.notes.append(f"m forced to 0: complex={m['complex']}, real={m['real']}")
    return report


# ---- uniqueness at desk scale ---------------------------------------------------------------

@dataclass
class SolutionSetReport:
    equal: bool
    points_satisfy: List[bool]
    contained: bool
    vanishing_generators: List[str]


def vanishing_ideal_of_points(U: Ring, points: Sequence[Mapping[str, Fraction]]) -> List[Polynomial]:
    """Generators of the ideal of finitely many rational points.

    Coordinates that agree on all points give linear generators; the rest
    are cut out by products over points of a separating linear form
    (``prod (L - L(P))``) together with Lagrange interpolation of each
    remaining coordinate in ``L``.
    """
    names = U.names
    pts = [{v: Fraction(p[v]) for v in names} for p in points]
    gens: List[Polynomial] = []
    varying = []
    for v in names:
        vals = {p[v] for p in pts}
        if len(vals) == 1:
            gens.append(U.var(v) - U.const(vals.pop()))
        else:
            varying.append(v)
    if not varying:
        return gens
    # separating linear form over the varying coordinates
    scale = 1
    while True:
        coeffs = {v: Fraction(scale ** i) for i, v in enumerate(varying)}
        vals = [sum(coeffs[v] * p[v] for v in varying) for p in pts]
        if len(set(vals)) == len(pts):
            break
        scale += 1
    L = sum((U.var(v).scale(coeffs[v]) for v in varying), U.zero())
    poly = U.one()
    for x in vals:
        poly = poly * (L - U.const(x))
    gens.append(poly)
    for v in varying:
        interp = U.zero()
        for i, p in enumerate(pts):
            basis = U.one()
            for j, x in enumerate(vals):
                if j != i:
                    basis = (basis * (L - U.const(x))).scale(1 / (vals[i] - x))
            interp = interp + basis.scale(p[v])
        gens.append(U.var(v) - interp)
    return gens


def solution_set_equals(cs: ConstraintSystem, points: Sequence[Mapping[str, Fraction]],
                        timeout: float | None = None) -> SolutionSetReport:
    """Whether the complex solution set of ``cs`` is exactly ``points``."""
    deadline = None if timeout is None else time.monotonic() + timeout
    sat = [cs.is_solution(p) for p in points]
    gens = vanishing_ideal_of_points(cs.unknowns, points)
    spec = cs.ideal()
    gb = buchberger(spec, deadline)
    contained = all(_in_radical(cs.unknowns, cs.equations, gb, g, deadline, 4) for g in gens)
    return SolutionSetReport(all(sat) and contained, sat, contained, [str(g) for g in gens])
