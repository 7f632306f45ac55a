"""Sparse multivariate polynomials over Q with a weighted graded reverse-lex order.

A polynomial is a map from exponent tuples to nonzero ``Fraction`` coefficients,
bound to a :class:`Ring` that fixes the variable names, their weights
(cohomological degrees) and therefore the term order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exps = Tuple[int, ...]
Terms = Dict[Exps, Fraction]

Rational = Fraction


class UsageError(ValueError):
    """Raised when an operation is called with inconsistent arguments."""


@dataclass(frozen=True)
class Ring:
    """Variable names, positive integer weights and the induced term order.

    Variables listed first are larger.  Monomials are compared first by
    weighted degree, then reverse-lexicographically.
    """

    names: Tuple[str, ...]
    weights: Tuple[int, ...] = None  # type: ignore[assignment]
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False, hash=False)  # type: ignore[assignment]
    _keys: Dict[Exps, tuple] = field(default=None, init=False, repr=False, compare=False, hash=False)  # type: ignore[assignment]

    def __post_init__(self):
        names = tuple(self.names)
        weights = tuple(self.weights) if self.weights is not None else (1,) * len(names)
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate variable names in {names}")
        if len(weights) != len(names):
            raise UsageError("one weight per variable required")
        if any(int(w) != w or w < 1 for w in weights):
            raise UsageError(f"weights must be positive integers, got {weights}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "weights", tuple(int(w) for w in weights))
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(names)})
        object.__setattr__(self, "_keys", {})

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"unknown variable {name!r} in ring {self.names}") from None

    def degree(self, exps: Exps) -> int:
        return self.key(exps)[0]

    def key(self, exps: Exps):
        """Sort key: larger key means larger monomial."""
        k = self._keys.get(exps)
        if k is None:
            k = (sum(e * w for e, w in zip(exps, self.weights)), tuple(-e for e in reversed(exps)))
            self._keys[exps] = k
        return k

    def one_exps(self) -> Exps:
        return (0,) * len(self.names)

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        e = [0] * len(self.names)
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(v) for v in self.names)

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {self.one_exps(): c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise UsageError(f"bad exponent vector {exps} for ring {self.names}")
        c = Fraction(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def extend(self, names: Sequence[str], weights: Sequence[int] | None = None) -> "Ring":
        """Ring with extra variables appended (smaller than all existing ones)."""
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        return Ring(self.names + tuple(names), self.weights + weights)

    def to_json(self) -> dict:
        return {"vars": list(self.names), "weights": list(self.weights)}


def mono_mul(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Exps, a: Exps) -> Exps:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Exps, b: Exps) -> Exps:
    return tuple(x if x >= y else y for x, y in zip(a, b))


def mono_coprime(a: Exps, b: Exps) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class Polynomial:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Exps, Fraction] | None = None):
        self.ring = ring
        clean: Terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: Terms) -> "Polynomial":
        # terms already clean (no zeros, Fraction coefficients)
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # ---- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        """Terms in decreasing term order."""
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def leading_monomial(self) -> Exps:
        if not self.terms:
            raise UsageError("zero polynomial has no leading term")
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def degrees(self) -> set:
        return {self.ring.degree(m) for m in self.terms}

    def degree(self) -> int:
        """Largest weighted degree (-1 for zero)."""
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def variables(self) -> set:
        return {self.ring.names[i] for m in self.terms for i, e in enumerate(m) if e}

    def constant_coefficient(self) -> Fraction:
        return self.terms.get(self.ring.one_exps(), Fraction(0))

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def coefficient(self, exps: Exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    # ---- arithmetic ----------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise UsageError(f"ring mismatch: {self.ring.names} vs {other.ring.names}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, exps: Exps, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {mono_mul(m, exps): v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: Terms = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                v = out.get(m, 0) + ca * cb
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial._raw(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise UsageError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == ({self.ring.one_exps(): Fraction(other)} if other else {})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    # ---- display -------------------------------------------------------
    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_poly(self)

    # ---- serialization --------------------------------------------------
    def to_json(self) -> list:
        return [[[c.numerator, c.denominator], list(m)] for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, ring: Ring, data) -> "Polynomial":
        return cls(ring, {tuple(m): Fraction(num, den) for (num, den), m in data})


def _format_monomial(ring: Ring, m: Exps) -> str:
    parts = []
    for name, e in zip(ring.names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for m, c in p.sorted_terms():
        mono = _format_monomial(p.ring, m)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def parse_poly(ring: Ring, text: str) -> Polynomial:
    """Parse a polynomial written with ``+ - * ^`` and rational literals."""
    import ast

    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if isinstance(b, Polynomial):
                    if not b.is_constant() or b.is_zero():
                        raise UsageError("division only by nonzero constants")
                    b = b.constant_coefficient()
                return a * (1 / Fraction(b))
            if isinstance(node.op, ast.Pow):
                if not isinstance(b, (int, Fraction)) or Fraction(b).denominator != 1:
                    raise UsageError("exponent must be an integer literal")
                return a ** int(b) if isinstance(a, Polynomial) else Fraction(a) ** int(b)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            return ring.var(node.id)
        raise UsageError(f"cannot parse {text!r}")

    v = ev(tree)
    return v if isinstance(v, Polynomial) else ring.const(v)


# ---- ring homomorphisms ----------------------------------------------------

def substitute(p: Polynomial, images: Mapping[str, Polynomial], target: Ring | None = None) -> Polynomial:
    """Evaluate ``p`` at ``images`` (a polynomial for each variable of ``p``)."""
    if target is None:
        if not images:
            raise UsageError("target ring required when no images are given")
        target = next(iter(images.values())).ring
    for img in images.values():
        if img.ring != target:
            raise UsageError("all images must live in one ring")
    used = [i for i in range(p.ring.nvars) if any(m[i] for m in p.terms)]
    for i in used:
        if p.ring.names[i] not in images:
            raise UsageError(f"no image for variable {p.ring.names[i]!r}")
    powers: Dict[Tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        key = (i, e)
        if key not in powers:
            powers[key] = images[p.ring.names[i]] if e == 1 else power(i, e - 1) * images[p.ring.names[i]]
        return powers[key]

    out: Terms = {}
    for m, c in p.terms.items():
        term = target.const(c)
        for i in used:
            if m[i]:
                term = term * power(i, m[i])
        for mm, cc in term.terms.items():
            v = out.get(mm, 0) + cc
            if v:
                out[mm] = v
            else:
                del out[mm]
    return Polynomial._raw(target, out)


def graded_component(p: Polynomial, d: int) -> Polynomial:
    if d < 0:
        raise UsageError("degree must be non-negative")
    ring = p.ring
    return Polynomial._raw(ring, {m: c for m, c in p.terms.items() if ring.degree(m) == d})


def homogeneous_components(p: Polynomial) -> Dict[int, Polynomial]:
    out: Dict[int, Terms] = {}
    for m, c in p.terms.items():
        out.setdefault(p.ring.degree(m), {})[m] = c
    return {d: Polynomial._raw(p.ring, t) for d, t in sorted(out.items())}


# ---- symmetric functions --------------------------------------------------

def _as_polys(vars: Sequence) -> Tuple[Polynomial, ...]:
    vs = tuple(vars)
    if not vs:
        raise UsageError("need at least one variable")
    ring = vs[0].ring
    if any(v.ring != ring for v in vs):
        raise UsageError("variables must share a ring")
    return vs


def elementary_symmetric(i: int, vars: Sequence[Polynomial]) -> Polynomial:
    """e_i of the given polynomials (usually variables or their squares).

    ``i = 0`` gives 1 as a convenience.
    """
    vs = _as_polys(vars)
    ring = vs[0].ring
    if i == 0:
        return ring.one()
    if not 1 <= i <= len(vs):
        raise UsageError(f"elementary symmetric index {i} out of range 1..{len(vs)}")
    # e_i via the recurrence on the generating product prod(1 + x_j z)
    es = [ring.one()] + [ring.zero()] * i
    for v in vs:
        for r in range(i, 0, -1):
            es[r] = es[r] + es[r - 1] * v
    return es[i]


def power_sum(i: int, vars: Sequence[Polynomial]) -> Polynomial:
    vs = _as_polys(vars)
    if i < 1:
        raise UsageError("power sum index must be >= 1")
    out = vs[0].ring.zero()
    for v in vs:
        out = out + v ** i
    return out


@lru_cache(maxsize=None)
def newton_power_sum_in_e(i: int, nvars: int) -> Polynomial:
    """p_i written in the ring Q[e1..e_nvars] using Newton's identities."""
    if i < 1:
        raise UsageError("power sum index must be >= 1")
    ring = Ring(tuple(f"e{r}" for r in range(1, nvars + 1)), tuple(range(1, nvars + 1)))
    e = lambda r: ring.var(f"e{r}") if 1 <= r <= nvars else ring.zero()  # noqa: E731
    ps = [ring.zero()]
    for j in range(1, i + 1):
        # p_j = sum_{r=1}^{j-1} (-1)^{r-1} e_r p_{j-r} + (-1)^{j-1} j e_j
        acc = e(j).scale((-1) ** (j - 1) * j)
        for r in range(1, j):
            acc = acc + (e(r) * ps[j - r]).scale((-1) ** (r - 1))
        ps.append(acc)
    return ps[i]


def newton_convert(i: int, vars: Sequence[Polynomial]) -> Polynomial:
    """Power sum p_i computed through the elementary symmetric polynomials."""
    vs = _as_polys(vars)
    expr = newton_power_sum_in_e(i, len(vs))
    images = {f"e{r}": elementary_symmetric(r, vs) for r in range(1, len(vs) + 1)}
    return substitute(expr, images, vs[0].ring)


def monomials_of_degree(ring: Ring, d: int) -> list:
    """All exponent vectors of weighted degree ``d``, in decreasing term order."""
    out = []
    w = ring.weights
    n = len(w)

    def rec(i, rem, cur):
        if i == n:
            if rem == 0:
                out.append(tuple(cur))
            return
        for e in range(rem // w[i] + 1):
            cur.append(e)
            rec(i + 1, rem - e * w[i], cur)
            cur.pop()

    if d >= 0:
        rec(0, d, [])
    out.sort(key=ring.key, reverse=True)
    return out


def linear_form(ring: Ring, coeffs: Iterable, names: Sequence[str] | None = None) -> Polynomial:
    names = list(names) if names is not None else list(ring.names)
    out = ring.zero()
    for c, v in zip(coeffs, names):
        if c:
            out = out + ring.var(v).scale(c)
    return out


__all__ = [
    "Exps", "Rational", "Ring", "Polynomial", "UsageError", "substitute", "graded_component",
    "homogeneous_components", "elementary_symmetric", "power_sum", "newton_convert",
    "newton_power_sum_in_e", "monomials_of_degree", "format_poly", "parse_poly",
    "mono_mul", "mono_divides", "mono_div", "mono_lcm", "mono_coprime", "linear_form",
]
