"""Integer Laurent polynomials in d variables.

A polynomial is stored as a map from exponent tuples to nonzero Python ints,
kept in lexicographic order of exponents so that iteration, equality and
printing are deterministic.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class LaurentError(ValueError):
    pass


class DimensionError(LaurentError):
    pass


class NotDivisible(LaurentError):
    """Raised when an exact division has a nonzero remainder."""


class LaurentPoly:
    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Sequence[int], int] | Iterable = ()):
        if dim < 1:
            raise DimensionError(f"dimension must be >= 1, got {dim}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim:
                raise DimensionError(f"exponent {exp} has length != {dim}")
            acc[exp] = acc.get(exp, 0) + int(c)
        self.dim = dim
        self._terms = {e: acc[e] for e in sorted(acc) if acc[e] != 0}
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, dim: int) -> LaurentPoly:
        return cls(dim)

    @classmethod
    def const(cls, dim: int, c: int) -> LaurentPoly:
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def monomial(cls, exp: Sequence[int], c: int = 1) -> LaurentPoly:
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def var(cls, dim: int, k: int, power: int = 1) -> LaurentPoly:
        """The monomial u_k^power (k is 1-based)."""
        if not 1 <= k <= dim:
            raise DimensionError(f"variable u{k} out of range for dim {dim}")
        e = [0] * dim
        e[k - 1] = power
        return cls(dim, {tuple(e): 1})

    @classmethod
    def from_univariate(cls, coeffs: Sequence[int], shift: int = 0) -> LaurentPoly:
        """Build c_0 + c_1 t + ... from a low-to-high coefficient list."""
        return cls(1, {(k + shift,): c for k, c in enumerate(coeffs)})

    # basic accessors
    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def min_exponents(self) -> Exponent:
        return tuple(min(e[k] for e in self._terms) for k in range(self.dim))

    def max_exponents(self) -> Exponent:
        return tuple(max(e[k] for e in self._terms) for k in range(self.dim))

    def leading(self) -> tuple[Exponent, int]:
        e = next(reversed(self._terms))
        return e, self._terms[e]

    def trailing(self) -> tuple[Exponent, int]:
        e = next(iter(self._terms))
        return e, self._terms[e]

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0,) * self.dim}

    # ring structure
    def _check(self, other: LaurentPoly) -> None:
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.dim, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(self.dim, acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly(self.dim, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if not self.is_unit():
                raise LaurentError("negative power of a non-unit")
            (e, c), = self._terms.items()
            return LaurentPoly(self.dim, {tuple(k * n for k in e): c ** (-n)})
        out = LaurentPoly.const(self.dim, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, exp: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial u^exp."""
        return LaurentPoly(self.dim, {tuple(a + b for a, b in zip(e, exp)): c
                                      for e, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(self.dim, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.dim}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    def __call__(self, *point):
        return lp_eval(self, point)


def lp_arith(op: str, f: LaurentPoly, g: LaurentPoly | None = None) -> LaurentPoly:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "neg":
        return -f
    if op == "sub":
        return f - g
    raise ValueError(f"unknown operation {op!r}")


def lp_exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Return q with q * g == f, or raise NotDivisible.

    Long division by lex-leading terms. Newton polytopes add under
    multiplication, so every exponent of an exact quotient lies in the box
    [min(f) - min(g), max(f) - max(g)]; leaving the box proves there is no
    exact quotient and guarantees termination.
    """
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return LaurentPoly.zero(f.dim)
    lo = [a - b for a, b in zip(f.min_exponents(), g.min_exponents())]
    hi = [a - b for a, b in zip(f.max_exponents(), g.max_exponents())]
    if any(a > b for a, b in zip(lo, hi)):
        raise NotDivisible(f"{g} does not divide {f}")
    g_lead, g_c = g.leading()
    g_items = list(g.items())
    rem = dict(f._terms)
    quot: dict[Exponent, int] = {}
    while rem:
        e = max(rem)
        c = rem[e]
        qc, r = divmod(c, g_c)
        qe = tuple(a - b for a, b in zip(e, g_lead))
        if r or any(not l <= x <= h for l, x, h in zip(lo, qe, hi)):
            raise NotDivisible(f"{g} does not divide {f}")
        quot[qe] = qc
        for ge, gc in g_items:
            k = tuple(a + b for a, b in zip(qe, ge))
            v = rem.get(k, 0) - qc * gc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentPoly(f.dim, quot)


def lp_eval(f: LaurentPoly, point: Sequence[complex]) -> complex:
    if len(point) != f.dim:
        raise DimensionError(f"point has {len(point)} coordinates, polynomial has {f.dim}")
    total = 0j
    for e, c in f.items():
        term = complex(c)
        for z, k in zip(point, e):
            if k:
                if z == 0 and k < 0:
                    raise ZeroDivisionError("negative exponent evaluated at a zero coordinate")
                term *= complex(z) ** k
        total += term
    return total


def lp_normalize(f: LaurentPoly) -> LaurentPoly:
    """Canonical representative of the unit orbit {+-u^a f}."""
    if f.is_zero():
        return f
    mins = f.min_exponents()
    g = f.shift([-m for m in mins])
    if g.trailing()[1] < 0:
        g = -g
    return g


def lp_substitute(f: LaurentPoly, images: Sequence[Sequence[int]]) -> LaurentPoly:
    """Replace u_i by the monomial with exponent vector images[i]."""
    if len(images) != f.dim:
        raise DimensionError(f"need {f.dim} images, got {len(images)}")
    new_dim = len(images[0])
    if new_dim < 1 or any(len(im) != new_dim for im in images):
        raise DimensionError("images must all have the same positive length")
    acc: dict[Exponent, int] = {}
    for e, c in f.items():
        ne = tuple(sum(e[i] * images[i][k] for i in range(f.dim)) for k in range(new_dim))
        acc[ne] = acc.get(ne, 0) + c
    return LaurentPoly(new_dim, acc)


# --- univariate helpers -------------------------------------------------------

def to_coeffs(f: LaurentPoly) -> tuple[list[int], int]:
    """Low-to-high coefficient list of a univariate f together with its lowest exponent."""
    if f.dim != 1:
        raise DimensionError("univariate polynomial required")
    if f.is_zero():
        return [], 0
    lo = f.trailing()[0][0]
    hi = f.leading()[0][0]
    out = [0] * (hi - lo + 1)
    for (k,), c in f.items():
        out[k - lo] = c
    return out, lo


def _strip(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _prim_rem(a: list[int], b: list[int]) -> list[int]:
    """Primitive part of the pseudo-remainder of a by b (low-to-high lists)."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for k, bc in enumerate(b):
            a[k + shift] -= la * bc
        _strip(a)
    if not a:
        return a
    c = 0
    for x in a:
        c = math.gcd(c, x)
    return [x // c for x in a]


def uni_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """gcd in Z[t, t^-1], normalized; the integer content gcd is included."""
    if f.dim != 1 or g.dim != 1:
        raise DimensionError("uni_gcd supports only univariate polynomials")
    if f.is_zero():
        return lp_normalize(g)
    if g.is_zero():
        return lp_normalize(f)
    cont = math.gcd(f.content(), g.content())
    a, _ = to_coeffs(f)
    b, _ = to_coeffs(g)
    a = [x // f.content() for x in a]
    b = [x // g.content() for x in b]
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _prim_rem(a, b)
    return lp_normalize(LaurentPoly.from_univariate([cont * x for x in a]))


def derivative_coeffs(p: Sequence[int]) -> list[int]:
    return [k * c for k, c in enumerate(p)][1:]


def squarefree_parts(p: Sequence[int]) -> list[tuple[list[int], int]]:
    """Yun's decomposition of an integer polynomial p = c * prod a_k^k.

    Returns [(a_k, k), ...] with each a_k primitive and squarefree; the unit
    and content are not included. Arithmetic is over Q with Fractions.
    """
    p = _strip([Fraction(x) for x in p])
    if len(p) <= 1:
        return []

    def divide(a, b):
        a = list(a)
        q = [Fraction(0)] * (len(a) - len(b) + 1)
        while len(a) >= len(b) and a:
            coef = a[-1] / b[-1]
            s = len(a) - len(b)
            q[s] = coef
            for k, bc in enumerate(b):
                a[k + s] -= coef * bc
            _strip(a)
        return _strip(q), a

    def gcd(a, b):
        while b:
            _, r = divide(a, b)
            a, b = b, r
        return [x / a[-1] for x in a]

    def integral(a):
        den = 1
        for x in a:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in a]
        c = 0
        for x in ints:
            c = math.gcd(c, x)
        ints = [x // c for x in ints]
        if ints[-1] < 0:
            ints = [-x for x in ints]
        return ints

    dp = [k * c for k, c in enumerate(p)][1:]
    a0 = gcd(p, dp)
    b, _ = divide(p, a0)
    c, _ = divide(dp, a0)
    db = [k * x for k, x in enumerate(b)][1:]
    d = [x - y for x, y in _zip_pad(c, db)]
    _strip(d)
    out = []
    k = 1
    while len(b) > 1:
        a = gcd(b, d) if d else [x / b[-1] for x in b]
        if len(a) > 1:
            out.append((integral(a), k))
        b, _ = divide(b, a)
        c, _ = divide(d, a) if d else ([], [])
        db = [k2 * x for k2, x in enumerate(b)][1:]
        d = [x - y for x, y in _zip_pad(c, db)]
        _strip(d)
        k += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    za = list(a) + [0] * (n - len(a))
    zb = list(b) + [0] * (n - len(b))
    return zip(za, zb)


# --- text grammar ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>u(?P<idx>\d+)?|t)(?:\^(?P<pow>[+-]?\d+))?|(?P<op>[-+*]))")


def parse_poly(text: str, dim: int | None = None) -> LaurentPoly:
    """Parse e.g. ``"u1 + u2 - 1 + u1^-1 + u2^-1"``; bare ``u`` and ``t`` are aliases for u1."""
    pos = 0
    text = text.strip()
    terms: list[tuple[int, dict[int, int]]] = []
    sign = 1
    coef: int | None = None
    factors: dict[int, int] = {}
    started = False
    max_idx = 1
    expect_term = True

    def flush():
        nonlocal coef, factors, started
        if not started:
            raise LaurentError(f"empty term in {text!r}")
        terms.append((sign * (1 if coef is None else coef), factors))
        coef, factors, started = None, {}, False

    if not text:
        raise LaurentError("empty polynomial text")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise LaurentError(f"cannot parse {text!r} at position {pos}")
        pos = m.end()
        if m.group("op") in ("+", "-"):
            if started:
                flush()
                sign = 1
            elif not expect_term:
                raise LaurentError(f"misplaced operator in {text!r}")
            sign *= -1 if m.group("op") == "-" else 1
            expect_term = True
        elif m.group("op") == "*":
            if not started:
                raise LaurentError(f"misplaced '*' in {text!r}")
        elif m.group("num") is not None:
            if coef is not None or factors:
                raise LaurentError(f"misplaced coefficient in {text!r}")
            coef = int(m.group("num"))
            started = True
            expect_term = False
        else:
            idx = int(m.group("idx")) if m.group("idx") else 1
            if idx < 1:
                raise LaurentError("variable indices start at 1")
            max_idx = max(max_idx, idx)
            power = int(m.group("pow")) if m.group("pow") else 1
            factors[idx] = factors.get(idx, 0) + power
            started = True
            expect_term = False
    flush()
    if dim is None:
        dim = max_idx
    elif max_idx > dim:
        raise DimensionError(f"u{max_idx} used but dim is {dim}")
    out = {}
    for c, fac in terms:
        e = [0] * dim
        for k, p in fac.items():
            e[k - 1] += p
        e = tuple(e)
        out[e] = out.get(e, 0) + c
    return LaurentPoly(dim, out)


def format_poly(f: LaurentPoly) -> str:
    """Render in the same grammar parse_poly accepts, highest lex term first."""
    if f.is_zero():
        return "0"
    parts = []
    for e, c in reversed(list(f.items())):
        mono = "*".join(f"u{k + 1}" + (f"^{p}" if p != 1 else "")
                        for k, p in enumerate(e) if p)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)
