"""Exact rationals and sparse multivariate polynomials.

Polynomials live in Q[x, a1, ..., an].  Variable index 0 is the indeterminate
``x`` and index ``i >= 1`` is the root variable ``a_i``.  Terms are kept in a
dict keyed by dense exponent tuples; zero coefficients are never stored.

The monomial order is graded lexicographic with ``x < a1 < ... < an``: total
degree first, then the exponent of the highest variable ``an``, then ``a(n-1)``
and so on down to ``x``.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from operator import add
from typing import Dict, Iterable, Mapping, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


class ContextError(ValueError):
    """Polynomials or variables from incompatible ambient contexts."""


class InexactDivisionError(ArithmeticError):
    """An exact division left a nonzero remainder."""


def normalize_scalar(c) -> Scalar:
    """Return ``c`` as an int when integral, else as a reduced Fraction."""
    if isinstance(c, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"not an exact rational: {c!r}")


def format_rational(c) -> str:
    """Canonical text form: ``"-3/4"``, ``"7"``."""
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer token.  Decimals and floats are rejected."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def grlex_key(e: Exponent) -> tuple:
    return (sum(e),) + tuple(reversed(e))


def var_name(i: int) -> str:
    return "x" if i == 0 else f"a{i}"


class SparsePoly:
    """Immutable sparse polynomial over Q in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None):
        if nvars < 1:
            raise ContextError("a polynomial context needs at least one variable")
        self.nvars = nvars
        clean: Dict[Exponent, Scalar] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ContextError(f"exponent {e} does not fit {nvars} variables")
                if any(k < 0 for k in e):
                    raise ValueError(f"negative exponent in {e}")
                if c:
                    clean[tuple(e)] = normalize_scalar(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponent, Scalar]) -> "SparsePoly":
        # caller guarantees canonical terms
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "SparsePoly":
        c = normalize_scalar(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "SparsePoly":
        _check_var(nvars, i)
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def root_difference(cls, nvars: int, a: int, b: int) -> "SparsePoly":
        """The linear form ``a_a - a_b`` (either index may be 0 for ``x``)."""
        return cls.var(nvars, a) - cls.var(nvars, b)

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial; raises if any variable remains."""
        if not self.is_constant():
            raise ValueError(f"polynomial is not constant: {self}")
        return Fraction(self.terms.get((0,) * self.nvars, 0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, v: int) -> int:
        """Degree in variable ``v``; -1 for the zero polynomial."""
        _check_var(self.nvars, v)
        if not self.terms:
            return -1
        return max(e[v] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading_term(self) -> Tuple[Exponent, Scalar]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def coefficient(self, v: int, k: int) -> "SparsePoly":
        """Coefficient of ``var_v ** k`` viewing self as univariate in ``v``."""
        _check_var(self.nvars, v)
        out = {}
        for e, c in self.terms.items():
            if e[v] == k:
                out[e[:v] + (0,) + e[v + 1:]] = c
        return SparsePoly._raw(self.nvars, out)

    def used_variables(self) -> set:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            if other.nvars != self.nvars:
                raise ContextError(f"context mismatch: {self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return SparsePoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SparsePoly._raw(self.nvars, {e: normalize_scalar(c) for e, c in out.items()})

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = normalize_scalar(other)
            if not c:
                return SparsePoly.zero(self.nvars)
            return SparsePoly._raw(
                self.nvars, {e: normalize_scalar(v * c) for e, v in self.terms.items()}
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: Dict[Exponent, Scalar] = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(add, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return SparsePoly._raw(
            self.nvars, {e: normalize_scalar(c) for e, c in out.items() if c}
        )

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = SparsePoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and substitution ---------------------------------------

    def diff(self, v: int) -> "SparsePoly":
        """Formal partial derivative in variable ``v``."""
        _check_var(self.nvars, v)
        out = {}
        for e, c in self.terms.items():
            k = e[v]
            if k:
                out[e[:v] + (k - 1,) + e[v + 1:]] = c * k
        return SparsePoly._raw(self.nvars, out)

    def subs(self, v: int, value) -> "SparsePoly":
        """Substitute a rational or a polynomial (same context) for variable ``v``."""
        _check_var(self.nvars, v)
        if isinstance(value, SparsePoly):
            if value.nvars != self.nvars:
                raise ContextError("substituted value lives in a different context")
            if value.is_constant():
                value = value.constant_value()
            else:
                return self._subs_poly(v, value)
        value = normalize_scalar(value)
        out: Dict[Exponent, Scalar] = {}
        for e, c in self.terms.items():
            k = e[v]
            e2 = e[:v] + (0,) + e[v + 1:]
            out[e2] = out.get(e2, 0) + c * value**k
        return SparsePoly._raw(
            self.nvars, {e: normalize_scalar(c) for e, c in out.items() if c}
        )

    def _subs_poly(self, v: int, value: "SparsePoly") -> "SparsePoly":
        if len(value.terms) == 1:
            # monomial substitution is an exponent shift
            (m, mc), = value.terms.items()
            out: Dict[Exponent, Scalar] = {}
            for e, c in self.terms.items():
                k = e[v]
                base = list(e)
                base[v] = 0
                e2 = tuple(b + k * j for b, j in zip(base, m))
                out[e2] = out.get(e2, 0) + c * mc**k
            return SparsePoly._raw(
                self.nvars, {e: normalize_scalar(c) for e, c in out.items() if c}
            )
        d = self.degree(v)
        powers = [SparsePoly.constant(self.nvars, 1)]
        for _ in range(d):
            powers.append(powers[-1] * value)
        result = SparsePoly.zero(self.nvars)
        for k in range(d + 1):
            ck = self.coefficient(v, k)
            if ck:
                result = result + ck * powers[k]
        return result

    def evaluate(self, values: Mapping[int, Scalar]) -> "SparsePoly":
        """Substitute rationals for several variables at once."""
        vals = {}
        for v, val in values.items():
            _check_var(self.nvars, v)
            vals[v] = normalize_scalar(val)
        out: Dict[Exponent, Scalar] = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for v, val in vals.items():
                if e[v]:
                    c = c * val ** e[v]
                    e2[v] = 0
            if c:
                e2 = tuple(e2)
                out[e2] = out.get(e2, 0) + c
        return SparsePoly._raw(
            self.nvars, {e: normalize_scalar(c) for e, c in out.items() if c}
        )

    def rename(self, mapping: Mapping[int, int]) -> "SparsePoly":
        """Permute variables: variable ``i`` becomes ``mapping.get(i, i)``."""
        perm = [mapping.get(i, i) for i in range(self.nvars)]
        if sorted(perm) != list(range(self.nvars)):
            raise ContextError("renaming must be a permutation of the variables")
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * self.nvars
            for i, k in enumerate(e):
                e2[perm[i]] = k
            out[tuple(e2)] = c
        return SparsePoly._raw(self.nvars, out)

    # -- division ---------------------------------------------------------

    def exact_div(self, d: "SparsePoly") -> "SparsePoly":
        """Quotient ``self / d``; raises InexactDivisionError on a remainder."""
        d = self._coerce(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if d.is_constant():
            return self * (1 / Fraction(d.constant_value()))
        lm, lc = d.leading_term()
        dterms = [(e, c) for e, c in d.terms.items() if e != lm]
        rem = dict(self.terms)
        heap = [tuple(-k for k in grlex_key(e)) + (e,) for e in rem]
        heapq.heapify(heap)
        quot: Dict[Exponent, Scalar] = {}
        while heap:
            item = heapq.heappop(heap)
            e = item[-1]
            c = rem.pop(e, 0)
            if not c:
                continue
            shift = tuple(i - j for i, j in zip(e, lm))
            if min(shift) < 0:
                raise InexactDivisionError(f"{self} is not divisible by {d}")
            if isinstance(c, int) and isinstance(lc, int) and c % lc == 0:
                q = c // lc
            else:
                q = normalize_scalar(Fraction(c) / lc)
            quot[shift] = q
            for e2, c2 in dterms:
                m = tuple(i + j for i, j in zip(shift, e2))
                old = rem.get(m)
                new = (old or 0) - q * c2
                if new:
                    rem[m] = new
                    if old is None:
                        heapq.heappush(heap, tuple(-k for k in grlex_key(m)) + (m,))
                elif old is not None:
                    del rem[m]
        return SparsePoly._raw(self.nvars, quot)

    # -- text -------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            mono = "*".join(
                var_name(i) + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            if idx == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"SparsePoly({self.nvars}, {str(self)!r})"

    @classmethod
    def parse(cls, nvars: int, text: str) -> "SparsePoly":
        """Inverse of ``str``: parses the canonical term-list form."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        chunks = re.findall(r"[+-][^+-]+", s)
        if "".join(chunks) != s:
            raise ValueError(f"malformed polynomial: {text!r}")
        terms: Dict[Exponent, Scalar] = {}
        for chunk in chunks:
            sign = -1 if chunk[0] == "-" else 1
            coeff: Scalar = 1
            e = [0] * nvars
            for factor in chunk[1:].split("*"):
                fm = re.fullmatch(r"(x|a(\d+))(?:\^(\d+))?", factor)
                if fm:
                    v = 0 if fm.group(1) == "x" else int(fm.group(2))
                    _check_var(nvars, v)
                    e[v] += int(fm.group(3) or 1)
                else:
                    coeff = coeff * parse_rational(factor)
            e = tuple(e)
            terms[e] = terms.get(e, 0) + sign * coeff
        return cls(nvars, terms)


def _check_var(nvars: int, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < nvars:
        raise ContextError(f"variable index {v} outside context of {nvars} variables")


def poly_arith(p: SparsePoly, q: SparsePoly, kind: str) -> SparsePoly:
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise ValueError(f"unknown kind {kind!r}")


def partial_derivative(p: SparsePoly, v: int) -> SparsePoly:
    return p.diff(v)


def substitute(p: SparsePoly, v: int, value) -> SparsePoly:
    return p.subs(v, value)


def deleted_product(multiplicities: Iterable[int] | int, deleted: Iterable[int] = ()) -> SparsePoly:
    """``prod_{m not in deleted} (x - a_m)^{k_m}`` in the context ``Q[x, a1..ar]``.

    ``multiplicities`` is either a root count (all simple) or the list of
    multiplicities ``k_1..k_r``.  Root indices are 1-based.
    """
    if isinstance(multiplicities, int):
        mults = [1] * multiplicities
    else:
        mults = list(multiplicities)
    r = len(mults)
    deleted = set(deleted)
    for m in deleted:
        if not 1 <= m <= r:
            raise ValueError(f"root index {m} outside 1..{r}")
    nvars = r + 1
    result = SparsePoly.constant(nvars, 1)
    for m in range(1, r + 1):
        if m not in deleted:
            result = result * SparsePoly.root_difference(nvars, 0, m) ** mults[m - 1]
    return result


def divide_linear_difference(p: SparsePoly, a: int, b: int) -> Tuple[SparsePoly, bool]:
    """Divide ``p`` by ``a_a - a_b`` using synthetic division in ``a_a``.

    Returns ``(quotient, divisible)``.  The remainder is ``p`` with
    ``a_a := a_b``; the quotient is meaningful only when ``divisible``.
    """
    if a == b:
        raise ValueError("root indices of a difference must differ")
    if a < 1 or b < 1:
        raise ValueError("root indices start at 1")
    _check_var(p.nvars, a)
    _check_var(p.nvars, b)
    nv = p.nvars
    if p.is_zero():
        return p, True
    # group by exponent of a_a: coeffs[k] = {exponent with a_a zeroed: c}
    d = p.degree(a)
    coeffs = [dict() for _ in range(d + 1)]
    for e, c in p.terms.items():
        coeffs[e[a]][e[:a] + (0,) + e[a + 1:]] = c
    # q_{d-1} = c_d ; q_{k-1} = c_k + a_b * q_k ; remainder = c_0 + a_b * q_0
    quot_coeffs = [None] * d
    carry: Dict[Exponent, Scalar] = {}
    for k in range(d, 0, -1):
        cur = dict(coeffs[k])
        for e, c in carry.items():
            s = cur.get(e, 0) + c
            if s:
                cur[e] = s
            else:
                cur.pop(e, None)
        quot_coeffs[k - 1] = cur
        carry = {e[:b] + (e[b] + 1,) + e[b + 1:]: c for e, c in cur.items()}
    rem = dict(coeffs[0])
    for e, c in carry.items():
        s = rem.get(e, 0) + c
        if s:
            rem[e] = s
        else:
            rem.pop(e, None)
    out = {}
    for k, ck in enumerate(quot_coeffs):
        for e, c in ck.items():
            out[e[:a] + (k,) + e[a + 1:]] = normalize_scalar(c)
    return SparsePoly._raw(nv, out), not rem


def discriminant_square_product(indices: Iterable[int], nvars: int | None = None) -> SparsePoly:
    """``prod_{i<j in S} (a_i - a_j)^2``; the context defaults to ``max(S) + 1`` variables."""
    idx = sorted(set(indices))
    if not idx:
        raise ValueError("index set must be nonempty")
    if idx[0] < 1:
        raise ValueError("root indices start at 1")
    if nvars is None:
        nvars = idx[-1] + 1
    result = SparsePoly.constant(nvars, 1)
    for i, j in combinations(idx, 2):
        result = result * SparsePoly.root_difference(nvars, i, j) ** 2
    return result
