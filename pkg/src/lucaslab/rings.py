"""Exact coefficient arithmetic for the rest of the package.

Three layers share one canonical representation:

* arbitrary-precision rationals (``fractions.Fraction``),
* a quadratic extension Q(w) with w*w equal to a configured integer,
* multivariate Laurent polynomials in the fixed variables x, y, z, r
  with extension coefficients.

Values are immutable.  Arithmetic promotes rationals into the extension
and the extension into the Laurent layer as needed, and demotes results
back to the simplest layer, so equal values always compare equal and
render identically.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Union

VARS = ("x", "y", "z", "r")

_ZERO4 = (0, 0, 0, 0)
_F0 = Fraction(0)
_F1 = Fraction(1)


class RingError(Exception):
    """Base class for ring arithmetic errors."""


class ContextMismatch(RingError):
    """Two operands live in extensions with different squares."""


class NotInvertible(RingError):
    """Inversion was requested for a non-unit."""


class NotDivisible(RingError):
    """No exact quotient exists in the ring."""


class DivisionByZero(RingError):
    pass


class NonInvertibleSubstitution(RingError):
    """A variable with negative exponents was bound to a non-unit."""


class ExprSyntaxError(RingError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class QuadExt:
    """Extension element a + b*w; the ring it lives in fixes w*w."""

    a: Fraction
    b: Fraction


class LaurentPoly:
    """Laurent polynomial: map from exponent vectors over (x, y, z, r)
    to nonzero QuadExt coefficients.  Treated as immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict[tuple[int, int, int, int], QuadExt]):
        self.terms = terms
        self._hash: int | None = None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({len(self.terms)} terms)"


Payload = Union[Fraction, QuadExt, LaurentPoly]


def _as_terms(value: Payload) -> dict[tuple[int, int, int, int], QuadExt]:
    if isinstance(value, Fraction):
        return {_ZERO4: QuadExt(value, _F0)} if value else {}
    if isinstance(value, QuadExt):
        return {_ZERO4: value}
    return value.terms


def _from_terms(terms: dict[tuple[int, int, int, int], QuadExt]) -> Payload:
    if not terms:
        return _F0
    if len(terms) == 1 and _ZERO4 in terms:
        c = terms[_ZERO4]
        if not c.b:
            return c.a
        return c
    return LaurentPoly(terms)


def _qadd(u: QuadExt, v: QuadExt) -> QuadExt:
    return QuadExt(u.a + v.a, u.b + v.b)


def _qneg(u: QuadExt) -> QuadExt:
    return QuadExt(-u.a, -u.b)


def _qmul(u: QuadExt, v: QuadExt, d: int) -> QuadExt:
    # (a1 + b1 w)(a2 + b2 w) with w^2 = d
    return QuadExt(u.a * v.a + u.b * v.b * d, u.a * v.b + u.b * v.a)


def _qinv(u: QuadExt, d: int) -> QuadExt:
    if not u.b:
        if not u.a:
            raise NotInvertible("zero is not invertible")
        return QuadExt(1 / u.a, _F0)
    norm = u.a * u.a - u.b * u.b * d
    if not norm:
        raise NotInvertible("element has zero norm in this extension")
    return QuadExt(u.a / norm, -u.b / norm)


def _join_rings(r1: "Ring", r2: "Ring") -> "Ring":
    if r1 is r2 or r1.ext_square == r2.ext_square:
        return r1
    if r1.ext_square is None:
        return r2
    if r2.ext_square is None:
        return r1
    raise ContextMismatch(
        f"cannot mix extensions w^2={r1.ext_square} and w^2={r2.ext_square}"
    )


class Ring:
    """Arithmetic context: rationals, an optional quadratic extension
    (``ext_square`` is the square of the generator ``w``), and Laurent
    polynomials in x, y, z, r on top."""

    __slots__ = ("ext_square", "zero", "one")

    def __init__(self, ext_square: int | None = None):
        if ext_square is not None:
            ext_square = int(ext_square)
            if ext_square == 0:
                raise ValueError("ext_square must be nonzero")
        self.ext_square = ext_square
        self.zero = RingElem(self, _F0)
        self.one = RingElem(self, _F1)

    def __repr__(self) -> str:
        return f"Ring(ext_square={self.ext_square})"

    def element(self, value) -> "RingElem":
        """Adopt an int, Fraction, or compatible RingElem into this ring."""
        if isinstance(value, RingElem):
            ring = _join_rings(self, value.ring)
            return value if ring is value.ring else RingElem(ring, value.value)
        if isinstance(value, int):
            return RingElem(self, Fraction(value))
        if isinstance(value, Fraction):
            return RingElem(self, value)
        raise TypeError(f"cannot make a ring element from {value!r}")

    def rational(self, p: int, q: int = 1) -> "RingElem":
        return RingElem(self, Fraction(p, q))

    @property
    def omega(self) -> "RingElem":
        """The extension generator w."""
        if self.ext_square is None:
            raise ValueError("ring has no extension generator configured")
        return RingElem(self, QuadExt(_F0, _F1))

    def var(self, name: str) -> "RingElem":
        if name not in VARS:
            raise ValueError(f"unknown variable {name!r}; expected one of {VARS}")
        expo = tuple(1 if v == name else 0 for v in VARS)
        return RingElem(self, LaurentPoly({expo: QuadExt(_F1, _F0)}))

    def parse(self, text: str) -> "RingElem":
        """Parse an expression in the grammar: integers, rationals p/q,
        variables x y z r, generator w, operators + - * ^, parentheses.
        Exponents are integer literals, possibly negative."""
        return _Parser(self, text).run()


class RingElem:
    """Immutable tagged value: Fraction, QuadExt, or LaurentPoly,
    together with its ring context."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value: Payload):
        self.ring = ring
        self.value = value

    # -- queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return isinstance(self.value, Fraction) and not self.value

    @property
    def is_rational(self) -> bool:
        return isinstance(self.value, Fraction)

    def as_fraction(self) -> Fraction:
        if not isinstance(self.value, Fraction):
            raise ValueError(f"{self!r} is not a rational value")
        return self.value

    def as_int(self) -> int:
        q = self.as_fraction()
        if q.denominator != 1:
            raise ValueError(f"{q} is not an integer")
        return q.numerator

    @property
    def uses_omega(self) -> bool:
        if isinstance(self.value, Fraction):
            return False
        if isinstance(self.value, QuadExt):
            return bool(self.value.b)
        return any(c.b for c in self.value.terms.values())

    # -- arithmetic --------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RingElem):
            return _join_rings(self.ring, other.ring), self.value, other.value
        if isinstance(other, int):
            return self.ring, self.value, Fraction(other)
        if isinstance(other, Fraction):
            return self.ring, self.value, other
        return None

    def __add__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        ring, a, b = co
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return RingElem(ring, a + b)
        out = dict(_as_terms(a))
        for e, c in _as_terms(b).items():
            s = _qadd(out[e], c) if e in out else c
            if s.a or s.b:
                out[e] = s
            else:
                out.pop(e, None)
        return RingElem(ring, _from_terms(out))

    __radd__ = __add__

    def __neg__(self):
        v = self.value
        if isinstance(v, Fraction):
            return RingElem(self.ring, -v)
        return RingElem(
            self.ring, _from_terms({e: _qneg(c) for e, c in _as_terms(v).items()})
        )

    def __sub__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        ring, a, b = co
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return RingElem(ring, a - b)
        return self + RingElem(ring, b).__neg__()

    def __rsub__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        ring, _, b = co
        return RingElem(ring, b) + self.__neg__()

    def __mul__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        ring, a, b = co
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return RingElem(ring, a * b)
        d = ring.ext_square or 0
        ta, tb = _as_terms(a), _as_terms(b)
        if len(ta) > len(tb):
            ta, tb = tb, ta
        out: dict[tuple[int, int, int, int], QuadExt] = {}
        for e1, c1 in ta.items():
            for e2, c2 in tb.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                p = _qmul(c1, c2, d)
                if e in out:
                    p = _qadd(out[e], p)
                if p.a or p.b:
                    out[e] = p
                else:
                    out.pop(e, None)
        return RingElem(ring, _from_terms(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if isinstance(self.value, Fraction):
            if exponent < 0 and not self.value:
                raise NotInvertible("zero is not invertible")
            return RingElem(self.ring, self.value**exponent)
        base = self if exponent >= 0 else self.inverse()
        e = abs(exponent)
        if e == 0:
            return self.ring.one
        result = None
        while True:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if not e:
                return result
            base = base * base

    def inverse(self) -> "RingElem":
        """Multiplicative inverse; only constants with nonzero norm and
        monomials are units here."""
        v = self.value
        if isinstance(v, Fraction):
            if not v:
                raise NotInvertible("zero is not invertible")
            return RingElem(self.ring, 1 / v)
        d = self.ring.ext_square or 0
        terms = _as_terms(v)
        if len(terms) != 1:
            raise NotInvertible("only monomials are invertible")
        (e, c), = terms.items()
        ci = _qinv(c, d)
        ei = (-e[0], -e[1], -e[2], -e[3])
        return RingElem(self.ring, _from_terms({ei: ci}))

    def exact_div(self, other) -> "RingElem":
        """Exact quotient q with q * other == self, or NotDivisible."""
        co = self._coerce(other)
        if co is None:
            raise TypeError(f"cannot divide by {other!r}")
        ring, a, b = co
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            if not b:
                raise DivisionByZero("division by zero")
            return RingElem(ring, a / b)
        ta, tb = _as_terms(a), _as_terms(b)
        if not tb:
            raise DivisionByZero("division by zero")
        if not ta:
            return ring.zero
        d = ring.ext_square or 0
        if len(tb) == 1:
            (eb, cb), = tb.items()
            try:
                ci = _qinv(cb, d)
            except NotInvertible as exc:
                raise NotDivisible(str(exc)) from exc
            out = {}
            for e, c in ta.items():
                ee = (e[0] - eb[0], e[1] - eb[1], e[2] - eb[2], e[3] - eb[3])
                out[ee] = _qmul(c, ci, d)
            return RingElem(ring, _from_terms(out))
        sa = _min_exponents(ta)
        sb = _min_exponents(tb)
        q = _poly_divide(_shift(ta, sa, -1), _shift(tb, sb, -1), d)
        delta = (sa[0] - sb[0], sa[1] - sb[1], sa[2] - sb[2], sa[3] - sb[3])
        return RingElem(ring, _from_terms(_shift(q, delta, +1)))

    def __truediv__(self, other):
        return self.exact_div(other)

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.ring.element(other).exact_div(self)
        return NotImplemented

    # -- substitution ------------------------------------------------

    def substitute(self, bindings: Mapping[str, object]) -> "RingElem":
        """Simultaneously replace variables by values, then canonicalize.
        Binding a variable that occurs with negative exponents to a
        non-unit raises NonInvertibleSubstitution."""
        ring = self.ring
        resolved: dict[int, RingElem] = {}
        for name, val in bindings.items():
            if name not in VARS:
                raise ValueError(f"unknown variable {name!r}")
            el = val if isinstance(val, RingElem) else ring.element(val)
            ring = _join_rings(ring, el.ring)
            resolved[VARS.index(name)] = el
        total = RingElem(ring, _F0)
        pow_cache: dict[tuple[int, int], RingElem] = {}
        for e, c in _as_terms(self.value).items():
            residual = list(e)
            factor: RingElem | None = None
            for i, el in resolved.items():
                k = e[i]
                if not k:
                    continue
                residual[i] = 0
                p = pow_cache.get((i, k))
                if p is None:
                    try:
                        p = el**k
                    except NotInvertible as exc:
                        raise NonInvertibleSubstitution(
                            f"{VARS[i]} occurs with exponent {k} but its value "
                            f"is not invertible"
                        ) from exc
                    pow_cache[(i, k)] = p
                factor = p if factor is None else factor * p
            term = RingElem(ring, _from_terms({tuple(residual): c}))
            if factor is not None:
                term = term * factor
            total = total + term
        return total

    # -- comparisons, rendering ---------------------------------------

    def _key(self):
        terms = _as_terms(self.value)
        d = self.ring.ext_square if self.uses_omega else None
        return d, tuple(sorted((e, (c.a, c.b)) for e, c in terms.items()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return isinstance(self.value, Fraction) and self.value == other
        if not isinstance(other, RingElem):
            return NotImplemented
        if self.value.__class__ is not other.value.__class__:
            return False
        if self.value != other.value:
            return False
        if self.uses_omega and self.ring.ext_square != other.ring.ext_square:
            return False
        return True

    def __hash__(self) -> int:
        return hash(self._key())

    def __bool__(self) -> bool:
        return not self.is_zero

    def render(self) -> str:
        """Canonical text form: terms in descending lexicographic order
        of exponent vectors; round-trips through Ring.parse."""
        terms = _as_terms(self.value)
        if not terms:
            return "0"
        parts = []
        for e in sorted(terms, reverse=True):
            neg, body = _term_text(e, terms[e])
            if not parts:
                parts.append("-" + body if neg else body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"<RingElem {self.render()}>"


def _min_exponents(terms) -> tuple[int, int, int, int]:
    it: Iterator = iter(terms)
    first = next(it)
    lo = list(first)
    for e in it:
        for i in range(4):
            if e[i] < lo[i]:
                lo[i] = e[i]
    return tuple(lo)


def _shift(terms, delta, sign):
    return {
        (
            e[0] + sign * delta[0],
            e[1] + sign * delta[1],
            e[2] + sign * delta[2],
            e[3] + sign * delta[3],
        ): c
        for e, c in terms.items()
    }


def _poly_divide(ta, tb, d):
    """Exact division of plain polynomials (nonnegative exponents) by a
    multi-term divisor under descending lex order; raises NotDivisible."""
    lt_b = max(tb)
    try:
        cb_inv = _qinv(tb[lt_b], d)
    except NotInvertible as exc:
        raise NotDivisible(str(exc)) from exc
    rem = dict(ta)
    quo: dict[tuple[int, int, int, int], QuadExt] = {}
    while rem:
        lt_r = max(rem)
        diff = (lt_r[0] - lt_b[0], lt_r[1] - lt_b[1], lt_r[2] - lt_b[2], lt_r[3] - lt_b[3])
        if diff[0] < 0 or diff[1] < 0 or diff[2] < 0 or diff[3] < 0:
            raise NotDivisible("leading term is not divisible")
        qc = _qmul(rem[lt_r], cb_inv, d)
        quo[diff] = qc
        for e, c in tb.items():
            ee = (e[0] + diff[0], e[1] + diff[1], e[2] + diff[2], e[3] + diff[3])
            s = _qadd(rem[ee], _qneg(_qmul(qc, c, d))) if ee in rem else _qneg(_qmul(qc, c, d))
            if s.a or s.b:
                rem[ee] = s
            else:
                rem.pop(ee, None)
    return quo


# -- rendering helpers ------------------------------------------------


def _term_text(expo, coef) -> tuple[bool, str]:
    monos = []
    for name, k in zip(VARS, expo):
        if k == 1:
            monos.append(name)
        elif k:
            monos.append(f"{name}^{k}")
    a, b = coef.a, coef.b
    if not b:
        neg = a < 0
        mag = -a if neg else a
        if not monos:
            return neg, str(mag)
        if mag == 1:
            return neg, "*".join(monos)
        return neg, "*".join([str(mag), *monos])
    if not a:
        neg = b < 0
        mag = -b if neg else b
        head = [] if mag == 1 else [str(mag)]
        return neg, "*".join([*head, "w", *monos])
    neg = a < 0
    aa, bb = (-a, -b) if neg else (a, b)
    wmag = -bb if bb < 0 else bb
    wpart = "w" if wmag == 1 else f"{wmag}*w"
    inner = f"({aa} {'-' if bb < 0 else '+'} {wpart})"
    return neg, "*".join([inner, *monos])


# -- expression parser ------------------------------------------------


class _Parser:
    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def run(self) -> RingElem:
        value = self.expr()
        kind, _, at = self.peek()
        if kind != "end":
            raise ExprSyntaxError("unexpected trailing input", at)
        return value

    def expr(self) -> RingElem:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RingElem:
        value = self.factor()
        while self.peek()[0] == "*":
            self.advance()
            value = value * self.factor()
        return value

    def factor(self) -> RingElem:
        if self.peek()[0] == "-":
            self.advance()
            return -self.factor()
        value = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            value = value ** self.int_literal()
        return value

    def atom(self) -> RingElem:
        kind, val, at = self.peek()
        if kind == "num":
            self.advance()
            return self.ring.element(val)
        if kind == "name":
            self.advance()
            if val == "w":
                if self.ring.ext_square is None:
                    raise ExprSyntaxError(
                        "generator w needs a ring with an extension square", at
                    )
                return self.ring.omega
            if val in VARS:
                return self.ring.var(val)
            raise ExprSyntaxError(f"unknown name {val!r}", at)
        if kind == "(":
            self.advance()
            value = self.expr()
            k2, _, at2 = self.peek()
            if k2 != ")":
                raise ExprSyntaxError("expected ')'", at2)
            self.advance()
            return value
        raise ExprSyntaxError("expected a number, variable, or '('", at)

    def int_literal(self) -> int:
        sign = 1
        if self.peek()[0] == "-":
            self.advance()
            sign = -1
        kind, val, at = self.peek()
        if kind != "num" or val.denominator != 1:
            raise ExprSyntaxError("exponent must be an integer literal", at)
        self.advance()
        return sign * val.numerator


def _tokenize(s: str):
    out = []
    i, n = 0, len(s)
    while i < n:
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and s[j].isdigit():
                j += 1
            num = int(s[i:j])
            if j + 1 < n and s[j] == "/" and s[j + 1].isdigit():
                k = j + 1
                while k < n and s[k].isdigit():
                    k += 1
                den = int(s[j + 1 : k])
                if den == 0:
                    raise ExprSyntaxError("zero denominator", i)
                out.append(("num", Fraction(num, den), i))
                i = k
            else:
                out.append(("num", Fraction(num), i))
                i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and s[j].isalnum():
                j += 1
            out.append(("name", s[i:j], i))
            i = j
            continue
        if ch in "+-*^()":
            out.append((ch, ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    out.append(("end", "", n))
    return out
