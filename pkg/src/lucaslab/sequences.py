"""Sequence evaluation over exact rings.

Covers the two Lucas-type families u and v (recurrence
a(n) = y*a(n-1) - z*a(n-2) with seeds 0,1 and 2,y), Chebyshev T and U
(coefficient 2y, unit z), and the usual named integer and polynomial
specializations.  Every family extends to negative indices: u and v by
running the recurrence backwards with exact division by z, Chebyshev by
running its recurrence backwards (no division needed).

Evaluation routes:

* windowed iteration (``LucasSeq`` / ``ChebSeq``), the reference path;
* fast doubling in O(log n) ring multiplications (``lucas_uv_fast``);
* closed form in a quadratic extension (``binet_value``).
"""
from __future__ import annotations

from enum import Enum
from fractions import Fraction
from itertools import repeat
from typing import Callable

from .rings import Ring, RingElem

_HALF = Fraction(1, 2)
_RATIONALS = Ring()


class DegenerateDiscriminant(ValueError):
    """y^2 - 4z vanished, so the closed form has a repeated root."""


class WindowError(ValueError):
    """A summation window ends before it starts."""


class MissingArgument(TypeError):
    pass


class UnexpectedArgument(TypeError):
    pass


class SeqKind(Enum):
    LUCAS_U = "lucasu"
    LUCAS_V = "lucasv"
    CHEB_T = "chebt"
    CHEB_U = "chebu"
    FIBONACCI = "fibonacci"
    LUCAS = "lucas"
    PELL = "pell"
    PELL_LUCAS = "pelllucas"
    JACOBSTHAL = "jacobsthal"
    JACOBSTHAL_LUCAS = "jacobsthallucas"
    FIBONACCI_POLY = "fibonaccipoly"
    LUCAS_POLY = "lucaspoly"


# named integer kinds: (u or v, fixed y, fixed z)
_NAMED: dict[SeqKind, tuple[str, int, int]] = {
    SeqKind.FIBONACCI: ("u", 1, -1),
    SeqKind.LUCAS: ("v", 1, -1),
    SeqKind.PELL: ("u", 2, -1),
    SeqKind.PELL_LUCAS: ("v", 2, -1),
    SeqKind.JACOBSTHAL: ("u", 1, -2),
    SeqKind.JACOBSTHAL_LUCAS: ("v", 1, -2),
}

_POLY: dict[SeqKind, str] = {
    SeqKind.FIBONACCI_POLY: "u",
    SeqKind.LUCAS_POLY: "v",
}


class LucasSeq:
    """Windowed evaluator for one (y, z) parameter pair.

    Terms are cached, so sweeping an index range costs one recurrence
    step per new index.  Negative indices extend the window backwards
    with u(k-2) = (y*u(k-1) - u(k)) / z, exactly.
    """

    def __init__(self, y, z, ring: Ring | None = None):
        if ring is None:
            if isinstance(y, RingElem):
                ring = y.ring
            elif isinstance(z, RingElem):
                ring = z.ring
            else:
                ring = _RATIONALS
        y = ring.element(y)
        z = y.ring.element(z)
        self.ring = z.ring
        self.y = self.ring.element(y)
        self.z = z
        if z.is_zero:
            raise ValueError("z must be nonzero")
        self._u = [self.ring.zero, self.ring.one]
        self._v = [self.ring.element(2), self.y]
        self._u_back: list[RingElem] = []
        self._v_back: list[RingElem] = []

    def _at(self, k: int, fwd: list[RingElem], back: list[RingElem]) -> RingElem:
        if k >= 0:
            while len(fwd) <= k:
                fwd.append(self.y * fwd[-1] - self.z * fwd[-2])
            return fwd[k]
        while len(back) < -k:
            m = len(back)  # next index to fill is -(m + 1)
            prev = back[m - 1] if m >= 1 else fwd[0]
            prev2 = back[m - 2] if m >= 2 else fwd[1 - m]
            back.append((self.y * prev - prev2).exact_div(self.z))
        return back[-k - 1]

    def u(self, k: int) -> RingElem:
        return self._at(k, self._u, self._u_back)

    def v(self, k: int) -> RingElem:
        return self._at(k, self._v, self._v_back)


class ChebSeq:
    """Windowed evaluator for Chebyshev T and U at one argument.

    Negative indices run the recurrence backwards:
    a(k-2) = 2y*a(k-1) - a(k).  The mirror laws T(-n) = T(n) and
    U(-n) = -U(n-2) then fall out and are checked, not assumed.
    """

    def __init__(self, y, ring: Ring | None = None):
        if ring is None:
            ring = y.ring if isinstance(y, RingElem) else _RATIONALS
        self.y = ring.element(y)
        self.ring = self.y.ring
        self._y2 = 2 * self.y
        self._t = [self.ring.one, self.y]
        self._u = [self.ring.one, self._y2]
        self._t_back: list[RingElem] = []
        self._u_back: list[RingElem] = []

    def _at(self, k: int, fwd: list[RingElem], back: list[RingElem]) -> RingElem:
        if k >= 0:
            while len(fwd) <= k:
                fwd.append(self._y2 * fwd[-1] - fwd[-2])
            return fwd[k]
        while len(back) < -k:
            m = len(back)
            prev = back[m - 1] if m >= 1 else fwd[0]
            prev2 = back[m - 2] if m >= 2 else fwd[1 - m]
            back.append(self._y2 * prev - prev2)
        return back[-k - 1]

    def t(self, k: int) -> RingElem:
        return self._at(k, self._t, self._t_back)

    def u(self, k: int) -> RingElem:
        return self._at(k, self._u, self._u_back)


def lucas_u(y, z, n: int) -> RingElem:
    """u(n) for the recurrence a(n) = y*a(n-1) - z*a(n-2), seeds 0, 1."""
    return LucasSeq(y, z).u(n)


def lucas_v(y, z, n: int) -> RingElem:
    """v(n) for the same recurrence, seeds 2, y."""
    return LucasSeq(y, z).v(n)


def cheb_t(y, n: int) -> RingElem:
    return ChebSeq(y).t(n)


def cheb_u(y, n: int) -> RingElem:
    return ChebSeq(y).u(n)


def lucas_uv_fast(y, z, n: int) -> tuple[RingElem, RingElem]:
    """(u(n), v(n)) by index doubling in O(log |n|) ring multiplications.

    Negative n is reduced to |n| first via u(-n) = -u(n)/z^n and
    v(-n) = v(n)/z^n, which needs z invertible.
    """
    ring = _RATIONALS
    if isinstance(y, RingElem):
        ring = y.ring
    elif isinstance(z, RingElem):
        ring = z.ring
    ye = ring.element(y)
    ze = ye.ring.element(z)
    ring = ze.ring
    ye = ring.element(ye)
    if n == 0:
        return ring.zero, ring.element(2)
    m = abs(n)
    disc = ye * ye - 4 * ze
    u, v, zp = ring.zero, ring.element(2), ring.one
    for bit in bin(m)[2:]:
        u, v, zp = u * v, v * v - 2 * zp, zp * zp
        if bit == "1":
            u, v, zp = (ye * u + v) * _HALF, (disc * u + ye * v) * _HALF, zp * ze
    if n < 0:
        zinv = ze ** (-m)
        u, v = -u * zinv, v * zinv
    return u, v


def _uv_fast_int(y: int, z: int, n: int) -> tuple[int, int]:
    # doubling over plain ints; n >= 0; halving steps are exact
    if n == 0:
        return 0, 2
    disc = y * y - 4 * z
    u, v, zp = 0, 2, 1
    for bit in bin(n)[2:]:
        u, v, zp = u * v, v * v - 2 * zp, zp * zp
        if bit == "1":
            u, v, zp = (y * u + v) // 2, (disc * u + y * v) // 2, zp * z
    return u, v


def _iter_int(which: str, y: int, z: int, n: int) -> Fraction:
    # forward iteration over ints; backward over Fractions (exact for any z)
    if n >= 0:
        if which == "u":
            a, b = 0, 1
        else:
            a, b = 2, y
        if y == 1 and z == -1:
            for _ in repeat(None, n):
                a, b = b, a + b
        else:
            for _ in repeat(None, n):
                a, b = b, y * b - z * a
        return Fraction(a)
    if which == "u":
        cur, nxt = Fraction(0), Fraction(1)  # a(0), a(1)
    else:
        cur, nxt = Fraction(2), Fraction(y)
    for _ in repeat(None, -n):
        cur, nxt = (y * cur - nxt) / z, cur
    return cur


def named_term(kind: SeqKind, n: int, arg=None, y=None, z=None, *, fast: bool = False) -> RingElem:
    """One term of a named family.

    ``arg`` is required for the polynomial families (fibonaccipoly,
    lucaspoly, chebt, chebu); ``y`` and ``z`` are required for the raw
    lucasu/lucasv kinds; the integer kinds take neither.
    """
    if kind in _NAMED:
        if arg is not None or y is not None or z is not None:
            raise UnexpectedArgument(f"{kind.value} takes no argument")
        which, yy, zz = _NAMED[kind]
        if fast:
            u, v = _uv_fast_int(yy, zz, abs(n))
            val = Fraction(u if which == "u" else v)
            if n < 0:
                zp = zz ** abs(n)
                val = -val / zp if which == "u" else val / zp
        else:
            val = _iter_int(which, yy, zz, n)
        return _RATIONALS.element(val)

    if kind in (SeqKind.LUCAS_U, SeqKind.LUCAS_V):
        if arg is not None:
            raise UnexpectedArgument("lucasu/lucasv take y and z, not arg")
        if y is None or z is None:
            raise MissingArgument("lucasu/lucasv need both y and z")
        if fast:
            u, v = lucas_uv_fast(y, z, n)
            return u if kind is SeqKind.LUCAS_U else v
        seq = LucasSeq(y, z)
        return seq.u(n) if kind is SeqKind.LUCAS_U else seq.v(n)

    if y is not None or z is not None:
        raise UnexpectedArgument(f"{kind.value} does not take y or z")
    if arg is None:
        raise MissingArgument(f"{kind.value} needs an argument")

    if kind in _POLY:
        which = _POLY[kind]
        if fast:
            u, v = lucas_uv_fast(arg, -1, n)
            return u if which == "u" else v
        seq = LucasSeq(arg, -1)
        return seq.u(n) if which == "u" else seq.v(n)

    if kind is SeqKind.CHEB_T:
        if fast:
            _, v = lucas_uv_fast(2 * arg, 1, n)
            return v * _HALF
        return ChebSeq(arg).t(n)
    if kind is SeqKind.CHEB_U:
        if fast:
            u, _ = lucas_uv_fast(2 * arg, 1, n + 1)
            return u
        return ChebSeq(arg).u(n)
    raise ValueError(f"unhandled kind {kind!r}")


def binet_roots(y, z) -> tuple[RingElem, RingElem]:
    """Characteristic roots (tau, sigma) of t^2 - y*t + z for rational
    y, z, as elements of the extension with square num(q)*den(q) for
    q = y^2 - 4z.  They satisfy tau + sigma = y, tau*sigma = z, and
    tau - sigma squares to q.  Requires q != 0."""
    yq = Fraction(y)
    zq = Fraction(z)
    q = yq * yq - 4 * zq
    if not q:
        raise DegenerateDiscriminant(f"y^2 - 4z = 0 at y={yq}, z={zq}")
    ring = Ring(q.numerator * q.denominator)
    root = ring.omega * Fraction(1, q.denominator)  # root*root == q
    tau = (ring.element(yq) + root) * _HALF
    sigma = (ring.element(yq) - root) * _HALF
    return tau, sigma


def binet_value(kind: SeqKind, y, z, n: int) -> RingElem:
    """u(n) or v(n) from the characteristic roots; the extension parts
    cancel, so the result is always rational."""
    if kind not in (SeqKind.LUCAS_U, SeqKind.LUCAS_V):
        raise ValueError("binet_value applies to lucasu or lucasv")
    tau, sigma = binet_roots(y, z)
    if kind is SeqKind.LUCAS_V:
        return tau**n + sigma**n
    return (tau**n - sigma**n).exact_div(tau - sigma)


def telescope_sum(f: Callable[[int], object], c: int, n: int, signed: bool = False):
    """Direct summation of f(k+1) - f(k) (or, signed,
    (-1)^k * (f(k+1) + f(k))) for k from c to n.

    The window n = c - 1 is the empty sum and returns 0 without
    evaluating f; n < c - 1 raises WindowError.
    """
    if n < c - 1:
        raise WindowError(f"window ends at n={n}, before c-1={c - 1}")
    if n == c - 1:
        return 0
    total = None
    prev = f(c)
    for k in range(c, n + 1):
        nxt = f(k + 1)
        if signed:
            term = nxt + prev
            if k & 1:
                term = -term
        else:
            term = nxt - prev
        total = term if total is None else total + term
        prev = nxt
    return total
