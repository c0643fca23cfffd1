"""Registry of summation and evaluation identities, with an exact checker.

Each record stores both sides of one identity in denominator-cleared
form, so a symbolic check is plain Laurent-polynomial equality and a
numeric check is exact rational equality.  Left-hand sums are evaluated
by direct summation; nothing is collapsed through the telescoping
shortcut, which keeps the checker independent of the closed forms it
verifies.

Identity ids are stable across releases.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .rings import Ring, RingElem
from .sequences import ChebSeq, LucasSeq

SYM = "sym"
DEFAULT_SEED = 42

_DEFAULT_N = (-1, 10)  # offsets from c (c = 0 when the identity has no c)
_DEFAULT_C = (-3, 3)
_DEFAULT_M = (-4, -3, -2, -1, 0, 1, 2, 3, 4, 5, 6)


class DomainError(ValueError):
    """A parameter assignment violates the identity's constraints."""


class UnknownIdentity(KeyError):
    pass


@dataclass(frozen=True)
class ParamAssignment:
    """One concrete instance: indices plus variable bindings.

    Binding values are ring elements, ints, Fractions, or the marker
    ``SYM`` to leave the variable as a polynomial generator.  Unbound
    free variables default to ``SYM``.
    """

    n: int
    c: int = 0
    m: int = 1
    bindings: Mapping[str, object] = field(default_factory=dict)


@dataclass
class CheckFailure:
    params: dict
    lhs: str
    rhs: str


@dataclass
class CheckReport:
    id: str
    attempted: int
    passed: int
    failures: list[CheckFailure]
    millis: float

    @property
    def ok(self) -> bool:
        return not self.failures


def report_to_dict(report: CheckReport) -> dict:
    return {
        "id": report.id,
        "attempted": report.attempted,
        "passed": report.passed,
        "failures": [
            {"params": f.params, "lhs": f.lhs, "rhs": f.rhs} for f in report.failures
        ],
        "millis": round(report.millis, 3),
    }


class Env:
    """Evaluation context handed to the lhs/rhs callables.

    Holds the resolved variable bindings and windowed sequence caches,
    so sweeping a grid of indices reuses every prefix already computed.
    The indices n, c, m are mutated between cases by the grid runner.
    """

    __slots__ = ("ring", "n", "c", "m", "x", "y", "z", "r", "_lucas", "_cheb")

    def __init__(self, ring: Ring, bindings: Mapping[str, RingElem]):
        self.ring = ring
        self.n = 0
        self.c = 0
        self.m = 1
        self.x = bindings.get("x")
        self.y = bindings.get("y")
        self.z = bindings.get("z")
        self.r = bindings.get("r")
        self._lucas: dict = {}
        self._cheb: dict = {}

    def lucas(self, y, z) -> LucasSeq:
        key = (y, z)
        seq = self._lucas.get(key)
        if seq is None:
            seq = LucasSeq(y, z, ring=self.ring)
            self._lucas[key] = seq
        return seq

    def cheb(self, y) -> ChebSeq:
        seq = self._cheb.get(y)
        if seq is None:
            seq = ChebSeq(y, ring=self.ring)
            self._cheb[y] = seq
        return seq

    # generalized pair at the bound (y, z)
    def u(self, k: int) -> RingElem:
        return self.lucas(self.y, self.z).u(k)

    def v(self, k: int) -> RingElem:
        return self.lucas(self.y, self.z).v(k)

    # named integer sequences
    def F(self, k: int) -> RingElem:
        return self.lucas(1, -1).u(k)

    def L(self, k: int) -> RingElem:
        return self.lucas(1, -1).v(k)

    def P(self, k: int) -> RingElem:
        return self.lucas(2, -1).u(k)

    def Q(self, k: int) -> RingElem:
        return self.lucas(2, -1).v(k)

    def J(self, k: int) -> RingElem:
        return self.lucas(1, -2).u(k)

    def JL(self, k: int) -> RingElem:
        return self.lucas(1, -2).v(k)

    # polynomial families at an explicit argument
    def Fp(self, k: int, a) -> RingElem:
        return self.lucas(a, -1).u(k)

    def Lp(self, k: int, a) -> RingElem:
        return self.lucas(a, -1).v(k)

    # Chebyshev at the bound y
    def T(self, k: int) -> RingElem:
        return self.cheb(self.y).t(k)

    def U(self, k: int) -> RingElem:
        return self.cheb(self.y).u(k)

    @property
    def w(self) -> RingElem:
        return self.ring.omega

    def num(self, value) -> RingElem:
        return self.ring.element(value)


@dataclass(frozen=True)
class IdentityRecord:
    """One identity: cleared-form evaluators plus its parameter domain."""

    id: str
    statement: str
    domain: str
    free_vars: tuple[str, ...]
    lhs: Callable[[Env], RingElem]
    rhs: Callable[[Env], RingElem]
    uses_c: bool = False
    uses_m: bool = False
    is_sum: bool = False
    m_parity: str | None = None
    ext_square: int | None = None
    n_default: tuple[int, int] | None = None
    m_default: tuple[int, ...] | None = None

    @property
    def index_params(self) -> tuple[str, ...]:
        out = ["n"]
        if self.uses_c:
            out.append("c")
        if self.uses_m:
            out.append("m")
        return tuple(out)


def _ssum(e: Env, lo: int, hi: int, term: Callable[[int], RingElem]) -> RingElem:
    total = e.ring.zero
    for k in range(lo, hi + 1):
        total = total + term(k)
    return total


def _alt(k: int) -> int:
    return -1 if k & 1 else 1


def _rec(
    id: str,
    statement: str,
    domain: str,
    free: tuple[str, ...],
    lhs: Callable[[Env], RingElem],
    rhs: Callable[[Env], RingElem],
    *,
    c: bool = False,
    m: bool = False,
    s: bool = False,
    parity: str | None = None,
    ext: int | None = None,
    nd: tuple[int, int] | None = None,
    md: tuple[int, ...] | None = None,
) -> IdentityRecord:
    return IdentityRecord(
        id=id,
        statement=statement,
        domain=domain,
        free_vars=free,
        lhs=lhs,
        rhs=rhs,
        uses_c=c,
        uses_m=m,
        is_sum=s,
        m_parity=parity,
        ext_square=ext,
        n_default=nd,
        m_default=md,
    )


def _build_registry() -> tuple[IdentityRecord, ...]:
    R: list[IdentityRecord] = []
    add = R.append

    # ---- the two classic integer sums --------------------------------
    add(_rec(
        "EDG-1",
        "sum(k=0..n) x^k*(L(k) + (x-2)*F(k+1)) = x^(n+1)*F(n+1)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (e.L(k) + (e.x - 2) * e.F(k + 1))),
        lambda e: e.x ** (e.n + 1) * e.F(e.n + 1),
        s=True,
    ))
    add(_rec(
        "DPL-2",
        "sum(k=0..n) (-1)^k*x^(n-k)*(L(k+1) + (x-2)*F(k)) = (-1)^n*F(n+1)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: _alt(k) * e.x ** (e.n - k) * (e.L(k + 1) + (e.x - 2) * e.F(k))),
        lambda e: _alt(e.n) * e.F(e.n + 1),
        s=True,
    ))

    # ---- kernel identities behind the first telescoping sum ----------
    add(_rec(
        "LEM2-A",
        "r*v(n) + (x*y-2*r)*u(n+1) = y*(x*u(n+1) - r*u(n))",
        "n in Z",
        ("x", "y", "z", "r"),
        lambda e: e.r * e.v(e.n) + (e.x * e.y - 2 * e.r) * e.u(e.n + 1),
        lambda e: e.y * (e.x * e.u(e.n + 1) - e.r * e.u(e.n)),
        nd=(-6, 10),
    ))
    add(_rec(
        "LEM2-B",
        "(y^2-4*z)*r*u(n) + (x*y-2*r)*v(n+1) = y*(x*v(n+1) - r*v(n))",
        "n in Z",
        ("x", "y", "z", "r"),
        lambda e: (e.y**2 - 4 * e.z) * e.r * e.u(e.n) + (e.x * e.y - 2 * e.r) * e.v(e.n + 1),
        lambda e: e.y * (e.x * e.v(e.n + 1) - e.r * e.v(e.n)),
        nd=(-6, 10),
    ))

    # ---- first pair of telescoped sums and their sign companions -----
    add(_rec(
        "THM1-A",
        "sum(k=c..n) r^(n-k)*x^k*(r*v(k) + (x*y-2*r)*u(k+1)) = x^(n+1)*y*u(n+1) - r^(n-c+1)*x^c*y*u(c)",
        "n >= c-1; c in Z",
        ("x", "y", "z", "r"),
        lambda e: _ssum(e, e.c, e.n, lambda k: e.r ** (e.n - k) * e.x**k * (e.r * e.v(k) + (e.x * e.y - 2 * e.r) * e.u(k + 1))),
        lambda e: e.x ** (e.n + 1) * e.y * e.u(e.n + 1) - e.r ** (e.n - e.c + 1) * e.x**e.c * e.y * e.u(e.c),
        c=True, s=True,
    ))
    add(_rec(
        "THM1-B",
        "sum(k=c..n) r^(n-k)*x^k*((y^2-4*z)*r*u(k) + (x*y-2*r)*v(k+1)) = x^(n+1)*y*v(n+1) - r^(n-c+1)*x^c*y*v(c)",
        "n >= c-1; c in Z",
        ("x", "y", "z", "r"),
        lambda e: _ssum(e, e.c, e.n, lambda k: e.r ** (e.n - k) * e.x**k * ((e.y**2 - 4 * e.z) * e.r * e.u(k) + (e.x * e.y - 2 * e.r) * e.v(k + 1))),
        lambda e: e.x ** (e.n + 1) * e.y * e.v(e.n + 1) - e.r ** (e.n - e.c + 1) * e.x**e.c * e.y * e.v(e.c),
        c=True, s=True,
    ))
    add(_rec(
        "THM1-A-NEG",
        "sum(k=c..n) (-1)^k*r^(n-k)*x^k*((x*y+2*r)*u(k+1) - r*v(k)) = (-1)^n*x^(n+1)*y*u(n+1) + (-1)^c*r^(n-c+1)*x^c*y*u(c)",
        "n >= c-1; c in Z",
        ("x", "y", "z", "r"),
        lambda e: _ssum(e, e.c, e.n, lambda k: _alt(k) * e.r ** (e.n - k) * e.x**k * ((e.x * e.y + 2 * e.r) * e.u(k + 1) - e.r * e.v(k))),
        lambda e: _alt(e.n) * e.x ** (e.n + 1) * e.y * e.u(e.n + 1) + _alt(e.c) * e.r ** (e.n - e.c + 1) * e.x**e.c * e.y * e.u(e.c),
        c=True, s=True,
    ))
    add(_rec(
        "THM1-B-NEG",
        "sum(k=c..n) (-1)^k*r^(n-k)*x^k*((x*y+2*r)*v(k+1) - (y^2-4*z)*r*u(k)) = (-1)^n*x^(n+1)*y*v(n+1) + (-1)^c*r^(n-c+1)*x^c*y*v(c)",
        "n >= c-1; c in Z",
        ("x", "y", "z", "r"),
        lambda e: _ssum(e, e.c, e.n, lambda k: _alt(k) * e.r ** (e.n - k) * e.x**k * ((e.x * e.y + 2 * e.r) * e.v(k + 1) - (e.y**2 - 4 * e.z) * e.r * e.u(k))),
        lambda e: _alt(e.n) * e.x ** (e.n + 1) * e.y * e.v(e.n + 1) + _alt(e.c) * e.r ** (e.n - e.c + 1) * e.x**e.c * e.y * e.v(e.c),
        c=True, s=True,
    ))

    # ---- kernel identities behind the alternating sum -----------------
    add(_rec(
        "LEM3-A",
        "r*v(n+1) + (x*y+2*r*z)*u(n) = y*(r*u(n+1) + x*u(n))",
        "n in Z",
        ("x", "y", "z", "r"),
        lambda e: e.r * e.v(e.n + 1) + (e.x * e.y + 2 * e.r * e.z) * e.u(e.n),
        lambda e: e.y * (e.r * e.u(e.n + 1) + e.x * e.u(e.n)),
        nd=(-6, 10),
    ))
    add(_rec(
        "LEM3-B",
        "(y^2-4*z)*r*u(n+1) + (x*y+2*r*z)*v(n) = y*(r*v(n+1) + x*v(n))",
        "n in Z",
        ("x", "y", "z", "r"),
        lambda e: (e.y**2 - 4 * e.z) * e.r * e.u(e.n + 1) + (e.x * e.y + 2 * e.r * e.z) * e.v(e.n),
        lambda e: e.y * (e.r * e.v(e.n + 1) + e.x * e.v(e.n)),
        nd=(-6, 10),
    ))

    # ---- second pair of telescoped sums -------------------------------
    add(_rec(
        "THM2-A",
        "sum(k=c..n) (-1)^k*x^(n-k)*r^k*(r*v(k+1) + (x*y+2*r*z)*u(k)) = (-1)^n*y*r^(n+1)*u(n+1) + (-1)^c*r^c*y*x^(n-c+1)*u(c)",
        "n >= c-1; c in Z",
        ("x", "y", "z", "r"),
        lambda e: _ssum(e, e.c, e.n, lambda k: _alt(k) * e.x ** (e.n - k) * e.r**k * (e.r * e.v(k + 1) + (e.x * e.y + 2 * e.r * e.z) * e.u(k))),
        lambda e: _alt(e.n) * e.y * e.r ** (e.n + 1) * e.u(e.n + 1) + _alt(e.c) * e.r**e.c * e.y * e.x ** (e.n - e.c + 1) * e.u(e.c),
        c=True, s=True,
    ))
    add(_rec(
        "THM2-B",
        "sum(k=c..n) (-1)^k*x^(n-k)*r^k*((y^2-4*z)*r*u(k+1) + (x*y+2*r*z)*v(k)) = (-1)^n*y*r^(n+1)*v(n+1) + (-1)^c*r^c*y*x^(n-c+1)*v(c)",
        "n >= c-1; c in Z",
        ("x", "y", "z", "r"),
        lambda e: _ssum(e, e.c, e.n, lambda k: _alt(k) * e.x ** (e.n - k) * e.r**k * ((e.y**2 - 4 * e.z) * e.r * e.u(k + 1) + (e.x * e.y + 2 * e.r * e.z) * e.v(k))),
        lambda e: _alt(e.n) * e.y * e.r ** (e.n + 1) * e.v(e.n + 1) + _alt(e.c) * e.r**e.c * e.y * e.x ** (e.n - e.c + 1) * e.v(e.c),
        c=True, s=True,
    ))

    # ---- recurrence plumbing used by the kernel proofs ----------------
    add(_rec(
        "AUX-RECU",
        "u(n+1) + z*u(n-1) = y*u(n)",
        "n in Z",
        ("y", "z"),
        lambda e: e.u(e.n + 1) + e.z * e.u(e.n - 1),
        lambda e: e.y * e.u(e.n),
        nd=(-6, 10),
    ))
    add(_rec(
        "AUX-VU",
        "v(n) = u(n+1) - z*u(n-1)",
        "n in Z",
        ("y", "z"),
        lambda e: e.v(e.n),
        lambda e: e.u(e.n + 1) - e.z * e.u(e.n - 1),
        nd=(-6, 10),
    ))
    add(_rec(
        "AUX-NORM",
        "(y^2-4*z)*u(n) = v(n+1) - z*v(n-1)",
        "n in Z",
        ("y", "z"),
        lambda e: (e.y**2 - 4 * e.z) * e.u(e.n),
        lambda e: e.v(e.n + 1) - e.z * e.v(e.n - 1),
        nd=(-6, 10),
    ))
    add(_rec(
        "AUX-VALT",
        "v(n) = y*u(n) - 2*z*u(n-1)",
        "n in Z",
        ("y", "z"),
        lambda e: e.v(e.n),
        lambda e: e.y * e.u(e.n) - 2 * e.z * e.u(e.n - 1),
        nd=(-6, 10),
    ))

    # ---- polynomial forms of the first sum -----------------------------
    add(_rec(
        "PROP1-F",
        "sum(k=0..n) x^k*(L(k;y) + (x*y-2)*F(k+1;y)) = x^(n+1)*y*F(n+1;y)",
        "n >= -1",
        ("x", "y"),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (e.Lp(k, e.y) + (e.x * e.y - 2) * e.Fp(k + 1, e.y))),
        lambda e: e.x ** (e.n + 1) * e.y * e.Fp(e.n + 1, e.y),
        s=True,
    ))
    add(_rec(
        "PROP1-L",
        "sum(k=0..n) x^k*((y^2+4)*F(k;y) + (x*y-2)*L(k+1;y)) = y*(x^(n+1)*L(n+1;y) - 2)",
        "n >= -1",
        ("x", "y"),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * ((e.y**2 + 4) * e.Fp(k, e.y) + (e.x * e.y - 2) * e.Lp(k + 1, e.y))),
        lambda e: e.y * (e.x ** (e.n + 1) * e.Lp(e.n + 1, e.y) - 2),
        s=True,
    ))
    add(_rec(
        "DISC-F",
        "sum(k=0..n) x^k*(x*F(k+1;y) - F(k;y)) = x^(n+1)*F(n+1;y)",
        "n >= -1",
        ("x", "y"),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (e.x * e.Fp(k + 1, e.y) - e.Fp(k, e.y))),
        lambda e: e.x ** (e.n + 1) * e.Fp(e.n + 1, e.y),
        s=True,
    ))
    add(_rec(
        "DISC-L",
        "sum(k=0..n) x^k*(x*L(k+1;y) - L(k;y)) = x^(n+1)*L(n+1;y) - 2",
        "n >= -1",
        ("x", "y"),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (e.x * e.Lp(k + 1, e.y) - e.Lp(k, e.y))),
        lambda e: e.x ** (e.n + 1) * e.Lp(e.n + 1, e.y) - 2,
        s=True,
    ))
    add(_rec(
        "AUX-FLLINK",
        "L(n;y) = F(n-1;y) + F(n+1;y)",
        "n in Z",
        ("y",),
        lambda e: e.Lp(e.n, e.y),
        lambda e: e.Fp(e.n - 1, e.y) + e.Fp(e.n + 1, e.y),
        nd=(-6, 10),
    ))
    add(_rec(
        "AUX-LFLINK",
        "(y^2+4)*F(n;y) = L(n-1;y) + L(n+1;y)",
        "n in Z",
        ("y",),
        lambda e: (e.y**2 + 4) * e.Fp(e.n, e.y),
        lambda e: e.Lp(e.n - 1, e.y) + e.Lp(e.n + 1, e.y),
        nd=(-6, 10),
    ))

    # ---- specializations at y = 1 and y = 2 ----------------------------
    add(_rec(
        "COR1-F1",
        "sum(k=0..n) x^k*(L(k) + (x-2)*F(k+1)) = x^(n+1)*F(n+1)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (e.L(k) + (e.x - 2) * e.F(k + 1))),
        lambda e: e.x ** (e.n + 1) * e.F(e.n + 1),
        s=True,
    ))
    add(_rec(
        "COR1-L1",
        "sum(k=0..n) x^k*(5*F(k) + (x-2)*L(k+1)) = x^(n+1)*L(n+1) - 2",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (5 * e.F(k) + (e.x - 2) * e.L(k + 1))),
        lambda e: e.x ** (e.n + 1) * e.L(e.n + 1) - 2,
        s=True,
    ))
    add(_rec(
        "COR1-P2",
        "sum(k=0..n) x^k*(Q(k) + 2*(x-1)*P(k+1)) = 2*x^(n+1)*P(n+1)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (e.Q(k) + 2 * (e.x - 1) * e.P(k + 1))),
        lambda e: 2 * e.x ** (e.n + 1) * e.P(e.n + 1),
        s=True,
    ))
    add(_rec(
        "COR1-Q2",
        "sum(k=0..n) x^k*(4*P(k) + (x-1)*Q(k+1)) = x^(n+1)*Q(n+1) - 2",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (4 * e.P(k) + (e.x - 1) * e.Q(k + 1))),
        lambda e: e.x ** (e.n + 1) * e.Q(e.n + 1) - 2,
        s=True,
    ))

    # ---- triple-index specialization (argument 4) ----------------------
    add(_rec(
        "COR2-F4",
        "sum(k=0..n) x^k*(L(3k) + (2*x-1)*F(3k+3)) = 2*x^(n+1)*F(3n+3)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (e.L(3 * k) + (2 * e.x - 1) * e.F(3 * k + 3))),
        lambda e: 2 * e.x ** (e.n + 1) * e.F(3 * e.n + 3),
        s=True,
    ))
    add(_rec(
        "COR2-L4",
        "sum(k=0..n) x^k*(5*F(3k) + (2*x-1)*L(3k+3)) = 2*x^(n+1)*L(3n+3) - 4",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (5 * e.F(3 * k) + (2 * e.x - 1) * e.L(3 * k + 3))),
        lambda e: 2 * e.x ** (e.n + 1) * e.L(3 * e.n + 3) - 4,
        s=True,
    ))

    # ---- the x = 2/y substitution, cleared by powers of x --------------
    add(_rec(
        "COR3-FX",
        "sum(k=0..n) 2^k*x^(n-k)*L(k;x) = 2^(n+1)*F(n+1;x)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: 2**k * e.x ** (e.n - k) * e.Lp(k, e.x)),
        lambda e: 2 ** (e.n + 1) * e.Fp(e.n + 1, e.x),
        s=True,
    ))
    add(_rec(
        "COR3-LX",
        "(x^2+4) * sum(k=0..n) 2^k*x^(n-k)*F(k;x) = 2^(n+1)*L(n+1;x) - 2*x^(n+1)",
        "n >= -1",
        ("x",),
        lambda e: (e.x**2 + 4) * _ssum(e, 0, e.n, lambda k: 2**k * e.x ** (e.n - k) * e.Fp(k, e.x)),
        lambda e: 2 ** (e.n + 1) * e.Lp(e.n + 1, e.x) - 2 * e.x ** (e.n + 1),
        s=True,
    ))

    # ---- even-index polynomial forms ------------------------------------
    add(_rec(
        "COR4-F2",
        "sum(k=0..n) x^k*(y*L(2k;y) + (x*(y^2+2)-2)*F(2k+2;y)) = x^(n+1)*(y^2+2)*F(2n+2;y)",
        "n >= -1",
        ("x", "y"),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (e.y * e.Lp(2 * k, e.y) + (e.x * (e.y**2 + 2) - 2) * e.Fp(2 * k + 2, e.y))),
        lambda e: e.x ** (e.n + 1) * (e.y**2 + 2) * e.Fp(2 * e.n + 2, e.y),
        s=True,
    ))
    add(_rec(
        "COR4-L2",
        "sum(k=0..n) x^k*(y*(y^2+4)*F(2k;y) + (x*(y^2+2)-2)*L(2k+2;y)) = (y^2+2)*(x^(n+1)*L(2n+2;y) - 2)",
        "n >= -1",
        ("x", "y"),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (e.y * (e.y**2 + 4) * e.Fp(2 * k, e.y) + (e.x * (e.y**2 + 2) - 2) * e.Lp(2 * k + 2, e.y))),
        lambda e: (e.y**2 + 2) * (e.x ** (e.n + 1) * e.Lp(2 * e.n + 2, e.y) - 2),
        s=True,
    ))
    add(_rec(
        "COR5-F",
        "sum(k=0..n) x^k*(L(2k) + (3*x-2)*F(2k+2)) = 3*x^(n+1)*F(2n+2)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (e.L(2 * k) + (3 * e.x - 2) * e.F(2 * k + 2))),
        lambda e: 3 * e.x ** (e.n + 1) * e.F(2 * e.n + 2),
        s=True,
    ))
    add(_rec(
        "COR5-L",
        "sum(k=0..n) x^k*(5*F(2k) + (3*x-2)*L(2k+2)) = 3*(x^(n+1)*L(2n+2) - 2)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (5 * e.F(2 * k) + (3 * e.x - 2) * e.L(2 * k + 2))),
        lambda e: 3 * (e.x ** (e.n + 1) * e.L(2 * e.n + 2) - 2),
        s=True,
    ))
    add(_rec(
        "COR5-P",
        "sum(k=0..n) x^k*(Q(2k) + (3*x-1)*P(2k+2)) = 3*x^(n+1)*P(2n+2)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (e.Q(2 * k) + (3 * e.x - 1) * e.P(2 * k + 2))),
        lambda e: 3 * e.x ** (e.n + 1) * e.P(2 * e.n + 2),
        s=True,
    ))
    add(_rec(
        "COR5-Q",
        "sum(k=0..n) x^k*(8*P(2k) + (3*x-1)*Q(2k+2)) = 3*(x^(n+1)*Q(2n+2) - 2)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (8 * e.P(2 * k) + (3 * e.x - 1) * e.Q(2 * k + 2))),
        lambda e: 3 * (e.x ** (e.n + 1) * e.Q(2 * e.n + 2) - 2),
        s=True,
    ))
    add(_rec(
        "COR6-F",
        "sum(k=0..n) x^k*(3*L(4k) + (7*x-2)*F(4k+4)) = 7*x^(n+1)*F(4n+4)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (3 * e.L(4 * k) + (7 * e.x - 2) * e.F(4 * k + 4))),
        lambda e: 7 * e.x ** (e.n + 1) * e.F(4 * e.n + 4),
        s=True,
    ))
    add(_rec(
        "COR6-L",
        "sum(k=0..n) x^k*(15*F(4k) + (7*x-2)*L(4k+4)) = 7*(x^(n+1)*L(4n+4) - 2)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (15 * e.F(4 * k) + (7 * e.x - 2) * e.L(4 * k + 4))),
        lambda e: 7 * (e.x ** (e.n + 1) * e.L(4 * e.n + 4) - 2),
        s=True,
    ))
    add(_rec(
        "COR7-F",
        "x * sum(k=0..n) 2^k*(x^2+2)^(n-k)*L(2k;x) = 2^(n+1)*F(2n+2;x)",
        "n >= -1",
        ("x",),
        lambda e: e.x * _ssum(e, 0, e.n, lambda k: 2**k * (e.x**2 + 2) ** (e.n - k) * e.Lp(2 * k, e.x)),
        lambda e: 2 ** (e.n + 1) * e.Fp(2 * e.n + 2, e.x),
        s=True,
    ))
    add(_rec(
        "COR7-L",
        "x*(x^2+4) * sum(k=0..n) 2^k*(x^2+2)^(n+1-k)*F(2k;x) = 2^(n+1)*(x^2+2)*L(2n+2;x) - 2*(x^2+2)^(n+2)",
        "n >= -1",
        ("x",),
        lambda e: e.x * (e.x**2 + 4) * _ssum(e, 0, e.n, lambda k: 2**k * (e.x**2 + 2) ** (e.n + 1 - k) * e.Fp(2 * k, e.x)),
        lambda e: 2 ** (e.n + 1) * (e.x**2 + 2) * e.Lp(2 * e.n + 2, e.x) - 2 * (e.x**2 + 2) ** (e.n + 2),
        s=True,
    ))

    # ---- stretched-index sums, every integer m --------------------------
    add(_rec(
        "PROP2-F",
        "sum(k=0..n) x^k*(F(m)*L(mk) + (x*L(m)-2)*F(m(k+1))) = x^(n+1)*L(m)*F(m(n+1))",
        "n >= -1; m in Z",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (e.F(e.m) * e.L(e.m * k) + (e.x * e.L(e.m) - 2) * e.F(e.m * (k + 1)))),
        lambda e: e.x ** (e.n + 1) * e.L(e.m) * e.F(e.m * (e.n + 1)),
        m=True, s=True,
    ))
    add(_rec(
        "PROP2-L",
        "sum(k=0..n) x^k*(5*F(m)*F(mk) + (x*L(m)-2)*L(m(k+1))) = L(m)*(x^(n+1)*L(m(n+1)) - 2)",
        "n >= -1; m in Z",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (5 * e.F(e.m) * e.F(e.m * k) + (e.x * e.L(e.m) - 2) * e.L(e.m * (k + 1)))),
        lambda e: e.L(e.m) * (e.x ** (e.n + 1) * e.L(e.m * (e.n + 1)) - 2),
        m=True, s=True,
    ))

    # ---- alternating polynomial forms -----------------------------------
    add(_rec(
        "PROP3-F",
        "sum(k=0..n) (-1)^k*x^(n-k)*(L(k+1;y) + (x*y-2)*F(k;y)) = (-1)^n*y*F(n+1;y)",
        "n >= -1",
        ("x", "y"),
        lambda e: _ssum(e, 0, e.n, lambda k: _alt(k) * e.x ** (e.n - k) * (e.Lp(k + 1, e.y) + (e.x * e.y - 2) * e.Fp(k, e.y))),
        lambda e: _alt(e.n) * e.y * e.Fp(e.n + 1, e.y),
        s=True,
    ))
    add(_rec(
        "PROP3-L",
        "sum(k=0..n) (-1)^k*x^(n-k)*((y^2+4)*F(k+1;y) + (x*y-2)*L(k;y)) = (-1)^n*y*L(n+1;y) + 2*y*x^(n+1)",
        "n >= -1",
        ("x", "y"),
        lambda e: _ssum(e, 0, e.n, lambda k: _alt(k) * e.x ** (e.n - k) * ((e.y**2 + 4) * e.Fp(k + 1, e.y) + (e.x * e.y - 2) * e.Lp(k, e.y))),
        lambda e: _alt(e.n) * e.y * e.Lp(e.n + 1, e.y) + 2 * e.y * e.x ** (e.n + 1),
        s=True,
    ))
    add(_rec(
        "COR8-F",
        "sum(k=0..n) (-1)^k*x^(n-k)*(L(k+1) + (x-2)*F(k)) = (-1)^n*F(n+1)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: _alt(k) * e.x ** (e.n - k) * (e.L(k + 1) + (e.x - 2) * e.F(k))),
        lambda e: _alt(e.n) * e.F(e.n + 1),
        s=True,
    ))
    add(_rec(
        "COR8-L",
        "sum(k=0..n) (-1)^k*x^(n-k)*(5*F(k+1) + (x-2)*L(k)) = (-1)^n*L(n+1) + 2*x^(n+1)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: _alt(k) * e.x ** (e.n - k) * (5 * e.F(k + 1) + (e.x - 2) * e.L(k))),
        lambda e: _alt(e.n) * e.L(e.n + 1) + 2 * e.x ** (e.n + 1),
        s=True,
    ))
    add(_rec(
        "COR8-P",
        "sum(k=0..n) (-1)^k*x^(n-k)*(Q(k+1) + 2*(x-1)*P(k)) = 2*(-1)^n*P(n+1)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: _alt(k) * e.x ** (e.n - k) * (e.Q(k + 1) + 2 * (e.x - 1) * e.P(k))),
        lambda e: 2 * _alt(e.n) * e.P(e.n + 1),
        s=True,
    ))
    add(_rec(
        "COR8-Q",
        "sum(k=0..n) (-1)^k*x^(n-k)*(4*P(k+1) + (x-1)*Q(k)) = (-1)^n*Q(n+1) + 2*x^(n+1)",
        "n >= -1",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: _alt(k) * e.x ** (e.n - k) * (4 * e.P(k + 1) + (e.x - 1) * e.Q(k))),
        lambda e: _alt(e.n) * e.Q(e.n + 1) + 2 * e.x ** (e.n + 1),
        s=True,
    ))

    # ---- alternating stretched-index sums, split by parity of m ---------
    add(_rec(
        "PROP4-FO",
        "sum(k=0..n) (-1)^k*x^(n-k)*(F(m)*L(m(k+1)) + (x*L(m)-2)*F(mk)) = (-1)^n*L(m)*F(m(n+1))",
        "n >= -1; m odd",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: _alt(k) * e.x ** (e.n - k) * (e.F(e.m) * e.L(e.m * (k + 1)) + (e.x * e.L(e.m) - 2) * e.F(e.m * k))),
        lambda e: _alt(e.n) * e.L(e.m) * e.F(e.m * (e.n + 1)),
        m=True, s=True, parity="odd",
    ))
    add(_rec(
        "PROP4-FE",
        "sum(k=0..n) x^(n-k)*(F(m)*L(m(k+1)) - (x*L(m)-2)*F(mk)) = L(m)*F(m(n+1))",
        "n >= -1; m even",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x ** (e.n - k) * (e.F(e.m) * e.L(e.m * (k + 1)) - (e.x * e.L(e.m) - 2) * e.F(e.m * k))),
        lambda e: e.L(e.m) * e.F(e.m * (e.n + 1)),
        m=True, s=True, parity="even",
    ))
    add(_rec(
        "PROP4-LO",
        "sum(k=0..n) (-1)^k*x^(n-k)*(5*F(m)*F(m(k+1)) + (x*L(m)-2)*L(mk)) = L(m)*((-1)^n*L(m(n+1)) + 2*x^(n+1))",
        "n >= -1; m odd",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: _alt(k) * e.x ** (e.n - k) * (5 * e.F(e.m) * e.F(e.m * (k + 1)) + (e.x * e.L(e.m) - 2) * e.L(e.m * k))),
        lambda e: e.L(e.m) * (_alt(e.n) * e.L(e.m * (e.n + 1)) + 2 * e.x ** (e.n + 1)),
        m=True, s=True, parity="odd",
    ))
    add(_rec(
        "PROP4-LE",
        "sum(k=0..n) x^(n-k)*(5*F(m)*F(m(k+1)) - (x*L(m)-2)*L(mk)) = L(m)*(L(m(n+1)) - 2*x^(n+1))",
        "n >= -1; m even",
        ("x",),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x ** (e.n - k) * (5 * e.F(e.m) * e.F(e.m * (k + 1)) - (e.x * e.L(e.m) - 2) * e.L(e.m * k))),
        lambda e: e.L(e.m) * (e.L(e.m * (e.n + 1)) - 2 * e.x ** (e.n + 1)),
        m=True, s=True, parity="even",
    ))

    # ---- Chebyshev kernels, sums, and particular cases -------------------
    add(_rec(
        "CHEB-LEM-A",
        "r*T(n) + (x*y-r)*U(n) = y*(x*U(n) - r*U(n-1))",
        "n in Z",
        ("x", "y", "r"),
        lambda e: e.r * e.T(e.n) + (e.x * e.y - e.r) * e.U(e.n),
        lambda e: e.y * (e.x * e.U(e.n) - e.r * e.U(e.n - 1)),
        nd=(-6, 10),
    ))
    add(_rec(
        "CHEB-LEM-B",
        "(y^2-1)*r*U(n-2) + (x*y-r)*T(n) = y*(x*T(n) - r*T(n-1))",
        "n in Z",
        ("x", "y", "r"),
        lambda e: (e.y**2 - 1) * e.r * e.U(e.n - 2) + (e.x * e.y - e.r) * e.T(e.n),
        lambda e: e.y * (e.x * e.T(e.n) - e.r * e.T(e.n - 1)),
        nd=(-6, 10),
    ))
    add(_rec(
        "AUX-CHEB1",
        "2*T(n) = U(n) - U(n-2)",
        "n in Z",
        ("y",),
        lambda e: 2 * e.T(e.n),
        lambda e: e.U(e.n) - e.U(e.n - 2),
        nd=(-6, 10),
    ))
    add(_rec(
        "AUX-CHEB2",
        "2*(y^2-1)*U(n-2) = T(n) - T(n-2)",
        "n in Z",
        ("y",),
        lambda e: 2 * (e.y**2 - 1) * e.U(e.n - 2),
        lambda e: e.T(e.n) - e.T(e.n - 2),
        nd=(-6, 10),
    ))
    add(_rec(
        "CHEB-THM-A",
        "sum(k=c..n) r^(n-k)*x^k*(r*T(k) + (x*y-r)*U(k)) = x^(n+1)*y*U(n) - r^(n-c+1)*x^c*y*U(c-1)",
        "n >= c-1; c in Z",
        ("x", "y", "r"),
        lambda e: _ssum(e, e.c, e.n, lambda k: e.r ** (e.n - k) * e.x**k * (e.r * e.T(k) + (e.x * e.y - e.r) * e.U(k))),
        lambda e: e.x ** (e.n + 1) * e.y * e.U(e.n) - e.r ** (e.n - e.c + 1) * e.x**e.c * e.y * e.U(e.c - 1),
        c=True, s=True,
    ))
    add(_rec(
        "CHEB-THM-B",
        "sum(k=c..n) r^(n-k)*x^k*((y^2-1)*r*U(k-2) + (x*y-r)*T(k)) = x^(n+1)*y*T(n) - r^(n-c+1)*x^c*y*T(c-1)",
        "n >= c-1; c in Z",
        ("x", "y", "r"),
        lambda e: _ssum(e, e.c, e.n, lambda k: e.r ** (e.n - k) * e.x**k * ((e.y**2 - 1) * e.r * e.U(k - 2) + (e.x * e.y - e.r) * e.T(k))),
        lambda e: e.x ** (e.n + 1) * e.y * e.T(e.n) - e.r ** (e.n - e.c + 1) * e.x**e.c * e.y * e.T(e.c - 1),
        c=True, s=True,
    ))
    add(_rec(
        "CHEB-PART-A",
        "sum(k=0..n) x^k*(T(k) + (x*y-1)*U(k)) = x^(n+1)*y*U(n)",
        "n >= -1",
        ("x", "y"),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * (e.T(k) + (e.x * e.y - 1) * e.U(k))),
        lambda e: e.x ** (e.n + 1) * e.y * e.U(e.n),
        s=True,
    ))
    add(_rec(
        "CHEB-PART-B",
        "sum(k=0..n) x^k*((y^2-1)*U(k-2) + (x*y-1)*T(k)) = x^(n+1)*y*T(n) - y^2",
        "n >= -1",
        ("x", "y"),
        lambda e: _ssum(e, 0, e.n, lambda k: e.x**k * ((e.y**2 - 1) * e.U(k - 2) + (e.x * e.y - 1) * e.T(k))),
        lambda e: e.x ** (e.n + 1) * e.y * e.T(e.n) - e.y**2,
        s=True,
    ))

    # ---- Jacobsthal instances -------------------------------------------
    add(_rec(
        "JAC-A",
        "sum(k=c..n) r^(n-k)*x^k*(r*jL(k) + (x-2*r)*J(k+1)) = x^(n+1)*J(n+1) - r^(n-c+1)*x^c*J(c)",
        "n >= c-1; c in Z",
        ("x", "r"),
        lambda e: _ssum(e, e.c, e.n, lambda k: e.r ** (e.n - k) * e.x**k * (e.r * e.JL(k) + (e.x - 2 * e.r) * e.J(k + 1))),
        lambda e: e.x ** (e.n + 1) * e.J(e.n + 1) - e.r ** (e.n - e.c + 1) * e.x**e.c * e.J(e.c),
        c=True, s=True,
    ))
    add(_rec(
        "JAC-B",
        "sum(k=c..n) r^(n-k)*x^k*(9*r*J(k) + (x-2*r)*jL(k+1)) = x^(n+1)*jL(n+1) - r^(n-c+1)*x^c*jL(c)",
        "n >= c-1; c in Z",
        ("x", "r"),
        lambda e: _ssum(e, e.c, e.n, lambda k: e.r ** (e.n - k) * e.x**k * (9 * e.r * e.J(k) + (e.x - 2 * e.r) * e.JL(k + 1))),
        lambda e: e.x ** (e.n + 1) * e.JL(e.n + 1) - e.r ** (e.n - e.c + 1) * e.x**e.c * e.JL(e.c),
        c=True, s=True,
    ))

    # ---- negative-index laws ---------------------------------------------
    add(_rec(
        "NEG-F",
        "F(-n) = (-1)^(n-1)*F(n)",
        "n in Z",
        (),
        lambda e: e.F(-e.n),
        lambda e: _alt(e.n - 1) * e.F(e.n),
        nd=(-16, 32),
    ))
    add(_rec(
        "NEG-L",
        "L(-n) = (-1)^n*L(n)",
        "n in Z",
        (),
        lambda e: e.L(-e.n),
        lambda e: _alt(e.n) * e.L(e.n),
        nd=(-16, 32),
    ))
    add(_rec(
        "NEG-U",
        "z^n*u(-n) = -u(n)",
        "n in Z",
        ("y", "z"),
        lambda e: e.z**e.n * e.u(-e.n),
        lambda e: -e.u(e.n),
        nd=(-16, 32),
    ))
    add(_rec(
        "NEG-V",
        "z^n*v(-n) = v(n)",
        "n in Z",
        ("y", "z"),
        lambda e: e.z**e.n * e.v(-e.n),
        lambda e: e.v(e.n),
        nd=(-16, 32),
    ))
    add(_rec(
        "NEG-T",
        "T(-n) = T(n)",
        "n in Z",
        ("y",),
        lambda e: e.T(-e.n),
        lambda e: e.T(e.n),
        nd=(-16, 32),
    ))

    # ---- closing square identity -------------------------------------------
    add(_rec(
        "LUC-SQ",
        "L(n)^2 = 5*F(n)^2 + (-1)^n*4",
        "n in Z",
        (),
        lambda e: e.L(e.n) ** 2,
        lambda e: 5 * e.F(e.n) ** 2 + _alt(e.n) * 4,
        nd=(-16, 16),
    ))

    # ---- argument-evaluation identities -------------------------------------
    add(_rec(
        "ARG-ODD-L",
        "L(n; L(m)) = L(m*n)   [m odd]",
        "n in Z; m in {1,3,5}",
        (),
        lambda e: e.Lp(e.n, e.L(e.m)),
        lambda e: e.L(e.m * e.n),
        m=True, parity="odd", nd=(0, 12), md=(1, 3, 5),
    ))
    add(_rec(
        "ARG-ODD-F",
        "F(m)*F(n; L(m)) = F(m*n)   [m odd]",
        "n in Z; m in {1,3,5}",
        (),
        lambda e: e.F(e.m) * e.Fp(e.n, e.L(e.m)),
        lambda e: e.F(e.m * e.n),
        m=True, parity="odd", nd=(0, 12), md=(1, 3, 5),
    ))
    add(_rec(
        "ARG-EVEN-L",
        "L(n; i*L(m)) = i^n*L(m*n)   [m even, i^2 = -1]",
        "n in Z; m in {2,4}",
        (),
        lambda e: e.Lp(e.n, e.w * e.L(e.m)),
        lambda e: e.w**e.n * e.L(e.m * e.n),
        m=True, parity="even", ext=-1, nd=(0, 12), md=(2, 4),
    ))
    add(_rec(
        "ARG-EVEN-F",
        "F(m)*F(n; i*L(m)) = i^(n-1)*F(m*n)   [m even, i^2 = -1]",
        "n in Z; m in {2,4}",
        (),
        lambda e: e.F(e.m) * e.Fp(e.n, e.w * e.L(e.m)),
        lambda e: e.w ** (e.n - 1) * e.F(e.m * e.n),
        m=True, parity="even", ext=-1, nd=(0, 12), md=(2, 4),
    ))
    add(_rec(
        "ARG-DBL-L",
        "L(n; i*(x^2+2)) = i^n*L(2n; x)   [i^2 = -1]",
        "n in Z",
        ("x",),
        lambda e: e.Lp(e.n, e.w * (e.x**2 + 2)),
        lambda e: e.w**e.n * e.Lp(2 * e.n, e.x),
        ext=-1, nd=(0, 12),
    ))
    add(_rec(
        "ARG-DBL-F",
        "x*F(n; i*(x^2+2)) = i^(n-1)*F(2n; x)   [i^2 = -1]",
        "n in Z",
        ("x",),
        lambda e: e.x * e.Fp(e.n, e.w * (e.x**2 + 2)),
        lambda e: e.w ** (e.n - 1) * e.Fp(2 * e.n, e.x),
        ext=-1, nd=(0, 12),
    ))
    add(_rec(
        "EVAL-4F",
        "2*F(n; 4) = F(3n)",
        "n in Z",
        (),
        lambda e: 2 * e.Fp(e.n, 4),
        lambda e: e.F(3 * e.n),
        nd=(0, 12),
    ))
    add(_rec(
        "EVAL-4L",
        "L(n; 4) = L(3n)",
        "n in Z",
        (),
        lambda e: e.Lp(e.n, 4),
        lambda e: e.L(3 * e.n),
        nd=(0, 12),
    ))
    add(_rec(
        "EVAL-S5F",
        "3*F(2n; s) = s*F(4n)   [s^2 = 5]",
        "n in Z",
        (),
        lambda e: 3 * e.Fp(2 * e.n, e.w),
        lambda e: e.w * e.F(4 * e.n),
        ext=5, nd=(0, 12),
    ))
    add(_rec(
        "EVAL-S5L",
        "L(2n; s) = L(4n)   [s^2 = 5]",
        "n in Z",
        (),
        lambda e: e.Lp(2 * e.n, e.w),
        lambda e: e.L(4 * e.n),
        ext=5, nd=(0, 12),
    ))

    return tuple(R)


_REGISTRY: tuple[IdentityRecord, ...] | None = None
_BY_ID: dict[str, IdentityRecord] = {}


def registry() -> tuple[IdentityRecord, ...]:
    """All identity records, in a stable order."""
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _build_registry()
        _BY_ID.update({r.id: r for r in _REGISTRY})
    return _REGISTRY


def get_record(ident: str) -> IdentityRecord:
    registry()
    try:
        return _BY_ID[ident]
    except KeyError:
        raise UnknownIdentity(ident) from None


# ---------------------------------------------------------------------------
# checking


def _sample_rationals(seed: int, ident: str, var: str, count: int = 3) -> list[Fraction]:
    rng = random.Random(f"{seed}:{ident}:{var}")
    vals: list[Fraction] = []
    while len(vals) < count:
        f = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        if f and f not in vals:
            vals.append(f)
    return vals


def _make_env(record: IdentityRecord, combo: Mapping[str, object]) -> Env:
    ring = Ring(record.ext_square)
    resolved: dict[str, RingElem] = {}
    for var in record.free_vars:
        val = combo.get(var, SYM)
        if isinstance(val, str):
            if val != SYM:
                raise DomainError(f"binding for {var!r} must be a value or {SYM!r}")
            resolved[var] = ring.var(var)
        else:
            resolved[var] = ring.element(val)
    return Env(ring, resolved)


def _params_dict(record: IdentityRecord, combo: Mapping[str, object], n: int, c: int, m: int) -> dict:
    out: dict = {"n": n}
    if record.uses_c:
        out["c"] = c
    if record.uses_m:
        out["m"] = m
    for var in record.free_vars:
        val = combo.get(var, SYM)
        out[var] = SYM if isinstance(val, str) else str(val)
    return out


def _validate(record: IdentityRecord, a: ParamAssignment) -> None:
    if record.m_parity == "odd" and a.m % 2 == 0:
        raise DomainError(f"{record.id} needs m odd, got m={a.m}")
    if record.m_parity == "even" and a.m % 2 != 0:
        raise DomainError(f"{record.id} needs m even, got m={a.m}")
    if record.is_sum:
        lower = a.c if record.uses_c else 0
        if a.n < lower - 1:
            raise DomainError(f"{record.id} sums from {lower}: n={a.n} < {lower - 1}")


def check_case(ident: str, assignment: ParamAssignment) -> CheckReport:
    """Verify one instance; the report carries the witness on failure."""
    record = get_record(ident)
    _validate(record, assignment)
    t0 = time.perf_counter()
    env = _make_env(record, assignment.bindings)
    env.n, env.c, env.m = assignment.n, assignment.c, assignment.m
    lv = record.lhs(env)
    rv = record.rhs(env)
    millis = (time.perf_counter() - t0) * 1000.0
    if lv == rv:
        return CheckReport(record.id, 1, 1, [], millis)
    params = _params_dict(record, assignment.bindings, assignment.n, assignment.c, assignment.m)
    return CheckReport(record.id, 1, 0, [CheckFailure(params, str(lv), str(rv))], millis)


def _binding_combos(record: IdentityRecord, bindings: Mapping[str, object], mode: str, seed: int) -> list[dict]:
    """Binding combinations for the requested mode, deduplicated.

    Explicit bindings (single value, list of values, or SYM) pin a
    variable in every pass; unbound variables are generators in the
    symbolic pass and get 3 seeded rational samples in the numeric pass.
    """
    explicit: dict[str, list[object]] = {}
    for var, val in bindings.items():
        if var not in record.free_vars:
            continue  # irrelevant for this identity
        explicit[var] = list(val) if isinstance(val, (list, tuple)) else [val]

    def combos_for(default: str) -> Iterable[dict]:
        per_var = []
        for var in record.free_vars:
            if var in explicit:
                options = explicit[var]
            elif default == "sym":
                options = [SYM]
            else:
                options = _sample_rationals(seed, record.id, var)
            per_var.append([(var, o) for o in options])
        return (dict(t) for t in itertools.product(*per_var))

    passes = []
    if mode in ("symbolic", "both"):
        passes.append("sym")
    if mode in ("numeric", "both"):
        passes.append("samples")
    if not passes:
        raise ValueError(f"unknown mode {mode!r}")

    out: list[dict] = []
    seen = set()
    for p in passes:
        for combo in combos_for(p):
            key = tuple(sorted(combo.items(), key=lambda kv: kv[0]))
            if key not in seen:
                seen.add(key)
                out.append(combo)
    return out


def _index_cases(record, n_range, c_range, m_values):
    if record.uses_m:
        ms = list(m_values) if m_values is not None else list(record.m_default or _DEFAULT_M)
        if record.m_parity == "odd":
            ms = [m for m in ms if m % 2]
        elif record.m_parity == "even":
            ms = [m for m in ms if m % 2 == 0]
    else:
        ms = [1]
    if record.uses_c:
        lo, hi = c_range if c_range is not None else _DEFAULT_C
        cs = range(lo, hi + 1)
    else:
        cs = (0,)
    n_lo, n_hi = n_range if n_range is not None else (record.n_default or _DEFAULT_N)
    for m in ms:
        for c in cs:
            for n in range(c + n_lo, c + n_hi + 1):
                if record.is_sum and n < c - 1:
                    continue
                yield m, c, n


def _run_grid(record, n_range, c_range, m_values, bindings, mode, seed) -> CheckReport:
    t0 = time.perf_counter()
    attempted = passed = 0
    failures: list[CheckFailure] = []
    for combo in _binding_combos(record, bindings or {}, mode, seed):
        env = _make_env(record, combo)
        for m, c, n in _index_cases(record, n_range, c_range, m_values):
            env.n, env.c, env.m = n, c, m
            lv = record.lhs(env)
            rv = record.rhs(env)
            attempted += 1
            if lv == rv:
                passed += 1
            else:
                failures.append(CheckFailure(_params_dict(record, combo, n, c, m), str(lv), str(rv)))
    millis = (time.perf_counter() - t0) * 1000.0
    return CheckReport(record.id, attempted, passed, failures, millis)


def check_grid(
    ident: str,
    *,
    n_range: tuple[int, int] | None = None,
    c_range: tuple[int, int] | None = None,
    m_values: Iterable[int] | None = None,
    bindings: Mapping[str, object] | None = None,
    mode: str = "both",
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Check an identity over a Cartesian grid of indices and bindings.

    ``n_range`` is relative to c for identities with a c parameter
    (and absolute otherwise, c being 0); out-of-domain index tuples are
    skipped.  Case order is deterministic.
    """
    record = get_record(ident)
    return _run_grid(record, n_range, c_range, m_values, bindings, mode, seed)


def check_all(
    *,
    n_range: tuple[int, int] | None = None,
    c_range: tuple[int, int] | None = None,
    m_values: Iterable[int] | None = None,
    bindings: Mapping[str, object] | None = None,
    mode: str = "both",
    seed: int = DEFAULT_SEED,
) -> list[CheckReport]:
    """Run every registry entry on its default grid."""
    return [
        _run_grid(record, n_range, c_range, m_values, bindings, mode, seed)
        for record in registry()
    ]
