from fractions import Fraction

import pytest

from lucaslab.rings import NotInvertible, Ring
from lucaslab.sequences import (
    ChebSeq,
    DegenerateDiscriminant,
    LucasSeq,
    MissingArgument,
    SeqKind,
    UnexpectedArgument,
    WindowError,
    binet_roots,
    binet_value,
    cheb_t,
    cheb_u,
    lucas_u,
    lucas_uv_fast,
    lucas_v,
    named_term,
    telescope_sum,
)

R = Ring()
X, Y, Z = R.var("x"), R.var("y"), R.var("z")


def test_lucas_seed_and_spot_values():
    assert lucas_u(1, -1, 10) == 55
    assert lucas_v(1, -1, 10) == 123
    assert lucas_u(Y, Z, 0) == 0
    assert lucas_u(Y, Z, 1) == 1
    assert lucas_u(Y, Z, 2) == Y
    assert lucas_v(Y, Z, 0) == 2
    assert lucas_v(Y, Z, 2) == Y**2 - 2 * Z


def test_negative_index_laws_symbolic():
    assert lucas_u(Y, Z, -1) == -(Z**-1)
    assert lucas_v(Y, Z, -1) == Y * Z**-1
    seq = LucasSeq(Y, Z)
    for n in range(1, 13):
        zp = Z**n
        assert seq.u(-n) * zp == -seq.u(n)
        assert seq.v(-n) * zp == seq.v(n)


def test_negative_index_laws_numeric():
    seq = LucasSeq(Fraction(3, 2), Fraction(-5, 7))
    z = Fraction(-5, 7)
    for n in range(1, 20):
        assert seq.u(-n) * z**n == -seq.u(n)
        assert seq.v(-n) * z**n == seq.v(n)


def test_z_must_be_nonzero():
    with pytest.raises(ValueError):
        LucasSeq(3, 0)


def test_recurrence_invariant_named_kinds():
    from lucaslab.sequences import _NAMED

    # values produced by independent fast-doubling runs per index
    for kind in (SeqKind.FIBONACCI, SeqKind.LUCAS, SeqKind.PELL,
                 SeqKind.PELL_LUCAS, SeqKind.JACOBSTHAL, SeqKind.JACOBSTHAL_LUCAS):
        _, y, z = _NAMED[kind]
        terms = {n: named_term(kind, n, fast=True) for n in range(-32, 65)}
        for n in range(-31, 64):
            assert terms[n + 1] == y * terms[n] - z * terms[n - 1], (kind, n)


def test_recurrence_invariant_symbolic_polynomials():
    fib = LucasSeq(X, -1)
    for n in range(-8, 16):
        assert fib.u(n + 1) == X * fib.u(n) + fib.u(n - 1)
    ch = ChebSeq(Y)
    for n in range(-8, 16):
        assert ch.t(n + 1) == 2 * Y * ch.t(n) - ch.t(n - 1)
        assert ch.u(n + 1) == 2 * Y * ch.u(n) - ch.u(n - 1)


def test_fast_doubling_matches_iteration():
    assert lucas_uv_fast(1, -1, 6) == (8, 18)
    assert lucas_uv_fast(2, -1, 5) == (29, 82)
    assert lucas_uv_fast(Y, Z, 0) == (0, 2)
    seq = LucasSeq(Y, Z)
    for n in range(-8, 20):
        assert lucas_uv_fast(Y, Z, n) == (seq.u(n), seq.v(n)), n
    num = LucasSeq(Fraction(1, 2), Fraction(-2, 3))
    for n in range(-12, 24):
        got = lucas_uv_fast(Fraction(1, 2), Fraction(-2, 3), n)
        assert got == (num.u(n), num.v(n)), n


def test_fast_doubling_negative_index_fractions():
    # u(-5) for (1,-2) picks up the 1/z^5 factor
    u, v = lucas_uv_fast(1, -2, -5)
    assert u == Fraction(11, 32)
    assert v == Fraction(-31, 32)


def test_chebyshev_values():
    assert cheb_t(Y, 3) == 4 * Y**3 - 3 * Y
    assert cheb_u(Y, 3) == 8 * Y**3 - 4 * Y
    assert cheb_u(Y, -1) == 0
    assert cheb_u(Y, -2) == -1
    assert cheb_t(Y, -4) == cheb_t(Y, 4)
    for n in range(0, 12):
        assert cheb_u(Y, -n) == -cheb_u(Y, n - 2), n


def test_chebyshev_lucas_pair_link():
    # standard link, kept as a property: T = v(2y,1)/2, U(n) = u(n+1; 2y,1)
    pair = LucasSeq(2 * Y, 1)
    ch = ChebSeq(Y)
    for n in range(-8, 17):
        assert ch.t(n) == pair.v(n) * Fraction(1, 2)
        assert ch.u(n) == pair.u(n + 1)


def test_named_term_integer_kinds():
    assert named_term(SeqKind.JACOBSTHAL, 5) == 11
    assert named_term(SeqKind.JACOBSTHAL_LUCAS, 4) == 17
    assert named_term(SeqKind.FIBONACCI, 10) == 55
    assert named_term(SeqKind.PELL, 5) == 29
    for n in range(-16, 33):
        assert named_term(SeqKind.LUCAS, n, fast=True) == named_term(SeqKind.LUCAS, n)
        assert named_term(SeqKind.JACOBSTHAL, n, fast=True) == named_term(SeqKind.JACOBSTHAL, n)


def test_named_term_specialization_links():
    for n in range(-8, 17):
        assert named_term(SeqKind.FIBONACCI_POLY, n, arg=1) == named_term(SeqKind.FIBONACCI, n)
        assert named_term(SeqKind.FIBONACCI_POLY, n, arg=2) == named_term(SeqKind.PELL, n)
        assert named_term(SeqKind.LUCAS_POLY, n, arg=2) == named_term(SeqKind.PELL_LUCAS, n)
        assert named_term(SeqKind.JACOBSTHAL, n) == lucas_u(1, -2, n)
        assert named_term(SeqKind.JACOBSTHAL_LUCAS, n) == lucas_v(1, -2, n)


def test_named_term_argument_validation():
    with pytest.raises(UnexpectedArgument):
        named_term(SeqKind.FIBONACCI, 3, arg=2)
    with pytest.raises(MissingArgument):
        named_term(SeqKind.FIBONACCI_POLY, 3)
    with pytest.raises(MissingArgument):
        named_term(SeqKind.LUCAS_U, 3)
    with pytest.raises(UnexpectedArgument):
        named_term(SeqKind.LUCAS_U, 3, arg=1)
    with pytest.raises(UnexpectedArgument):
        named_term(SeqKind.CHEB_T, 3, arg=Y, y=Y)
    assert named_term(SeqKind.LUCAS_U, 5, y=1, z=-1) == 5


def test_binet_examples():
    assert binet_value(SeqKind.LUCAS_V, 1, -1, 3) == 4
    assert binet_value(SeqKind.LUCAS_U, 1, -1, -3) == 2
    with pytest.raises(DegenerateDiscriminant):
        binet_value(SeqKind.LUCAS_U, 2, 1, 5)
    with pytest.raises(ValueError):
        binet_value(SeqKind.FIBONACCI, 1, -1, 3)


def test_binet_root_relations():
    for yy, zz in [(1, -1), (2, -1), (Fraction(5, 3), Fraction(1, 7)), (3, 2)]:
        tau, sigma = binet_roots(yy, zz)
        q = Fraction(yy) ** 2 - 4 * Fraction(zz)
        assert tau + sigma == yy
        assert tau * sigma == zz
        assert (tau - sigma) ** 2 == q


def test_binet_matches_recurrence():
    cases = [(1, -1), (3, 2), (Fraction(1, 2), Fraction(-2, 3)), (2, -1), (1, -2)]
    for yy, zz in cases:
        seq = LucasSeq(Fraction(yy), Fraction(zz))
        for n in range(-8, 17):
            got_u = binet_value(SeqKind.LUCAS_U, yy, zz, n)
            got_v = binet_value(SeqKind.LUCAS_V, yy, zz, n)
            assert got_u.is_rational and got_v.is_rational
            assert got_u == seq.u(n), (yy, zz, n)
            assert got_v == seq.v(n), (yy, zz, n)


def test_binet_negative_index_needs_invertible_z():
    with pytest.raises(NotInvertible):
        binet_value(SeqKind.LUCAS_U, 3, 0, -2)


def test_telescope_sum():
    assert telescope_sum(lambda k: k * k, 0, 4) == 25
    assert telescope_sum(lambda k: k, 1, 3, signed=True) == -5
    assert telescope_sum(lambda k: 1 / 0, 5, 4) == 0
    with pytest.raises(WindowError):
        telescope_sum(lambda k: k, 5, 3)
    # over ring elements
    seq = LucasSeq(Y, Z)
    got = telescope_sum(lambda k: seq.u(k), 0, 6)
    assert got == seq.u(7) - seq.u(0)
