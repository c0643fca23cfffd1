import dataclasses
from fractions import Fraction

import pytest

from lucaslab.identities import (
    SYM,
    DomainError,
    ParamAssignment,
    UnknownIdentity,
    _make_env,
    _run_grid,
    _sample_rationals,
    check_case,
    check_grid,
    get_record,
    registry,
    report_to_dict,
)
from lucaslab.rings import Ring
from lucaslab.sequences import LucasSeq


def test_registry_shape():
    recs = registry()
    ids = [r.id for r in recs]
    assert len(ids) == len(set(ids))
    assert "EDG-1" in ids
    assert "CHEB-THM-A" in ids
    assert len(recs) == 78
    for r in recs:
        assert r.statement and r.domain
        assert "n" in r.index_params
        assert set(r.free_vars) <= {"x", "y", "z", "r"}


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        get_record("NO-SUCH-ID")
    with pytest.raises(UnknownIdentity):
        check_case("NO-SUCH-ID", ParamAssignment(n=1))


def test_spot_value_weighted_fibonacci_sum():
    rec = get_record("EDG-1")
    env = _make_env(rec, {"x": 2})
    env.n = 3
    assert rec.lhs(env) == 48
    assert rec.rhs(env) == 48
    assert check_case("EDG-1", ParamAssignment(n=3, bindings={"x": 2})).ok


def test_spot_value_alternating_poly():
    rec = get_record("PROP3-F")
    env = _make_env(rec, {"y": 1, "x": 3})
    env.n = 2
    assert rec.lhs(env) == 2
    assert rec.rhs(env) == 2


def test_spot_value_jacobsthal():
    rec = get_record("JAC-A")
    env = _make_env(rec, {"r": 1, "x": 1})
    env.n, env.c = 2, 0
    assert rec.lhs(env) == 3
    assert rec.rhs(env) == 3


def test_spot_value_chebyshev():
    rec = get_record("CHEB-THM-A")
    env = _make_env(rec, {"r": 1, "x": 1, "y": 2})
    env.n, env.c = 2, 0
    assert rec.lhs(env) == 30
    assert rec.rhs(env) == 30


def test_empty_sum_case():
    rep = check_case("THM1-A", ParamAssignment(n=-3, c=-2))
    assert rep.ok and rep.attempted == 1


def test_domain_errors():
    with pytest.raises(DomainError):
        check_case("THM1-A", ParamAssignment(n=-4, c=-2))
    with pytest.raises(DomainError):
        check_case("EDG-1", ParamAssignment(n=-2))
    with pytest.raises(DomainError):
        check_case("PROP4-FO", ParamAssignment(n=2, m=2))
    with pytest.raises(DomainError):
        check_case("PROP4-FE", ParamAssignment(n=2, m=3))


def test_grid_case_counts():
    rep = check_grid("THM1-A", n_range=(-1, 8), c_range=(-3, 3), mode="symbolic")
    assert (rep.attempted, rep.passed) == (70, 70)
    rep = check_grid("PROP4-FO", m_values=(1, 3, 5), n_range=(0, 6), mode="symbolic")
    assert (rep.attempted, rep.passed) == (21, 21)
    rep = check_grid(
        "COR6-F",
        n_range=(0, 10),
        bindings={"x": [Fraction(-2), Fraction(1, 3), Fraction(7)]},
    )
    assert (rep.attempted, rep.passed) == (33, 33)


def test_grid_dedupes_identical_passes():
    # all variables pinned: symbolic and numeric passes coincide
    rep = check_grid("EDG-1", n_range=(0, 5), bindings={"x": 2}, mode="both")
    assert rep.attempted == 6


def test_mutated_registry_entry_is_caught():
    rec = get_record("EDG-1")
    bad = dataclasses.replace(rec, rhs=lambda e: -rec.rhs(e))
    rep = _run_grid(bad, None, None, None, None, "both", 42)
    assert rep.failures
    first = rep.failures[0]
    assert first.params["x"] and first.lhs and first.rhs
    assert rep.passed + len(rep.failures) == rep.attempted


def test_telescoping_reproves_sum_closed_form():
    from lucaslab.sequences import telescope_sum

    ring = Ring()
    x, y, z, r = (ring.var(v) for v in "xyzr")
    seq = LucasSeq(y, z, ring=ring)
    for c, n in [(0, 4), (-2, 3), (1, 0)]:
        f = lambda k: y * r ** (n - k + 1) * x**k * seq.u(k)
        rhs = x ** (n + 1) * y * seq.u(n + 1) - r ** (n - c + 1) * x**c * y * seq.u(c)
        assert telescope_sum(f, c, n) == rhs, (c, n)


def test_specialization_coherence_with_plain_sums():
    # the general sum at (z=-1, r=1, c=0, y=1) reproduces the plain forms
    general = get_record("THM1-A")
    plain = get_record("EDG-1")
    env_g = _make_env(general, {"z": -1, "r": 1, "y": 1})
    env_p = _make_env(plain, {})
    for n in range(-1, 9):
        env_g.n, env_g.c = n, 0
        env_p.n = n
        assert general.lhs(env_g) == plain.lhs(env_p), n
        assert general.rhs(env_g) == plain.rhs(env_p), n
    general = get_record("THM2-A")
    plain = get_record("DPL-2")
    env_g = _make_env(general, {"z": -1, "r": 1, "y": 1})
    env_p = _make_env(plain, {})
    for n in range(-1, 9):
        env_g.n, env_g.c = n, 0
        env_p.n = n
        assert general.lhs(env_g) == plain.lhs(env_p), n
        assert general.rhs(env_g) == plain.rhs(env_p), n


def test_cleared_forms_match_fractional_forms():
    # evaluating the fractional statements directly with exact division
    # agrees with the registered cleared forms at admissible numeric x
    ring = Ring()
    for xv in (Fraction(3), Fraction(-1, 2), Fraction(7, 3)):
        x = ring.element(xv)
        fib = LucasSeq(x, -1, ring=ring)
        for n in range(0, 9):
            xp = x**n
            # first cleared form divided by x^n vs the fractional sum
            frac_lhs = ring.zero
            for k in range(0, n + 1):
                frac_lhs = frac_lhs + (2**k * fib.v(k)).exact_div(x**k)
            frac_rhs = (2 ** (n + 1) * fib.u(n + 1)).exact_div(xp)
            rec = get_record("COR3-FX")
            env = _make_env(rec, {"x": xv})
            env.n = n
            assert rec.lhs(env).exact_div(xp) == frac_lhs
            assert rec.rhs(env).exact_div(xp) == frac_rhs
            assert frac_lhs == frac_rhs
            # even-index variant: denominators (x^2+2)^k and x*(x^2+4)
            w = x**2 + 2
            frac_lhs = ring.zero
            for k in range(0, n + 1):
                frac_lhs = frac_lhs + (2**k * fib.v(2 * k)).exact_div(w**k)
            frac_rhs = (2 ** (n + 1) * fib.u(2 * n + 2)).exact_div(x * w**n)
            rec = get_record("COR7-F")
            env = _make_env(rec, {"x": xv})
            env.n = n
            clear = x * w**n
            assert rec.lhs(env).exact_div(clear) == frac_lhs
            assert rec.rhs(env).exact_div(clear) == frac_rhs
            assert frac_lhs == frac_rhs
            # companion forms with the (x^2+4) denominators
            frac_lhs = ring.zero
            for k in range(0, n + 1):
                frac_lhs = frac_lhs + (2**k * fib.u(k)).exact_div(x**k)
            frac_rhs = (
                x * ((2 ** (n + 1) * fib.v(n + 1)).exact_div(x ** (n + 1)) - 2)
            ).exact_div(x**2 + 4)
            rec = get_record("COR3-LX")
            env = _make_env(rec, {"x": xv})
            env.n = n
            clear = (x**2 + 4) * xp
            assert rec.lhs(env).exact_div(clear) == frac_lhs
            assert rec.rhs(env).exact_div(clear) == frac_rhs
            assert frac_lhs == frac_rhs
            frac_lhs = ring.zero
            for k in range(0, n + 1):
                frac_lhs = frac_lhs + (2**k * fib.u(2 * k)).exact_div(w**k)
            frac_rhs = (
                w * ((2 ** (n + 1) * fib.v(2 * n + 2)).exact_div(w ** (n + 1)) - 2)
            ).exact_div(x * (x**2 + 4))
            rec = get_record("COR7-L")
            env = _make_env(rec, {"x": xv})
            env.n = n
            clear = x * (x**2 + 4) * w ** (n + 1)
            assert rec.lhs(env).exact_div(clear) == frac_lhs
            assert rec.rhs(env).exact_div(clear) == frac_rhs
            assert frac_lhs == frac_rhs


def test_symbolic_values_specialize_to_numeric_runs():
    # substituting sampled rationals into the symbolic polynomials agrees
    # with evaluating the same case numerically from scratch
    for rec in registry():
        m = 3 if rec.m_parity == "odd" else (2 if rec.m_parity == "even" else 1)
        sym_env = _make_env(rec, {})
        sym_env.n, sym_env.c, sym_env.m = 4, 1 if rec.uses_c else 0, m
        values = {var: _sample_rationals(7, rec.id, var, 1)[0] for var in rec.free_vars}
        num_env = _make_env(rec, values)
        num_env.n, num_env.c, num_env.m = sym_env.n, sym_env.c, sym_env.m
        for side in ("lhs", "rhs"):
            sym_val = getattr(rec, side)(sym_env)
            num_val = getattr(rec, side)(num_env)
            assert sym_val.substitute(values) == num_val, (rec.id, side)


def test_report_serialization():
    rep = check_grid("EDG-1", n_range=(0, 3), bindings={"x": 2})
    d = report_to_dict(rep)
    assert d["id"] == "EDG-1"
    assert d["attempted"] == 4 and d["passed"] == 4
    assert d["failures"] == []
    assert isinstance(d["millis"], float)
    rec = get_record("EDG-1")
    bad = dataclasses.replace(rec, rhs=lambda e: rec.rhs(e) + 1)
    rep = _run_grid(bad, (0, 1), None, None, {"x": 2}, "numeric", 42)
    d = report_to_dict(rep)
    assert d["failures"] and set(d["failures"][0]) == {"params", "lhs", "rhs"}
    assert d["failures"][0]["params"] == {"n": 0, "x": "2"}


def test_param_assignment_defaults():
    a = ParamAssignment(n=5)
    assert (a.c, a.m) == (0, 1)
    assert a.bindings == {}


def test_irrelevant_bindings_are_ignored():
    rep = check_grid("EDG-1", n_range=(0, 2), bindings={"x": 2, "r": 9})
    assert rep.attempted == 3 and rep.ok


def test_symbolic_binding_marker():
    rep = check_grid("PROP1-F", n_range=(0, 3), bindings={"x": SYM, "y": 2}, mode="both")
    # x stays a generator in both passes, y is pinned: passes coincide
    assert rep.attempted == 4 and rep.ok


def test_extension_contexts_in_registry():
    env = _make_env(get_record("EVAL-S5F"), {})
    assert env.ring.ext_square == 5
    env = _make_env(get_record("ARG-DBL-L"), {})
    assert env.ring.ext_square == -1
    assert env.w * env.w == -1
