"""Exact tests of the context calculus: characteristic counts and transitions."""

import pytest

from kamlab import (
    CONTEXT1,
    CONTEXT2,
    PLUS_MINUS_PAIRS_WITH_ZEROS,
    SMOOTH,
    TRACE_ZERO,
    UNCONSTRAINED,
    WHITNEY_CANTOR_LIKE,
    BadOrder,
    GeneralDissipative,
    HamiltonianIsotropic,
    Impossible,
    InfeasibleParameters,
    NotContext2,
    Reversible,
    VolumePreserving,
    context2_excitation_diagnostics,
    destroy_resonant,
    excite_modes,
    profile,
)

GRID = range(0, 9)


def _oracle(ctx):
    """Independent recomputation of the characteristic counts."""
    if isinstance(ctx, HamiltonianIsotropic):
        n, p, s = ctx.n, ctx.p, ctx.s
        dim, m, slb, c = 2 * (n + p), n + 2 * p, 0, n + s
        g, shape = 2 * p, PLUS_MINUS_PAIRS_WITH_ZEROS
    elif isinstance(ctx, VolumePreserving):
        n, p, s = ctx.n, ctx.p, ctx.s
        dim, m = n + p, p
        slb = max((1 if n >= 2 else 0) - (1 if p == 1 else 0), 0)
        c = (1 if p == 1 else 0) + s
        g, shape = p - (1 if p == 1 else 0), TRACE_ZERO
    elif isinstance(ctx, GeneralDissipative):
        n, p, s = ctx.n, ctx.p, ctx.s
        dim, m, slb, c = n + p, p, (1 if n >= 2 else 0), s
        g, shape = p, UNCONSTRAINED
    else:
        n, a, b, s = ctx.n, ctx.a, ctx.b, ctx.s
        dim, m = n + a + b, a + b
        slb = max((1 if n >= 2 else 0) + b - a, 0)
        c = a - b + s
        g, shape = 2 * min(a, b), PLUS_MINUS_PAIRS_WITH_ZEROS
    return dim, m, slb, c, c - s, g, abs(c - s), shape


def _all_contexts():
    for n in GRID:
        for p in GRID:
            for s in GRID:
                yield HamiltonianIsotropic(n, p, s)
                yield GeneralDissipative(n, p, s)
                if p >= 1:
                    yield VolumePreserving(n, p, s)
    for n in GRID:
        for a in GRID:
            for b in GRID:
                for s in GRID:
                    yield Reversible(n, a, b, s)


def test_profile_matches_oracle_exhaustively():
    for ctx in _all_contexts():
        prof = profile(ctx)
        dim, m, slb, c, cms, g, mult, shape = _oracle(ctx)
        got = (
            prof.dim_m,
            prof.m,
            prof.s_lower_bound,
            prof.c,
            prof.c_minus_s,
            prof.g,
            prof.zero_floquet_multiplicity,
            prof.spectrum_shape,
        )
        assert got == (dim, m, slb, c, cms, g, mult, shape), ctx
        # the nonzero count always complements the zero multiplicity
        assert prof.g == prof.m - abs(prof.c_minus_s), ctx


def test_profile_examples():
    prof = profile(HamiltonianIsotropic(2, 1, 0))
    assert (prof.dim_m, prof.m, prof.s_lower_bound, prof.c, prof.c_minus_s, prof.g) == (
        6, 4, 0, 2, 2, 2,
    )
    assert prof.zero_floquet_multiplicity == 2
    assert prof.spectrum_shape == PLUS_MINUS_PAIRS_WITH_ZEROS
    assert prof.reversible_class is None

    prof = profile(Reversible(0, 1, 2, 2))
    assert (prof.dim_m, prof.m, prof.s_lower_bound, prof.c, prof.c_minus_s, prof.g) == (
        3, 3, 1, 1, -1, 2,
    )
    assert prof.zero_floquet_multiplicity == 1
    assert prof.reversible_class == CONTEXT2

    prof = profile(GeneralDissipative(0, 0, 0))
    assert (prof.dim_m, prof.m, prof.s_lower_bound, prof.c, prof.c_minus_s, prof.g) == (
        0, 0, 0, 0, 0, 0,
    )
    assert prof.spectrum_shape == UNCONSTRAINED

    prof = profile(VolumePreserving(2, 1, 0))
    assert (prof.dim_m, prof.m, prof.s_lower_bound, prof.c, prof.c_minus_s, prof.g) == (
        3, 1, 0, 1, 1, 0,
    )
    assert prof.spectrum_shape == TRACE_ZERO


def test_reversible_class_split():
    for a in GRID:
        for b in GRID:
            prof = profile(Reversible(1, a, b, 3))
            assert prof.reversible_class == (CONTEXT1 if a >= b else CONTEXT2)


def test_construction_rejects_bad_counts():
    with pytest.raises(ValueError):
        HamiltonianIsotropic(-1, 0, 0)
    with pytest.raises(TypeError):
        Reversible(0, 1.5, 2, 0)
    with pytest.raises(TypeError):
        GeneralDissipative(True, 0, 0)
    with pytest.raises(Impossible):
        VolumePreserving(2, 0, 0)


# ---------------------------------------------------------------------------
# destruction


def test_destroy_examples():
    res = destroy_resonant(Reversible(3, 3, 0, 0), 1)
    assert res.target == Reversible(2, 3, 1, 0)
    assert profile(res.target).c == 2
    assert res.family_smoothness == WHITNEY_CANTOR_LIKE

    res = destroy_resonant(HamiltonianIsotropic(2, 0, 0), 1)
    assert res.target == HamiltonianIsotropic(1, 1, 0)
    assert res.family_smoothness == SMOOTH

    with pytest.raises(Impossible):
        destroy_resonant(GeneralDissipative(3, 1, 2), 1)


def test_destroy_dissipative_always_impossible():
    for n in GRID:
        for p in GRID:
            for s in GRID:
                for r in range(1, 9):
                    with pytest.raises(Impossible):
                        destroy_resonant(GeneralDissipative(n, p, s), r)


def test_destroy_volume_preserving_needs_p1_r1():
    for n in GRID:
        for p in range(1, 9):
            for s in GRID:
                for r in range(1, 9):
                    ctx = VolumePreserving(n, p, s)
                    if (p, r) != (1, 1):
                        with pytest.raises(Impossible):
                            destroy_resonant(ctx, r)
                    elif n < 2:
                        with pytest.raises(BadOrder):
                            destroy_resonant(ctx, r)
                    elif n >= 3 and s < 1:
                        with pytest.raises(InfeasibleParameters):
                            destroy_resonant(ctx, r)
                    else:
                        res = destroy_resonant(ctx, r)
                        assert res.target == VolumePreserving(n - 1, 2, s)


def test_destroy_reversible_inequality_exact():
    for n in range(2, 9):
        for a in GRID:
            for b in GRID:
                for s in GRID:
                    for r in range(1, n):
                        ctx = Reversible(n, a, b, s)
                        need = (1 if n - r >= 2 else 0) + b + r - a
                        if s >= need:
                            res = destroy_resonant(ctx, r)
                            assert res.target == Reversible(n - r, a, b + r, s)
                            assert res.family_smoothness == (
                                SMOOTH if r == n - 1 else WHITNEY_CANTOR_LIKE
                            )
                        else:
                            with pytest.raises(InfeasibleParameters):
                                destroy_resonant(ctx, r)


def test_destroy_hamiltonian_grid():
    for n in range(2, 9):
        for p in GRID:
            for s in GRID:
                for r in range(1, n):
                    res = destroy_resonant(HamiltonianIsotropic(n, p, s), r)
                    assert res.target == HamiltonianIsotropic(n - r, p + r, s)
                    assert profile(res.target).dim_m == profile(res.source).dim_m


def test_destroy_order_out_of_range():
    with pytest.raises(BadOrder):
        destroy_resonant(HamiltonianIsotropic(1, 0, 0), 1)  # n < 2
    with pytest.raises(BadOrder):
        destroy_resonant(HamiltonianIsotropic(3, 0, 0), 3)  # r > n - 1
    with pytest.raises(BadOrder):
        destroy_resonant(HamiltonianIsotropic(3, 0, 0), 0)
    with pytest.raises(BadOrder):
        destroy_resonant(HamiltonianIsotropic(3, 0, 0), -2)


def test_destroy_feasibility_needs_c_at_least_r():
    # reversible with a large gap b - a: c = a - b + s < r while the order
    # range is fine; rejected on parameter count
    with pytest.raises(InfeasibleParameters):
        destroy_resonant(Reversible(4, 0, 2, 1), 2)


def test_destroy_smoothness_corner_notes():
    # full destruction is smooth in the parameter
    assert destroy_resonant(HamiltonianIsotropic(4, 0, 3), 3).family_smoothness == SMOOTH
    # partial destruction only Whitney-smooth on a Cantor-like parameter set
    res = destroy_resonant(HamiltonianIsotropic(4, 0, 3), 2)
    assert res.family_smoothness == WHITNEY_CANTOR_LIKE


def test_destroy_corner_c_equal_r_is_unreachable():
    # the c == r, r < n - 1 corner whose smoothness is unsettled never passes
    # the feasibility inequalities: Hamiltonian has c >= n > r, reversible
    # needs s large enough that c >= r + 1 when n - r >= 2, and the
    # volume-preserving branch needs s >= 1 (hence c >= 2) once n >= 3
    for ctx in _all_contexts():
        n = ctx.n
        for r in range(1, max(n - 1, 1)):
            try:
                res = destroy_resonant(ctx, r)
            except (Impossible, InfeasibleParameters, BadOrder):
                continue
            if r < n - 1:
                assert profile(ctx).c > r, (ctx, r)
                assert "unverified" not in res.note


def test_destroy_volume_preserving_is_flagged_as_prediction():
    res = destroy_resonant(VolumePreserving(2, 1, 0), 1)
    assert res.target == VolumePreserving(1, 2, 0)
    assert res.family_smoothness == SMOOTH
    assert "not yet established" in res.note


# ---------------------------------------------------------------------------
# excitation


def test_excite_examples():
    res = excite_modes(Reversible(0, 1, 2, 2), 1)
    assert res.target == Reversible(1, 1, 1, 2)
    assert res.family_smoothness == SMOOTH

    res = excite_modes(Reversible(1, 1, 1, 2), 1)
    assert res.target == Reversible(2, 1, 0, 2)
    assert res.family_smoothness == WHITNEY_CANTOR_LIKE

    with pytest.raises(Impossible):
        excite_modes(VolumePreserving(1, 3, 0), 1)


def test_excite_dissipative_always_impossible():
    for n in GRID:
        for p in GRID:
            for s in GRID:
                for r in range(1, 9):
                    with pytest.raises(Impossible):
                        excite_modes(GeneralDissipative(n, p, s), r)


def test_excite_volume_preserving_grid():
    for n in GRID:
        for p in range(1, 9):
            for s in GRID:
                ctx = VolumePreserving(n, p, s)
                if p != 2:
                    with pytest.raises(Impossible):
                        excite_modes(ctx, 1)
                else:
                    res = excite_modes(ctx, 1)
                    assert res.target == VolumePreserving(n + 1, 1, s)
                    with pytest.raises(BadOrder):
                        excite_modes(ctx, 2)


def test_excite_hamiltonian_grid_and_round_trip():
    for n in GRID:
        for p in GRID:
            for s in GRID:
                for r in range(1, 9):
                    ctx = HamiltonianIsotropic(n, p, s)
                    if r > p:
                        with pytest.raises(BadOrder):
                            excite_modes(ctx, r)
                        continue
                    res = excite_modes(ctx, r)
                    assert res.target == HamiltonianIsotropic(n + r, p - r, s)
                    assert profile(res.target).dim_m == profile(ctx).dim_m
                    if n + r >= 2 and r <= (n + r) - 1:
                        back = destroy_resonant(res.target, r)
                        assert back.target == ctx


def test_excite_reversible_grid():
    for n in GRID:
        for a in GRID:
            for b in GRID:
                for s in GRID:
                    for r in range(1, 9):
                        ctx = Reversible(n, a, b, s)
                        if min(a, b) < 1 or r > min(a, b):
                            with pytest.raises(BadOrder):
                                excite_modes(ctx, r)
                            continue
                        res = excite_modes(ctx, r)
                        assert res.target == Reversible(n + r, a, b - r, s)
                        assert profile(res.target).dim_m == profile(ctx).dim_m
                        assert res.family_smoothness == (
                            SMOOTH if (n == 0 and r == 1) else WHITNEY_CANTOR_LIKE
                        )


def test_excite_zero_multiplicity_bookkeeping():
    # an excitation converts r opposite pairs into torus dimensions; the naive
    # zero count m' - g' would grow by r, and the defect 2*min(b - a, r)
    # measures how far the second-class geometry falls short of that
    for n in GRID:
        for a in range(1, 9):
            for b in range(1, 9):
                for r in range(1, min(a, b) + 1):
                    src = profile(Reversible(n, a, b, 5))
                    tgt = profile(excite_modes(Reversible(n, a, b, 5), r).target)
                    if a >= b:
                        assert tgt.zero_floquet_multiplicity == (
                            src.zero_floquet_multiplicity + r
                        )
                    else:
                        defect = (src.zero_floquet_multiplicity + r) - tgt.zero_floquet_multiplicity
                        assert defect == 2 * min(b - a, r)


# ---------------------------------------------------------------------------
# second-class excitation diagnostics


def test_context2_examples():
    rep = context2_excitation_diagnostics(Reversible(0, 1, 2, 2), 1)
    assert (rep.kappa1, rep.kappa2, rep.defect, rep.d, rep.c_prime_minus_s) == (0, 2, 2, 1, 0)
    assert rep.resulting_class == CONTEXT1

    rep = context2_excitation_diagnostics(Reversible(0, 2, 5, 1), 1)
    assert (rep.kappa1, rep.kappa2, rep.defect, rep.d, rep.c_prime_minus_s) == (2, 4, 2, 1, -2)
    assert rep.resulting_class == CONTEXT2

    rep = context2_excitation_diagnostics(Reversible(0, 3, 4, 1), 1)
    assert rep.resulting_class == CONTEXT1


def test_context2_structure_on_grid():
    for a in range(1, 9):
        for b in range(a + 1, 12):
            for r in range(1, a + 1):
                rep = context2_excitation_diagnostics(Reversible(0, a, b, 3), r)
                gap = b - a
                assert rep.kappa1 == abs(gap - r)
                assert rep.kappa2 == gap + r
                assert rep.defect == rep.kappa2 - rep.kappa1 == 2 * min(gap, r)
                assert rep.d == rep.defect // 2 >= 1
                assert rep.c_prime_minus_s == r - gap
                assert rep.resulting_class == (CONTEXT2 if r < gap else CONTEXT1)
                if r < 2 * gap:
                    assert rep.kappa1 < gap
                # the diagnostics agree with the actual excitation target
                tgt = profile(excite_modes(Reversible(0, a, b, 3), r).target)
                assert tgt.zero_floquet_multiplicity == rep.kappa1
                assert rep.resulting_class == tgt.reversible_class


def test_context2_rejects_wrong_inputs():
    with pytest.raises(NotContext2):
        context2_excitation_diagnostics(Reversible(0, 2, 2, 1), 1)
    with pytest.raises(NotContext2):
        context2_excitation_diagnostics(Reversible(0, 3, 1, 1), 1)
    with pytest.raises(NotContext2):
        context2_excitation_diagnostics(HamiltonianIsotropic(1, 1, 1), 1)
    with pytest.raises(BadOrder):
        context2_excitation_diagnostics(Reversible(0, 1, 3, 1), 2)
    with pytest.raises(BadOrder):
        context2_excitation_diagnostics(Reversible(0, 0, 3, 1), 1)


# ---------------------------------------------------------------------------
# the worked chain: one pair excited twice


def test_reference_chain_triples():
    for s in range(1, 6):
        first = Reversible(0, 1, 2, s)
        prof = profile(first)
        assert (prof.m, prof.c, prof.g) == (3, s - 1, 2)

        second = excite_modes(first, 1).target
        assert second == Reversible(1, 1, 1, s)
        prof = profile(second)
        assert (prof.m, prof.c, prof.g) == (2, s, 2)

        third = excite_modes(second, 1).target
        assert third == Reversible(2, 1, 0, s)
        prof = profile(third)
        assert (prof.m, prof.c, prof.g) == (1, s + 1, 0)
