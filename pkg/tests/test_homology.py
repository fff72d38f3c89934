"""Tests for the commutative and noncommutative homological engines."""

from __future__ import annotations

import dataclasses
import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weightcalc.homology.linalg import (
    echelon_mod,
    nullspace_mod,
    rank_mod,
    rref_mod,
)
from weightcalc.homology.pbw import (
    PbwElement,
    key_char,
    key_degree,
    multiply_keys,
    pbw_multiply,
)
from weightcalc.homology.taylor import (
    codim_of,
    ext_euler_check,
    grade_and_cm,
    hilbert_euler_check,
    is_cm,
    shellability_check,
    taylor_ext_ranks,
    taylor_primal_check,
)
from weightcalc.homology import resolution as reso
from weightcalc.monomial import Monomial, MonomialIdeal, ideal_ijd


def lifted(f: int, monos) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of an ideal in the doubled polynomial ring,
    with the per-index product relations added."""
    return MonomialIdeal(f, tuple(monos)).lift_exponents()


class TestLinalg:
    def test_rref_rank_one(self):
        m, pivots = rref_mod(np.array([[2, 4], [1, 2]]), 5)
        assert pivots == [0]
        assert m[0].tolist() == [1, 2]
        assert not m[1].any()

    def test_rank_degenerate(self):
        assert rank_mod(np.zeros((3, 3), dtype=np.int64), 7) == 0
        assert rank_mod(np.zeros((0, 4), dtype=np.int64), 7) == 0
        assert rank_mod(np.eye(4, dtype=np.int64), 2) == 4

    def test_nullspace_empty_matrix(self):
        basis = nullspace_mod(np.zeros((0, 3), dtype=np.int64), 5)
        assert basis.shape == (3, 3)

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_nullspace_is_right_kernel(self, data):
        p = data.draw(st.sampled_from([2, 5, 29]))
        rows = data.draw(st.integers(0, 5))
        cols = data.draw(st.integers(1, 5))
        entries = data.draw(
            st.lists(
                st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols
            )
        )
        m = np.array(entries, dtype=np.int64).reshape(rows, cols)
        basis = nullspace_mod(m, p)
        if rows and basis.shape[0]:
            assert not ((m @ basis.T) % p).any()
        assert rank_mod(m, p) + basis.shape[0] == cols
        if basis.shape[0]:
            assert rank_mod(basis, p) == basis.shape[0]

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_echelon_agrees_with_rref_rank(self, data):
        p = data.draw(st.sampled_from([5, 29]))
        rows = data.draw(st.integers(1, 6))
        cols = data.draw(st.integers(1, 6))
        entries = data.draw(
            st.lists(
                st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols
            )
        )
        m = np.array(entries, dtype=np.int64).reshape(rows, cols)
        _, piv_a = echelon_mod(m, p)
        _, piv_b = rref_mod(m, p)
        assert piv_a == piv_b


def _y(f=1, p=29, j=0, n=1):
    return PbwElement.gen_y(j, f, p, n)


def _z(f=1, p=29, j=0, n=1):
    return PbwElement.gen_z(j, f, p, n)


def _h(f=1, p=29, j=0):
    return PbwElement.gen_h(j, f, p)


def _rewrite_word(word, p):
    """Free-word straightening oracle for a single index: rewrite every
    zy into yz minus h until no such pair remains."""
    states = {tuple(word): 1}
    done: dict[tuple[int, int, int], int] = {}
    while states:
        nxt: dict[tuple, int] = {}
        for wrd, c in states.items():
            for i in range(len(wrd) - 1):
                if wrd[i] == "z" and wrd[i + 1] == "y":
                    a = wrd[:i] + ("y", "z") + wrd[i + 2 :]
                    b = wrd[:i] + ("h",) + wrd[i + 2 :]
                    nxt[a] = (nxt.get(a, 0) + c) % p
                    nxt[b] = (nxt.get(b, 0) - c) % p
                    break
                if wrd[i] == "h" and wrd[i + 1] != "h":
                    a = wrd[: i] + (wrd[i + 1], "h") + wrd[i + 2 :]
                    nxt[a] = (nxt.get(a, 0) + c) % p
                    break
            else:
                key = (wrd.count("y"), wrd.count("z"), wrd.count("h"))
                done[key] = (done.get(key, 0) + c) % p
        states = {k: v for k, v in nxt.items() if v}
    return {k: v for k, v in done.items() if v}


class TestPbw:
    def test_straightening_relation(self):
        p = 29
        prod = pbw_multiply(_z(), _y())
        assert prod.terms == {((1, 1, 0),): 1, ((0, 0, 1),): p - 1}

    def test_h_is_central(self):
        for other in (_y(), _z(), _y() * _z()):
            assert pbw_multiply(_h(), other) == pbw_multiply(other, _h())

    def test_associativity_spot(self):
        assert (_z() * _y()) * _y() == _z() * (_y() * _y())

    def test_degree_and_char_multiplicative(self):
        prod = _z(n=2) * _y(n=3)
        assert prod.degree == 5
        assert prod.char == (1,)

    def test_distinct_indices_commute(self):
        y0 = _y(f=2, j=0)
        z1 = _z(f=2, j=1)
        assert y0 * z1 == z1 * y0

    @settings(max_examples=80, deadline=None)
    @given(st.lists(st.sampled_from(["y", "z", "h"]), min_size=0, max_size=6))
    def test_word_oracle(self, word):
        p = 29
        acc = PbwElement.one(1, p)
        for letter in word:
            acc = acc * {"y": _y(), "z": _z(), "h": _h()}[letter]
        got = {key[0]: c for key, c in acc.terms.items()}
        assert got == _rewrite_word(word, p)

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_associativity(self, data):
        p = 29
        key = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1))
        elem = st.lists(
            st.tuples(key, st.integers(1, p - 1)), min_size=1, max_size=3
        ).map(
            lambda items: sum(
                (
                    PbwElement(1, p, {(k,): c})
                    for k, c in items
                ),
                PbwElement.zero(1, p),
            )
        )
        u, v, w = data.draw(elem), data.draw(elem), data.draw(elem)
        assert (u * v) * w == u * (v * w)


ALL_TAGS = ("Y", "Z", "YZ")


def _type_monos(tags):
    f = len(tags)
    out = []
    for j, t in enumerate(tags):
        if t == "Y":
            out.append(Monomial.y(j, f))
        elif t == "Z":
            out.append(Monomial.z(j, f))
    return out


class TestTaylorExt:
    def test_koszul_regular_sequence(self):
        for f in (1, 2):
            nv = 2 * f
            gens = [tuple(1 if i == k else 0 for i in range(nv)) for k in range(nv)]
            s = taylor_ext_ranks(gens, nv)
            assert s.nonzero_indices == (nv,)
            assert s.grade == nv
            assert is_cm(gens, nv) is True

    def test_principal_ideal_degrees(self):
        s = taylor_ext_ranks([(2,)], 1)
        assert s.nonzero_indices == (1,)
        assert s.dims_for(1) == {-2: 1, -1: 1}
        s = taylor_ext_ranks([(1, 1)], 2)
        assert s.dims_for(1) == {-2: 1, -1: 2, 0: 2}

    def test_zero_ideal_is_the_free_module(self):
        s = taylor_ext_ranks([], 2)
        assert s.nonzero_indices == (0,)
        assert s.dims_for(0) == {0: 1}
        assert is_cm([], 2) is True

    def test_unit_ideal_flagged_separately(self):
        s = taylor_ext_ranks([(0, 0)], 2)
        assert s.zero_module
        assert is_cm([(0, 0)], 2) is None

    def test_generator_cap_is_inconclusive_never_pass(self):
        gens = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        s = taylor_ext_ranks(gens, 3, gen_cap=2)
        assert s.inconclusive and s.nonzero_indices == ()
        v = grade_and_cm(gens, 3, gen_cap=2)
        assert v.inconclusive and v.is_cm is None

    def test_grid_cap_is_inconclusive(self):
        s = taylor_ext_ranks([(60, 60, 60)], 3)
        assert s.inconclusive

    def test_pair_quotients_are_cm_all_tag_patterns(self):
        # one surviving variable or the product relation per index
        for f in (1, 2):
            for tags in itertools.product(ALL_TAGS, repeat=f):
                exps = lifted(f, _type_monos(tags))
                v = grade_and_cm(exps, 2 * f)
                assert v.is_cm is True, (tags, v)
                assert v.grade == f == v.codim

    def test_degree_d_products_are_cm(self):
        for f in (1, 2, 3):
            for d in range(1, f + 1):
                ideal = ideal_ijd(frozenset(), frozenset(range(f)), d, f)
                exps = ideal.lift_exponents()
                v = grade_and_cm(exps, 2 * f)
                assert v.is_cm is True, (f, d)
                assert v.grade == f

    def test_mixed_product_family_is_cm(self):
        # two product indices plus an unconstrained one with its own tag
        for d in (1, 2):
            ideal = ideal_ijd(frozenset({0}), frozenset({1}), d, 2)
            v = grade_and_cm(ideal.lift_exponents(), 4)
            assert v.is_cm is True and v.grade == 2
        for t2 in ALL_TAGS:
            monos = list(ideal_ijd(frozenset({0}), frozenset({1}), 2, 3).gens)
            monos += _type_monos(("YZ", "YZ", t2))
            v = grade_and_cm(lifted(3, monos), 6)
            assert v.is_cm is True and v.grade == 3, t2

    def test_non_pure_control_fails(self):
        gens = [(1, 0, 1, 0), (1, 1, 0, 0), (1, 0, 0, 1)]
        v = grade_and_cm(gens, 4)
        assert v.is_cm is False
        assert v.ext.nonzero_indices == (1, 3)
        assert v.codim == 1

    def test_primal_exactness(self):
        cases = [
            ([(1, 1), (2, 0)], 2),
            ([(1, 0, 1, 0), (1, 1, 0, 0), (1, 0, 0, 1)], 4),
            (lifted(2, _type_monos(("Y", "YZ"))), 4),
        ]
        for gens, nv in cases:
            assert taylor_primal_check(gens, nv)

    def test_hilbert_euler(self):
        assert hilbert_euler_check([(1, 1), (2, 0)], 2, 7)
        assert hilbert_euler_check([(1, 0, 1, 0), (1, 1, 0, 0)], 4, 5)

    def test_ext_euler(self):
        for gens, nv in [
            ([(1, 1)], 2),
            ([(1, 0, 1, 0), (1, 1, 0, 0), (1, 0, 0, 1)], 4),
            (lifted(2, _type_monos(("Z", "Z"))), 4),
        ]:
            assert ext_euler_check(taylor_ext_ranks(gens, nv))

    @settings(max_examples=25, deadline=None)
    @given(st.data())
    def test_random_ideals_certify_consistently(self, data):
        nv = data.draw(st.integers(1, 3))
        ngens = data.draw(st.integers(1, 3))
        gens = [
            tuple(data.draw(st.integers(0, 2)) for _ in range(nv))
            for _ in range(ngens)
        ]
        gens = [g for g in gens if sum(g)]
        if not gens:
            return
        s = taylor_ext_ranks(gens, nv)
        assert not s.inconclusive
        # proper nonzero ideals never leave a copy of the ring behind
        assert 0 not in s.nonzero_indices
        assert s.nonzero_indices
        assert s.grade <= codim_of(gens, nv)
        assert taylor_primal_check(gens, nv)
        assert ext_euler_check(s)


class TestCodim:
    def test_frozen_values(self):
        assert codim_of([(1, 0, 1, 0), (1, 1, 0, 0), (1, 0, 0, 1)], 4) == 1
        assert codim_of([(1, 0), (0, 1)], 2) == 2
        assert codim_of([], 3) == 0
        assert codim_of([(0, 0, 0)], 3) is None


class TestShellability:
    def test_two_indices_products(self):
        r = shellability_check(frozenset(), frozenset({0, 1}), 2, 2)
        assert r.shellable
        assert r.facets == ((1, 1), (1, -1), (-1, 1))

    def test_three_indices_products(self):
        r = shellability_check(frozenset(), frozenset(range(3)), 2, 3)
        assert r.shellable
        assert len(r.facets) == 4
        assert r.facets[0] == (1, 1, 1)

    def test_degree_above_index_count_keeps_all_facets(self):
        r = shellability_check(frozenset(), frozenset(range(3)), 4, 3)
        assert r.shellable
        assert len(r.facets) == 8

    def test_all_partitions_shell(self):
        for f in (1, 2, 3):
            idx = frozenset(range(f))
            for size in range(f + 1):
                for J1 in map(frozenset, itertools.combinations(range(f), size)):
                    for d in range(2, f + 2):
                        r = shellability_check(J1, idx - J1, d, f)
                        assert r.shellable, (f, J1, d, r.failure)
                        counts = [
                            sum(
                                1
                                for j in range(f)
                                if (j in J1) == (x[j] == 1)
                            )
                            for x in r.facets
                        ]
                        assert counts == sorted(counts)

    def test_validation(self):
        with pytest.raises(ValueError):
            shellability_check({0}, {0, 1}, 2, 2)
        with pytest.raises(ValueError):
            shellability_check({0}, set(), 2, 2)
        with pytest.raises(ValueError):
            shellability_check(set(), {0, 1}, 1, 2)


class TestSliceBases:
    def test_single_index_counts(self):
        for e in range(7):
            for w in range(-e, e + 1):
                keys = reso.slice_keys(1, e, (w,))
                expect = (e - abs(w)) // 2 + 1 if (e - w) % 2 == 0 else 0
                assert len(keys) == expect
                for key in keys:
                    assert key_degree(key) == e
                    assert key_char(key) == (w,)

    def test_two_index_counts_are_convolutions(self):
        for e in range(6):
            for w0 in range(-3, 4):
                for w1 in range(-3, 4):
                    direct = len(reso.slice_keys(2, e, (w0, w1)))
                    conv = sum(
                        len(reso.slice_keys(1, e0, (w0,)))
                        * len(reso.slice_keys(1, e - e0, (w1,)))
                        for e0 in range(e + 1)
                    )
                    assert direct == conv


class TestModuleGenerators:
    def test_cube_power_absorbed_on_matching_branch(self):
        gens = reso.module_generators(("Y",), True, 3, 29)
        shifts = [(g.degree, g.char) for g in gens]
        assert shifts == [(1, (1,)), (2, (0,)), (3, (-3,))]

    def test_product_tag_keeps_both_cubes(self):
        gens = reso.module_generators(("YZ",), True, 3, 29)
        shifts = sorted((g.degree, g.char) for g in gens)
        assert shifts == [(2, (0,)), (2, (0,)), (3, (-3,)), (3, (3,))]

    def test_minimalize_drops_multiples(self):
        p = 29
        elems = [_y(), _y(n=3), _h(), _z(n=3)]
        kept = reso.minimalize_elements(elems, 1, p)
        assert [(g.degree, g.char) for g in kept] == [
            (1, (1,)),
            (2, (0,)),
            (3, (-3,)),
        ]

    def test_unit_generator_rejected(self):
        with pytest.raises(ValueError):
            reso.minimal_resolution([PbwElement.one(1, 29)], 2, 6, 29)


class TestFactorTables:
    def test_all_factor_tables_match(self):
        for t in ALL_TAGS:
            for full in (False, True):
                chk = reso.resolution_tables(t, full)
                assert chk.match, (t, full, chk.diff)

    def test_surviving_z_quotient_dims(self):
        res = reso.tor_grlambda([("Z",)], imax=2)
        assert res.tables[0].dims() == (1, 2, 1)
        assert not res.inconclusive

    def test_index_bound_enforced(self):
        with pytest.raises(ValueError):
            reso.tor_grlambda([("Z",)], imax=3)

    def test_small_window_is_inconclusive(self):
        res = reso.tor_grlambda([("Z",)], imax=2, dmax=2)
        assert res.inconclusive

    def test_undeformed_tables_are_exterior_powers(self):
        for t in ALL_TAGS:
            table = reso.resolution_tables(t, False).computed
            wedge = reso.wedge_table(table.rows[1], 2, 1)
            assert table.rows == wedge.rows

    def test_cube_quotient_breaks_the_exterior_pattern(self):
        # an extra second syzygy appears, so the wedge of row 1 overshoots
        table = reso.resolution_tables("YZ", True).computed
        wedge = reso.wedge_table(table.rows[1], 3, 1)
        assert table.rows[2] != wedge.rows[2]

    def test_undeformed_tor_embeds_in_cube_quotient_tor(self):
        for t in ALL_TAGS:
            small = reso.resolution_tables(t, False).computed
            big = reso.resolution_tables(t, True).computed
            for i in range(3):
                a, b = Counter(small.row(i)), Counter(big.row(i))
                assert all(a[k] <= b[k] for k in a), (t, i)

    def test_support_window(self):
        for t in ALL_TAGS:
            table = reso.resolution_tables(t, False).computed
            for i, row in enumerate(table.rows):
                assert all(i <= e <= 2 * i or i == 0 for e, _ in row)

    def test_top_term_bounds(self):
        for tags, shift in [
            (("Z",), 3),
            (("Y",), 3),
            (("YZ",), 4),
            (("Y", "Y"), 6),
            (("Z", "YZ"), 7),
            (("YZ", "YZ"), 8),
        ]:
            d = reso.dual_degree_bound_check(tags)
            assert d.ok and d.expected_shift == shift, (tags, d)
            f = len(tags)
            assert all(3 * f <= e <= 4 * f for e, _ in d.top_shifts)
        with pytest.raises(ValueError):
            reso.dual_degree_bound_check(("Y", "Y", "Y"))


class TestTwoIndexResolutions:
    def test_undeformed_two_index_table_matches_product(self):
        p = 29
        gens = reso.module_generators(("YZ", "Z"), False, 3, p)
        res = reso.minimal_resolution(gens, 4, 10, p, f=2, probe_completion=True)
        assert reso.verify_resolution(res)
        assert res.next_kernel_empty is True
        assert res.betti().rows == reso.expected_table(("YZ", "Z"), False).rows

    def test_kunneth_dims(self):
        t = reso.kunneth_table(
            [
                reso.expected_factor_table("Y", False),
                reso.expected_factor_table("Z", False),
            ]
        )
        assert t.dims() == (1, 4, 6, 4, 1)

    def test_tor_dim_identity_binomial(self):
        # undeformed quotient Tor dimensions depend only on the index count
        import math

        res = reso.tor_grlambda([("Y",), ("Z",), ("YZ",)], imax=2)
        assert res.total_dims() == tuple(3 * math.comb(2, i) for i in range(3))


class TestVerification:
    def test_verify_accepts_computed(self):
        chk = reso.resolution_tables("YZ", True, verify=True)
        assert reso.verify_resolution(chk.resolution)

    def test_verify_rejects_tampering(self):
        chk = reso.resolution_tables("Y", False, verify=False)
        res = chk.resolution
        # shifting a presentation generator by a unit breaks the composition
        bad_gen = (res.maps[0][0][0] + PbwElement.one(res.f, res.p),)
        bad_maps = ((bad_gen,) + res.maps[0][1:],) + res.maps[1:]
        broken = dataclasses.replace(res, maps=bad_maps)
        assert not reso.verify_resolution(broken)

    def test_euler_of_slices(self):
        # alternating sums of slice dimensions recover the quotient: the
        # undeformed Y-pattern quotient is spanned by the z-powers
        chk = reso.resolution_tables("Y", False)
        res = chk.resolution
        for deg in range(7):
            for w in range(-deg, deg + 1):
                total = 0
                for i, shifts in enumerate(res.shifts):
                    dim = sum(
                        len(reso.slice_keys(1, deg - e, (w - u[0],)))
                        for e, u in shifts
                    )
                    total += dim if i % 2 == 0 else -dim
                assert total == (1 if w == -deg else 0)
