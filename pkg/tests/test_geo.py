"""Geometric operators: Euler classes, Chern roots, and fixed-point coefficients.

The decisive tests are the coefficientwise comparisons against the
wedge/contract and oscillator actions, which were built independently.
"""

from fractions import Fraction

import pytest

from fockrep.boson import P_action, bf_to_boson, bf_to_fermion
from fockrep.fock import (
    FockState,
    FockVector,
    alpha,
    anticommutator_apply,
    commutator_apply,
    contract,
    psi,
    psi_star,
    vacuum,
    wedge,
)
from fockrep.geo import (
    AssertionMismatch,
    EpsMonomial,
    GeoEDiag,
    GeoFDiag,
    GeoHDiag,
    GeoP,
    GeoPsi,
    GeoPsiStar,
    assemble_glr,
    chern_roots,
    elementary_symmetric,
    geo_E,
    geo_E_offdiag,
    geo_F,
    geo_F_offdiag,
    geo_H,
    geo_H_offdiag,
    geo_loop,
    tangent_euler,
    top_nonvanishing,
)
from fockrep.glhat import RSetup, rho_E, rho_F, rho_H, rho_loop
from fockrep.partitions import ChargedPartition, Partition, partitions_of

from helpers import small_basis


def st1(c, rows):
    return FockState((ChargedPartition(c, Partition(rows)),))


def st2(c1, rows1, c2, rows2):
    return FockState(
        (ChargedPartition(c1, Partition(rows1)), ChargedPartition(c2, Partition(rows2)))
    )


R1 = RSetup([1])
R2 = RSetup([2])
R11 = RSetup([1, 1])
R12 = RSetup([1, 2])


class TestTangentEuler:
    def test_vacuum(self):
        assert tangent_euler(R1, vacuum(1)) == EpsMonomial(Fraction(1), 0)

    def test_single_box(self):
        assert tangent_euler(R1, st1(0, (1,)), +1) == EpsMonomial(Fraction(1), 1)
        assert tangent_euler(R1, st1(0, (1,)), -1) == EpsMonomial(Fraction(-1), 1)

    def test_two_boxes(self):
        assert tangent_euler(R1, st1(0, (2,)), +1) == EpsMonomial(Fraction(2), 2)

    def test_scale_factor(self):
        # r=(2) puts R/r = 1; r=(1,2) has R=4, scales 4 and 2
        assert tangent_euler(R2, st1(0, (1,)), +1) == EpsMonomial(Fraction(1), 1)
        got = tangent_euler(R12, st2(0, (1,), 0, (1,)), +1)
        assert got == EpsMonomial(Fraction(8), 2)

    def test_charge_independent(self):
        for c in (-2, 0, 3):
            assert tangent_euler(R2, st1(c, (2, 1))) == tangent_euler(R2, st1(0, (2, 1)))


class TestChernRoots:
    def test_empty(self):
        assert chern_roots(R1, vacuum(1), vacuum(1), (0,)) == []

    def test_one_box_target(self):
        assert chern_roots(R1, vacuum(1), st1(0, (1,)), (0,)) == [Fraction(0)]

    def test_two_box_target(self):
        got = chern_roots(R1, vacuum(1), st1(0, (2,)), (0,))
        assert sorted(got) == [Fraction(0), Fraction(1)]

    def test_column_target(self):
        got = chern_roots(R1, vacuum(1), st1(0, (1, 1)), (0,))
        assert sorted(got) == [Fraction(-1), Fraction(0)]

    def test_cardinality(self):
        I, J = st1(0, (2, 1)), st1(0, (3, 1))
        assert len(chern_roots(R1, I, J, (0,))) == I.total_energy + J.total_energy


class TestTopNonvanishing:
    def test_empty(self):
        assert top_nonvanishing([]) == (0, EpsMonomial(Fraction(1), 0))

    def test_examples(self):
        assert top_nonvanishing([Fraction(1), Fraction(0)]) == (
            1,
            EpsMonomial(Fraction(1), 1),
        )
        assert top_nonvanishing([Fraction(0), Fraction(-1)]) == (
            1,
            EpsMonomial(Fraction(-1), 1),
        )

    def test_elementary_symmetric(self):
        es = elementary_symmetric([Fraction(1), Fraction(2), Fraction(3)])
        assert es == [Fraction(1), Fraction(6), Fraction(11), Fraction(6)]


class TestGeoP:
    def test_add_one_box(self):
        op = GeoP(R1, 1, -1)
        assert op.coefficient(vacuum(1), st1(0, (1,))) == 1

    def test_add_two_boxes(self):
        op = GeoP(R1, 1, -2)
        assert op.coefficient(vacuum(1), st1(0, (2,))) == Fraction(1, 2)
        assert op.coefficient(vacuum(1), st1(0, (1, 1))) == Fraction(-1, 2)

    def test_k_zero_is_charge(self):
        for st in (st1(3, (2, 1)), st1(-1, ())):
            assert GeoP(R1, 1, 0).apply_state(st) == FockVector.unit(st) * st.charges()[0]

    def test_wrong_block_is_zero(self):
        op = GeoP(R1, 1, -1)
        assert op.coefficient(vacuum(1), st1(1, (1,))) == 0
        assert op.coefficient(vacuum(1), st1(0, (2,))) == 0

    def test_off_colour_mismatch_vanishes(self):
        # the untouched colour carries a zero root when its shapes differ
        op = GeoP(R12, 1, 1)
        I = st2(0, (1,), 0, (2,))
        J = st2(0, (), 0, (1, 1))
        assert J.energies() == op.target_energies(I)
        assert op.coefficient(I, J) == 0

    def test_adjointness(self):
        for n in (1, 2, 3):
            op_minus = GeoP(R2, 1, -n)
            op_plus = GeoP(R2, 1, n)
            for ei in range(3):
                for lam_i in partitions_of(ei):
                    for lam_j in partitions_of(ei + n):
                        I, J = st1(0, lam_i.rows), st1(0, lam_j.rows)
                        assert op_minus.coefficient(I, J) == op_plus.coefficient(J, I)

    def test_matches_transported_boson_action(self):
        # geometric oscillator == p-action moved through the correspondence
        for n in (-3, -2, -1, 1, 2, 3):
            op = GeoP(R1, 1, n)
            for e in range(4):
                for lam in partitions_of(e):
                    I = st1(0, lam.rows)
                    via_boson = bf_to_fermion(P_action(1, n, bf_to_boson(FockVector.unit(I))))
                    assert op.apply_state(I) == via_boson, (n, lam)

    def test_oscillator_commutators(self):
        states = [st1(0, lam.rows) for e in range(4) for lam in partitions_of(e)]
        for n in (-2, -1, 1, 2):
            for m in (-2, -1, 1, 2):
                a, b = GeoP(R2, 1, n), GeoP(R2, 1, m)
                for st in states:
                    v = FockVector.unit(st)
                    got = commutator_apply(a, b, v)
                    expect = v * Fraction(1, n) if n + m == 0 else FockVector()
                    assert got == expect, (n, m, st)


class TestGeoClifford:
    def test_wedge_example(self):
        op = GeoPsi(R1, 1, 1)
        assert op.apply_state(vacuum(1)) == FockVector.unit(st1(1, ()))

    def test_absent_index_is_zero(self):
        assert GeoPsiStar(R1, 1, 5).apply_state(vacuum(1)).is_zero

    def test_contract_example(self):
        out = GeoPsiStar(R1, 1, -1).apply_state(vacuum(1))
        assert out == FockVector(((st1(-1, (1,)), Fraction(-1)),))

    @pytest.mark.parametrize("setup", [R1, R2, R11])
    def test_equals_fermionic_action(self, setup):
        for st in small_basis(setup.s, 3, 1):
            for l in range(1, setup.s + 1):
                c = st.charges()[l - 1]
                for i in range(c - 4, c + 5):
                    got = GeoPsi(setup, l, i).apply_state(st)
                    res = wedge(l, i, st)
                    expect = (
                        FockVector() if res.is_zero
                        else FockVector(((res.state, Fraction(res.sign)),))
                    )
                    assert got == expect, ("psi", st, l, i)
                    got = GeoPsiStar(setup, l, i).apply_state(st)
                    res = contract(l, i, st)
                    expect = (
                        FockVector() if res.is_zero
                        else FockVector(((res.state, Fraction(res.sign)),))
                    )
                    assert got == expect, ("psi*", st, l, i)

    def test_anticommutators(self):
        setup = R11
        for st in small_basis(2, 2, 1):
            v = FockVector.unit(st)
            ch = st.charges()
            for l in (1, 2):
                for k in (1, 2):
                    for i in range(ch[l - 1] - 2, ch[l - 1] + 3):
                        for j in range(ch[k - 1] - 2, ch[k - 1] + 3):
                            got = anticommutator_apply(
                                GeoPsi(setup, l, i), GeoPsiStar(setup, k, j), v
                            )
                            expect = v if (l == k and i == j) else FockVector()
                            assert got == expect, (st, l, k, i, j)


class TestDiagonalChevalley:
    def test_F_adds_residue_box(self):
        op = GeoFDiag(R2, 1, 0)
        assert op.apply_state(vacuum(1)) == FockVector.unit(st1(0, (1,)))

    def test_F_coefficients_are_unit(self):
        for kp in (0, 1):
            op = GeoFDiag(R2, 1, kp)
            for e in range(5):
                for lam in partitions_of(e):
                    I = st1(0, lam.rows)
                    out = op.apply_state(I)
                    assert all(c == 1 for c in out.values()), (kp, lam)

    def test_H_examples(self):
        assert GeoHDiag(R2, 1, 0).apply_state(vacuum(1)) == FockVector.unit(vacuum(1))
        assert GeoHDiag(R2, 1, 1).apply_state(vacuum(1)).is_zero

    def test_E_residue_gate(self):
        assert GeoEDiag(R2, 1, 1).apply_state(st1(0, (1,))).is_zero
        out = GeoEDiag(R2, 1, 0).apply_state(st1(0, (1,)))
        assert out == FockVector.unit(vacuum(1))

    def test_r1_colour_H_is_identity(self):
        op = GeoHDiag(R12, 1, 0)
        for st in small_basis(2, 2, 1):
            assert op.apply_state(st) == FockVector.unit(st)

    def test_EF_equals_H(self):
        setup = R2
        for st in small_basis(1, 4, 1):
            v = FockVector.unit(st)
            for kp in (0, 1):
                got = commutator_apply(GeoEDiag(setup, 1, kp), GeoFDiag(setup, 1, kp), v)
                assert got == GeoHDiag(setup, 1, kp).apply(v), (kp, st)

    def test_bilinear_sum_identity(self):
        # E^l_k' and F^l_k' agree with the Clifford bilinear sums
        setup = R2
        rl = 2
        for st in small_basis(1, 3, 1):
            for kp in (0, 1):
                c = st.charges()[0]
                window = range(-4, 5)
                e_sum = FockVector()
                f_sum = FockVector()
                for i in window:
                    a = kp + i * rl
                    inner = GeoPsiStar(setup, 1, a + 1).apply_state(st)
                    e_sum.iadd_scaled(GeoPsi(setup, 1, a).apply(inner), 1)
                    inner = GeoPsiStar(setup, 1, a).apply_state(st)
                    f_sum.iadd_scaled(GeoPsi(setup, 1, a + 1).apply(inner), 1)
                assert e_sum == GeoEDiag(setup, 1, kp).apply_state(st), ("E", kp, st)
                assert f_sum == GeoFDiag(setup, 1, kp).apply_state(st), ("F", kp, st)


class TestOffDiagonal:
    def test_E_annihilates_vacuum(self):
        for i in (1,):
            assert geo_E_offdiag(R11, i).apply_state(vacuum(2)).is_zero
            assert geo_E_offdiag(R12, i).apply_state(vacuum(2)).is_zero

    def test_F0_on_vacuum(self):
        out = geo_F_offdiag(R11, 0).apply_state(vacuum(2))
        assert out == FockVector.unit(st2(1, (), -1, ()))

    def test_H_vacuum_eigenvalues(self):
        assert geo_H_offdiag(R11, 1).apply_state(vacuum(2)).is_zero
        assert geo_H_offdiag(R11, 0).apply_state(vacuum(2)) == FockVector.unit(vacuum(2))

    def test_F_prime_1_annihilates_vacuum(self):
        assert geo_F_offdiag(R11, 1).apply_state(vacuum(2)).is_zero


class TestAssembled:
    def test_index_dispatch(self):
        fam = assemble_glr(R2)
        assert isinstance(fam[("E", 1)], GeoEDiag)
        assert not isinstance(fam[("E", 0)], GeoEDiag)

    def test_r1_rejected(self):
        with pytest.raises(ValueError):
            assemble_glr(R1)

    def test_loop_zero_total_charge(self):
        st = st2(2, (1,), -1, ())
        assert geo_loop(R11, 0).apply_state(st) == FockVector.unit(st) * 1

    def test_loop_minus_one_rank_one(self):
        assert geo_loop(R1, -1).apply_state(vacuum(1)) == FockVector.unit(st1(0, (1,)))

    @pytest.mark.parametrize("setup", [R2, R11, R12])
    def test_matches_algebraic_action(self, setup):
        states = small_basis(setup.s, 3, 1)
        for k in range(setup.r):
            pairs = [
                (geo_E(setup, k), rho_E(setup, k)),
                (geo_F(setup, k), rho_F(setup, k)),
                (geo_H(setup, k), rho_H(setup, k)),
            ]
            for g, a in pairs:
                for st in states:
                    assert g.apply_state(st) == a.apply_state(st), (setup, k, st)

    @pytest.mark.parametrize("setup", [R2, R11, R12])
    def test_loops_match_algebraic(self, setup):
        states = small_basis(setup.s, 3, 1)
        for n in (-2, -1, 1, 2):
            g, a = geo_loop(setup, n), rho_loop(setup, n)
            for st in states:
                assert g.apply_state(st) == a.apply_state(st), (setup, n, st)

    def test_P_equals_scaled_alpha(self):
        for n in (-3, -1, 1, 3):
            op = GeoP(R12, 2, n)
            for st in small_basis(2, 3, 1):
                got = op.apply_state(st) * abs(n)
                assert got == alpha(2, n).apply_state(st), (n, st)


class TestErrorPaths:
    def test_assertion_mismatch_guard(self):
        # feeding a same-size same-charge pair with different shapes must
        # not raise: the extra zero root keeps the top class at bay
        op = GeoP(R1, 1, 1)
        I, J = st1(0, (2,)), st1(0, (1,))
        assert op.coefficient(I, J) in (0, 1, -1, Fraction(1, 2))

    def test_negative_target_energy_is_zero(self):
        assert GeoP(R1, 1, 1).apply_state(vacuum(1)).is_zero
        assert GeoPsi(R1, 1, 0).apply_state(vacuum(1)).is_zero
