import pytest

from tbtl.algebra import (
    alpha_closed_form,
    all_generators,
    check_defining_relations,
    check_quotient_alpha,
    commutation_check,
    generator_matrix,
    hamiltonian_matrix,
    op_apply,
    op_eq,
    op_mul,
    op_scale,
    op_sub,
    op_is_zero,
    pauli_equivalence_check,
    x_matrix_coproduct,
    x_matrix_direct,
    x_matrix_standard,
)
from tbtl.ring import RatioElem, RingElem, R_ONE, qQ_bracket

mono = RingElem.mono


def r(c):
    return RatioElem.from_ring(c)


class TestGenerators:
    def test_eN_at_n1(self):
        E = generator_matrix("EN", 0, 1)
        assert E["+"] == {"+": r(mono(-1, 0, -1)), "-": R_ONE}
        assert E["-"] == {"-": r(mono(-1, 0, 1)), "+": R_ONE}

    def test_ei_squared(self):
        for N in (2, 3, 4):
            for i in range(1, N):
                E = generator_matrix("E", i, N)
                loop = r(-(mono(1, 1) + mono(1, -1)))
                assert op_eq(op_mul(E, E), op_scale(E, loop))

    def test_boundary_commute(self):
        for N in (2, 3):
            EN = generator_matrix("EN", 0, N)
            E0 = generator_matrix("E0", 0, N)
            assert op_eq(op_mul(EN, E0), op_mul(E0, EN))

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            generator_matrix("E", 3, 3)

    def test_relations_full(self):
        for N in (2, 3, 4, 5):
            report = check_defining_relations(N)
            assert all(report.values()), {k: v for k, v in report.items() if not v}


class TestQuotient:
    def test_alpha_even(self):
        # (1/Q - Q0/q)(Q - q/Q0) expanded
        expect = (mono(1, 0, -1) - mono(1, -1, 0, 1)) * (mono(1, 0, 1) - mono(1, 1, 0, -1))
        assert alpha_closed_form(2) == expect
        assert alpha_closed_form(4) == expect

    def test_quotient_identities(self):
        for N in (2, 3, 4, 5):
            alpha, ok = check_quotient_alpha(N)
            assert ok, N
            assert alpha == r(alpha_closed_form(N))


class TestHamiltonian:
    def test_one_vs_two_boundary(self):
        N = 3
        H1 = hamiltonian_matrix(N, R_ONE, None)
        H2 = hamiltonian_matrix(N, R_ONE, RatioElem.from_int(0))
        assert op_eq(H1, H2)

    def test_assembly(self):
        N = 2
        gens = all_generators(N)
        H = hamiltonian_matrix(N, R_ONE, R_ONE)
        manual = op_scale(gens["e1"], RatioElem.from_int(-1))
        manual = {
            col: {
                row: c - gens["eN"][col].get(row, RatioElem.from_int(0))
                - gens["e0"][col].get(row, RatioElem.from_int(0))
                for row in set(col2) | set(gens["eN"][col]) | set(gens["e0"][col])
                for c in [col2.get(row, RatioElem.from_int(0))]
            }
            for col, col2 in manual.items()
        }
        assert op_eq(H, manual)

    def test_pauli_form(self):
        # affine in the couplings, so four points pin the identity
        pts = [(0, 0), (1, 0), (0, 1), (2, 3)]
        for N in (2, 3):
            for a0, aN in pts:
                assert pauli_equivalence_check(
                    N, RatioElem.from_int(a0), RatioElem.from_int(aN)
                ), (N, a0, aN)


class TestX:
    def test_n1_action(self):
        X = x_matrix_standard(1)
        s = qQ_bracket(0)
        assert X["+"]["-"] == R_ONE
        assert X["+"]["+"] == s.mul_ring(mono(1, 1))
        assert X["-"]["+"] == R_ONE
        assert X["-"]["-"] == s.mul_ring(mono(1, -1))

    def test_builds_agree(self):
        for N in range(1, 7):
            assert op_eq(x_matrix_direct(N), x_matrix_coproduct(N))

    def test_offdiagonal_count(self):
        for N in (2, 4):
            X = x_matrix_direct(N)
            for col, column in X.items():
                off = [row for row in column if row != col]
                assert len(off) == N

    def test_commutant(self):
        for N in (2, 3, 4, 5):
            report = commutation_check(N)
            assert all(report.values()), (N, report)

    def test_e0_does_not_commute(self):
        X = x_matrix_standard(2)
        E0 = generator_matrix("E0", 0, 2)
        assert not op_is_zero(op_sub(op_mul(E0, X), op_mul(X, E0)))
