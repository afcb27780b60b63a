import math
from itertools import combinations

import numpy as np
import pytest

from sphere_sga.hilbert import monomial, orthonormalize
from sphere_sga.operators import (
    OperatorRep,
    OperatorSet,
    assemble_so42,
    build_H,
    build_J,
    build_X,
    build_h,
    j_full,
    level_function,
)
from sphere_sga.verify import interior_cut, rel_residual


def _res(lhs, rhs, space, k):
    return rel_residual(lhs, rhs, interior_cut(space, k))


class TestAngularMomentum:
    def test_annihilates_the_constant(self, ops4):
        v = np.zeros(ops4.space.dim, dtype=complex)
        v[0] = 1.0
        for rep in ops4.J.values():
            assert np.linalg.norm(rep.matrix @ v) <= 1e-14

    def test_rotates_coordinates(self, ops4):
        space = ops4.space
        v = space.poly_to_vector(monomial((1, 0, 0, 0), 1.0))
        w = ops4.J[(1, 2)].matrix @ v
        rotated = space.vector_to_poly(w, 1)
        expected = monomial((0, 1, 0, 0), 1j)  # J_12 x1 = +i x2
        assert (rotated - expected).coeff_norm() <= 1e-12
        v2 = space.poly_to_vector(monomial((0, 1, 0, 0), 1.0))
        back = space.vector_to_poly(ops4.J[(1, 2)].matrix @ v2, 1)
        assert (back - monomial((1, 0, 0, 0), -1j)).coeff_norm() <= 1e-12

    def test_level_preserving_and_hermitian(self, ops4):
        for rep in ops4.J.values():
            assert rep.hermitian
            for src, targets in rep.block_map.items():
                assert targets == (src,)

    def test_hamiltonian_spectrum_per_level(self, ops4):
        H = ops4.H.matrix
        for n in range(ops4.space.n_max + 1):
            sl = ops4.space.level_slice(n)
            block = H[sl, sl]
            assert np.abs(block - n * (n + 2) * np.eye((n + 1) ** 2)).max() <= 1e-12


class TestPosition:
    def test_ground_to_first_matrix_element(self, ops4):
        # <normalized x1 | X_1 | normalized 1> = 1/2
        x1 = ops4.X[0].matrix
        sl1 = ops4.space.level_slice(1)
        column = x1[sl1, 0]
        assert column[0] == pytest.approx(0.5, abs=1e-14)
        assert np.abs(column[1:]).max() <= 1e-14

    def test_commuting_on_interior(self, ops4):
        space = ops4.space
        X = [x.matrix for x in ops4.X]
        zero = np.zeros_like(X[0])
        worst = max(_res(X[i] @ X[j] - X[j] @ X[i], zero, space, 2) for i, j in combinations(range(4), 2))
        assert worst <= 1e-12

    def test_sum_of_squares_is_identity(self, ops4):
        space = ops4.space
        total = sum(x.matrix @ x.matrix for x in ops4.X)
        assert _res(total, np.eye(space.dim, dtype=complex), space, 2) <= 1e-12

    def test_hermitian_and_adjacent_coupling(self, ops4):
        for rep in ops4.X:
            assert rep.hermitian
            assert np.abs(rep.matrix - rep.matrix.conj().T).max() == 0.0
            for src, targets in rep.block_map.items():
                assert set(targets) <= {src - 1, src + 1}

    def test_down_block_matches_direct_cross_gram(self, ops4):
        # independent route: <e_(n-1), x_i e_n> through the degree-(n-1, n+1) Gram
        space = ops4.space
        from sphere_sga.operators import _mult_matrix

        n = 2
        i = 1
        direct = space.basis_matrix(n - 1).T @ space.gram_matrix(n - 1, n + 1) @ (
            _mult_matrix(space, i, n) @ space.basis_matrix(n)
        )
        stored = ops4.X[i - 1].block(n - 1, n)
        assert np.abs(direct - stored).max() <= 1e-13


class TestLevelOperator:
    def test_values_per_level(self, ops4):
        h = ops4.h.matrix
        lev = []
        for n in range(ops4.space.n_max + 1):
            lev += [n] * (n + 1) ** 2
        assert np.allclose(np.diag(h).real, np.array(lev) + 1.0)
        assert np.count_nonzero(h - np.diag(np.diag(h))) == 0

    def test_h_squared_minus_one_is_H(self, ops4):
        space = ops4.space
        lhs = ops4.h.matrix @ ops4.h.matrix - np.eye(space.dim)
        assert _res(lhs, ops4.H.matrix, space, 0) <= 1e-12

    def test_gamma_shift(self, ops4):
        assert np.abs(ops4.gamma.matrix - (ops4.h.matrix - np.eye(ops4.space.dim))).max() == 0.0


class TestLadder:
    def test_lowering_annihilates_vacuum(self, ops4):
        for a in ops4.a_minus:
            assert np.linalg.norm(a.matrix[:, 0]) == 0.0

    def test_strict_level_shift(self, ops4):
        space = ops4.space
        for a in ops4.a_plus:
            for src, targets in a.block_map.items():
                assert targets == (src + 1,)
        for a in ops4.a_minus:
            for src, targets in a.block_map.items():
                assert targets == (src - 1,)

    def test_adjoint_pair(self, ops4):
        for ap, am in zip(ops4.a_plus, ops4.a_minus):
            assert np.abs(ap.matrix.conj().T - am.matrix).max() <= 1e-14

    def test_commutator_with_level_operator(self, ops4):
        space = ops4.space
        h = ops4.h.matrix
        for a in ops4.a_plus:
            assert _res(h @ a.matrix - a.matrix @ h, a.matrix, space, 1) <= 1e-12
        for a in ops4.a_minus:
            assert _res(h @ a.matrix - a.matrix @ h, -a.matrix, space, 1) <= 1e-12

    def test_number_operator_value_per_level(self, ops4):
        space = ops4.space
        total = sum(p.matrix @ m.matrix for p, m in zip(ops4.a_plus, ops4.a_minus))
        target = level_function(space, lambda n: 2.0 * n * n)
        assert _res(total, target, space, 1) <= 1e-12

    def test_contracted_squares_vanish(self, ops4):
        space = ops4.space
        zero = np.zeros((space.dim, space.dim), dtype=complex)
        plus = sum(a.matrix @ a.matrix for a in ops4.a_plus)
        minus = sum(a.matrix @ a.matrix for a in ops4.a_minus)
        assert _res(plus, zero, space, 2) <= 1e-12
        assert _res(minus, zero, space, 2) <= 1e-12

    def test_single_component_square_does_not_vanish(self, ops4):
        # only the index-contracted square is zero: (A+_1)^2 maps the ground
        # state onto the nonzero harmonic part of x1^2
        space = ops4.space
        sq = ops4.a_plus[0].matrix @ ops4.a_plus[0].matrix
        assert np.linalg.norm(sq[:, : interior_cut(space, 2)]) > 1.0

    def test_ladder_commutator_sign(self, ops4):
        space = ops4.space
        lhs = (
            ops4.a_minus[0].matrix @ ops4.a_plus[1].matrix
            - ops4.a_plus[1].matrix @ ops4.a_minus[0].matrix
        )
        assert _res(lhs, -2j * ops4.J[(1, 2)].matrix, space, 1) <= 1e-12

    def test_boost_definitions(self, ops4):
        space = ops4.space
        sqrt_h = level_function(space, lambda n: math.sqrt(n + 1.0))
        for i in range(4):
            k_expected = sqrt_h @ ops4.X[i].matrix @ sqrt_h
            assert np.abs(ops4.K[i].matrix - k_expected).max() <= 1e-13
            assert ops4.K[i].hermitian and ops4.L[i].hermitian


class TestMomentum:
    def test_xp_values(self, ops4):
        space = ops4.space
        eye = np.eye(space.dim, dtype=complex)
        xp = sum(x.matrix @ p.matrix for x, p in zip(ops4.X, ops4.P))
        px = sum(p.matrix @ x.matrix for x, p in zip(ops4.X, ops4.P))
        assert _res(xp + px, 0 * eye, space, 2) <= 1e-12
        assert _res(xp, 1.5j * eye, space, 2) <= 1e-12
        assert _res(px, -1.5j * eye, space, 2) <= 1e-12

    def test_hamiltonian_from_momentum(self, ops4):
        space = ops4.space
        p2 = sum(p.matrix @ p.matrix for p in ops4.P)
        assert _res(ops4.H.matrix, p2 - 2.25 * np.eye(space.dim), space, 2) <= 1e-12

    def test_momentum_position_commutator(self, ops4):
        space = ops4.space
        eye = np.eye(space.dim, dtype=complex)
        worst = 0.0
        for j in range(4):
            for k in range(4):
                lhs = ops4.P[j].matrix @ ops4.X[k].matrix - ops4.X[k].matrix @ ops4.P[j].matrix
                rhs = -1j * ((eye if j == k else 0 * eye) - ops4.X[j].matrix @ ops4.X[k].matrix)
                worst = max(worst, _res(lhs, rhs, space, 2))
        assert worst <= 1e-12

    def test_hermitian(self, ops4):
        assert all(p.hermitian for p in ops4.P)

    def test_angular_momentum_from_x_and_p(self, ops4):
        space = ops4.space
        for i in range(1, 5):
            for j in range(i + 1, 5):
                lhs = ops4.X[i - 1].matrix @ ops4.P[j - 1].matrix - ops4.X[j - 1].matrix @ ops4.P[i - 1].matrix
                assert _res(lhs, ops4.J[(i, j)].matrix, space, 2) <= 1e-12

    def test_momentum_from_boost(self, ops4):
        space = ops4.space
        inv_sqrt = level_function(space, lambda n: (n + 1.0) ** -0.5)
        h = ops4.h.matrix
        for i in range(4):
            rhs = 0.5 * inv_sqrt @ (h @ ops4.L[i].matrix + ops4.L[i].matrix @ h) @ inv_sqrt
            assert _res(ops4.P[i].matrix, rhs, space, 1) <= 1e-12


class TestEigenoperators:
    def test_shift_relations(self, ops4):
        space = ops4.space
        eye = np.eye(space.dim, dtype=complex)
        h = ops4.h.matrix
        for v in ops4.v_plus:
            assert _res((h - eye) @ v.matrix, v.matrix @ h, space, 1) <= 1e-12
        for v in ops4.v_minus:
            assert _res((h + eye) @ v.matrix, v.matrix @ h, space, 1) <= 1e-12

    def test_route_phases(self, ops4):
        # the two ladder constructions agree up to a single global phase per
        # sign: -i for raising, +i for lowering
        space = ops4.space
        inv_sqrt = level_function(space, lambda n: (n + 1.0) ** -0.5)
        sqrt_h = level_function(space, lambda n: (n + 1.0) ** 0.5)
        for i in range(4):
            lhs_p = inv_sqrt @ ops4.v_plus[i].matrix @ sqrt_h
            assert _res(lhs_p, -1j * ops4.a_plus[i].matrix, space, 1) <= 1e-12
            lhs_m = inv_sqrt @ ops4.v_minus[i].matrix @ sqrt_h
            assert _res(lhs_m, 1j * ops4.a_minus[i].matrix, space, 1) <= 1e-12

    def test_adjoint_ratio(self, ops4):
        space = ops4.space
        ratio = level_function(space, lambda n: (n + 2.0) / (n + 1.0))
        for vp, vm in zip(ops4.v_plus, ops4.v_minus):
            assert _res(vp.matrix.conj().T, ratio @ vm.matrix, space, 0) <= 1e-12


class TestAssembly:
    def test_generator_map_wiring(self, ops4):
        gens = ops4.generators
        from sphere_sga.algebra import gen

        assert gens[gen(5, 6)] is ops4.h
        assert gens[gen(1, 5)] is ops4.K[0]
        assert gens[gen(3, 6)] is ops4.L[2]
        assert gens[gen(1, 2)] is ops4.J[(1, 2)]
        assert len(gens) == 15

    def test_assemble_standalone(self):
        space = orthonormalize(2)
        gens = assemble_so42(space)
        assert len(gens) == 15

    def test_vector_transformation(self, ops4):
        space = ops4.space
        zero = np.zeros((space.dim, space.dim), dtype=complex)
        worst = 0.0
        for i in range(1, 5):
            for k in range(i + 1, 5):
                jm = ops4.J[(i, k)].matrix
                for l in range(1, 5):
                    lhs = jm @ ops4.X[l - 1].matrix - ops4.X[l - 1].matrix @ jm
                    rhs = -1j * (
                        (ops4.X[i - 1].matrix if k == l else zero)
                        - (ops4.X[k - 1].matrix if i == l else zero)
                    )
                    worst = max(worst, _res(lhs, rhs, space, 2))
        assert worst <= 1e-12

    def test_su2_casimirs_per_level(self, ops4):
        space = ops4.space
        J = ops4.J
        r_vec = [J[(2, 3)].matrix, -J[(1, 3)].matrix, J[(1, 2)].matrix]
        s_vec = [J[(1, 4)].matrix, J[(2, 4)].matrix, J[(3, 4)].matrix]
        m2 = sum(((r + s) / 2) @ ((r + s) / 2) for r, s in zip(r_vec, s_vec))
        for n in range(space.n_max + 1):
            sl = space.level_slice(n)
            jval = n / 2
            assert np.abs(m2[sl, sl] - jval * (jval + 1) * np.eye((n + 1) ** 2)).max() <= 1e-12


class TestOperatorRep:
    def test_shape_validation(self, space4):
        with pytest.raises(ValueError):
            OperatorRep.from_matrix(space4, np.zeros((3, 3)))

    def test_block_accessor(self, ops4):
        blk = ops4.X[0].block(1, 0)
        assert blk.shape == (4, 1)
        assert blk[0, 0] == pytest.approx(0.5)

    def test_dagger(self, ops4):
        d = ops4.a_plus[0].dagger()
        assert np.abs(d.matrix - ops4.a_minus[0].matrix).max() <= 1e-14


def test_builders_standalone_consistency():
    space = orthonormalize(3)
    J = build_J(space)
    H = build_H(space, J)
    h, H2, gamma = build_h(space, H)
    assert H2 is H
    X = build_X(space)
    assert len(X) == 4 and len(J) == 6
    assert np.allclose(np.diag(h.matrix)[:5].real, [1, 2, 2, 2, 2])
