"""The symmetric square construction and its natural maps."""

import random
from math import comb

import pytest

from symchain import (
    ChainMap,
    FreeComplex,
    GF,
    QQ,
    SparseMatrix,
    ZLoc,
    ZZ,
    alpha,
    base_change,
    direct_sum,
    graded_poly,
    identity_map,
    induced_homotopy,
    is_chain_map,
    koszul,
    shift,
    shift_iso,
    split_decomposition,
    sum_decomposition_iso,
    sym2,
    sym2_base_change_iso,
    sym2_map,
    unit_complex,
    validate,
    weak_sym2,
    zero_complex,
    zero_map,
)
from symchain.complexes import Homotopy, compose
from symchain.errors import TwoNotUnitError, UnsupportedRingError
from symchain.homology import homology_presented, is_exact
from symchain.linalg import rank, solve_field
from symchain.sym2 import PresentedComplex, sym_basis

from randgen import (
    random_chain_map,
    random_complex,
    random_homotopic_pair,
)

POLY = graded_poly("x", "y")
X_VAR = POLY.variable("x")
Y_VAR = POLY.variable("y")


def mat_strings(M):
    return [[str(v) for v in row] for row in M.to_rows()]


def test_alpha_on_unit_complex_is_zero():
    assert alpha(unit_complex(ZZ)).maps == {}


def test_alpha_on_two_variable_koszul_degree_two():
    al = alpha(koszul([X_VAR, Y_VAR]))
    assert mat_strings(al.component(2)) == [
        ["1", "0", "0", "0", "0", "-1"],
        ["0", "2", "0", "0", "0", "0"],
        ["0", "0", "1", "1", "0", "0"],
        ["0", "0", "1", "1", "0", "0"],
        ["0", "0", "0", "0", "2", "0"],
        ["-1", "0", "0", "0", "0", "1"],
    ]
    assert is_chain_map(al)


def test_alpha_on_odd_shift_doubles():
    al = alpha(shift(unit_complex(QQ), 1))
    assert mat_strings(al.component(2)) == [["2"]]


def test_sym2_koszul_two_variables_matches_classical_matrices():
    S = sym2(koszul([X_VAR, Y_VAR])).complex
    assert mat_strings(S.diff(4)) == [["2*y"], ["-2*x"]]
    assert mat_strings(S.diff(3)) == [["x", "y"], ["x", "y"]]
    assert mat_strings(S.diff(2)) == [["y", "-y"], ["-x", "x"]]
    assert mat_strings(S.diff(1)) == [["x", "y"]]
    assert validate(S).ok


def test_sym2_of_odd_shift_vanishes():
    assert sym2(shift(unit_complex(QQ), 1)).complex.is_zero()
    assert sym2(shift(unit_complex(ZZ), 1)).complex.is_zero()


def test_sym2_two_term_ranks():
    X = FreeComplex(QQ, {1: 2, 0: 3}, {1: SparseMatrix.zero(QQ, 3, 2)})
    S = sym2(X).complex
    assert {n: S.rank(n) for n in S.degrees()} == {0: 6, 1: 6, 2: 1}


def test_sym2_projection_is_chain_map_killing_alpha():
    rng = random.Random(3)
    for ring in (ZZ, QQ, GF(5)):
        X = random_complex(ring, rng, max_rank=3, max_len=3)
        S = sym2(X)
        assert validate(S.complex).ok
        assert is_chain_map(S.proj)
        al = alpha(X)
        for n in S.tensor_square.degrees():
            assert (S.proj.component(n) @ al.component(n)).is_zero()


def test_rank_formula_on_random_profiles():
    """200 random rank profiles (negative degrees included) against the
    binomial rank formula."""
    rng = random.Random(5)
    for _ in range(200):
        degrees = sorted(rng.sample(range(-3, 6), rng.randint(1, 3)))
        ranks = {d: rng.randint(1, 4) for d in degrees}
        X = FreeComplex(QQ, ranks, {})  # zero differentials: any profile is legal
        S = sym2(X).complex
        lo = min(degrees)
        hi = max(degrees)
        for n in range(2 * lo, 2 * hi + 1):
            r = ranks.get
            expected = sum(
                r(m, 0) * r(n - m, 0) for m in range(lo, (n + 1) // 2)
            )
            if n % 2 == 0:
                h = n // 2
                if n % 4 == 0:
                    expected += comb(r(h, 0) + 1, 2)
                else:
                    expected += comb(r(h, 0), 2)
            assert S.rank(n) == expected


def test_weak_sym2_is_sym2_when_two_invertible():
    rng = random.Random(7)
    for ring in (QQ, GF(7), ZLoc(5)):
        X = random_complex(ring, rng, max_rank=3, max_len=3)
        W = weak_sym2(X)
        assert isinstance(W, FreeComplex)
        assert W == sym2(X).complex


def test_weak_sym2_of_odd_shift_presents_two_torsion():
    P = weak_sym2(shift(unit_complex(ZZ), 1))
    assert isinstance(P, PresentedComplex)
    assert P.degrees() == [2]
    assert P.relation(2) == SparseMatrix.from_rows(ZZ, [[2]])
    h = homology_presented(P)
    assert str(h.group(2)) == "Z/2"


def test_weak_sym2_of_integer_koszul_degree_two_is_z_mod_2():
    P = weak_sym2(koszul([ZZ.scalar(3)]))
    assert P.validate()
    # degree 2 has one generator carrying the relation 2g, so the module is Z/2
    assert len(P.gens(2)) == 1
    assert P.relation(2) == SparseMatrix.from_rows(ZZ, [[2]])
    h = homology_presented(P)
    assert [str(h.group(n)) for n in (0, 1, 2)] == ["Z/3", "0", "Z/2"]


def test_weak_square_shape_over_zz():
    """Generator/relation counts of the presentation match the classical
    degreewise decomposition: V free generators plus, in even degrees,
    C(r+1, 2) diagonal-block generators carrying r two-torsion relations
    exactly when the half-degree is odd."""
    rng = random.Random(21)
    for _ in range(15):
        X = random_complex(ZZ, rng, max_rank=4, max_len=4)
        P = weak_sym2(X)
        lo, hi = X.support
        for n in range(2 * lo, 2 * hi + 1):
            V = sum(X.rank(m) * X.rank(n - m) for m in range(lo, (n + 1) // 2))
            h = n // 2
            if n % 2:
                gens, rels = V, 0
            elif n % 4 == 0:
                gens, rels = V + comb(X.rank(h) + 1, 2), 0
            else:
                gens, rels = V + comb(X.rank(h) + 1, 2), X.rank(h)
            assert (len(P.gens(n)), P.relation(n).cols) == (gens, rels)


def test_sym_basis_excludes_odd_diagonals():
    K = koszul([X_VAR, Y_VAR])
    labels = sym_basis(K, 2)
    assert labels == [((0, 0), (2, 0)), ((1, 0), (1, 1))]
    with_diag = sym_basis(K, 2, include_odd_diagonal=True)
    assert ((1, 0), (1, 0)) in with_diag and ((1, 1), (1, 1)) in with_diag


def test_sym2_map_identity_and_composition():
    rng = random.Random(11)
    for _ in range(10):
        X = random_complex(QQ, rng, max_rank=3, max_len=3)
        Y = random_complex(QQ, rng, max_rank=3, max_len=3)
        Z = random_complex(QQ, rng, max_rank=3, max_len=3)
        assert sym2_map(identity_map(X)) == identity_map(sym2(X).complex)
        f = random_chain_map(X, Y, rng)
        g = random_chain_map(Y, Z, rng)
        assert sym2_map(compose(g, f)) == compose(sym2_map(g), sym2_map(f))


def test_sym2_map_not_additive_on_projections():
    X = unit_complex(QQ)
    W = direct_sum(X, X)
    one = QQ.one()
    f1 = ChainMap(W, W, {0: SparseMatrix(QQ, 2, 2, {(0, 0): one})})
    f2 = ChainMap(W, W, {0: SparseMatrix(QQ, 2, 2, {(1, 1): one})})
    assert sym2_map(f1 + f2) == identity_map(sym2(W).complex)
    assert sym2_map(f1) + sym2_map(f2) != identity_map(sym2(W).complex)


def test_split_decomposition_trivial_on_unit_complex():
    d = split_decomposition(unit_complex(QQ))
    assert d.im_alpha.is_zero()
    assert d.sym2_result.complex.ranks == {0: 1}


def test_split_decomposition_on_odd_shift():
    d = split_decomposition(shift(unit_complex(QQ), 1))
    assert d.im_alpha.ranks == {2: 1}
    assert d.sym2_result.complex.is_zero()


def test_split_decomposition_rank_additivity_koszul():
    d = split_decomposition(koszul([X_VAR, Y_VAR]))
    t_ranks = [d.iota.target.rank(n) for n in range(5)]
    s_ranks = [d.sym2_result.complex.rank(n) for n in range(5)]
    im_ranks = [d.im_alpha.rank(n) for n in range(5)]
    assert t_ranks == [1, 4, 6, 4, 1]
    assert s_ranks == [1, 2, 2, 2, 1]
    assert im_ranks == [0, 2, 4, 2, 0]
    # independent check of the image ranks by exact elimination on alpha
    al = alpha(koszul([X_VAR, Y_VAR]))
    assert im_ranks == [rank(_constant_qq(al.component(n))) for n in range(5)]


def _constant_qq(M):
    from symchain.sym2 import _poly_to_qq

    return _poly_to_qq(M)


@pytest.mark.parametrize("ring", [QQ, GF(7), ZLoc(3)])
def test_split_decomposition_contracts(ring):
    rng = random.Random(13)
    for _ in range(4):
        X = random_complex(ring, rng, max_rank=2, max_len=3)
        d = split_decomposition(X)
        e = d.idempotent
        T = d.iota.target
        for n in T.degrees():
            en = e.component(n)
            assert en @ en == en
        # q . (1/2 iota) = id and proj . iota = 0
        half = ring.scalar(2).inverse()
        for n in d.im_alpha.degrees():
            q_half_iota = d.q.component(n) @ d.iota.component(n).scale(half)
            assert q_half_iota == SparseMatrix.identity(ring, d.im_alpha.rank(n))
        for n in T.degrees():
            assert (d.proj.component(n) @ d.iota.component(n)).is_zero()
        assert is_chain_map(d.iso) and is_chain_map(d.iso_inverse)
        assert is_chain_map(d.q) and is_chain_map(d.iota) and is_chain_map(d.j)
        for n in T.degrees():
            fg = d.iso.component(n) @ d.iso_inverse.component(n)
            assert fg == SparseMatrix.identity(ring, fg.rows)


def test_split_decomposition_needs_two_invertible():
    with pytest.raises(TwoNotUnitError):
        split_decomposition(unit_complex(ZZ))


def test_sum_decomposition_examples():
    X = shift(unit_complex(QQ), 1)
    f = sum_decomposition_iso(X, X)
    # target collapses to the middle block: a single shifted copy of R
    assert f.target.ranks == {2: 1}
    assert is_chain_map(f)
    # signed permutation: the transpose with the same signs is the inverse
    for n in f.source.degrees():
        M = f.component(n)
        assert M.transpose() @ M == SparseMatrix.identity(QQ, M.cols)

    Y = zero_complex(QQ)
    g = sum_decomposition_iso(unit_complex(QQ), Y)
    assert g.target.ranks == sym2(unit_complex(QQ)).complex.ranks


def test_sum_decomposition_random_invertible():
    rng = random.Random(17)
    for _ in range(5):
        X = random_complex(GF(5), rng, max_rank=2, max_len=2)
        Y = random_complex(GF(5), rng, max_rank=2, max_len=2)
        f = sum_decomposition_iso(X, Y)
        assert is_chain_map(f)
        for n in f.source.degrees():
            M = f.component(n)
            assert M.rows == M.cols
            K = solve_field(M, SparseMatrix.identity(GF(5), M.rows))
            assert M @ K == SparseMatrix.identity(GF(5), M.rows)


def test_shift_iso_examples():
    X = koszul([X_VAR, Y_VAR])
    assert shift_iso(X, 0).source == sym2(X).complex
    f = shift_iso(unit_complex(QQ), 1)
    assert f.source.ranks == {4: 1} and f.target.ranks == {4: 1}
    g = shift_iso(X, 1)
    assert is_chain_map(g)
    assert g.source.support == (4, 8)


def test_induced_homotopy_zero_case():
    X = koszul([X_VAR, Y_VAR])
    f = identity_map(X)
    s = Homotopy(f, f, {})
    sigma, sigma_bar = induced_homotopy(f, f, s)
    assert sigma.maps == {} and sigma_bar.maps == {}


def test_induced_homotopy_contracts_unit_koszul_square():
    """A contracting homotopy transports to one on the symmetric square."""
    K = koszul([QQ.scalar(1), QQ.scalar(1)])
    ident = identity_map(K)
    z = zero_map(K, K)
    s_maps = {}
    s_prev = None
    lo, hi = K.support
    for n in range(lo, hi + 1):
        rhs = ident.component(n) - (
            s_prev @ K.diff(n) if s_prev is not None else SparseMatrix.zero(QQ, K.rank(n), K.rank(n))
        )
        sol = solve_field(K.diff(n + 1), rhs)
        s_maps[n] = sol
        s_prev = sol
    s = Homotopy(ident, z, s_maps)
    assert s.check()
    sigma, sigma_bar = induced_homotopy(ident, z, s)
    assert sigma.check() and sigma_bar.check()
    # the square of the identity is homotopic to zero, so the square is exact
    assert is_exact(sym2(K).complex)


def test_induced_homotopy_random_pairs_gf7():
    rng = random.Random(19)
    for _ in range(10):
        X = random_complex(GF(7), rng, max_rank=3, max_len=3)
        Y = random_complex(GF(7), rng, max_rank=3, max_len=3)
        f, g, s = random_homotopic_pair(X, Y, rng)
        sigma, sigma_bar = induced_homotopy(f, g, s)
        assert sigma.check()
        assert sigma_bar.check()


def test_induced_homotopy_needs_two_invertible():
    K = koszul([ZZ.scalar(1)])
    f = identity_map(K)
    with pytest.raises(TwoNotUnitError):
        induced_homotopy(f, f, Homotopy(f, f, {}))


def test_base_change_examples():
    K = koszul([ZZ.scalar(3)])
    pushed = base_change(K, GF(5))
    assert pushed.diff(1) == SparseMatrix.from_rows(GF(5), [[3]])
    iso = sym2_base_change_iso(K, GF(5))
    assert is_chain_map(iso)
    # odd shift: both sides vanish over QQ
    sigma_z = shift(unit_complex(ZZ), 1)
    assert sym2(base_change(sigma_z, QQ)).complex.is_zero()
    assert base_change(sigma_z, QQ) == base_change(sigma_z, QQ)
    with pytest.raises(UnsupportedRingError):
        base_change(unit_complex(QQ), ZZ)


def test_base_change_zloc_to_gf():
    R = ZLoc(3)
    X = FreeComplex(R, {0: 1, 1: 1}, {1: SparseMatrix.from_rows(R, [["1/2"]])})
    pushed = base_change(X, GF(3))
    assert pushed.diff(1) == SparseMatrix.from_rows(GF(3), [[2]])  # 1/2 = 2 mod 3


def test_support_shrinks_under_sym2():
    """If the pushed complex is exact, so is its symmetric square."""
    K = koszul([ZZ.scalar(2)])
    over_q = base_change(K, QQ)
    assert is_exact(over_q)
    assert is_exact(sym2(over_q).complex)
    # same phenomenon modulo a prime where the entry becomes a unit
    over_f5 = base_change(koszul([ZZ.scalar(3)]), GF(5))
    assert is_exact(over_f5)
    assert is_exact(sym2(over_f5).complex)


def test_weak_sym2_over_characteristic_two_backends():
    # constructible witnesses for 2 not being a unit; diagonal generators
    # survive freely over GF(2) because the relation 2g collapses to 0
    for ring in (GF(2), ZLoc(2)):
        X = shift(unit_complex(ring), 1)
        P = weak_sym2(X)
        assert isinstance(P, PresentedComplex)
        assert len(P.gens(2)) == 1
        assert P.validate()


def test_base_change_identity_map_is_equality():
    K = koszul([ZZ.scalar(3)])
    assert base_change(K, ZZ) == K


def test_sum_decomposition_with_zero_summand_is_identity():
    X = koszul([X_VAR, Y_VAR])
    f = sum_decomposition_iso(X, zero_complex(POLY))
    S = sym2(X).complex
    assert f.target == S
    for n in S.degrees():
        assert f.component(n) == SparseMatrix.identity(POLY, S.rank(n))


def test_idempotent_half_alpha():
    rng = random.Random(23)
    for ring in (QQ, ZLoc(3)):
        X = random_complex(ring, rng, max_rank=3, max_len=3)
        al = alpha(X)
        half = ring.scalar(2).inverse()
        for n in al.source.degrees():
            e = al.component(n).scale(half)
            assert e @ e == e
