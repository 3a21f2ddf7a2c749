"""Homology over each backend, presented complexes, quasi-isomorphism tests."""

import random

import pytest

from symchain import (
    FpAbelianGroup,
    FreeComplex,
    GF,
    QQ,
    SparseMatrix,
    ZLoc,
    ZZ,
    base_change,
    graded_poly,
    homology,
    homology_presented,
    identity_map,
    inf_h,
    is_exact,
    is_quasi_iso,
    koszul,
    shift,
    sym2,
    unit_complex,
    weak_sym2,
    zero_map,
)
from symchain.errors import GradingError, SymchainError, UnsupportedRingError
from symchain.sym2 import PresentedComplex

from randgen import random_complex

POLY = graded_poly("x", "y")
X_VAR = POLY.variable("x")
Y_VAR = POLY.variable("y")


def test_homology_of_integer_koszul():
    h = homology(koszul([ZZ.scalar(3)]))
    assert str(h.group(0)) == "Z/3"
    assert h.is_zero_at(1)
    assert h.inf == 0


def test_homology_of_unit_koszul_square_over_zz():
    S = sym2(koszul([ZZ.scalar(1), ZZ.scalar(1)])).complex
    h = homology(S)
    assert str(h.group(3)) == "Z/2"
    assert h.nonzero_degrees() == [3]


def test_graded_homology_of_koszul_square():
    S = sym2(koszul([X_VAR, Y_VAR])).complex
    h = homology(S, bound=6)
    assert h.table(0) == {0: 1}
    assert h.table(2) == {2: 1}
    assert h.is_zero_at(1) and h.is_zero_at(3) and h.is_zero_at(4)
    assert h.bound == 6
    assert h.inf == 0


def test_graded_homology_needs_grading_info():
    with pytest.raises(GradingError):
        FreeComplex(POLY, {0: 1}, {})


def test_homology_zloc_reports_prime_powers():
    R = ZLoc(3)
    X = FreeComplex(R, {0: 1, 1: 1}, {1: SparseMatrix.from_rows(R, [[9]])})
    h = homology(X)
    assert h.group(0) == FpAbelianGroup(0, (9,))
    Y = FreeComplex(R, {0: 1, 1: 1}, {1: SparseMatrix.from_rows(R, [[2]])})
    assert homology(Y).is_exact()  # 2 is a unit there


def test_homology_presented_examples():
    P = weak_sym2(koszul([ZZ.scalar(3)]))
    h = homology_presented(P)
    assert [str(h.group(n)) for n in (0, 1, 2)] == ["Z/3", "0", "Z/2"]
    P2 = weak_sym2(shift(unit_complex(ZZ), 1))
    h2 = homology_presented(P2)
    assert h2.nonzero_degrees() == [2]
    assert str(h2.group(2)) == "Z/2"


def test_homology_presented_requires_zz():
    P = PresentedComplex(QQ, {0: [0]}, {}, {})
    with pytest.raises(UnsupportedRingError):
        homology_presented(P)


def test_free_complex_wrapped_as_presented_agrees():
    rng = random.Random(3)
    for _ in range(8):
        X = random_complex(ZZ, rng, max_rank=3, max_len=3)
        P = PresentedComplex(
            ZZ,
            {n: list(range(X.rank(n))) for n in X.degrees()},
            {},
            {n: X.diff(n) for n in X.degrees() if X.rank(n - 1)},
        )
        hp = homology_presented(P)
        hf = homology(X)
        degrees = set(hp.values) | set(hf.values)
        for n in degrees:
            assert hp.group(n) == hf.group(n)


def test_identity_is_quasi_iso():
    rng = random.Random(5)
    for ring in (ZZ, QQ, GF(5), ZLoc(3)):
        X = random_complex(ring, rng, max_rank=3, max_len=3)
        assert is_quasi_iso(identity_map(X))


def test_projection_onto_sym2_not_quasi_iso_graded():
    S = sym2(koszul([X_VAR, Y_VAR]))
    verdict = is_quasi_iso(S.proj, bound=6)
    assert not verdict
    assert verdict.bounded and verdict.bound == 6
    assert verdict.failures


def test_augmentation_of_split_exact_complex_is_quasi_iso():
    K = koszul([QQ.scalar(1), QQ.scalar(1)])
    f = zero_map(K, FreeComplex(QQ, {}, {}))
    assert is_quasi_iso(f)


def test_inf_examples():
    assert inf_h(koszul([X_VAR, Y_VAR])) == 0
    assert inf_h(shift(unit_complex(QQ), 2)) == 2
    assert is_exact(koszul([QQ.scalar(1), QQ.scalar(1)]))
    assert inf_h(FreeComplex(ZZ, {}, {})) is None


def test_euler_characteristic_matches_homology():
    rng = random.Random(7)
    for ring in (QQ, GF(7)):
        for _ in range(10):
            X = random_complex(ring, rng, max_rank=4, max_len=4)
            h = homology(X)
            chi_ranks = sum((-1) ** n * X.rank(n) for n in X.degrees())
            chi_h = sum((-1) ** n * h.dimension(n) for n in h.values)
            assert chi_ranks == chi_h
    for _ in range(10):
        X = random_complex(ZZ, rng, max_rank=4, max_len=4)
        h = homology(X)
        chi_ranks = sum((-1) ** n * X.rank(n) for n in X.degrees())
        chi_h = sum((-1) ** n * h.group(n).rank for n in h.values)
        assert chi_ranks == chi_h


def _p_torsion_count(group, p):
    return sum(1 for f in group.factors if f % p == 0)


def test_base_change_consistency_with_universal_coefficients():
    rng = random.Random(11)
    for _ in range(12):
        X = random_complex(ZZ, rng, max_rank=3, max_len=3)
        h_z = homology(X)
        h_q = homology(base_change(X, QQ))
        degrees = set(X.degrees())
        for n in degrees:
            assert h_q.dimension(n) == h_z.group(n).rank
        p = 3
        h_p = homology(base_change(X, GF(p)))
        for n in degrees:
            want = (
                h_z.group(n).rank
                + _p_torsion_count(h_z.group(n), p)
                + _p_torsion_count(h_z.group(n - 1), p)
            )
            assert h_p.dimension(n) == want


def test_quasi_iso_detects_failure_over_zz():
    K = koszul([ZZ.scalar(1), ZZ.scalar(1)])
    S = sym2(K).complex
    z = zero_map(S, S)
    assert not is_quasi_iso(z)  # H3 = Z/2 is not hit
    assert is_quasi_iso(zero_map(K, K))


def _mapping_cone(f):
    """Independent oracle: cone(f)_n = X_{n-1} (+) Y_n with
    d(x, y) = (-dX(x), f(x) + dY(y)); f is a quasi-isomorphism exactly
    when the cone is exact."""
    X, Y = f.source, f.target
    ring = X.ring
    degrees = sorted(set(d + 1 for d in X.degrees()) | set(Y.degrees()))
    ranks = {n: X.rank(n - 1) + Y.rank(n) for n in degrees}
    diffs = {}
    for n in degrees:
        rows = X.rank(n - 2) + Y.rank(n - 1)
        if rows == 0:
            continue
        entries = {}
        for (i, j), v in X.diff(n - 1).entries.items():
            entries[(i, j)] = -v
        for (i, j), v in f.component(n - 1).entries.items():
            entries[(i + X.rank(n - 2), j)] = v
        for (i, j), v in Y.diff(n).entries.items():
            entries[(i + X.rank(n - 2), j + X.rank(n - 1))] = v
        diffs[n] = SparseMatrix(ring, rows, ranks[n], entries)
    return FreeComplex(ring, ranks, diffs)


def test_quasi_iso_agrees_with_mapping_cone_exactness():
    from randgen import random_chain_map

    rng = random.Random(17)
    for ring in (ZZ, QQ, GF(5), ZLoc(3)):
        for _ in range(10):
            X = random_complex(ring, rng, max_rank=3, max_len=3)
            same = rng.random() < 0.5
            Y = X if same else random_complex(ring, rng, max_rank=3, max_len=3)
            f = random_chain_map(X, Y, rng)
            cone = _mapping_cone(f)
            from symchain import validate

            assert validate(cone).ok
            assert bool(is_quasi_iso(f)) == is_exact(cone)


def test_quasi_iso_requires_matching_backend():
    with pytest.raises(SymchainError):
        is_quasi_iso(
            identity_map(unit_complex(ZZ)).__class__(
                unit_complex(ZZ), unit_complex(QQ), {}
            )
        )
