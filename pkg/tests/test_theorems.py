"""Theorem checkers: condition vectors must be constant; corpus must pass."""

import random

import pytest

from symchain import (
    GF,
    QQ,
    ZLoc,
    ZZ,
    check_s2fpd02,
    check_symm07,
    check_symm07pp,
    check_symm09,
    direct_sum,
    graded_poly,
    is_quasi_iso,
    koszul,
    minimize,
    run_paper_corpus,
    shift,
    sym2,
    sym2_map,
    unit_complex,
    zero_complex,
    zero_map,
)
from symchain.complexes import compose
from symchain.errors import TwoNotUnitError, UnsupportedRingError

from randgen import (
    conjugate,
    contractible_piece,
    null_homotopic_map,
    random_minimal_complex,
    summand_inclusion,
    summand_projection,
)

POLY = graded_poly("x", "y")
X_VAR = POLY.variable("x")
Y_VAR = POLY.variable("y")


def curated_family(ring):
    R0 = unit_complex(ring)
    return [
        zero_complex(ring),
        R0,
        shift(R0, 1),
        shift(R0, 2),
        direct_sum(R0, R0),
        direct_sum(shift(R0, 1), shift(R0, 3)),
    ]


def test_symm07_even_shift_all_true():
    report = check_symm07(shift(unit_complex(ZLoc(3)), 2))
    assert report.conditions == (True, True, True, True)
    assert report.equivalent and report.holds


def test_symm07_koszul_all_false_graded():
    report = check_symm07(koszul([X_VAR, Y_VAR]))
    assert report.conditions == (False, False, False, False)
    assert report.equivalent and report.holds is False
    assert report.bounded and report.bound is not None


def test_symm07_odd_shift_all_false():
    report = check_symm07(shift(unit_complex(ZLoc(3)), 1))
    assert report.conditions == (False, False, False, False)
    assert report.equivalent


def test_symm07pp_examples():
    r = check_symm07pp(shift(unit_complex(QQ), 1))
    assert r.conditions == (True,) * 6 and r.equivalent
    r = check_symm07pp(unit_complex(QQ))
    assert r.conditions == (False,) * 6 and r.equivalent
    both = direct_sum(shift(unit_complex(QQ), 1), shift(unit_complex(QQ), 3))
    r = check_symm07pp(both)
    assert r.conditions == (False,) * 6 and r.equivalent


def test_s2fpd02_single_even_shift():
    r = check_s2fpd02(shift(unit_complex(QQ), 2))
    assert r.conditions == (True, True, True) and r.equivalent
    assert r.witnesses["j"] == 4


def test_s2fpd02_two_odd_shifts():
    X = direct_sum(shift(unit_complex(QQ), 1), shift(unit_complex(QQ), 3))
    r = check_s2fpd02(X)
    assert r.conditions == (True, True, True) and r.equivalent
    # the square of an odd pair lands in the tensor degree: 1 + 3
    assert r.witnesses["j"] == 4
    M, _ = minimize(sym2(X).complex)
    assert M.ranks == {4: 1}


def test_s2fpd02_koszul_all_false():
    r = check_s2fpd02(koszul([X_VAR, Y_VAR]))
    assert r.conditions == (False, False, False) and r.equivalent


def test_checkers_reject_bad_backends():
    with pytest.raises(UnsupportedRingError):
        check_symm07(unit_complex(ZZ))
    with pytest.raises(TwoNotUnitError):
        check_symm07(unit_complex(GF(2)))


def test_equivalence_on_curated_family():
    for ring in (QQ, ZLoc(3)):
        for X in curated_family(ring):
            for checker in (check_symm07, check_symm07pp, check_s2fpd02):
                report = checker(X)
                assert report.equivalent, (
                    f"{report.theorem} non-constant on {X!r}: {report.conditions}"
                )


def test_equivalence_on_random_minimal_zloc():
    rng = random.Random(29)
    for _ in range(12):
        X = random_minimal_complex(ZLoc(3), rng, max_rank=3, max_len=4)
        for checker in (check_symm07, check_symm07pp, check_s2fpd02):
            report = checker(X)
            assert report.equivalent, (
                f"{report.theorem} non-constant on {X!r}: {report.conditions}"
            )


def test_symm09_koszul_graded():
    report = check_symm09(koszul([X_VAR, Y_VAR]))
    assert report.holds, report.witnesses
    assert "inf_equality_even" in report.labels


def test_symm09_odd_shift():
    report = check_symm09(shift(unit_complex(QQ), 1))
    assert report.holds, report.witnesses
    assert "inf_equality_even" not in report.labels


def test_symm09_even_shift():
    report = check_symm09(shift(unit_complex(ZLoc(3)), 2))
    assert report.holds
    report = check_symm09(zero_complex(QQ))
    assert report.holds and report.note


def test_symm09_random_minimal():
    rng = random.Random(31)
    for _ in range(8):
        X = random_minimal_complex(ZLoc(3), rng, max_rank=2, max_len=3)
        report = check_symm09(X)
        assert report.holds, (X, report.witnesses)


def test_symm09_graded_koszul_pieces():
    for X in (koszul([X_VAR]), koszul([X_VAR, Y_VAR]), shift(koszul([X_VAR]), 2)):
        report = check_symm09(X)
        assert report.holds, report.witnesses


def test_symm09_random_graded_minimal():
    from randgen import random_graded_minimal

    rng = random.Random(41)
    for _ in range(5):
        X = random_graded_minimal(POLY, rng)
        report = check_symm09(X)
        assert report.holds, (X, report.witnesses)


def test_square_preserves_quasi_isos_over_qq():
    """Quasi-isomorphisms built from minimal cores and contractible padding."""
    rng = random.Random(37)
    for _ in range(6):
        core = random_minimal_complex(QQ, rng, max_rank=2, max_len=3)
        C1 = contractible_piece(QQ, rng.randint(1, 3))
        C2 = contractible_piece(QQ, rng.randint(1, 3))
        X = conjugate(direct_sum(core, C1), rng)
        Y = conjugate(direct_sum(core, C2), rng)
        # build the quasi-isomorphism through the shared core
        pX = summand_projection(core, C1, 0)
        iY = summand_inclusion(core, C2, 0)
        # transport through the conjugations via minimize-projections
        MX, qX = minimize(X)
        MY, qY = minimize(Y)
        assert MX.ranks == core.ranks and MY.ranks == core.ranks
        assert is_quasi_iso(qX) and is_quasi_iso(qY)
        f = compose(iY, pX)
        assert is_quasi_iso(f)
        assert is_quasi_iso(sym2_map(f))
        g = f + null_homotopic_map(f.source, f.target, rng)
        assert is_quasi_iso(sym2_map(g))


def test_negative_control_over_zz():
    K = koszul([ZZ.scalar(1), ZZ.scalar(1)])
    z = zero_map(K, K)
    assert is_quasi_iso(z)
    assert not is_quasi_iso(sym2_map(z))


def test_corpus_all_pass():
    report = run_paper_corpus()
    assert report.all_pass, str(report)
    assert len(report.results) >= 8
