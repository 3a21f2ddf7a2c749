"""Theorem checkers: which complexes square to something trivial or tiny?

Each checker evaluates its conditions independently and asserts that the
vector is constant — all true or all false.

Run:  python3 demos/03_shift_characterizations.py
"""

from symchain import (
    ZLoc,
    check_s2fpd02,
    check_symm07,
    check_symm07pp,
    check_symm09,
    direct_sum,
    graded_poly,
    koszul,
    shift,
    unit_complex,
    zero_complex,
)

R = ZLoc(3)
R0 = unit_complex(R)
poly = graded_poly("x", "y")
x, y = poly.generators()

family = {
    "zero": zero_complex(R),
    "R": R0,
    "shift(R, 1)": shift(R0, 1),
    "shift(R, 2)": shift(R0, 2),
    "R + R": direct_sum(R0, R0),
    "shift(R,1) + shift(R,3)": direct_sum(shift(R0, 1), shift(R0, 3)),
    "K(x, y)": koszul([x, y]),
}


def line(report):
    conds = " ".join(
        f"{l}={'T' if v else 'F'}" for l, v in zip(report.labels, report.conditions)
    )
    return f"[{conds}] constant={report.equivalent}"


print("even-shift characterization (projection quasi-iso <=> ... <=> even shift):")
for name, X in family.items():
    print(f"  {name:<26} {line(check_symm07(X))}")

print("\nodd-shift characterization (alternation quasi-iso <=> square exact <=> ...):")
for name, X in family.items():
    print(f"  {name:<26} {line(check_symm07pp(X))}")

print("\nwhen is the square a single shifted copy of R?")
for name, X in family.items():
    report = check_s2fpd02(X)
    extra = f"  j={report.witnesses['j']}" if "j" in report.witnesses else ""
    print(f"  {name:<26} {line(report)}{extra}")

print("\nlowest homology of the square (bound and parity formula):")
for name, X in [("K(x, y)", koszul([x, y])), ("shift(R, 2)", shift(R0, 2))]:
    report = check_symm09(X)
    print(f"  {name:<26} holds={report.holds}")
