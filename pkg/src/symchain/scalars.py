"""Exact scalar arithmetic over the supported coefficient rings.

Rings: the integers ZZ, the rationals QQ, prime fields GF(p), the integers
localized at a prime ZLoc(p) (fractions with denominator coprime to p), and
graded polynomial rings over QQ with a fixed ordered variable list.

Scalars are immutable and kept in a canonical form: integers as Python ints,
fractions normalized with positive denominator, GF(p) residues in [0, p),
polynomials as maps from exponent vectors to nonzero rational coefficients.
Monomials compare by exponent vector in the declared variable order;
serialization lists terms by descending (total degree, exponent vector).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NonUnitError,
    RingMismatchError,
    ScalarParseError,
    SymchainError,
    UnsupportedRingError,
)

__all__ = [
    "Ring",
    "Scalar",
    "ZZ",
    "QQ",
    "GF",
    "ZLoc",
    "graded_poly",
    "two_is_unit",
    "is_prime",
]


def is_prime(p: int) -> bool:
    """Trial-division primality test; inputs are desk-scale."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Ring:
    """Descriptor of a supported coefficient ring.

    kind is one of "ZZ", "QQ", "GF", "ZLoc", "Poly".  GF/ZLoc carry the
    prime p; Poly carries the ordered variable names.
    """

    kind: str
    p: int | None = None
    variables: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("ZZ", "QQ", "GF", "ZLoc", "Poly"):
            raise UnsupportedRingError(f"unknown ring kind {self.kind!r}")
        if self.kind in ("GF", "ZLoc"):
            if self.p is None or not is_prime(self.p):
                raise UnsupportedRingError(f"{self.kind} requires a prime, got {self.p!r}")
        elif self.p is not None:
            raise UnsupportedRingError(f"ring kind {self.kind} takes no prime")
        if self.kind == "Poly":
            if not self.variables:
                raise UnsupportedRingError("polynomial ring needs at least one variable")
            for name in self.variables:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                    raise UnsupportedRingError(f"bad variable name {name!r}")
            if len(set(self.variables)) != len(self.variables):
                raise UnsupportedRingError("variable names must be distinct")
        elif self.variables:
            raise UnsupportedRingError(f"ring kind {self.kind} takes no variables")

    # -- constructors -----------------------------------------------------

    def zero(self) -> "Scalar":
        return Scalar(self, 0)

    def one(self) -> "Scalar":
        return Scalar(self, 1)

    def scalar(self, value) -> "Scalar":
        """Coerce an int, Fraction, str, monomial dict, or Scalar into this ring."""
        if isinstance(value, Scalar):
            if value.ring != self:
                raise RingMismatchError(f"scalar of {value.ring} used in {self}")
            return value
        if isinstance(value, str):
            return parse_scalar(self, value)
        return Scalar(self, value)

    def variable(self, name: str) -> "Scalar":
        if self.kind != "Poly":
            raise UnsupportedRingError("variables only exist in polynomial rings")
        i = self.variables.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(self.variables)))
        return Scalar(self, {exp: Fraction(1)})

    def generators(self) -> tuple["Scalar", ...]:
        return tuple(self.variable(v) for v in self.variables)

    # -- predicates --------------------------------------------------------

    @property
    def is_field(self) -> bool:
        return self.kind in ("QQ", "GF")

    @property
    def is_local(self) -> bool:
        # Fields are local with maximal ideal 0; ZLoc at (p); Poly is
        # graded-local at the irrelevant ideal.  ZZ is not local.
        return self.kind in ("QQ", "GF", "ZLoc", "Poly")

    def two_is_unit(self) -> bool:
        if self.kind == "ZZ":
            return False
        if self.kind in ("GF", "ZLoc"):
            return self.p != 2
        return True

    def __str__(self):
        if self.kind == "GF":
            return f"GF({self.p})"
        if self.kind == "ZLoc":
            return f"ZLoc({self.p})"
        if self.kind == "Poly":
            return f"GradedPoly({','.join(self.variables)})"
        return self.kind


ZZ = Ring("ZZ")
QQ = Ring("QQ")


def GF(p: int) -> Ring:
    return Ring("GF", p=p)


def ZLoc(p: int) -> Ring:
    return Ring("ZLoc", p=p)


def graded_poly(*variables: str) -> Ring:
    return Ring("Poly", variables=tuple(variables))


def two_is_unit(ring: Ring) -> bool:
    return ring.two_is_unit()


def _canon_fraction(ring: Ring, value) -> Fraction:
    f = Fraction(value)
    if ring.kind == "ZLoc" and f.denominator % ring.p == 0:
        raise UnsupportedRingError(
            f"denominator {f.denominator} not invertible in {ring}"
        )
    return f


def _canon_poly(ring: Ring, value) -> dict:
    nvars = len(ring.variables)
    if isinstance(value, (int, Fraction)):
        c = Fraction(value)
        return {} if c == 0 else {(0,) * nvars: c}
    out = {}
    for exp, coeff in value.items():
        exp = tuple(int(e) for e in exp)
        if len(exp) != nvars or any(e < 0 for e in exp):
            raise SymchainError(f"bad exponent vector {exp} for {ring}")
        c = Fraction(coeff)
        if c != 0:
            out[exp] = out.get(exp, Fraction(0)) + c
            if out[exp] == 0:
                del out[exp]
    return out


class Scalar:
    """An element of one of the supported rings, in canonical form."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        object.__setattr__(self, "ring", ring)
        kind = ring.kind
        if kind == "ZZ":
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise SymchainError(f"{value} is not an integer")
                value = value.numerator
            canon = int(value)
        elif kind in ("QQ", "ZLoc"):
            canon = _canon_fraction(ring, value)
        elif kind == "GF":
            if isinstance(value, Fraction):
                inv = pow(value.denominator % ring.p, ring.p - 2, ring.p)
                value = value.numerator * inv
            canon = int(value) % ring.p
        else:
            canon = _canon_poly(ring, value)
        object.__setattr__(self, "value", canon)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot mix {self.ring} and {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if self.ring.kind == "Poly":
            out = dict(self.value)
            for exp, c in other.value.items():
                s = out.get(exp, Fraction(0)) + c
                if s == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = s
            return Scalar(self.ring, out)
        return Scalar(self.ring, self.value + other.value)

    def __neg__(self):
        if self.ring.kind == "Poly":
            return Scalar(self.ring, {e: -c for e, c in self.value.items()})
        return Scalar(self.ring, -self.value)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        other = self._check(other)
        if self.ring.kind == "Poly":
            out = {}
            for e1, c1 in self.value.items():
                for e2, c2 in other.value.items():
                    exp = tuple(a + b for a, b in zip(e1, e2))
                    s = out.get(exp, Fraction(0)) + c1 * c2
                    if s == 0:
                        out.pop(exp, None)
                    else:
                        out[exp] = s
            return Scalar(self.ring, out)
        return Scalar(self.ring, self.value * other.value)

    def is_zero(self) -> bool:
        if self.ring.kind == "Poly":
            return not self.value
        return self.value == 0

    def is_one(self) -> bool:
        return self == self.ring.one()

    def is_unit(self) -> bool:
        kind = self.ring.kind
        if kind == "ZZ":
            return self.value in (1, -1)
        if kind in ("QQ", "GF"):
            return not self.is_zero()
        if kind == "ZLoc":
            return self.value != 0 and self.value.numerator % self.ring.p != 0
        const = (0,) * len(self.ring.variables)
        return set(self.value) == {const}

    def inverse(self) -> "Scalar":
        if not self.is_unit():
            raise NonUnitError(f"{self} is not a unit in {self.ring}")
        kind = self.ring.kind
        if kind == "ZZ":
            return Scalar(self.ring, self.value)
        if kind in ("QQ", "ZLoc"):
            return Scalar(self.ring, 1 / self.value)
        if kind == "GF":
            return Scalar(self.ring, pow(self.value, self.ring.p - 2, self.ring.p))
        const = (0,) * len(self.ring.variables)
        return Scalar(self.ring, {const: 1 / self.value[const]})

    def divide_exact(self, other: "Scalar") -> "Scalar":
        """Exact division; raises unless other divides self in the ring."""
        other = self._check(other)
        kind = self.ring.kind
        if other.is_unit():
            return self * other.inverse()
        if kind == "ZZ":
            if other.value == 0 or self.value % other.value != 0:
                raise SymchainError(f"{other} does not divide {self} in ZZ")
            return Scalar(self.ring, self.value // other.value)
        if kind == "ZLoc":
            if other.value == 0:
                raise SymchainError("division by zero")
            q = self.value / other.value
            return Scalar(self.ring, _canon_fraction(self.ring, q))
        raise SymchainError(f"exact division by non-unit unsupported over {self.ring}")

    # -- grading ------------------------------------------------------------

    def homogeneous_degree(self):
        """Total degree of a homogeneous polynomial; None if inhomogeneous.

        Zero is homogeneous of every degree and reports None.  Non-Poly
        scalars report 0.
        """
        if self.ring.kind != "Poly":
            return 0
        degrees = {sum(e) for e in self.value}
        if not degrees:
            return None
        if len(degrees) > 1:
            return None
        return degrees.pop()

    def is_homogeneous_of_degree(self, d: int) -> bool:
        if self.ring.kind != "Poly":
            return self.value == 0 or d == 0
        return all(sum(e) == d for e in self.value)

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Scalar)
            and self.ring == other.ring
            and self.value == other.value
        )

    def __hash__(self):
        if self.ring.kind == "Poly":
            return hash((self.ring, frozenset(self.value.items())))
        return hash((self.ring, self.value))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({self.ring}, {format_scalar(self)})"


def arith(op: str, a: Scalar, b: Scalar) -> Scalar:
    """Named-operation entry point: op in {"add", "mul", "neg"}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise SymchainError(f"unknown operation {op!r}")


# -- textual grammar ---------------------------------------------------------
#
# integers  -?[0-9]+        fractions  a/b        polynomials  sums of terms
# ±c*x^e*y^f with coefficient 1 and exponent 1 elided, e.g. 3*x^2*y - y^3.


def _sort_key(exp):
    # Descending (total degree, lex on the exponent vector).
    return (-sum(exp), tuple(-e for e in exp))


def _format_monomial(ring: Ring, exp, coeff: Fraction) -> str:
    parts = []
    if all(e == 0 for e in exp):
        return str(coeff)
    if coeff != 1:
        parts.append(str(coeff))
    for name, e in zip(ring.variables, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_scalar(a: Scalar) -> str:
    kind = a.ring.kind
    if kind in ("ZZ", "GF"):
        return str(a.value)
    if kind in ("QQ", "ZLoc"):
        return str(a.value)
    if not a.value:
        return "0"
    out = []
    for exp in sorted(a.value, key=_sort_key):
        coeff = a.value[exp]
        term = _format_monomial(a.ring, exp, abs(coeff))
        if not out:
            out.append(term if coeff > 0 else f"-{term}")
        else:
            out.append(f" + {term}" if coeff > 0 else f" - {term}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>[0-9]+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ScalarParseError("unexpected character", text, pos)
        if m.group("num"):
            tokens.append(("num", int(m.group("num")), m.start("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


def parse_scalar(ring: Ring, text: str) -> Scalar:
    """Parse a scalar string in the textual grammar for the given ring."""
    tokens = _tokenize(text)
    if not tokens:
        raise ScalarParseError("empty scalar", text, 0)

    if ring.kind != "Poly":
        return _parse_numeric(ring, tokens, text)
    return _parse_poly(ring, tokens, text)


def _parse_numeric(ring: Ring, tokens, text) -> Scalar:
    pos = 0
    sign = 1
    while pos < len(tokens) and tokens[pos][:2] in (("op", "-"), ("op", "+")):
        if tokens[pos][1] == "-":
            sign = -sign
        pos += 1
    if pos >= len(tokens) or tokens[pos][0] != "num":
        where = tokens[min(pos, len(tokens) - 1)][2]
        raise ScalarParseError("expected an integer", text, where)
    num = tokens[pos][1]
    pos += 1
    if pos < len(tokens) and tokens[pos][:2] == ("op", "/"):
        pos += 1
        if pos >= len(tokens) or tokens[pos][0] != "num":
            raise ScalarParseError("expected a denominator", text, tokens[pos - 1][2])
        den = tokens[pos][1]
        pos += 1
        if ring.kind not in ("QQ", "ZLoc", "GF"):
            raise ScalarParseError(f"fractions are not elements of {ring}", text, 0)
        if den == 0:
            raise ScalarParseError("zero denominator", text, tokens[pos - 1][2])
        value = Fraction(sign * num, den)
    else:
        value = sign * num
    if pos != len(tokens):
        raise ScalarParseError("trailing input", text, tokens[pos][2])
    return Scalar(ring, value)


def _parse_poly(ring: Ring, tokens, text) -> Scalar:
    nvars = len(ring.variables)
    var_index = {name: i for i, name in enumerate(ring.variables)}
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(tokens):
        sign = 1
        saw_sign = False
        while pos < len(tokens) and tokens[pos][:2] in (("op", "-"), ("op", "+")):
            if tokens[pos][1] == "-":
                sign = -sign
            saw_sign = True
            pos += 1
        if not first and not saw_sign:
            raise ScalarParseError("expected + or - between terms", text, tokens[pos][2])
        first = False
        coeff = Fraction(1)
        exp = [0] * nvars
        saw_factor = False
        while True:
            if pos >= len(tokens):
                break
            kind, val, where = tokens[pos]
            if kind == "num":
                c = Fraction(val)
                pos += 1
                if pos < len(tokens) and tokens[pos][:2] == ("op", "/"):
                    pos += 1
                    if pos >= len(tokens) or tokens[pos][0] != "num":
                        raise ScalarParseError("expected a denominator", text, where)
                    if tokens[pos][1] == 0:
                        raise ScalarParseError("zero denominator", text, tokens[pos][2])
                    c /= tokens[pos][1]
                    pos += 1
                coeff *= c
            elif kind == "name":
                if val not in var_index:
                    raise ScalarParseError(f"unknown variable {val!r}", text, where)
                e = 1
                pos += 1
                if pos < len(tokens) and tokens[pos][:2] == ("op", "^"):
                    pos += 1
                    if pos >= len(tokens) or tokens[pos][0] != "num":
                        raise ScalarParseError("expected an exponent", text, where)
                    e = tokens[pos][1]
                    pos += 1
                exp[var_index[val]] += e
            else:
                raise ScalarParseError("expected a factor", text, where)
            saw_factor = True
            if pos < len(tokens) and tokens[pos][:2] == ("op", "*"):
                pos += 1
                continue
            break
        if not saw_factor:
            where = tokens[pos][2] if pos < len(tokens) else len(text)
            raise ScalarParseError("empty term", text, where)
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + sign * coeff
    return Scalar(ring, terms)
