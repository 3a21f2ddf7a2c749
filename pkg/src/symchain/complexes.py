"""Bounded complexes of finite-rank free modules, chain maps, homotopies.

A complex stores positive ranks per homological degree, one differential
matrix per adjacent pair of nonzero degrees, and (over graded polynomial
rings only) a tuple of generator internal degrees per homological degree.
Absent differentials and chain-map components mean zero maps.

Tensor products follow one global basis convention: in (X (x) Y)_n the
blocks X_p (x) Y_{n-p} are listed by *decreasing* p, row-major (left factor
index is the slower one) inside each block, and the differential carries
the sign (-1)^p on the right factor.  Koszul complexes on one or two
elements use their classical small presentations; three or more elements
build the left-associated iterated tensor of the one-element complexes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GradingError, RingMismatchError, ShapeError, SymchainError
from .linalg import SparseMatrix
from .scalars import Ring, Scalar

__all__ = [
    "FreeComplex",
    "ChainMap",
    "Homotopy",
    "ValidationReport",
    "validate",
    "shift",
    "direct_sum",
    "tensor",
    "tensor_basis",
    "tensor_map",
    "koszul",
    "identity_map",
    "zero_map",
    "compose",
    "map_add",
    "is_chain_map",
    "is_homotopy",
    "unit_complex",
    "zero_complex",
]


class FreeComplex:
    """A finitely supported complex of finite-rank free modules."""

    __slots__ = ("ring", "_ranks", "_diffs", "_gdegs")

    def __init__(self, ring: Ring, ranks, diffs=None, gdegs=None):
        self.ring = ring
        self._ranks = {int(n): int(r) for n, r in dict(ranks).items() if int(r) > 0}
        for n, r in self._ranks.items():
            if r < 0:
                raise ShapeError(f"negative rank at degree {n}")
        if ring.kind == "Poly":
            if gdegs is None:
                raise GradingError(f"complexes over {ring} need generator degrees")
            self._gdegs = {}
            for n in self._ranks:
                if n not in gdegs or len(gdegs[n]) != self._ranks[n]:
                    raise GradingError(f"generator degrees missing at degree {n}")
                self._gdegs[n] = tuple(int(d) for d in gdegs[n])
        else:
            if gdegs:
                raise GradingError(f"generator degrees are only for graded rings, not {ring}")
            self._gdegs = None
        self._diffs = {}
        for n, M in (diffs or {}).items():
            n = int(n)
            if self.rank(n) == 0 or self.rank(n - 1) == 0:
                if M is not None and not M.is_zero():
                    raise ShapeError(f"differential at degree {n} maps to/from a zero module")
                continue
            if M.ring != ring:
                raise RingMismatchError("differential over the wrong ring")
            if (M.rows, M.cols) != (self.rank(n - 1), self.rank(n)):
                raise ShapeError(
                    f"differential at degree {n} is {M.rows}x{M.cols}, expected "
                    f"{self.rank(n - 1)}x{self.rank(n)}"
                )
            if not M.is_zero():
                self._diffs[n] = M

    # -- shape ---------------------------------------------------------------

    def rank(self, n: int) -> int:
        return self._ranks.get(n, 0)

    @property
    def ranks(self) -> dict:
        return dict(self._ranks)

    def degrees(self):
        """Degrees with nonzero rank, ascending."""
        return sorted(self._ranks)

    @property
    def support(self):
        """(lo, hi) over nonzero ranks, or None for the zero complex."""
        if not self._ranks:
            return None
        return min(self._ranks), max(self._ranks)

    def is_zero(self) -> bool:
        return not self._ranks

    def total_rank(self) -> int:
        return sum(self._ranks.values())

    def length(self):
        """hi - lo over nonzero degrees; None for the zero complex."""
        if not self._ranks:
            return None
        return max(self._ranks) - min(self._ranks)

    def diff(self, n: int) -> SparseMatrix:
        M = self._diffs.get(n)
        if M is None:
            return SparseMatrix.zero(self.ring, self.rank(n - 1), self.rank(n))
        return M

    def gdeg(self, n: int):
        """Internal degrees of the degree-n generators (graded rings only)."""
        if self._gdegs is None:
            raise GradingError(f"{self.ring} complexes carry no internal grading")
        return self._gdegs.get(n, ())

    @property
    def graded(self) -> bool:
        return self._gdegs is not None

    def max_gdeg(self):
        if not self.graded or not self._ranks:
            return 0
        return max((d for n in self._ranks for d in self.gdeg(n)), default=0)

    def min_gdeg(self):
        if not self.graded or not self._ranks:
            return 0
        return min((d for n in self._ranks for d in self.gdeg(n)), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, FreeComplex)
            and self.ring == other.ring
            and self._ranks == other._ranks
            and self._gdegs == other._gdegs
            and all(self.diff(n) == other.diff(n) for n in self._ranks)
        )

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self._ranks.items()))))

    def __repr__(self):
        if self.is_zero():
            return f"FreeComplex({self.ring}, 0)"
        lo, hi = self.support
        ranks = " ".join(f"{n}:{self.rank(n)}" for n in range(lo, hi + 1))
        return f"FreeComplex({self.ring}, ranks {ranks})"


@dataclass
class ValidationReport:
    ok: bool
    failures: list = field(default_factory=list)
    first_failure: tuple | None = None  # (degree, (row, col)) of the first bad entry

    def __bool__(self):
        return self.ok


def validate(X: FreeComplex) -> ValidationReport:
    """Check d(d(x)) = 0 and, for graded complexes, entry homogeneity."""
    failures = []
    first = None
    if X.is_zero():
        return ValidationReport(True)
    lo, hi = X.support
    if X.graded:
        for n in range(lo + 1, hi + 1):
            M = X.diff(n)
            src = X.gdeg(n)
            tgt = X.gdeg(n - 1)
            for (i, j), v in sorted(M.entries.items()):
                want = src[j] - tgt[i]
                if not v.is_homogeneous_of_degree(want):
                    failures.append(
                        f"degree {n}: entry ({i},{j}) = {v} is not homogeneous of degree {want}"
                    )
                    if first is None:
                        first = (n, (i, j))
    for n in range(lo + 2, hi + 1):
        P = X.diff(n - 1) @ X.diff(n)
        if not P.is_zero():
            (i, j) = sorted(P.entries)[0]
            failures.append(f"composite at degree {n} is nonzero at entry ({i},{j})")
            if first is None:
                first = (n, (i, j))
    return ValidationReport(not failures, failures, first)


def zero_complex(ring: Ring) -> FreeComplex:
    return FreeComplex(ring, {}, {}, {} if ring.kind == "Poly" else None)


def unit_complex(ring: Ring) -> FreeComplex:
    """The ring itself, concentrated in degree 0."""
    gdegs = {0: (0,)} if ring.kind == "Poly" else None
    return FreeComplex(ring, {0: 1}, {}, gdegs)


def shift(X: FreeComplex, i: int) -> FreeComplex:
    """Suspension: degree n of the result is degree n-i of X; odd i negates d."""
    ranks = {n + i: r for n, r in X.ranks.items()}
    diffs = {}
    for n in X.degrees():
        M = X.diff(n)
        if not M.is_zero():
            diffs[n + i] = M if i % 2 == 0 else -M
    gdegs = {n + i: X.gdeg(n) for n in X.degrees()} if X.graded else None
    return FreeComplex(X.ring, ranks, diffs, gdegs)


def suspend(ring: Ring, i: int) -> FreeComplex:
    return shift(unit_complex(ring), i)


def direct_sum(X: FreeComplex, Y: FreeComplex) -> FreeComplex:
    """Block-diagonal sum; X-generators precede Y-generators in each degree."""
    if X.ring != Y.ring:
        raise RingMismatchError(f"cannot sum complexes over {X.ring} and {Y.ring}")
    degrees = sorted(set(X.degrees()) | set(Y.degrees()))
    ranks = {n: X.rank(n) + Y.rank(n) for n in degrees}
    diffs = {}
    for n in degrees:
        rows = X.rank(n - 1) + Y.rank(n - 1)
        if rows == 0:
            continue
        entries = {}
        for (i, j), v in X.diff(n).entries.items():
            entries[(i, j)] = v
        for (i, j), v in Y.diff(n).entries.items():
            entries[(i + X.rank(n - 1), j + X.rank(n))] = v
        diffs[n] = SparseMatrix(X.ring, rows, ranks[n], entries)
    gdegs = None
    if X.ring.kind == "Poly":
        gdegs = {n: tuple(X.gdeg(n)) + tuple(Y.gdeg(n)) for n in degrees}
    return FreeComplex(X.ring, ranks, diffs, gdegs)


def tensor_basis(X: FreeComplex, Y: FreeComplex, n: int):
    """Ordered labels ((p, i), (q, j)) of the degree-n tensor generators.

    Blocks X_p (x) Y_{n-p} by decreasing p; row-major inside a block.
    """
    labels = []
    for p in sorted(X.degrees(), reverse=True):
        q = n - p
        if Y.rank(q) == 0:
            continue
        for i in range(X.rank(p)):
            for j in range(Y.rank(q)):
                labels.append(((p, i), (q, j)))
    return labels


def tensor(X: FreeComplex, Y: FreeComplex) -> FreeComplex:
    """Tensor product complex under the global basis convention."""
    if X.ring != Y.ring:
        raise RingMismatchError(f"cannot tensor complexes over {X.ring} and {Y.ring}")
    ring = X.ring
    if X.is_zero() or Y.is_zero():
        return zero_complex(ring)
    lo = X.support[0] + Y.support[0]
    hi = X.support[1] + Y.support[1]
    bases = {n: tensor_basis(X, Y, n) for n in range(lo, hi + 1)}
    ranks = {n: len(b) for n, b in bases.items()}
    index = {n: {lab: k for k, lab in enumerate(b)} for n, b in bases.items()}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        if ranks.get(n, 0) == 0 or ranks.get(n - 1, 0) == 0:
            continue
        entries = {}
        tgt = index[n - 1]
        for col, ((p, i), (q, j)) in enumerate(bases[n]):
            dX = X.diff(p)
            for (ii, jj), v in dX.entries.items():
                if jj == i:
                    row = tgt.get(((p - 1, ii), (q, j)))
                    if row is not None:
                        prev = entries.get((row, col))
                        entries[(row, col)] = v if prev is None else prev + v
            dY = Y.diff(q)
            sign = -1 if p % 2 else 1
            for (ii, jj), v in dY.entries.items():
                if jj == j:
                    row = tgt.get(((p, i), (q - 1, ii)))
                    if row is not None:
                        w = v if sign == 1 else -v
                        prev = entries.get((row, col))
                        entries[(row, col)] = w if prev is None else prev + w
        diffs[n] = SparseMatrix(ring, ranks[n - 1], ranks[n], entries)
    gdegs = None
    if ring.kind == "Poly":
        gdegs = {
            n: tuple(X.gdeg(p)[i] + Y.gdeg(q)[j] for ((p, i), (q, j)) in bases[n])
            for n in bases
            if bases[n]
        }
    return FreeComplex(ring, ranks, diffs, gdegs)


class ChainMap:
    """A degreewise map of complexes; absent degrees are zero maps."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source: FreeComplex, target: FreeComplex, maps):
        if source.ring != target.ring:
            raise RingMismatchError("chain map between complexes over different rings")
        self.source = source
        self.target = target
        self.maps = {}
        for n, M in dict(maps).items():
            n = int(n)
            if source.rank(n) == 0 or target.rank(n) == 0:
                if M is not None and not M.is_zero():
                    raise ShapeError(f"map at degree {n} to/from a zero module")
                continue
            if (M.rows, M.cols) != (target.rank(n), source.rank(n)):
                raise ShapeError(
                    f"map at degree {n} is {M.rows}x{M.cols}, expected "
                    f"{target.rank(n)}x{source.rank(n)}"
                )
            if M.ring != source.ring:
                raise RingMismatchError("chain map matrix over the wrong ring")
            if not M.is_zero():
                self.maps[n] = M

    def component(self, n: int) -> SparseMatrix:
        M = self.maps.get(n)
        if M is None:
            return SparseMatrix.zero(self.source.ring, self.target.rank(n), self.source.rank(n))
        return M

    def is_chain_map(self) -> bool:
        degrees = set(self.source.degrees()) | set(self.target.degrees())
        for n in sorted(degrees):
            lhs = self.component(n - 1) @ self.source.diff(n)
            rhs = self.target.diff(n) @ self.component(n)
            if lhs != rhs:
                return False
        return True

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if self.source != other.source or self.target != other.target:
            raise ShapeError("cannot add maps with different endpoints")
        degrees = set(self.maps) | set(other.maps)
        return ChainMap(
            self.source,
            self.target,
            {n: self.component(n) + other.component(n) for n in degrees},
        )

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: -M for n, M in self.maps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, ChainMap)
            and self.source == other.source
            and self.target == other.target
            and all(
                self.component(n) == other.component(n)
                for n in set(self.maps) | set(other.maps)
            )
        )

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


def identity_map(X: FreeComplex) -> ChainMap:
    return ChainMap(
        X, X, {n: SparseMatrix.identity(X.ring, X.rank(n)) for n in X.degrees()}
    )


def zero_map(X: FreeComplex, Y: FreeComplex) -> ChainMap:
    return ChainMap(X, Y, {})


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """g after f."""
    if f.target != g.source:
        raise ShapeError("composition endpoints do not match")
    return ChainMap(
        f.source,
        g.target,
        {n: g.component(n) @ f.component(n) for n in set(f.maps) & set(g.maps)},
    )


def map_add(f: ChainMap, g: ChainMap) -> ChainMap:
    return f + g


def is_chain_map(f: ChainMap) -> bool:
    return f.is_chain_map()


def tensor_map(f: ChainMap, g: ChainMap) -> ChainMap:
    """f (x) g on tensor complexes: blockwise Kronecker products, no signs."""
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    ring = src.ring
    maps = {}
    for n in src.degrees():
        if tgt.rank(n) == 0:
            continue
        src_index = {lab: k for k, lab in enumerate(tensor_basis(f.source, g.source, n))}
        tgt_index = {lab: k for k, lab in enumerate(tensor_basis(f.target, g.target, n))}
        entries = {}
        for ((p, i), (q, j)), col in src_index.items():
            fp = f.component(p)
            gq = g.component(q)
            for (fi, fj), fv in fp.entries.items():
                if fj != i:
                    continue
                for (gi, gj), gv in gq.entries.items():
                    if gj != j:
                        continue
                    row = tgt_index.get(((p, fi), (q, gi)))
                    if row is not None:
                        v = fv * gv
                        prev = entries.get((row, col))
                        entries[(row, col)] = v if prev is None else prev + v
        M = SparseMatrix(ring, tgt.rank(n), src.rank(n), entries)
        if not M.is_zero():
            maps[n] = M
    return ChainMap(src, tgt, maps)


class Homotopy:
    """Maps s_n : X_n -> Y_{n+1} witnessing f - g = ds + sd."""

    __slots__ = ("f", "g", "maps")

    def __init__(self, f: ChainMap, g: ChainMap, maps):
        if f.source != g.source or f.target != g.target:
            raise ShapeError("homotopy endpoints do not match")
        self.f = f
        self.g = g
        self.maps = {}
        for n, M in dict(maps).items():
            n = int(n)
            if f.source.rank(n) == 0 or f.target.rank(n + 1) == 0:
                if M is not None and not M.is_zero():
                    raise ShapeError(f"homotopy component at degree {n} to/from zero module")
                continue
            if (M.rows, M.cols) != (f.target.rank(n + 1), f.source.rank(n)):
                raise ShapeError(f"homotopy component at degree {n} has wrong shape")
            if not M.is_zero():
                self.maps[n] = M

    def component(self, n: int) -> SparseMatrix:
        M = self.maps.get(n)
        if M is None:
            return SparseMatrix.zero(
                self.f.source.ring, self.f.target.rank(n + 1), self.f.source.rank(n)
            )
        return M

    def check(self) -> bool:
        X, Y = self.f.source, self.f.target
        degrees = set(X.degrees()) | set(Y.degrees())
        for n in sorted(degrees):
            lhs = self.f.component(n) - self.g.component(n)
            rhs = Y.diff(n + 1) @ self.component(n) + self.component(n - 1) @ X.diff(n)
            if lhs != rhs:
                return False
        return True


def is_homotopy(s: Homotopy, f: ChainMap, g: ChainMap) -> bool:
    if s.f != f or s.g != g:
        s = Homotopy(f, g, s.maps)
    return s.check()


def koszul(elements) -> FreeComplex:
    """Koszul complex on a nonempty list of scalars of one ring.

    One element x: 0 -> R -(x)-> R -> 0.  Two elements x, y: ranks (1, 2, 1)
    with d2 = (y, -x)^T and d1 = (x, y).  More elements: iterated tensor of
    the one-element complexes, left-associated.  Over graded rings each
    element must be homogeneous and the generator degrees accumulate.
    """
    elements = list(elements)
    if not elements:
        raise SymchainError("koszul needs at least one element")
    ring = elements[0].ring if isinstance(elements[0], Scalar) else None
    if ring is None:
        raise SymchainError("koszul elements must be Scalars")
    elements = [ring.scalar(e) for e in elements]
    if ring.kind == "Poly":
        for e in elements:
            if e.homogeneous_degree() is None:
                raise GradingError(f"koszul element {e} is not homogeneous")

    def one_element(x: Scalar) -> FreeComplex:
        gdegs = None
        if ring.kind == "Poly":
            gdegs = {0: (0,), 1: (x.homogeneous_degree(),)}
        return FreeComplex(
            ring,
            {0: 1, 1: 1},
            {1: SparseMatrix.from_rows(ring, [[x]])},
            gdegs,
        )

    if len(elements) == 1:
        return one_element(elements[0])
    if len(elements) == 2:
        x, y = elements
        gdegs = None
        if ring.kind == "Poly":
            dx = x.homogeneous_degree()
            dy = y.homogeneous_degree()
            gdegs = {0: (0,), 1: (dx, dy), 2: (dx + dy,)}
        return FreeComplex(
            ring,
            {0: 1, 1: 2, 2: 1},
            {
                2: SparseMatrix.from_rows(ring, [[y], [-x]]),
                1: SparseMatrix.from_rows(ring, [[x, y]]),
            },
            gdegs,
        )
    out = one_element(elements[0])
    for x in elements[1:]:
        out = tensor(out, one_element(x))
    return out
