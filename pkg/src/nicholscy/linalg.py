"""Exact rational dense/sparse linear algebra.

Scalars are ``fractions.Fraction`` throughout: always in lowest terms with a
positive denominator, so equal values have equal reprs and every result is
reproducible byte for byte.  ``Mat`` is a small row-major dense matrix used
for operators on tensor squares and cubes; the row-reduction engine works on
sparse rows (dict column -> value) so that subspaces of large coordinate
spaces stay cheap as long as their echelon bases are sparse.

Subspaces are kept in reduced row echelon form with pivots chosen as the
first nonzero column, ties broken by lowest row index.  RREF is a canonical
representative of a row space, so ``Subspace`` equality is plain structural
equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotInvariantError, NotScalarError

F0 = Fraction(0)
F1 = Fraction(1)

SparseRow = dict[int, Fraction]


def frac(value) -> Fraction:
    """Coerce ints/strings/Fractions to Fraction (canonical form is automatic)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


# ---------------------------------------------------------------------------
# dense matrices


@dataclass(frozen=True)
class Mat:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]  # row-major, length rows * cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Mat":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        ent = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            ent.extend(frac(x) for x in r)
        return Mat(nrows, ncols, tuple(ent))

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat(n, n, tuple(F1 if i == j else F0 for i in range(n) for j in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "Mat":
        return Mat(rows, cols, (F0,) * (rows * cols))

    def get(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Mat":
        return Mat(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        out = [F0] * (self.rows * other.cols)
        for i in range(self.rows):
            base = i * self.cols
            obase = i * other.cols
            for k in range(self.cols):
                a = self.entries[base + k]
                if not a:
                    continue
                rbase = k * other.cols
                for j in range(other.cols):
                    b = other.entries[rbase + j]
                    if b:
                        out[obase + j] += a * b
        return Mat(self.rows, other.cols, tuple(out))

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in sum")
        return Mat(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in difference")
        return Mat(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "Mat":
        c = frac(c)
        return Mat(self.rows, self.cols, tuple(c * a for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def apply(self, vec: SparseRow) -> SparseRow:
        """Matrix times sparse column vector."""
        out: SparseRow = {}
        for j, v in vec.items():
            for i in range(self.rows):
                a = self.entries[i * self.cols + j]
                if a:
                    nv = out.get(i, F0) + a * v
                    if nv:
                        out[i] = nv
                    elif i in out:
                        del out[i]
        return out


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product; composite indices are lexicographic, first factor major."""
    out = [F0] * (a.rows * b.rows * a.cols * b.cols)
    cols = a.cols * b.cols
    for ia in range(a.rows):
        for ja in range(a.cols):
            x = a.entries[ia * a.cols + ja]
            if not x:
                continue
            for ib in range(b.rows):
                rbase = (ia * b.rows + ib) * cols
                bbase = ib * b.cols
                for jb in range(b.cols):
                    y = b.entries[bbase + jb]
                    if y:
                        out[rbase + ja * b.cols + jb] = x * y
    return Mat(a.rows * b.rows, a.cols * b.cols, tuple(out))


# ---------------------------------------------------------------------------
# sparse row reduction


def _axpy(target: SparseRow, coeff: Fraction, source: SparseRow) -> None:
    # target += coeff * source, dropping exact zeros
    for k, v in source.items():
        nv = target.get(k, F0) + coeff * v
        if nv:
            target[k] = nv
        elif k in target:
            del target[k]


def sparse_rref(rows: Iterable[SparseRow]) -> dict[int, SparseRow]:
    """Fully reduced echelon rows of the given row space, keyed by pivot column.

    Each returned row has a 1 at its pivot and zeros at every other pivot.
    RREF is unique for the row space, so the result does not depend on the
    order rows are fed in.
    """
    echelon: dict[int, SparseRow] = {}
    for row in rows:
        work = {k: v for k, v in row.items() if v}
        while work:
            j = min(work)
            piv = echelon.get(j)
            if piv is None:
                inv = F1 / work[j]
                echelon[j] = {k: v * inv for k, v in work.items()}
                break
            _axpy(work, -work[j], piv)
    # back substitution, largest pivot first so reductions use final rows
    for p in sorted(echelon, reverse=True):
        row = echelon[p]
        for k in sorted(kk for kk in row if kk != p and kk in echelon):
            c = row.get(k)
            if c:
                _axpy(row, -c, echelon[k])
    return echelon


def kernel_rows(echelon: dict[int, SparseRow], ncols: int) -> list[SparseRow]:
    """Spanning vectors of {x : Rx = 0} from RREF constraint rows (not canonical)."""
    out = []
    pivots = sorted(echelon)
    pivset = set(pivots)
    for free in range(ncols):
        if free in pivset:
            continue
        vec: SparseRow = {free: F1}
        for p in pivots:
            c = echelon[p].get(free)
            if c:
                vec[p] = -c
        out.append(vec)
    return out


# ---------------------------------------------------------------------------
# subspaces


FrozenRow = tuple[tuple[int, Fraction], ...]


def _freeze(row: SparseRow) -> FrozenRow:
    return tuple(sorted(row.items()))


@dataclass(frozen=True)
class Subspace:
    """A linear subspace held as its canonical RREF basis."""

    ambient_dim: int
    rows: tuple[FrozenRow, ...]  # sorted by pivot (= first index of each row)

    @staticmethod
    def from_rows(ambient_dim: int, rows: Iterable[SparseRow | Sequence]) -> "Subspace":
        sparse = []
        for r in rows:
            if isinstance(r, dict):
                sparse.append(r)
            else:
                if len(r) != ambient_dim:
                    raise ValueError("row length does not match ambient dimension")
                sparse.append({i: frac(v) for i, v in enumerate(r) if v})
        for r in sparse:
            if r and max(r) >= ambient_dim:
                raise ValueError("index outside ambient space")
        ech = sparse_rref(sparse)
        frozen = tuple(_freeze(ech[p]) for p in sorted(ech))
        return Subspace(ambient_dim, frozen)

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, ())

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, tuple(((i, F1),) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(r[0][0] for r in self.rows)

    def sparse_rows(self) -> list[SparseRow]:
        return [dict(r) for r in self.rows]

    def dense_rows(self) -> list[list[Fraction]]:
        out = []
        for r in self.rows:
            vec = [F0] * self.ambient_dim
            for i, v in r:
                vec[i] = v
            out.append(vec)
        return out

    def basis_matrix(self) -> Mat:
        return Mat(
            self.dim,
            self.ambient_dim,
            tuple(v for row in self.dense_rows() for v in row),
        )

    def reduce(self, vec: SparseRow) -> SparseRow:
        """Residue of vec after eliminating all pivot coordinates."""
        work = {k: v for k, v in vec.items() if v}
        for row in self.rows:
            p = row[0][0]
            c = work.get(p)
            if c:
                for k, v in row:
                    nv = work.get(k, F0) - c * v
                    if nv:
                        work[k] = nv
                    elif k in work:
                        del work[k]
        return work

    def contains(self, vec: SparseRow) -> bool:
        return not self.reduce(vec)

    def coords_of(self, vec: SparseRow) -> list[Fraction]:
        """Coordinates of vec in the RREF basis; raises if vec is outside."""
        coords = [vec.get(p, F0) for p in self.pivots]
        residual = self.reduce(vec)
        if residual:
            raise ValueError("vector is not in the subspace")
        return coords

    def __contains__(self, vec: SparseRow) -> bool:
        return self.contains(vec)


def rref(m: Mat) -> tuple[int, Mat, Subspace]:
    """Rank, reduced row echelon form (same shape, zero rows last), kernel."""
    ech = sparse_rref(
        {j: v for j, v in enumerate(m.row(i)) if v} for i in range(m.rows)
    )
    ordered = [ech[p] for p in sorted(ech)]
    ent: list[Fraction] = []
    for row in ordered:
        ent.extend(row.get(j, F0) for j in range(m.cols))
    ent.extend([F0] * ((m.rows - len(ordered)) * m.cols))
    echelon = Mat(m.rows, m.cols, tuple(ent))
    kernel = Subspace.from_rows(m.cols, kernel_rows(ech, m.cols))
    return len(ordered), echelon, kernel


def intersect(spaces: Sequence[Subspace], ambient_dim: int | None = None) -> Subspace:
    """Intersection of subspaces; an empty list yields the full ambient space.

    The ambient dimension cannot be inferred from an empty list, so it must be
    passed explicitly in that case.
    """
    if not spaces:
        if ambient_dim is None:
            raise ValueError("ambient_dim is required for an empty intersection")
        return Subspace.full(ambient_dim)
    amb = spaces[0].ambient_dim
    for s in spaces:
        if s.ambient_dim != amb:
            raise ValueError("mixed ambient dimensions")
    if ambient_dim is not None and ambient_dim != amb:
        raise ValueError("ambient_dim does not match the given spaces")
    current = spaces[0]
    for other in spaces[1:]:
        current = _intersect_pair(current, other)
    return current


def _intersect_pair(a: Subspace, b: Subspace) -> Subspace:
    # Solve alpha . A = beta . B by row-reducing the D x (dim a + dim b)
    # system whose rows are coordinates: cheap when both dims are small even
    # if the ambient space is large.
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    arows = a.sparse_rows()
    brows = b.sparse_rows()
    na, nb = len(arows), len(brows)
    constraint: dict[int, SparseRow] = {}
    for idx, row in enumerate(arows):
        for k, v in row.items():
            constraint.setdefault(k, {})[idx] = v
    for idx, row in enumerate(brows):
        for k, v in row.items():
            constraint.setdefault(k, {})[na + idx] = -v
    ech = sparse_rref(constraint[k] for k in sorted(constraint))
    members = []
    for sol in kernel_rows(ech, na + nb):
        vec: SparseRow = {}
        for i, c in sol.items():
            if i < na:
                _axpy(vec, c, arows[i])
        members.append(vec)
    return Subspace.from_rows(a.ambient_dim, members)


def annihilator(w: Subspace, pairing: Sequence[int] | None = None) -> Subspace:
    """Functionals vanishing on w under x -> F(pairing . x).

    ``pairing`` is a permutation of coordinate indices (identity if omitted);
    a functional F is in the result iff sum_x w[x] * F[pairing[x]] = 0 for
    every basis row w.
    """
    n = w.ambient_dim
    if pairing is not None:
        if sorted(pairing) != list(range(n)):
            raise ValueError("pairing must be a permutation of coordinates")
    constraints = []
    for row in w.sparse_rows():
        if pairing is None:
            constraints.append(row)
        else:
            constraints.append({pairing[k]: v for k, v in row.items()})
    ech = sparse_rref(constraints)
    return Subspace.from_rows(n, kernel_rows(ech, n))


def subspace_sum(spaces: Sequence[Subspace], ambient_dim: int | None = None) -> Subspace:
    if not spaces:
        if ambient_dim is None:
            raise ValueError("ambient_dim is required for an empty sum")
        return Subspace.zero(ambient_dim)
    amb = spaces[0].ambient_dim
    rows: list[SparseRow] = []
    for s in spaces:
        if s.ambient_dim != amb:
            raise ValueError("mixed ambient dimensions")
        rows.extend(s.sparse_rows())
    return Subspace.from_rows(amb, rows)


def acts_as_scalar(m: Mat, w: Subspace) -> Fraction:
    """The scalar by which m acts on w; NotInvariant/NotScalar on failure."""
    if w.dim == 0:
        raise ValueError("subspace must have dimension at least 1")
    if m.rows != m.cols or m.cols != w.ambient_dim:
        raise ValueError("operator shape does not match ambient space")
    scalar: Fraction | None = None
    for row in w.sparse_rows():
        image = m.apply(row)
        if not w.contains(image):
            raise NotInvariantError("image leaves the subspace")
        pivot = min(row)
        lam = image.get(pivot, F0) / row[pivot]
        diff = dict(image)
        _axpy(diff, -lam, row)
        if diff:
            raise NotScalarError("restriction is not a scalar")
        if scalar is None:
            scalar = lam
        elif scalar != lam:
            raise NotScalarError("different eigenvalues on the subspace")
    assert scalar is not None
    return scalar


def scalar_on_line(image: SparseRow, line: SparseRow) -> Fraction:
    """Scalar lambda with image = lambda * line; NotInvariant if none exists."""
    if not line:
        raise ValueError("line must be nonzero")
    pivot = min(line)
    lam = image.get(pivot, F0) / line[pivot]
    diff = dict(image)
    _axpy(diff, -lam, line)
    if diff:
        raise NotInvariantError("image is not on the line")
    return lam
