"""Braided vector spaces with coefficients c^{mn}_{ij}.

A braiding on V = k^N is stored by its coefficient tensor:

    c(v_i (x) v_j) = sum_{m,n} c^{mn}_{ij} v_m (x) v_n

All composite indices are lexicographic with the first tensor leg major, so
the operator matrix on V (x) V has column (i, j) carrying the coordinates of
c(v_i (x) v_j).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import BadLabelError, LabelAmbiguousError, NotHeckeError
from .linalg import F0, F1, Mat, Subspace, frac, kron, rref

Coeffs = tuple[tuple[tuple[tuple[Fraction, ...], ...], ...], ...]


@dataclass(frozen=True)
class Braiding:
    """Coefficient table of a braiding, plus the Hecke label once verified.

    ``coeffs[i][j][m][n]`` is c^{mn}_{ij} (input pair first).  ``q`` is None
    until ``verify_label`` has run.
    """

    n: int
    coeffs: Coeffs
    q: Fraction | None = None

    @staticmethod
    def from_function(n: int, fn) -> "Braiding":
        table = tuple(
            tuple(
                tuple(tuple(frac(fn(i, j, m, mm)) for mm in range(n)) for m in range(n))
                for j in range(n)
            )
            for i in range(n)
        )
        return Braiding(n, table)

    def coeff(self, i: int, j: int, m: int, mm: int) -> Fraction:
        return self.coeffs[i][j][m][mm]

    def with_label(self, q: Fraction) -> "Braiding":
        return replace(self, q=q)


def diagonal_braiding(qmatrix) -> Braiding:
    """c(v_i (x) v_j) = q_{ij} v_j (x) v_i."""
    n = len(qmatrix)
    q = [[frac(v) for v in row] for row in qmatrix]
    if any(len(row) != n for row in q):
        raise ValueError("q-matrix must be square")
    return Braiding.from_function(
        n, lambda i, j, m, mm: q[i][j] if (m, mm) == (j, i) else F0
    )


def operator_on_V2(b: Braiding) -> Mat:
    n = b.n
    ent = [F0] * (n * n * n * n)
    width = n * n
    for i in range(n):
        for j in range(n):
            col = i * n + j
            for m in range(n):
                for mm in range(n):
                    v = b.coeffs[i][j][m][mm]
                    if v:
                        ent[(m * n + mm) * width + col] = v
    return Mat(width, width, tuple(ent))


def validate_braid_equation(b: Braiding) -> bool:
    """(c x id)(id x c)(c x id) = (id x c)(c x id)(id x c) on V^{x3}."""
    c = operator_on_V2(b)
    eye = Mat.identity(b.n)
    left = kron(c, eye)
    right = kron(eye, c)
    return left @ (right @ left) == right @ (left @ right)


def verify_label(b: Braiding, q_hint: Fraction | None = None) -> Fraction:
    """Detect or confirm the Hecke label q with (c - q)(c + 1) = 0.

    Raises LabelAmbiguous for c = -id (any q fits), NotHecke when no single q
    works, BadLabel when q is 0 or -1 (the nontrivial rational root of unity).
    """
    c = operator_on_V2(b)
    eye = Mat.identity(c.rows)
    shifted = c + eye
    if shifted.is_zero():
        raise LabelAmbiguousError("c = -id leaves the label undetermined")
    lhs = (c @ c) + c  # must equal q * (c + id)
    q = q_hint
    if q is None:
        for a, s in zip(lhs.entries, shifted.entries):
            if s:
                q = a / s
                break
    assert q is not None
    q = frac(q)
    if lhs != shifted.scale(q):
        raise NotHeckeError("(c - q)(c + 1) = 0 has no admissible q")
    if q == 0 or q == -1:
        raise BadLabelError(f"label q = {q} is not allowed over the rationals")
    return q


def hecke_split(b: Braiding) -> tuple[Subspace, Subspace]:
    """(ker(c + 1), ker(c - q)); checks they are complementary in V (x) V."""
    if b.q is None:
        raise ValueError("label must be verified before splitting")
    c = operator_on_V2(b)
    eye = Mat.identity(c.rows)
    _, _, ker_minus1 = rref(c + eye)
    _, _, ker_q = rref(c - eye.scale(b.q))
    if ker_minus1.dim + ker_q.dim != c.rows:
        raise NotHeckeError("eigenspaces do not fill V (x) V")
    overlap = [r for r in ker_q.sparse_rows() if ker_minus1.contains(r)]
    if overlap:
        raise NotHeckeError("eigenspaces overlap")
    return ker_minus1, ker_q


def image_of_c_minus_q(b: Braiding) -> Subspace:
    if b.q is None:
        raise ValueError("label must be verified first")
    c = operator_on_V2(b)
    shifted = c - Mat.identity(c.rows).scale(b.q)
    # column space = row space of the transpose
    return Subspace.from_rows(
        c.rows,
        ({i: shifted.get(i, j) for i in range(c.rows) if shifted.get(i, j)} for j in range(c.cols)),
    )


def rigidity_matrix(b: Braiding) -> Mat:
    """Matrix of the dual-adjunction map V* (x) V -> V (x) V*.

    Entry at output pair (n, k), input pair (i, j) is c^{in}_{jk}.
    """
    n = b.n
    width = n * n
    ent = [F0] * (width * width)
    for i in range(n):
        for j in range(n):
            col = i * n + j
            for nn in range(n):
                for k in range(n):
                    v = b.coeffs[j][k][i][nn]
                    if v:
                        ent[(nn * n + k) * width + col] = v
    return Mat(width, width, tuple(ent))


def rigidity_matrix_categorical(b: Braiding) -> Mat:
    """Same map assembled literally from evaluation/coevaluation tensors."""
    n = b.n
    ev = Mat(1, n * n, tuple(F1 if a == bb else F0 for a in range(n) for bb in range(n)))
    db = ev.transpose()
    stage1 = kron(Mat.identity(n * n), db)
    stage2 = kron(kron(Mat.identity(n), operator_on_V2(b)), Mat.identity(n))
    stage3 = kron(ev, Mat.identity(n * n))
    return stage3 @ (stage2 @ stage1)


def rigidity_check(b: Braiding) -> bool:
    direct = rigidity_matrix(b)
    assert direct == rigidity_matrix_categorical(b)
    rank, _, _ = rref(direct)
    return rank == direct.rows


def dual_braiding_operator(b: Braiding) -> Mat:
    """Operator of the induced braiding -q^{-1} c^t on V* (x) V*.

    With (f (x) g)(x (x) y) = g(x) f(y), the transpose acts by
    c^t(v_i^* (x) v_j^*) = sum c^{ji}_{mn} v_n^* (x) v_m^*; the quadratic dual
    relations are exactly the -1 eigenspace of this rescaled operator.
    """
    if b.q is None:
        raise ValueError("label must be verified first")
    n = b.n
    width = n * n
    ent = [F0] * (width * width)
    factor = -F1 / b.q
    for i in range(n):
        for j in range(n):
            col = i * n + j
            for a in range(n):
                for bb in range(n):
                    v = b.coeffs[bb][a][j][i]
                    if v:
                        ent[(a * n + bb) * width + col] = factor * v
    return Mat(width, width, tuple(ent))


def relabel(b: Braiding, perm) -> Braiding:
    """Conjugate the braiding by a basis permutation (both tensor legs)."""
    return Braiding(
        b.n,
        tuple(
            tuple(
                tuple(
                    tuple(
                        b.coeffs[perm[i]][perm[j]][perm[m]][perm[mm]] for mm in range(b.n)
                    )
                    for m in range(b.n)
                )
                for j in range(b.n)
            )
            for i in range(b.n)
        ),
        b.q,
    )
