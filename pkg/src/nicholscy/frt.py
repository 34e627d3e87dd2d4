"""Action of the FRT bialgebra H(c) on tensor powers of V.

The generators T^n_i act on V by T^n_i . v_j = sum_m c^{mn}_{ij} v_m, i.e.
through the matrices A[n][i] with A[n][i][m][j] = c^{mn}_{ij}.  On higher
tensor powers the action follows the comultiplication
Delta(T^j_i) = sum_k T^k_i (x) T^j_k:

    M_m(T^j_i) = sum_k A[k][i] (x) M_{m-1}(T^j_k).

The homological matrix D collects the scalars by which the generators act on
the one-dimensional top Koszul subspace K_d; the quantum label is
Q = (-q^{-1})^d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .braiding import Braiding, operator_on_V2
from .errors import NotInvariantError
from .linalg import F0, F1, Mat, SparseRow, Subspace, kron, scalar_on_line

SparseVec = SparseRow


@dataclass(frozen=True)
class ActionFamily:
    n: int
    q: Fraction
    matrices: tuple[tuple[Mat, ...], ...]  # matrices[upper][lower]

    def mat(self, upper: int, lower: int) -> Mat:
        return self.matrices[upper][lower]


def action_matrices(b: Braiding) -> ActionFamily:
    if b.q is None:
        raise ValueError("label must be verified before building actions")
    n = b.n
    mats = tuple(
        tuple(
            Mat.from_rows(
                [[b.coeffs[lower][j][m][upper] for j in range(n)] for m in range(n)]
            )
            for lower in range(n)
        )
        for upper in range(n)
    )
    return ActionFamily(n, b.q, mats)


def diagonal_action(af: ActionFamily, i: int, j: int, m: int) -> Mat:
    """Dense matrix of T^j_i on V^{(x)m} (small m only; grows as N^m)."""
    if m < 1:
        raise ValueError("degree must be at least 1")
    if m == 1:
        return af.mat(j, i)
    size = af.n**m
    total = Mat.zero(size, size)
    for k in range(af.n):
        block = af.mat(k, i)
        if block.is_zero():
            continue
        total = total + kron(block, diagonal_action(af, k, j, m - 1))
    return total


def apply_generator(af: ActionFamily, upper: int, lower: int, m: int, vec: SparseVec) -> SparseVec:
    """M_m(T^upper_lower) applied to a sparse vector in V^{(x)m}.

    Recurses over the leading tensor leg, so cost tracks the number of
    nonzero prefixes of vec rather than the ambient dimension.
    """
    if m == 1:
        return af.mat(upper, lower).apply(vec)
    n = af.n
    width = n ** (m - 1)
    chunks: dict[int, SparseVec] = {}
    for key, v in vec.items():
        a, rest = divmod(key, width)
        chunks.setdefault(a, {})[rest] = v
    out: SparseVec = {}
    for a, sub in sorted(chunks.items()):
        for k in range(n):
            col = [af.mat(k, lower).get(mm, a) for mm in range(n)]
            if not any(col):
                continue
            child = apply_generator(af, upper, k, m - 1, sub)
            if not child:
                continue
            for mm in range(n):
                c = col[mm]
                if not c:
                    continue
                base = mm * width
                for rest, v in child.items():
                    key = base + rest
                    nv = out.get(key, F0) + c * v
                    if nv:
                        out[key] = nv
                    elif key in out:
                        del out[key]
    return out


def rtt_check(b: Braiding, af: ActionFamily) -> bool:
    """RTT relations hold on V:
    sum_{k,l} c^{kl}_{ij} A[m][k] A[n][l] = sum_{k,l} A[k][i] A[l][j] c^{mn}_{kl}."""
    n = b.n
    for i in range(n):
        for j in range(n):
            for m in range(n):
                for nn in range(n):
                    lhs = Mat.zero(n, n)
                    rhs = Mat.zero(n, n)
                    for k in range(n):
                        for l in range(n):
                            ckl = b.coeffs[i][j][k][l]
                            if ckl:
                                lhs = lhs + (af.mat(m, k) @ af.mat(nn, l)).scale(ckl)
                            cmn = b.coeffs[k][l][m][nn]
                            if cmn:
                                rhs = rhs + (af.mat(k, i) @ af.mat(l, j)).scale(cmn)
                    if lhs != rhs:
                        return False
    return True


def braiding_commutes_with_action(b: Braiding, af: ActionFamily) -> bool:
    """H-linearity of c: the operator on V (x) V commutes with every M_2(T^j_i)."""
    c = operator_on_V2(b)
    for i in range(b.n):
        for j in range(b.n):
            m2 = diagonal_action(af, i, j, 2)
            if c @ m2 != m2 @ c:
                return False
    return True


def stabilizes_subspace(af: ActionFamily, space: Subspace, m: int) -> bool:
    """Every generator maps the degree-m subspace into itself."""
    for upper in range(af.n):
        for lower in range(af.n):
            for row in space.sparse_rows():
                if not space.contains(apply_generator(af, upper, lower, m, row)):
                    return False
    return True


def multiplicativity_check(af: ActionFamily, a: int, bdeg: int) -> bool:
    """M_{a+b}(T^j_i) = sum_k M_a(T^k_i) (x) M_b(T^j_k) as dense matrices."""
    for i in range(af.n):
        for j in range(af.n):
            lhs = diagonal_action(af, i, j, a + bdeg)
            rhs = Mat.zero(af.n ** (a + bdeg), af.n ** (a + bdeg))
            for k in range(af.n):
                rhs = rhs + kron(diagonal_action(af, i, k, a), diagonal_action(af, k, j, bdeg))
            if lhs != rhs:
                return False
    return True


@dataclass(frozen=True)
class HomologicalData:
    d: int
    Q: Fraction
    D: Mat
    spanning_vector: tuple[tuple[int, Fraction], ...]  # chosen basis vector of K_d


def quantum_label(q: Fraction, d: int) -> Fraction:
    return (-F1 / q) ** d


def homological_matrix(af: ActionFamily, k_top: Subspace, d: int) -> HomologicalData:
    """Scalars D[i][j] of the generators T^i_j on the line K_d, plus Q.

    K_d must be one-dimensional; a generator moving K_d off itself raises
    NotInvariant.
    """
    if k_top.dim != 1:
        raise NotInvariantError(
            f"top Koszul space has dimension {k_top.dim}, expected a line"
        )
    w = k_top.sparse_rows()[0]
    entries = []
    for i in range(af.n):
        row = []
        for j in range(af.n):
            image = apply_generator(af, i, j, d, w)
            row.append(scalar_on_line(image, w))
        entries.append(row)
    return HomologicalData(
        d, quantum_label(af.q, d), Mat.from_rows(entries), tuple(sorted(w.items()))
    )
