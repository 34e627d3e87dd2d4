"""Brute-force Frobenius structure of the quadratic dual R^!.

This is the independent cross-check path: it builds multiplication tables
for R^! = T(V*)/(I_perp) from normal forms alone, reads off the Frobenius
form B(x, y) = (coefficient of the top basis element in x*y), and solves for
the Nakayama automorphism degree by degree from B(x, y) = B(y, eta(x)).
Nothing here reuses the closed-form homological formulas, so agreement with
them is meaningful evidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .braiding import Braiding
from .errors import (
    DegenerateFormError,
    NotFrobeniusShapeError,
    NotMultiplicativeError,
)
from .frt import HomologicalData
from .linalg import F0, F1, Mat, SparseRow, Subspace, sparse_rref
from .nichols import MonomialTower, Word


@dataclass
class DualAlgebraTables:
    """Monomial bases and products of R^! up to (and a bit past) degree d."""

    n: int
    d: int
    tower: MonomialTower
    lambda_word: Word

    def dim(self, degree: int) -> int:
        return self.tower.dim(degree)

    def basis(self, degree: int) -> list[Word]:
        self.tower.extend_to(degree)
        return self.tower.bases[degree]

    def product(self, deg_a: int, vec_a: SparseRow, deg_b: int, vec_b: SparseRow) -> SparseRow:
        self.tower.extend_to(deg_a + deg_b)
        return self.tower.mult_elements(deg_a, vec_a, deg_b, vec_b)

    def basis_product(self, deg_a: int, ia: int, deg_b: int, ib: int) -> SparseRow:
        return self.product(deg_a, {ia: F1}, deg_b, {ib: F1})


def build_dual_tables(i_perp: Subspace, n: int, d: int) -> DualAlgebraTables:
    """Normal forms of the quadratic dual; requires dim R^!_d = 1."""
    tower = MonomialTower(n, i_perp)
    tower.extend_to(d)
    if len(tower.bases[d]) != 1:
        raise NotFrobeniusShapeError(
            f"dim of the top dual component is {len(tower.bases[d])}, expected 1"
        )
    return DualAlgebraTables(n, d, tower, tower.bases[d][0])


@dataclass(frozen=True)
class FrobeniusForm:
    d: int
    blocks: tuple[Mat, ...]  # blocks[k][ix][iy] = B(x deg k, y deg d-k)

    def value(self, k: int, ix: int, iy: int) -> Fraction:
        return self.blocks[k].get(ix, iy)


def frobenius_form(tables: DualAlgebraTables) -> FrobeniusForm:
    """Gram blocks of B(x, y) = lambda-coefficient of x*y; must be nondegenerate.

    Raises DegenerateForm(k) when the degree (k, d-k) block is not square
    invertible.
    """
    d = tables.d
    blocks = []
    for k in range(d + 1):
        dim_k = tables.dim(k)
        dim_ck = tables.dim(d - k)
        rows = []
        for ix in range(dim_k):
            row = []
            for iy in range(dim_ck):
                prod = tables.basis_product(k, ix, d - k, iy)
                row.append(prod.get(0, F0))
            rows.append(row)
        block = Mat(dim_k, dim_ck, tuple(v for r in rows for v in r))
        if dim_k != dim_ck:
            raise DegenerateFormError(k)
        if _dense_rank(block) != dim_k:
            raise DegenerateFormError(k)
        blocks.append(block)
    return FrobeniusForm(d, tuple(blocks))


def _dense_rank(m: Mat) -> int:
    return len(
        sparse_rref(
            {j: v for j, v in enumerate(m.row(i)) if v} for i in range(m.rows)
        )
    )


def _solve_square(system: Mat, rhs_cols: Mat) -> Mat:
    """X with system @ X = rhs_cols, for invertible system."""
    n = system.rows
    width = rhs_cols.cols
    aug_rows = []
    for i in range(n):
        row = {j: v for j, v in enumerate(system.row(i)) if v}
        for j in range(width):
            v = rhs_cols.get(i, j)
            if v:
                row[n + j] = v
        aug_rows.append(row)
    ech = sparse_rref(aug_rows)
    if sorted(ech) != list(range(n)):
        raise ValueError("system is singular")
    ent = [F0] * (n * width)
    for p, row in ech.items():
        for j in range(width):
            ent[p * width + j] = row.get(n + j, F0)
    return Mat(n, width, tuple(ent))


@dataclass(frozen=True)
class NakayamaData:
    d: int
    matrices: tuple[Mat, ...]  # matrices[k][row][col]: eta(x_col) in basis of degree k

    @property
    def degree1(self) -> Mat:
        return self.matrices[1]


def nakayama_bruteforce(tables: DualAlgebraTables, form: FrobeniusForm) -> NakayamaData:
    """Solve B(x, y) = B(y, eta(x)) degreewise and verify eta is an algebra map.

    Raises NotMultiplicative if the solved graded map fails
    eta(x*y) = eta(x)*eta(y) on any pair of basis elements.
    """
    d = tables.d
    mats = []
    for k in range(d + 1):
        dim_k = tables.dim(k)
        if dim_k == 0:
            mats.append(Mat.zero(0, 0))
            continue
        # rows y in degree d-k: sum_c eta_coords[c] B(y, x_c) = B(x, y)
        system = form.blocks[d - k]
        rhs = form.blocks[k].transpose()
        mats.append(_solve_square(system, rhs))
    data = NakayamaData(d, tuple(mats))
    if mats[0] != Mat.identity(1):
        raise NotMultiplicativeError("eta does not fix the unit")
    for deg_a in range(d + 1):
        for deg_b in range(d + 1 - deg_a):
            deg_ab = deg_a + deg_b
            for ia in range(tables.dim(deg_a)):
                eta_a = _column(mats[deg_a], ia)
                for ib in range(tables.dim(deg_b)):
                    eta_b = _column(mats[deg_b], ib)
                    prod = tables.basis_product(deg_a, ia, deg_b, ib)
                    lhs = _apply(mats[deg_ab], prod)
                    rhs = tables.product(deg_a, eta_a, deg_b, eta_b)
                    if lhs != rhs:
                        raise NotMultiplicativeError(
                            f"eta fails on degrees ({deg_a}, {deg_b})"
                        )
    return data


def _column(m: Mat, j: int) -> SparseRow:
    return {i: m.get(i, j) for i in range(m.rows) if m.get(i, j)}


def _apply(m: Mat, vec: SparseRow) -> SparseRow:
    return m.apply(vec)


def nakayama_formula_deg1(b: Braiding, hd: HomologicalData) -> Mat:
    """Closed form E[l][i] = -q^{-1} Q sum_{j,k} D[i][k] c^{jk}_{jl}."""
    n = b.n
    assert b.q is not None
    factor = -F1 / b.q * hd.Q
    ent = []
    for l in range(n):
        row = []
        for i in range(n):
            total = F0
            for j in range(n):
                for k in range(n):
                    dik = hd.D.get(i, k)
                    if dik:
                        total += dik * b.coeffs[j][l][j][k]
            row.append(factor * total)
        ent.append(row)
    return Mat.from_rows(ent)


def modular_facts(tables: DualAlgebraTables) -> bool:
    """lambda*x = eps(x)*lambda = x*lambda for all basis elements x."""
    d = tables.d
    lam: SparseRow = {0: F1}
    for k in range(d + 1):
        for ix in range(tables.dim(k)):
            x: SparseRow = {ix: F1}
            left = tables.product(d, lam, k, x)
            right = tables.product(k, x, d, lam)
            expected: SparseRow = {0: F1} if k == 0 else {}
            if left != expected or right != expected:
                return False
    return True
