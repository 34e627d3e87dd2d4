"""Quadratic algebra R = T(V)/(ker(c+1)): graded data and homological checks.

The graded components are handled through normal forms rather than dense
quotients: in each degree the ideal component J_n is row-reduced and R_n is
spanned by the non-pivot monomials, so multiplication is concatenation
followed by reduction.  J_n and the Koszul subspaces K_n are built
incrementally,

    J_n = J_{n-1} (x) V  +  V^{(x)(n-2)} (x) I,
    K_n = (V (x) K_{n-1})  cap  (K_{n-1} (x) V),

which keeps the exact elimination tractable up to the degree cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .braiding import Braiding, dual_braiding_operator, hecke_split, image_of_c_minus_q
from .errors import NotASRegularError, NotExactError
from .linalg import (
    F0,
    F1,
    Mat,
    SparseRow,
    Subspace,
    annihilator,
    intersect,
    rref,
    sparse_rref,
)

Word = tuple[int, ...]

PROFILE_DIM_BUDGET = 30000


def default_cap(n: int) -> int:
    """Largest degree with N^degree within the dimension budget, at least 4."""
    if n <= 1:
        return 4
    cap = 1
    while n ** (cap + 1) <= PROFILE_DIM_BUDGET:
        cap += 1
    return max(cap, 4)


def reversal_permutation(n: int, legs: int) -> list[int]:
    """Composite-index permutation reversing tensor legs."""
    perm = []
    for x in range(n**legs):
        digits = []
        y = x
        for _ in range(legs):
            y, r = divmod(y, n)
            digits.append(r)
        # digits are last leg first; reusing them most-significant-first
        # reverses the legs
        out = 0
        for d in digits:
            out = out * n + d
        perm.append(out)
    return perm


# ---------------------------------------------------------------------------
# monomial tower


class MonomialTower:
    """Degreewise monomial bases and multiplication for T(W)/(relations).

    ``bases[k]`` lists the normal-form words of degree k in lexicographic
    order (exactly the non-pivot monomials of the RREF of the degree-k ideal
    component).  ``mult[k]`` maps (basis index in degree k-1, letter) to the
    normal form of the concatenation, as a sparse vector over ``bases[k]``.
    """

    def __init__(self, n_letters: int, relations: Subspace):
        if relations.ambient_dim != n_letters * n_letters:
            raise ValueError("relations must live in degree two")
        self.n = n_letters
        self.relations = relations
        self.bases: list[list[Word]] = [[()], [(i,) for i in range(n_letters)]]
        self.index: list[dict[Word, int]] = [
            {(): 0},
            {(i,): i for i in range(n_letters)},
        ]
        self.mult: list[dict[tuple[int, int], SparseRow] | None] = [
            None,
            {(0, j): {j: F1} for j in range(n_letters)},
        ]
        self._word_cache: dict[Word, SparseRow] = {}

    def extend_to(self, degree: int) -> None:
        while len(self.bases) <= degree:
            self._extend_once()

    def _extend_once(self) -> None:
        n = self.n
        k = len(self.bases)
        prev = self.bases[k - 1]
        prev2 = self.bases[k - 2]
        rel_rows = self.relations.sparse_rows()
        rows: list[SparseRow] = []
        mult_prev = self.mult[k - 1]
        assert mult_prev is not None
        for x_idx in range(len(prev2)):
            for rel in rel_rows:
                row: SparseRow = {}
                for pair, coeff in rel.items():
                    u, v = divmod(pair, n)
                    for b_idx, c2 in mult_prev[(x_idx, u)].items():
                        key = b_idx * n + v
                        nv = row.get(key, F0) + coeff * c2
                        if nv:
                            row[key] = nv
                        elif key in row:
                            del row[key]
                if row:
                    rows.append(row)
        ech = sparse_rref(rows)
        new_basis: list[Word] = []
        new_pos: dict[int, int] = {}
        for b_idx, b in enumerate(prev):
            for j in range(n):
                ci = b_idx * n + j
                if ci not in ech:
                    new_pos[ci] = len(new_basis)
                    new_basis.append(b + (j,))
        mult_k: dict[tuple[int, int], SparseRow] = {}
        for b_idx in range(len(prev)):
            for j in range(n):
                ci = b_idx * n + j
                if ci in new_pos:
                    mult_k[(b_idx, j)] = {new_pos[ci]: F1}
                else:
                    mult_k[(b_idx, j)] = {
                        new_pos[cj]: -coeff for cj, coeff in ech[ci].items() if cj != ci
                    }
        self.bases.append(new_basis)
        self.index.append({w: i for i, w in enumerate(new_basis)})
        self.mult.append(mult_k)

    def dim(self, degree: int) -> int:
        self.extend_to(degree)
        return len(self.bases[degree])

    def right_mult(self, degree: int, vec: SparseRow, letter: int) -> SparseRow:
        """Normal form of (element of R_degree) * v_letter."""
        self.extend_to(degree + 1)
        table = self.mult[degree + 1]
        assert table is not None
        out: SparseRow = {}
        for idx, c in vec.items():
            for t_idx, c2 in table[(idx, letter)].items():
                nv = out.get(t_idx, F0) + c * c2
                if nv:
                    out[t_idx] = nv
                elif t_idx in out:
                    del out[t_idx]
        return out

    def reduce_word(self, word: Word) -> SparseRow:
        cached = self._word_cache.get(word)
        if cached is not None:
            return dict(cached)
        vec: SparseRow = {0: F1}
        for pos, letter in enumerate(word):
            vec = self.right_mult(pos, vec, letter)
        self._word_cache[word] = dict(vec)
        return vec

    def mult_elements(self, deg_a: int, vec_a: SparseRow, deg_b: int, vec_b: SparseRow) -> SparseRow:
        """Product of normal forms, landing in degree deg_a + deg_b."""
        out: SparseRow = {}
        for ib, cb in vec_b.items():
            word_b = self.bases[deg_b][ib]
            cur = dict(vec_a)
            deg = deg_a
            for letter in word_b:
                cur = self.right_mult(deg, cur, letter)
                deg += 1
            for k, v in cur.items():
                nv = out.get(k, F0) + cb * v
                if nv:
                    out[k] = nv
                elif k in out:
                    del out[k]
        return out


# ---------------------------------------------------------------------------
# quadratic data and graded profile


@dataclass(frozen=True)
class QuadraticData:
    n: int
    q: Fraction
    I: Subspace
    I_perp: Subspace
    cap: int


def build_quadratic(b: Braiding, cap: int | None = None) -> QuadraticData:
    """Relations I = ker(c+1) and dual relations I_perp, with sanity checks.

    Asserts im(c - q) = ker(c + 1) (the Hecke identity) and that I_perp is
    the (-1)-eigenspace of the induced dual braiding -q^{-1} c^t.
    """
    if b.q is None:
        raise ValueError("label must be verified before building quadratic data")
    ker_plus, _ = hecke_split(b)
    assert image_of_c_minus_q(b) == ker_plus
    i_perp = annihilator(ker_plus, reversal_permutation(b.n, 2))
    dual_c = dual_braiding_operator(b)
    _, _, dual_ker = rref(dual_c + Mat.identity(dual_c.rows))
    assert dual_ker == i_perp
    if cap is None:
        cap = default_cap(b.n)
    if cap < 2:
        raise ValueError("cap must be at least 2")
    return QuadraticData(b.n, b.q, ker_plus, i_perp, cap)


@dataclass
class GradedProfile:
    n: int
    q: Fraction
    cap: int
    dims_R: list[int]
    dims_dual: list[int]
    K: list[Subspace]
    J: list[Subspace]
    gldim: int | None  # None means "exceeds cap"
    tower: MonomialTower = field(repr=False)

    @property
    def cap_exceeded(self) -> bool:
        return self.gldim is None

    def gldim_label(self):
        return "exceeds cap" if self.gldim is None else self.gldim


def graded_profile(qd: QuadraticData) -> GradedProfile:
    n, cap = qd.n, qd.cap
    tower = MonomialTower(n, qd.I)
    tower.extend_to(cap)
    dims_R = [len(tower.bases[k]) for k in range(cap + 1)]

    J: list[Subspace] = [Subspace.zero(1), Subspace.zero(n), qd.I]
    for k in range(3, cap + 1):
        rows: list[SparseRow] = []
        for r in J[k - 1].sparse_rows():
            for j in range(n):
                rows.append({key * n + j: v for key, v in r.items()})
        block = n * n
        for prefix in range(n ** (k - 2)):
            base = prefix * block
            for r in qd.I.sparse_rows():
                rows.append({base + key: v for key, v in r.items()})
        J.append(Subspace.from_rows(n**k, rows))
    J = J[: cap + 1]
    for k in range(cap + 1):
        assert dims_R[k] == n**k - J[k].dim

    K: list[Subspace] = [Subspace.full(1), Subspace.full(n), qd.I]
    for k in range(3, cap + 1):
        prev = K[k - 1]
        if prev.dim == 0:
            K.append(Subspace.zero(n**k))
            continue
        width = n ** (k - 1)
        left = Subspace.from_rows(
            n**k,
            (
                {i * width + key: v for key, v in r.items()}
                for i in range(n)
                for r in prev.sparse_rows()
            ),
        )
        right = Subspace.from_rows(
            n**k,
            ({key * n + j: v for key, v in r.items()} for r in prev.sparse_rows() for j in range(n)),
        )
        K.append(intersect([left, right]))
    K = K[: cap + 1]
    dims_dual = [s.dim for s in K]

    gldim: int | None = None
    for z in range(1, cap + 1):
        if dims_dual[z] == 0:
            gldim = z - 1
            assert all(d == 0 for d in dims_dual[z:])
            break
    return GradedProfile(n, qd.q, cap, dims_R, dims_dual, K, J, gldim, tower)


def hilbert_identity(gp: GradedProfile) -> bool:
    """h_{R^!}(-t) * h_R(t) = 1 up to the explored degree."""
    for s in range(gp.cap + 1):
        total = sum(
            (-1) ** k * gp.dims_dual[k] * gp.dims_R[s - k] for k in range(s + 1)
        )
        if total != (1 if s == 0 else 0):
            return False
    return True


# ---------------------------------------------------------------------------
# Koszul complex machinery


def _splitting_data(gp: GradedProfile, m: int) -> list[list[tuple[int, list[Fraction]]]]:
    """For each basis vector w of K_m, the pairs (i, coords) with
    w = sum_i v_i (x) w_i and coords the coordinates of w_i in K_{m-1}."""
    n = gp.n
    width = n ** (m - 1)
    prev = gp.K[m - 1]
    out = []
    for row in gp.K[m].sparse_rows():
        chunks: dict[int, SparseRow] = {}
        for key, v in row.items():
            i, rest = divmod(key, width)
            chunks.setdefault(i, {})[rest] = v
        out.append([(i, prev.coords_of(chunk)) for i, chunk in sorted(chunks.items())])
    return out


def _koszul_differential(gp: GradedProfile, t: int, m: int, split) -> list[SparseRow]:
    """Rows (indexed by R_{t-m} (x) K_m basis) of d_m into R_{t-m+1} (x) K_{m-1}."""
    dim_r = gp.dims_R[t - m]
    dim_k = gp.dims_dual[m]
    dim_k_prev = gp.dims_dual[m - 1]
    mult = gp.tower.mult[t - m + 1]
    assert mult is not None
    rows = []
    for a_idx in range(dim_r):
        for w_idx in range(dim_k):
            row: SparseRow = {}
            for i, coords in split[w_idx]:
                image_a = mult[(a_idx, i)]
                for ap_idx, ca in image_a.items():
                    for y_idx, cy in enumerate(coords):
                        if cy:
                            key = ap_idx * dim_k_prev + y_idx
                            nv = row.get(key, F0) + ca * cy
                            if nv:
                                row[key] = nv
                            elif key in row:
                                del row[key]
            rows.append(row)
    assert len(rows) == dim_r * dim_k
    return rows


def _compose_rows(first: list[SparseRow], then: list[SparseRow]) -> list[SparseRow]:
    out = []
    for row in first:
        acc: SparseRow = {}
        for mid, c in row.items():
            for k, v in then[mid].items():
                nv = acc.get(k, F0) + c * v
                if nv:
                    acc[k] = nv
                elif k in acc:
                    del acc[k]
        out.append(acc)
    return out


def _rank(rows: list[SparseRow]) -> int:
    return len(sparse_rref(rows))


@dataclass(frozen=True)
class KoszulResult:
    max_internal_degree: int
    homology: dict[int, list[int]]  # internal degree -> dims by position

    @property
    def exact(self) -> bool:
        return all(
            dim == (1 if (t == 0 and m == 0) else 0)
            for t, dims in self.homology.items()
            for m, dim in enumerate(dims)
        )


def koszul_check(gp: GradedProfile) -> KoszulResult:
    """Exactness of the Koszul complex in every internal degree up to cap.

    The complex in internal degree t has component R_{t-m} (x) K_m at
    homological position m; it must resolve k (homology only at t = 0,
    position 0).  Raises NotExact at the first failure.
    """
    if gp.gldim is None:
        raise ValueError("global dimension exceeds the cap; no finite complex")
    d = gp.gldim
    homology: dict[int, list[int]] = {}
    for t in range(gp.cap + 1):
        top = min(t, d)
        dims = [gp.dims_R[t - m] * gp.dims_dual[m] for m in range(top + 1)]
        if t > 0:
            splits = {m: _splitting_data(gp, m) for m in range(1, top + 1)}
            diffs = {m: _koszul_differential(gp, t, m, splits[m]) for m in range(1, top + 1)}
            for m in range(2, top + 1):
                zero = _compose_rows(diffs[m], diffs[m - 1])
                assert all(not r for r in zero), "d o d != 0"
            ranks = {m: _rank(diffs[m]) for m in range(1, top + 1)}
        else:
            ranks = {}
        ranks[top + 1] = 0
        hom = []
        for m in range(top + 1):
            cycles = dims[m] - ranks[m] if m >= 1 else dims[m]
            hom.append(cycles - ranks[m + 1])
        homology[t] = hom
        expected = [1 if (t == 0 and m == 0) else 0 for m in range(top + 1)]
        if hom != expected:
            bad = next(m for m in range(top + 1) if hom[m] != expected[m])
            raise NotExactError(t, bad)
    return KoszulResult(gp.cap, homology)


# ---------------------------------------------------------------------------
# AS-regularity via the dualized complex


@dataclass(frozen=True)
class ASRegularityResult:
    d: int
    window: tuple[int, int]  # internal degrees checked, inclusive
    cohomology: dict[int, list[int]]

    @property
    def ok(self) -> bool:
        return all(
            dim == (1 if (m == self.d and t == self.d) else 0)
            for t, dims in self.cohomology.items()
            for m, dim in enumerate(dims)
        )


def as_regularity_check(gp: GradedProfile) -> ASRegularityResult:
    """Cohomology of Hom(Koszul complex, R): k in position d, internal degree d.

    The dual complex has component K_m^* (x) R_{m-t} at position m in internal
    degree t, with differential (y* (x) a) -> (w -> sum_i y*(w_i) v_i a).
    Conclusive window: d - cap <= t <= d.  Raises NotASRegular on the first
    nonzero cohomology away from (d, d) or if the top cohomology is not a
    single line.
    """
    if gp.gldim is None:
        raise ValueError("global dimension exceeds the cap")
    d = gp.gldim
    lo, hi = d - gp.cap, d
    splits = {m: _splitting_data(gp, m) for m in range(1, d + 1)}
    cohomology: dict[int, list[int]] = {}
    for t in range(lo, hi + 1):
        dims = []
        for m in range(d + 1):
            j = m - t
            dims.append(gp.dims_dual[m] * gp.dims_R[j] if 0 <= j <= gp.cap else 0)
        diffs: dict[int, list[SparseRow]] = {}
        for m in range(1, d + 1):
            diffs[m] = _dual_differential(gp, t, m, splits[m])
        for m in range(2, d + 1):
            zero = _compose_rows(diffs[m - 1], diffs[m])
            assert all(not r for r in zero), "delta o delta != 0"
        ranks = {m: _rank(diffs[m]) for m in range(1, d + 1)}
        ranks[0] = 0
        ranks[d + 1] = 0
        coh = []
        for m in range(d + 1):
            coh.append(dims[m] - ranks[m + 1] - ranks[m])
        cohomology[t] = coh
        for m in range(d + 1):
            expected = 1 if (m == d and t == d) else 0
            if coh[m] != expected:
                raise NotASRegularError(m, t)
    return ASRegularityResult(d, (lo, hi), cohomology)


def _dual_differential(gp: GradedProfile, t: int, m: int, split) -> list[SparseRow]:
    """Rows (indexed by K_{m-1}^* (x) R_{m-1-t}) of delta into K_m^* (x) R_{m-t}."""
    j_dom = m - 1 - t
    j_cod = m - t
    dim_k_prev = gp.dims_dual[m - 1]
    dim_k = gp.dims_dual[m]
    if j_dom < 0:
        return []
    if j_cod > gp.cap:
        raise ValueError("internal degree outside the conclusive window")
    dim_r_dom = gp.dims_R[j_dom]
    dim_r_cod = gp.dims_R[j_cod]
    rows: list[SparseRow] = [{} for _ in range(dim_k_prev * dim_r_dom)]
    tower = gp.tower
    left_mult: dict[tuple[int, int], SparseRow] = {}
    for w_idx in range(dim_k):
        for i, coords in split[w_idx]:
            for y_idx, cy in enumerate(coords):
                if not cy:
                    continue
                for a_idx in range(dim_r_dom):
                    lm = left_mult.get((i, a_idx))
                    if lm is None:
                        word = (i,) + tower.bases[j_dom][a_idx]
                        lm = tower.reduce_word(word)
                        left_mult[(i, a_idx)] = lm
                    row = rows[y_idx * dim_r_dom + a_idx]
                    for ap_idx, c2 in lm.items():
                        key = w_idx * dim_r_cod + ap_idx
                        nv = row.get(key, F0) + cy * c2
                        if nv:
                            row[key] = nv
                        elif key in row:
                            del row[key]
    return rows
