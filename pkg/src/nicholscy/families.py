"""Bundled input families, emitted as plain input documents.

The ``example2`` table is the 16x16 involutive permutation braiding on a
4-dimensional space: c swaps the six listed pairs of basis tensors and fixes
the four diagonal ones.  ``diagonal`` expands a q-matrix into
c(v_i (x) v_j) = q_{ij} v_j (x) v_i; it insists on q_{ii} = 1 and
q_{ij} q_{ji} = 1, the parameter range for which the family is involutive
Hecke with label 1.  ``trivial1`` is the polynomial ring on one generator.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BadFamilyParamsError
from .linalg import frac

BUILTIN_NAMES = ("diagonal", "example2", "trivial1")

# 0-based (i, j) -> (m, n): c(v_i (x) v_j) = v_m (x) v_n
_EXAMPLE2_SWAPS = [
    ((0, 1), (2, 3)),
    ((0, 2), (1, 3)),
    ((0, 3), (3, 0)),
    ((1, 0), (3, 2)),
    ((1, 2), (2, 1)),
    ((2, 0), (3, 1)),
]


def example2_permutation() -> dict[tuple[int, int], tuple[int, int]]:
    perm = {(i, i): (i, i) for i in range(4)}
    for a, b in _EXAMPLE2_SWAPS:
        perm[a] = b
        perm[b] = a
    return perm


def _example2_table() -> list[list[str]]:
    perm = example2_permutation()
    table = [["0"] * 16 for _ in range(16)]
    for (i, j), (m, n) in perm.items():
        table[i * 4 + j][m * 4 + n] = "1"
    return table


def diagonal_table(qmatrix) -> list[list[str]]:
    n = len(qmatrix)
    q = [[frac(v) for v in row] for row in qmatrix]
    if any(len(row) != n for row in q):
        raise BadFamilyParamsError("q-matrix must be square")
    for i in range(n):
        # q_ii = -1 puts v_i^2 among the relations; any other value off 1
        # cannot sit in the {q, -1} spectrum once a mixed pair forces q = 1.
        if q[i][i] not in (1, -1):
            raise BadFamilyParamsError(f"q[{i}][{i}] must be 1 or -1")
        for j in range(n):
            if q[i][j] == 0:
                raise BadFamilyParamsError("q-matrix entries must be nonzero")
            if q[i][j] * q[j][i] != 1:
                raise BadFamilyParamsError(
                    f"q[{i}][{j}] * q[{j}][{i}] must be 1"
                )
    table = [["0"] * (n * n) for _ in range(n * n)]
    for i in range(n):
        for j in range(n):
            table[i * n + j][j * n + i] = str(q[i][j])
    return table


def builtin_document(name: str, params: dict | None = None) -> dict:
    """Input document for a named family (raises BadFamilyParams on misuse)."""
    params = dict(params or {})
    label_for_doc = params.pop("name", name)
    if name == "trivial1":
        doc = {"name": label_for_doc, "dimension": 1, "braiding": [["1"]]}
    elif name == "example2":
        doc = {"name": label_for_doc, "dimension": 4, "braiding": _example2_table()}
    elif name == "diagonal":
        qmatrix = params.pop("qmatrix", None)
        if qmatrix is None:
            raise BadFamilyParamsError("diagonal family needs a qmatrix")
        doc = {
            "name": label_for_doc,
            "dimension": len(qmatrix),
            "braiding": diagonal_table(qmatrix),
        }
    else:
        raise BadFamilyParamsError(f"unknown family {name!r}")
    label = params.pop("label", None)
    if label is not None:
        doc["label"] = str(frac(label))
    options = params.pop("options", None)
    if options:
        doc["options"] = dict(options)
    if params:
        raise BadFamilyParamsError(f"unexpected family parameters: {sorted(params)}")
    return doc
