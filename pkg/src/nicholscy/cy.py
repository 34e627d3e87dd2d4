"""Calabi-Yau verdict and the rigid dualizing complex descriptor.

The automorphism phi acts on generators by
phi(v_i) = -q^{-1} Q sum_{j,k} D[l][k] c^{jk}_{ji} v_l   (entry at [l][i]),
which is the transpose of the degree-1 Nakayama matrix.  The algebra is
Calabi-Yau exactly when phi = (-1)^{d+1} id, in which case the dualizing
complex is the untwisted R[d](-d); otherwise the composite twist
phi o eps^{d+1} (eps = degree parity sign) is reported alongside.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braiding import Braiding
from .frt import HomologicalData
from .linalg import F0, F1, Mat
from .oracle import nakayama_formula_deg1


def phi_automorphism(b: Braiding, hd: HomologicalData) -> Mat:
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
                    dlk = hd.D.get(l, k)
                    if dlk:
                        total += dlk * b.coeffs[j][i][j][k]
            row.append(factor * total)
        ent.append(row)
    phi = Mat.from_rows(ent)
    assert phi == nakayama_formula_deg1(b, hd).transpose()
    return phi


def cy_verdict(phi: Mat, d: int) -> bool:
    return phi == Mat.identity(phi.rows).scale((-F1) ** (d + 1))


def cy_condition_entrywise(b: Braiding, hd: HomologicalData) -> bool:
    """Scalar form of the condition, accumulated entry by entry."""
    n = b.n
    assert b.q is not None
    sign = (-F1) ** (hd.d + 1)
    for l in range(n):
        for i in range(n):
            total = F0
            for j in range(n):
                for k in range(n):
                    total += hd.D.get(l, k) * b.coeffs[j][i][j][k]
            total *= -F1 / b.q * hd.Q
            if total != (sign if l == i else F0):
                return False
    return True


@dataclass(frozen=True)
class DualizingDescriptor:
    shift: int  # homological shift [d]
    internal_shift: int  # internal degree shift (-d)
    twist: Mat  # phi o eps^{d+1} on generators
    twist_is_identity: bool
    text: str


@dataclass(frozen=True)
class CYResult:
    d: int
    phi: Mat
    is_cy: bool
    entrywise_agrees: bool
    descriptor: DualizingDescriptor


def dualizing_descriptor(phi: Mat, d: int) -> DualizingDescriptor:
    twist = phi.scale((-F1) ** (d + 1))
    identity = twist == Mat.identity(phi.rows)
    text = f"R[{d}](-{d})" if identity else f"_phi R[{d}](-{d})"
    return DualizingDescriptor(d, -d, twist, identity, text)


def cy_result(b: Braiding, hd: HomologicalData) -> CYResult:
    phi = phi_automorphism(b, hd)
    verdict = cy_verdict(phi, hd.d)
    entrywise = cy_condition_entrywise(b, hd)
    assert verdict == entrywise
    return CYResult(hd.d, phi, verdict, entrywise, dualizing_descriptor(phi, hd.d))
