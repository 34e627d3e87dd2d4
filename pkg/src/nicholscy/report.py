"""Input documents, the analysis pipeline, and report emission.

Input documents are JSON objects carrying the braiding coefficient table:

    {"name": ..., "dimension": N, "label": "1",
     "braiding": [[... N^2 x N^2 scalars ...]],
     "options": {"cap": 6, "convention": "standard"}}

Rows of the table are input pairs (i, j) and columns output pairs (m, n), so
entry [i*N+j][m*N+n] is c^{mn}_{ij} (the "standard" convention; "transpose"
reads rows as outputs instead).  The shorthand {"family": ..., ...params}
expands a bundled family.  Reports are deterministic: the same input bytes
produce the same output bytes.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import families
from .braiding import (
    Braiding,
    operator_on_V2,
    rigidity_check,
    validate_braid_equation,
    verify_label,
)
from .cy import cy_result
from .errors import (
    AnalysisError,
    BadScalarError,
    DimensionMismatchError,
    ParseError,
)
from .frt import (
    action_matrices,
    apply_generator,
    braiding_commutes_with_action,
    homological_matrix,
    rtt_check,
)
from .linalg import Mat, frac
from .nichols import (
    as_regularity_check,
    build_quadratic,
    graded_profile,
    hilbert_identity,
    koszul_check,
)
from .oracle import (
    build_dual_tables,
    frobenius_form,
    modular_facts,
    nakayama_bruteforce,
    nakayama_formula_deg1,
)

VERSION = "0.1.0"

_SCALAR_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_scalar(token: Any) -> Fraction:
    if isinstance(token, bool):
        raise BadScalarError(token)
    if isinstance(token, Fraction):
        return token
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, str) and _SCALAR_RE.match(token):
        try:
            return Fraction(token)
        except ZeroDivisionError:
            raise BadScalarError(token) from None
    raise BadScalarError(token)


@dataclass(frozen=True)
class InputSpec:
    name: str
    n: int
    label: Fraction | None
    table: tuple[tuple[Fraction, ...], ...]
    cap: int | None = None
    convention: str | None = None

    def document(self) -> dict:
        doc: dict[str, Any] = {
            "name": self.name,
            "dimension": self.n,
            "braiding": [[str(v) for v in row] for row in self.table],
        }
        if self.label is not None:
            doc["label"] = str(self.label)
        options = {}
        if self.cap is not None:
            options["cap"] = self.cap
        if self.convention is not None:
            options["convention"] = self.convention
        if options:
            doc["options"] = options
        return doc

    def checksum(self) -> str:
        blob = json.dumps(self.document(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    def braiding(self, convention: str | None = None) -> Braiding:
        n = self.n
        if convention is None:
            convention = self.convention or "standard"
        if convention == "standard":
            entry = lambda i, j, m, mm: self.table[i * n + j][m * n + mm]
        elif convention == "transpose":
            entry = lambda i, j, m, mm: self.table[m * n + mm][i * n + j]
        else:
            raise ValueError(f"unknown convention {convention!r}")
        return Braiding.from_function(n, entry)


def parse_input(source) -> InputSpec:
    """Parse an input document (dict, JSON text/bytes, or open file)."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode()
    if isinstance(source, str):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", where=f"line {e.lineno}") from None
    else:
        doc = source
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    doc = dict(doc)
    if "family" in doc:
        name = doc.pop("family")
        doc = families.builtin_document(name, doc)
    dimension = doc.pop("dimension", None)
    if not isinstance(dimension, int) or isinstance(dimension, bool) or dimension < 1:
        raise ParseError("dimension must be a positive integer")
    name = doc.pop("name", "input")
    if not isinstance(name, str):
        raise ParseError("name must be a string")
    raw_table = doc.pop("braiding", None)
    if raw_table is None:
        raise ParseError("missing braiding table")
    width = dimension * dimension
    if not isinstance(raw_table, list) or len(raw_table) != width:
        raise DimensionMismatchError(
            f"braiding table must have {width} rows for dimension {dimension}"
        )
    table = []
    for r, row in enumerate(raw_table):
        if not isinstance(row, list) or len(row) != width:
            raise DimensionMismatchError(
                f"braiding row {r} must have {width} entries"
            )
        table.append(tuple(parse_scalar(v) for v in row))
    label_token = doc.pop("label", None)
    label = parse_scalar(label_token) if label_token is not None else None
    options = doc.pop("options", None) or {}
    if not isinstance(options, dict):
        raise ParseError("options must be an object")
    options = dict(options)
    cap = options.pop("cap", None)
    if cap is not None and (not isinstance(cap, int) or isinstance(cap, bool) or cap < 2):
        raise ParseError("options.cap must be an integer >= 2")
    convention = options.pop("convention", None)
    if convention is not None and convention not in ("standard", "transpose"):
        raise ParseError("options.convention must be 'standard' or 'transpose'")
    if options:
        raise ParseError(f"unknown options: {sorted(options)}")
    if doc:
        raise ParseError(f"unknown fields: {sorted(doc)}")
    return InputSpec(name, dimension, label, tuple(table), cap, convention)


def builtin(name: str, params: dict | list | None = None) -> InputSpec:
    if isinstance(params, (list, tuple)):
        params = {"qmatrix": list(params)}
    return parse_input(families.builtin_document(name, params))


def validate_document(spec: InputSpec, convention: str | None = None) -> dict:
    """Run only the validation stages (braid equation, rigidity, label)."""
    effective = convention or spec.convention or "standard"
    out: dict[str, Any] = {
        "name": spec.name,
        "dimension": spec.n,
        "convention": effective,
        "braid_equation": None,
        "rigidity": None,
        "q": None,
        "valid": False,
        "failure": None,
    }
    try:
        b = spec.braiding(effective)
        out["braid_equation"] = validate_braid_equation(b)
        if not out["braid_equation"]:
            raise _StageFailure("BraidEquation", "braid equation fails")
        out["rigidity"] = rigidity_check(b)
        if not out["rigidity"]:
            raise _StageFailure("NotRigid", "coefficient table is not rigid")
        out["q"] = str(verify_label(b, spec.label))
        out["valid"] = True
    except AnalysisError as e:
        out["failure"] = {"code": e.code, "message": str(e)}
    return out


# ---------------------------------------------------------------------------
# the pipeline


def _mat_strings(m: Mat) -> list[list[str]]:
    return [[str(v) for v in m.row(i)] for i in range(m.rows)]


@dataclass
class AnalysisReport:
    input_document: dict
    name: str
    dimension: int
    convention: str
    cap: int
    checksum: str
    completed: bool = False
    failed_stage: str | None = None
    failure: dict | None = None
    validation: dict = field(default_factory=dict)
    q: str | None = None
    relations: list[list[str]] | None = None
    dims_R: list[int] | None = None
    dims_dual: list[int] | None = None
    gldim: int | str | None = None
    hilbert: bool | None = None
    koszul: dict | None = None
    as_regular: dict | None = None
    frt: dict | None = None
    Q: str | None = None
    D: list[list[str]] | None = None
    phi: list[list[str]] | None = None
    nakayama_deg1: list[list[str]] | None = None
    is_cy: bool | None = None
    cy_condition_entrywise: bool | None = None
    descriptor: dict | None = None
    oracle: dict | None = None
    caveats: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "version": VERSION,
            "name": self.name,
            "dimension": self.dimension,
            "convention": self.convention,
            "cap": self.cap,
            "checksum": self.checksum,
            "input": self.input_document,
            "completed": self.completed,
            "failed_stage": self.failed_stage,
            "failure": self.failure,
            "validation": self.validation,
            "q": self.q,
            "relations": self.relations,
            "dims_R": self.dims_R,
            "dims_dual": self.dims_dual,
            "gldim": self.gldim,
            "hilbert_identity": self.hilbert,
            "koszul": self.koszul,
            "as_regular": self.as_regular,
            "frt": self.frt,
            "Q": self.Q,
            "D": self.D,
            "phi": self.phi,
            "nakayama_deg1": self.nakayama_deg1,
            "is_cy": self.is_cy,
            "cy_condition_entrywise": self.cy_condition_entrywise,
            "descriptor": self.descriptor,
            "oracle": self.oracle,
            "caveats": self.caveats,
        }


class _StageFailure(AnalysisError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def analyze(
    spec: InputSpec,
    cap: int | None = None,
    convention: str | None = None,
) -> AnalysisReport:
    """Run the full pipeline; failures yield a partial report, never a crash.

    Stage order: braid equation, rigidity, label, quadratic data, graded
    profile, Koszul/Hilbert/AS checks, FRT invariants, homological matrix,
    CY verdict, Frobenius oracle.
    """
    from .nichols import default_cap

    effective_convention = convention or spec.convention or "standard"
    effective_cap = cap if cap is not None else (spec.cap if spec.cap is not None else default_cap(spec.n))
    report = AnalysisReport(
        input_document=spec.document(),
        name=spec.name,
        dimension=spec.n,
        convention=effective_convention,
        cap=effective_cap,
        checksum=spec.checksum(),
    )
    report.caveats.append("Noetherian hypothesis assumed, not verified")
    report.caveats.append(f"degree cap: {effective_cap}")
    stage = "parse"
    try:
        b = spec.braiding(effective_convention)
        stage = "braid_equation"
        ok = validate_braid_equation(b)
        report.validation["braid_equation"] = ok
        if not ok:
            raise _StageFailure("BraidEquation", "braid equation fails")
        stage = "rigidity"
        ok = rigidity_check(b)
        report.validation["rigidity"] = ok
        if not ok:
            raise _StageFailure("NotRigid", "coefficient table is not rigid")
        stage = "label"
        q = verify_label(b, spec.label)
        b = b.with_label(q)
        report.q = str(q)
        report.validation["label"] = str(q)
        stage = "quadratic"
        qd = build_quadratic(b, effective_cap)
        report.relations = [
            [str(v) for v in row] for row in qd.I.dense_rows()
        ]
        stage = "profile"
        gp = graded_profile(qd)
        report.dims_R = list(gp.dims_R)
        report.dims_dual = list(gp.dims_dual)
        report.gldim = gp.gldim_label()
        stage = "gldim"
        if gp.gldim is None:
            report.caveats.append(
                "global dimension exceeds the cap; raise --cap to go further"
            )
            raise _StageFailure(
                "CapExceeded", f"global dimension exceeds cap {effective_cap}"
            )
        d = gp.gldim
        stage = "koszul"
        kres = koszul_check(gp)
        report.koszul = {
            "exact": kres.exact,
            "max_internal_degree": kres.max_internal_degree,
        }
        stage = "hilbert"
        report.hilbert = hilbert_identity(gp)
        if not report.hilbert:
            raise _StageFailure("HilbertIdentity", "Hilbert series identity fails")
        stage = "as_regularity"
        asres = as_regularity_check(gp)
        report.as_regular = {
            "ok": asres.ok,
            "cohomology_position": d,
            "internal_degree": d,
            "window": list(asres.window),
        }
        stage = "frt"
        af = action_matrices(b)
        frt_report = {"rtt": rtt_check(b, af)}
        if not frt_report["rtt"]:
            report.frt = frt_report
            raise _StageFailure("RTT", "RTT relations fail on V")
        frt_report["h_linearity"] = braiding_commutes_with_action(b, af)
        frt_report["i_stability"] = all(
            qd.I.contains(apply_generator(af, u, l, 2, row))
            for u in range(b.n)
            for l in range(b.n)
            for row in qd.I.sparse_rows()
        )
        frt_report["k_stability"] = all(
            gp.K[m].contains(apply_generator(af, u, l, m, row))
            for m in range(2, d + 1)
            for u in range(b.n)
            for l in range(b.n)
            for row in gp.K[m].sparse_rows()
        )
        report.frt = frt_report
        if not all(frt_report.values()):
            raise _StageFailure("FRTInvariant", "an FRT action invariant fails")
        stage = "homological_matrix"
        hd = homological_matrix(af, gp.K[d], d)
        report.Q = str(hd.Q)
        report.D = _mat_strings(hd.D)
        stage = "cy"
        cy = cy_result(b, hd)
        report.phi = _mat_strings(cy.phi)
        report.is_cy = cy.is_cy
        report.cy_condition_entrywise = cy.entrywise_agrees
        report.descriptor = {
            "shift": cy.descriptor.shift,
            "internal_shift": cy.descriptor.internal_shift,
            "twist": _mat_strings(cy.descriptor.twist),
            "twist_is_identity": cy.descriptor.twist_is_identity,
            "text": cy.descriptor.text,
        }
        stage = "oracle"
        tables = build_dual_tables(qd.I_perp, b.n, d)
        dual_dims = [tables.dim(k) for k in range(d + 1)]
        if dual_dims != gp.dims_dual[: d + 1]:
            raise _StageFailure(
                "DualDims", "dual tower dimensions disagree with the Koszul spaces"
            )
        form = frobenius_form(tables)
        eta = nakayama_bruteforce(tables, form)
        formula = nakayama_formula_deg1(b, hd)
        matches = eta.degree1 == formula
        phi_transpose = cy.phi == formula.transpose()
        modular = modular_facts(tables)
        report.oracle = {
            "agreement": matches and phi_transpose and modular,
            "frobenius_nondegenerate": True,
            "nakayama_deg1_matches_formula": matches,
            "phi_is_nakayama_transpose": phi_transpose,
            "modular_function": "counit" if modular else "NOT the counit",
            "dual_dims": dual_dims,
        }
        report.nakayama_deg1 = _mat_strings(eta.degree1)
        if not report.oracle["agreement"]:
            report.caveats.append("oracle disagreement: see the oracle section")
        report.completed = True
    except AnalysisError as e:
        report.completed = False
        report.failed_stage = stage
        report.failure = {"code": e.code, "message": str(e)}
    return report


# ---------------------------------------------------------------------------
# emission


def emit_report(report: AnalysisReport, format: str = "json") -> bytes:
    if format == "json":
        return (json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n").encode()
    if format == "text":
        return _text_report(report).encode()
    raise ValueError(f"unknown format {format!r}")


def _matrix_lines(rows: list[list[str]], indent: str = "  ") -> list[str]:
    widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
    return [
        indent + "  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in rows
    ]


def _text_report(r: AnalysisReport) -> str:
    lines = [f"nicholscy report: {r.name}"]
    lines.append(f"completed: {'yes' if r.completed else 'no'}")
    if r.failed_stage:
        code = r.failure["code"] if r.failure else "?"
        msg = r.failure["message"] if r.failure else ""
        lines.append(f"rejected at stage '{r.failed_stage}' [{code}]: {msg}")
    lines.append(f"convention: {r.convention}; cap: {r.cap}")
    if r.validation:
        parts = []
        for key in ("braid_equation", "rigidity"):
            if key in r.validation:
                parts.append(f"{key.replace('_', ' ')} {'ok' if r.validation[key] else 'FAIL'}")
        if "label" in r.validation:
            parts.append(f"label q = {r.validation['label']}")
        lines.append("validation: " + "; ".join(parts))
    if r.dims_R is not None:
        lines.append("dims R   : " + " ".join(map(str, r.dims_R)))
    if r.dims_dual is not None:
        lines.append("dims R^! : " + " ".join(map(str, r.dims_dual)))
    if r.gldim is not None:
        lines.append(f"gldim    : {r.gldim}")
    if r.hilbert is not None:
        lines.append(f"hilbert identity: {'ok' if r.hilbert else 'FAIL'}")
    if r.koszul is not None:
        lines.append(
            f"koszul exactness: {'ok' if r.koszul['exact'] else 'FAIL'}"
            f" (internal degrees <= {r.koszul['max_internal_degree']})"
        )
    if r.as_regular is not None:
        lo, hi = r.as_regular["window"]
        lines.append(
            f"AS-regular: {'ok' if r.as_regular['ok'] else 'FAIL'}"
            f" (cohomology k at position {r.as_regular['cohomology_position']},"
            f" internal degree {r.as_regular['internal_degree']};"
            f" window [{lo}, {hi}])"
        )
    if r.frt is not None:
        flat = "; ".join(f"{k} {'ok' if v else 'FAIL'}" for k, v in sorted(r.frt.items()))
        lines.append("frt invariants: " + flat)
    if r.Q is not None:
        lines.append(f"Q = {r.Q}")
    if r.D is not None:
        lines.append("D =")
        lines.extend(_matrix_lines(r.D))
    if r.phi is not None:
        lines.append("phi =")
        lines.extend(_matrix_lines(r.phi))
    if r.nakayama_deg1 is not None:
        lines.append("nakayama degree 1 =")
        lines.extend(_matrix_lines(r.nakayama_deg1))
    if r.oracle is not None:
        lines.append(
            "oracle: " + ("agreement ok" if r.oracle["agreement"] else "DISAGREEMENT")
        )
    if r.is_cy is not None:
        if r.is_cy:
            lines.append(f"CALABI-YAU: yes (dimension {r.gldim})")
        else:
            lines.append("CALABI-YAU: no")
    if r.descriptor is not None:
        lines.append(f"dualizing complex: {r.descriptor['text']}")
        if not r.descriptor["twist_is_identity"]:
            lines.append("twist (phi o eps^(d+1)) =")
            lines.extend(_matrix_lines(r.descriptor["twist"]))
    if r.caveats:
        lines.append("caveats: " + "; ".join(r.caveats))
    return "\n".join(lines) + "\n"
