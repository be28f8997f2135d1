"""Problem files, the end-to-end reduction pipeline, and reports.

A problem file is INI-like.  Sections: ``field`` (variable, extension,
derivation), then either ``hamiltonian`` (H) with ``curve`` (q1, q2, p1, p2)
or ``system`` (row1..row4) with ``solution`` (column), then ``options``.
Values use the expression grammar of :mod:`reducedform.expr`; ``#`` starts
a comment.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import __version__
from .diffop import DEFAULT_DEGREE_CAP, DiffOp, rational_solutions
from .errors import (
    BoundOverflow,
    ExprSyntaxError,
    InconsistentField,
    NotASolution,
    ParseError,
    PipelineError,
    UnsupportedExtension,
)
from .expr import evaluate, parse_expr
from .field import I, ONE, ZERO, FieldDescriptor, GaussianRational, format_poly, make_field
from .kovacic2 import BOREL, FULL_OR_UNKNOWN, classify_and_reduce
from .linsys import J_matrix, Matrix, gauge, is_hamiltonian
from .nve import normalize_variational
from .sp4 import (
    ABELIAN,
    INCONCLUSIVE,
    NON_ABELIAN,
    Obstruction,
    Verdict,
    abelianity,
    normalize_table,
    simplify_reduced,
    subalgebra_report,
)

SCHEMA = "reducedform.report/1"
PHASE_VARS = ("q1", "q2", "p1", "p2")
RESERVED = set(PHASE_VARS) | {"i", "sqrtD"}


# ---------------------------------------------------------------------------
# polynomials in the phase variables


class MultiPoly:
    """Sparse polynomial in q1, q2, p1, p2 over Q(i); keys are exponent tuples."""

    __slots__ = ("terms",)
    nvars = 4

    def __init__(self, terms=None):
        self.terms = {e: GaussianRational.of(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c):
        return cls({(0,) * cls.nvars: GaussianRational.of(c)})

    @classmethod
    def var(cls, k):
        e = [0] * cls.nvars
        e[k] = 1
        return cls({tuple(e): ONE})

    def is_zero(self):
        return not self.terms

    def constant_value(self):
        if any(any(e) for e in self.terms):
            return None
        return self.terms.get((0,) * self.nvars, ZERO)

    def __add__(self, o):
        o = _mp(o)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, ZERO) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-_mp(o))

    def __rsub__(self, o):
        return _mp(o) - self

    def __mul__(self, o):
        o = _mp(o)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, o):
        c = _mp(o).constant_value()
        if c is None or c.is_zero():
            raise ExprSyntaxError("a Hamiltonian may only be divided by nonzero constants")
        inv = c.inverse()
        return MultiPoly({e: x * inv for e, x in self.terms.items()})

    def __pow__(self, k: int):
        out = MultiPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        return isinstance(o, MultiPoly) and (self - o).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def diff(self, k: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                out[tuple(e2)] = c * GaussianRational.of(e[k])
        return MultiPoly(out)

    def __call__(self, point):
        desc = point[0].desc
        acc = desc.zero()
        for e, c in self.terms.items():
            term = desc.const(c)
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            acc = acc + term
        return acc

    def to_str(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(PHASE_VARS, e) if k)
            c = self.terms[e]
            cs = str(c)
            if any(ch in cs[1:] for ch in "+-"):
                cs = f"({cs})"
            parts.append(cs if not mono else (mono if c == ONE else f"{cs}*{mono}"))
        return " + ".join(parts)

    __repr__ = to_str


def _mp(x) -> MultiPoly:
    return x if isinstance(x, MultiPoly) else MultiPoly.const(x)


def parse_multipoly(text: str) -> MultiPoly:
    env = {v: MultiPoly.var(k) for k, v in enumerate(PHASE_VARS)}
    env["i"] = MultiPoly.const(I)
    return evaluate(parse_expr(text), env, MultiPoly.const)


# ---------------------------------------------------------------------------
# problem files


@dataclass
class ProblemSpec:
    mode: str  # "hamiltonian" or "system"
    field: FieldDescriptor
    field_text: dict
    H: MultiPoly | None = None
    curve: list | None = None
    A: Matrix | None = None
    solution: list | None = None
    options: dict = dc_field(default_factory=dict)
    source: str = ""

    @property
    def degree_cap(self) -> int:
        return int(self.options.get("degree_cap", DEFAULT_DEGREE_CAP))


_SECTIONS = {"field", "hamiltonian", "system", "curve", "solution", "options"}


def _sections(text: str):
    """{section: {key: (value, line, column)}} plus the section header lines."""
    out, where, current = {}, {}, None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        s = line.strip()
        if s.startswith("["):
            if not s.endswith("]"):
                raise ExprSyntaxError("unterminated section header", line=lineno, column=len(raw) + 1)
            current = s[1:-1].strip()
            if current not in _SECTIONS:
                raise ExprSyntaxError(f"unknown section [{current}]", line=lineno, column=raw.index("[") + 2)
            if current in out:
                raise ExprSyntaxError(f"duplicate section [{current}]", line=lineno, column=1)
            out[current] = {}
            where[current] = lineno
            continue
        if current is None:
            raise ExprSyntaxError("entry outside of any section", line=lineno, column=1)
        if "=" not in line:
            raise ExprSyntaxError("expected 'key = value'", line=lineno, column=len(line) - len(line.lstrip()) + 1)
        key, value = line.split("=", 1)
        col = len(key) + 2 + (len(value) - len(value.lstrip()))
        key = key.strip()
        if key in out[current]:
            raise ExprSyntaxError(f"duplicate key {key!r}", line=lineno, column=1)
        out[current][key] = (value.strip(), lineno, col)
    return out, where


def _located(fn, entry):
    """Run fn(value); re-raise parse errors with file coordinates."""
    value, line, col = entry
    try:
        return fn(value)
    except ParseError as exc:
        raise type(exc)(exc.message, line=line, column=col + (exc.column or 1) - 1) from None


def _split_row(value: str):
    return [x.strip() for x in value.split(",")]


def _parse_field(sec, override_extension=None):
    from .expr import parse_poly
    var_entry = sec.get("variable", ("t", None, None))
    var = var_entry[0]
    if not var.isidentifier() or var in RESERVED:
        raise InconsistentField(f"invalid field variable {var!r}", line=var_entry[1], column=var_entry[2])
    ext_entry = sec.get("extension")
    der_entry = sec.get("derivation")
    if override_extension is not None:
        ext_entry = (override_extension, None, 1)
    try:
        ext = _located(lambda v: parse_poly(v, var), ext_entry) if ext_entry else None
        desc = make_field(var, ext)
        if der_entry is not None:
            w = _located(desc.parse, der_entry)
            if w.is_zero():
                raise ValueError("derivation weight must be nonzero")
            desc = desc.with_weight(w)
    except ValueError as exc:
        line = (der_entry if "derivation" in str(exc) else ext_entry or (None, None, None))[1]
        raise InconsistentField(str(exc), line=line) from None
    text = {"variable": var,
            "extension": format_poly(desc.extension * desc.radical_scale ** 2, var) if desc.has_extension else None,
            "derivation": desc.weight.to_expr()}
    return desc, text


def parse_problem(text: str, extension: str | None = None, source: str = "") -> ProblemSpec:
    """Parse a problem file; ``extension`` overrides the field's radicand."""
    secs, where = _sections(text)
    if "field" not in secs:
        raise ExprSyntaxError("missing [field] section", line=1, column=1)
    desc, ftext = _parse_field(secs["field"], extension)
    opts = {}
    for k, entry in secs.get("options", {}).items():
        v = entry[0]
        if k == "degree_cap":
            if not v.isdigit():
                raise ExprSyntaxError("degree_cap must be a positive integer", line=entry[1], column=entry[2])
            opts[k] = int(v)
        elif k == "simplify":
            opts[k] = v.lower() in ("1", "true", "yes", "on")
        else:
            raise ExprSyntaxError(f"unknown option {k!r}", line=entry[1], column=1)
    has_h, has_s = "hamiltonian" in secs, "system" in secs
    if has_h == has_s:
        raise ExprSyntaxError("exactly one of [hamiltonian] and [system] is required", line=1, column=1)
    if has_h:
        hsec = secs["hamiltonian"]
        if "H" not in hsec:
            raise ExprSyntaxError("[hamiltonian] needs H", line=where["hamiltonian"], column=1)
        H = _located(parse_multipoly, hsec["H"])
        csec = secs.get("curve")
        if csec is None:
            raise ExprSyntaxError("[hamiltonian] needs a [curve] section", line=where["hamiltonian"], column=1)
        curve = []
        for v in PHASE_VARS:
            if v not in csec:
                raise ExprSyntaxError(f"[curve] needs {v}", line=where["curve"], column=1)
            curve.append(_located(desc.parse, csec[v]))
        return ProblemSpec("hamiltonian", desc, ftext, H=H, curve=curve, options=opts, source=source)
    ssec = secs["system"]
    rows = []
    for k in range(1, 5):
        key = f"row{k}"
        if key not in ssec:
            raise ExprSyntaxError(f"[system] needs {key}", line=where["system"], column=1)
        rows.append(_parse_list(desc, ssec[key], 4))
    sol = secs.get("solution", {}).get("column")
    if sol is None:
        raise ExprSyntaxError("[system] needs a [solution] section with 'column'", line=where["system"], column=1)
    column = _parse_list(desc, sol, 4)
    return ProblemSpec("system", desc, ftext, A=Matrix(desc, rows), solution=column, options=opts, source=source)


def _parse_list(desc, entry, n):
    value, line, col = entry
    parts = value.split(",")
    if len(parts) != n:
        raise ExprSyntaxError(f"expected {n} comma-separated entries", line=line, column=col)
    out, offset = [], col
    for p in parts:
        lead = len(p) - len(p.lstrip())
        out.append(_located(desc.parse, (p.strip(), line, offset + lead)))
        offset += len(p) + 1
    return out


def load_problem(path, extension=None) -> ProblemSpec:
    path = Path(path)
    return parse_problem(path.read_text(encoding="utf-8"), extension, source=str(path))


# ---------------------------------------------------------------------------


def build_variational(spec: ProblemSpec):
    """(A, z') with A = J Hess(H)(z) and z' the derivative of the curve."""
    if spec.mode != "hamiltonian":
        raise ValueError("build_variational needs a Hamiltonian problem")
    desc, H, z = spec.field, spec.H, spec.curve
    J = J_matrix(4).to_field(desc)
    grad = [H.diff(k) for k in range(4)]
    hess = Matrix(desc, [[grad[i].diff(j)(z) for j in range(4)] for i in range(4)])
    A = J @ hess
    zp = [x.derive() for x in z]
    flow = J.apply([g(z) for g in grad])
    if any(not (a - b).is_zero() for a, b in zip(zp, flow)):
        raise NotASolution("curve does not satisfy z' = J grad H(z)")
    if not is_hamiltonian(A):
        raise AssertionError("J Hess(H) is not Hamiltonian")
    return A, zp


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    verdict: str
    conclusion: str = ""
    field: dict = dc_field(default_factory=dict)
    trail: dict = dc_field(default_factory=dict)
    matrices: dict = dc_field(default_factory=dict)
    certificate: dict | None = None
    obstructions: list = dc_field(default_factory=list)
    subalgebras: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)
    error: dict | None = None
    timings: dict = dc_field(default_factory=dict)
    source: str = ""
    # live objects, not serialized
    objects: dict = dc_field(default_factory=dict, repr=False)

    def as_dict(self, timings=False) -> dict:
        d = {
            "schema": SCHEMA,
            "version": __version__,
            "source": self.source,
            "verdict": self.verdict,
            "conclusion": self.conclusion,
            "field": self.field,
            "trail": self.trail,
            "matrices": self.matrices,
            "certificate": self.certificate,
            "obstructions": self.obstructions,
            "subalgebras": self.subalgebras,
            "notes": self.notes,
            "error": self.error,
        }
        if timings:
            d["timings"] = self.timings
        return d


CONCLUSIONS = {
    ABELIAN: "the Lie algebra of the variational equation is abelian; the reduced form is recorded",
    NON_ABELIAN: "the Lie algebra of the variational equation is not abelian: "
                 "the Hamiltonian system is not meromorphically Liouville integrable",
    INCONCLUSIVE: "no decision",
}


def _op_dict(L: DiffOp):
    return {"coefficients": L.to_exprs(), "plain": L.desc.is_plain}


def _obstruction_dict(o: Obstruction):
    d = {"kind": o.kind, "statement": o.statement}
    if o.operator is not None:
        d["operator"] = _op_dict(o.operator)
    if o.exponents is not None:
        d["exponents"] = o.exponents.as_dict()
    if o.risch is not None:
        d["risch"] = {"f": o.risch[0].to_expr(), "g": o.risch[1].to_expr()}
    if o.system is not None:
        d["system"] = o.system.to_exprs()
    return d


def _stage(name, report, fn, *args, **kw):
    t0 = time.perf_counter()
    try:
        return fn(*args, **kw)
    except PipelineError:
        raise
    except Exception as exc:
        raise PipelineError(name, exc) from exc
    finally:
        report.timings[name] = round(time.perf_counter() - t0, 6)


def run_pipeline(spec: ProblemSpec, degree_cap: int | None = None, simplify: bool | None = None,
                 stop_after: str | None = None) -> Report:
    """Variational system, normal block reduction, table row, abelianity verdict.

    ``stop_after="classify_nve"`` ends the run once the normal block is classified.
    """
    cap = degree_cap if degree_cap is not None else spec.degree_cap
    simplify = spec.options.get("simplify", False) if simplify is None else simplify
    rep = Report(INCONCLUSIVE, field=dict(spec.field_text), source=spec.source)
    mats = rep.matrices
    if spec.mode == "hamiltonian":
        A, zp = _stage("variational", rep, build_variational, spec)
        rep.trail["hamiltonian"] = spec.H.to_str()
    else:
        A, zp = spec.A, spec.solution
    mats["A"] = A.to_exprs()
    rep.trail["particular_solution"] = [x.to_expr() for x in zp]
    ns = _stage("normalize", rep, normalize_variational, A, zp)
    mats["P"], mats["A_N"], mats["N"] = ns.P.to_exprs(), ns.A_N.to_exprs(), ns.N.to_exprs()
    rep.objects.update(A=A, normalized=ns)
    try:
        cls = _stage("classify_nve", rep, classify_and_reduce, ns.N, cap)
    except PipelineError as exc:
        if isinstance(exc.cause, (UnsupportedExtension, BoundOverflow)):
            rep.notes.append(f"normal block: {exc.cause}")
            rep.trail["nve_case"] = "undecided"
            rep.conclusion = CONCLUSIONS[INCONCLUSIVE] + f" ({type(exc.cause).__name__})"
            return rep
        raise
    rep.objects["classification"] = cls
    rep.trail["nve_case"] = cls.case
    rep.notes.extend(cls.notes)
    mats["P_nve"], mats["N_reduced"] = cls.P.to_exprs(), cls.reduced.to_exprs()
    if stop_after == "classify_nve":
        rep.verdict = "not_computed"
        rep.conclusion = "stopped after classifying the normal block"
        return rep
    if cls.case == BOREL:
        ob = Obstruction("normal_block", "the normal block has a Borel (non-abelian) Galois algebra",
                         cls.witness.get("scalar_operator"), system=ns.N, cap=cap)
        rep.verdict = NON_ABELIAN
        rep.obstructions = [_obstruction_dict(ob)]
        rep.objects["verdict"] = Verdict(NON_ABELIAN, obstructions=[ob])
        rep.conclusion = CONCLUSIONS[NON_ABELIAN]
        return rep
    if cls.case == FULL_OR_UNKNOWN:
        rep.notes.append("normal block has no rational or exponential reduction; Galois algebra undetermined")
        rep.conclusion = CONCLUSIONS[INCONCLUSIVE]
        return rep
    shape, P_N, notes = _stage("table_form", rep, normalize_table, ns.A_N, cls, cap)
    rep.notes.extend(notes)
    rep.trail["table_row"] = shape.case
    rep.trail["table_coefficients"] = {k: v.to_expr() for k, v in shape.coefficients().items()}
    mats["P_N"], mats["B"] = P_N.to_exprs(), shape.B.to_exprs()
    rep.objects.update(shape=shape, P_N=P_N)
    try:
        verdict = _stage("abelianity", rep, abelianity, shape, cap)
    except PipelineError as exc:
        if isinstance(exc.cause, BoundOverflow):
            rep.notes.append(str(exc.cause))
            rep.conclusion = CONCLUSIONS[INCONCLUSIVE] + " (degree bound exceeded)"
            return rep
        raise
    rep.objects["verdict"] = verdict
    rep.verdict = verdict.outcome
    rep.conclusion = CONCLUSIONS[verdict.outcome]
    if verdict.outcome == ABELIAN:
        c = verdict.certificate
        rep.trail["theorem_case"] = c.condition
        rep.certificate = {
            "condition": c.condition,
            "target": c.target.describe(),
            "alpha": [str(c.target.alpha1), str(c.target.alpha2)],
            "y1": c.y1.to_expr(),
            "y2": c.y2.to_expr(),
            "h": c.h.to_expr() if c.h is not None else None,
            "operator": _op_dict(c.operator) if c.operator is not None else None,
        }
        mats["P_certificate"], mats["reduced"] = c.P.to_exprs(), c.reduced.to_exprs()
        rep.subalgebras = [f.label for f in subalgebra_report(c.target)]
        if simplify:
            try:
                Q, S = _stage("simplify", rep, simplify_reduced, c.reduced)
                mats["Q"], mats["simplified"] = Q.to_exprs(), S.to_exprs()
            except PipelineError as exc:
                rep.notes.append(f"simplification skipped: {exc.cause}")
    else:
        rep.obstructions = [_obstruction_dict(o) for o in verdict.obstructions]
    return rep


def error_report(exc: Exception, source: str = "") -> Report:
    stage = getattr(exc, "stage", "parse" if isinstance(exc, ParseError) else "internal")
    cause = getattr(exc, "cause", exc)
    err = {"stage": stage, "type": type(cause).__name__, "message": str(cause)}
    if isinstance(cause, ParseError):
        err["message"], err["line"], err["column"] = cause.message, cause.line, cause.column
    return Report(INCONCLUSIVE, conclusion="error", error=err, source=source)


def emit_report(r: Report, format: str = "json", timings: bool = False) -> bytes:
    if format == "json":
        return (json.dumps(r.as_dict(timings), indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode()
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    out = [f"verdict: {r.verdict}"]
    if r.conclusion:
        out.append(f"conclusion: {r.conclusion}")
    if r.error:
        loc = f" (line {r.error.get('line')}, column {r.error.get('column')})" if r.error.get("line") else ""
        out.append(f"error at stage {r.error['stage']}: {r.error['type']}: {r.error['message']}{loc}")
    if r.field:
        f = r.field
        out.append(f"field: Q(i)({f['variable']})" + (f"[sqrt({f['extension']})]" if f.get("extension") else "")
                   + f", derivation ({f['derivation']}) d/d{f['variable']}")
    for k in ("nve_case", "table_row", "theorem_case"):
        if k in r.trail:
            out.append(f"{k.replace('_', ' ')}: {r.trail[k]}")
    for k, v in r.trail.get("table_coefficients", {}).items():
        out.append(f"  {k} = {v}")
    if r.certificate:
        c = r.certificate
        out.append(f"target: {c['target']}")
        out.append(f"  y1 = {c['y1']}")
        out.append(f"  y2 = {c['y2']}")
        if c.get("h"):
            out.append(f"  integral witness = {c['h']}")
    for o in r.obstructions:
        out.append(f"obstruction ({o['kind']}): {o['statement']}")
        if "operator" in o:
            coeffs = o["operator"]["coefficients"]
            out.append("  operator: " + " + ".join(f"({c})*D^{k}" for k, c in enumerate(coeffs) if c != "0"))
        for e in o.get("exponents", []):
            out.append(f"  exponents at {e['point']}: {{{', '.join(e['exponents'])}}}")
        if "risch" in o:
            out.append(f"  y' = ({o['risch']['f']}) y + ({o['risch']['g']})")
    for n in r.notes:
        out.append(f"note: {n}")
    return ("\n".join(out) + "\n").encode()


# ---------------------------------------------------------------------------
# replay from a serialized report


def field_from_report(d: dict) -> FieldDescriptor:
    f = d["field"]
    return make_field(f["variable"], f.get("extension"), f.get("derivation"))


def _mat(desc, rows):
    return Matrix(desc, [[desc.parse(x) for x in r] for r in rows])


def _op(desc, d):
    pd = desc.plain() if d.get("plain") else desc
    return DiffOp(pd, [pd.parse(c) for c in d["coefficients"]])


def replay(d: dict, degree_cap: int = DEFAULT_DEGREE_CAP) -> dict:
    """Recheck every identity recorded in a report dict; returns {check: bool}."""
    from .linsys import is_symplectic
    if d.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {d.get('schema')!r}")
    checks = {}
    if d.get("error"):
        return checks
    desc = field_from_report(d)
    m = {k: _mat(desc, v) for k, v in d["matrices"].items()}
    if "P" in m:
        checks["normalize"] = gauge(m["P"], m["A"]) == m["A_N"] and is_symplectic(m["P"])
        checks["nve_block"] = m["A_N"].block([1, 3], [1, 3]) == m["N"]
    if "P_nve" in m:
        checks["nve_reduction"] = gauge(m["P_nve"], m["N"]) == m["N_reduced"] and m["P_nve"].det() == 1
    if "P_nve" in m and "P_N" in m:
        checks["lift"] = is_symplectic(m["P_N"])
        checks["table_form"] = gauge(m["P_N"], m["A_N"]) == m["B"]
    if "P_certificate" in m:
        checks["certificate_gauge"] = gauge(m["P_certificate"], m["B"]) == m["reduced"]
        checks["certificate_symplectic"] = is_symplectic(m["P_certificate"])
        from .linsys import associated_lie_algebra
        checks["reduced_abelian"] = associated_lie_algebra(m["reduced"])[1].is_abelian()
        c = d["certificate"]
        if c.get("operator") and c.get("h"):
            L = _op(desc, c["operator"])
            checks["witness_solution"] = L.apply(desc.parse(c["h"]).retag(L.desc)).is_zero()
    if "Q" in m:
        checks["simplify"] = gauge(m["Q"], m["reduced"]) == m["simplified"]
    for k, o in enumerate(d.get("obstructions", [])):
        if o["kind"] == "operator":
            sols = rational_solutions(_op(desc, o["operator"]), degree_cap)
            checks[f"obstruction_{k}"] = sols.dimension == 1 and sols.basis[0].is_constant()
        elif o["kind"] == "risch":
            from .diffop import risch_solve
            checks[f"obstruction_{k}"] = risch_solve(desc.parse(o["risch"]["f"]), desc.parse(o["risch"]["g"]),
                                                     degree_cap) is None
        elif o["kind"] == "normal_block":
            checks[f"obstruction_{k}"] = classify_and_reduce(_mat(desc, o["system"]), degree_cap).case == BOREL
    return checks


def fixture_path(name: str) -> Path:
    return Path(__file__).parent / "fixtures" / name
