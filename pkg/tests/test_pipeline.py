import json

import pytest

from reducedform.errors import ExprSyntaxError, InconsistentField, NotASolution, PipelineError, UnknownSymbol
from reducedform.linsys import Matrix
from reducedform.pipeline import (
    SCHEMA,
    MultiPoly,
    build_variational,
    emit_report,
    error_report,
    fixture_path,
    load_problem,
    parse_multipoly,
    parse_problem,
    replay,
    run_pipeline,
)

from test_diffop import HILL_L
from test_nve import hill_A

HILL_H1 = fixture_path("hill_h1.problem").read_text()
HILL_H0 = fixture_path("hill_h0.problem").read_text()

SYSTEM_ZERO = """
[field]
variable = t
[system]
row1 = 0, 0, 0, 0
row2 = 0, 0, 0, 0
row3 = 0, 0, 0, 0
row4 = 0, 0, 0, 0
[solution]
column = 1, 0, 0, 0
"""


def hamiltonian_problem(H, q1, q2, p1, p2, field="variable = t"):
    return f"[field]\n{field}\n[hamiltonian]\nH = {H}\n[curve]\nq1 = {q1}\nq2 = {q2}\np1 = {p1}\np2 = {p2}\n"


@pytest.fixture(scope="module")
def h1_report():
    return run_pipeline(parse_problem(HILL_H1))


@pytest.fixture(scope="module")
def h0_report():
    return run_pipeline(parse_problem(HILL_H0))


def test_multipoly():
    P = parse_multipoly("(q1 + i*p2)^2 - 2*q1*q2/3")
    assert P.diff(0).to_str() == "2*q1 + -2/3*q2 + 2*i*p2"
    assert (P - P).is_zero()
    assert MultiPoly.const(5).constant_value() == 5
    with pytest.raises(UnknownSymbol):
        parse_multipoly("q3 + 1")


def test_parse_hill_fixture():
    spec = parse_problem(HILL_H1)
    assert spec.mode == "hamiltonian"
    assert spec.field_text["extension"] == "4*t^6 - t^2 + 2"
    assert spec.field_text["derivation"] == "sqrtD"
    assert spec.field.weight == spec.field.sqrtD
    assert spec.degree_cap == 64


def test_minimal_system_file():
    spec = parse_problem(SYSTEM_ZERO)
    assert spec.mode == "system" and spec.A.is_zero()


def test_not_a_solution():
    with pytest.raises(NotASolution):
        build_variational(parse_problem(hamiltonian_problem("p1^2/2", "t", "0", "0", "0")))
    with pytest.raises(PipelineError) as e:
        run_pipeline(parse_problem(hamiltonian_problem("p1^2/2", "t", "0", "0", "0")))
    assert e.value.stage == "variational"


def test_parse_errors_have_locations():
    text = SYSTEM_ZERO.replace("row3 = 0, 0, 0, 0", "row3 = 0, 0, q7, 0")
    with pytest.raises(UnknownSymbol) as e:
        parse_problem(text)
    assert (e.value.line, e.value.column) == (7, 14)
    with pytest.raises(ExprSyntaxError) as e:
        parse_problem(SYSTEM_ZERO.replace("[solution]", "[solutions]"))
    assert e.value.line == 9
    with pytest.raises(InconsistentField):
        parse_problem(SYSTEM_ZERO.replace("variable = t", "variable = t\nextension = t^2"))


def test_zero_hamiltonian():
    spec = parse_problem(hamiltonian_problem("0", "1", "2", "3", "4"))
    A, zp = build_variational(spec)
    assert A.is_zero() and all(x.is_zero() for x in zp)


def test_constant_variational_matrix():
    # the only rational curve of this flow is the equilibrium
    spec = parse_problem(hamiltonian_problem("p1*p2 + q1*q2", "0", "0", "0", "0"))
    A, zp = build_variational(spec)
    assert all(A[i, j].is_constant() for i in range(4) for j in range(4))
    assert not A.is_zero()


def test_hill_variational_matrix():
    spec = parse_problem(HILL_H1)
    A, _ = build_variational(spec)
    assert A == hill_A(spec.field)


def test_hill_h1(h1_report):
    r = h1_report
    assert r.verdict == "non_abelian"
    assert "not meromorphically Liouville integrable" in r.conclusion
    assert r.trail["nve_case"] == "Finite" and r.trail["table_row"] == "TrivialGN"
    (ob,) = r.obstructions
    plain = r.objects["verdict"].obstructions[0].operator
    assert plain.monic() == HILL_L.monic()
    points = {e["point"]: e["exponents"] for e in ob["exponents"]}
    assert points["roots of t"] == ["0", "1", "3"]
    assert points["infinity"] == ["0", "0", "8"]


def test_hill_h0(h0_report):
    r = h0_report
    assert r.verdict == "abelian"
    assert r.certificate["condition"] == "condition 2"
    assert r.certificate["y2"] != "0"
    F = r.objects["shape"].B.desc
    y2 = F.parse(r.certificate["y2"])
    t = F.t
    # (8t^4 - 1)/(t^2 sqrt(4t^4 - 1)) written over sqrtD = t sqrt(4t^4 - 1)
    target = (8 * t ** 4 - 1) / (t * F.sqrtD)
    assert (y2 / target).is_constant()


def test_system_mode_m3():
    r = run_pipeline(load_problem(fixture_path("system_m3.problem")))
    assert r.verdict == "abelian"
    c = r.objects["verdict"].certificate
    assert c.P == Matrix.identity(c.P.desc, 4)


def test_json_report_shape(h0_report):
    d = json.loads(emit_report(h0_report))
    assert d["schema"] == SCHEMA and d["verdict"] == "abelian"
    assert "timings" not in d
    assert "timings" in json.loads(emit_report(h0_report, timings=True))
    assert b"verdict: abelian" in emit_report(h0_report, "text")


def test_determinism():
    a = emit_report(run_pipeline(parse_problem(HILL_H0)))
    b = emit_report(run_pipeline(parse_problem(HILL_H0)))
    assert a == b


def test_error_report_stage_tag():
    try:
        run_pipeline(parse_problem(hamiltonian_problem("p1^2/2", "t", "0", "0", "0")))
    except PipelineError as exc:
        d = json.loads(emit_report(error_report(exc)))
    assert d["error"]["stage"] == "variational" and d["error"]["type"] == "NotASolution"
    assert d["trail"] == {}
    try:
        parse_problem("[field]\nvariable = t\n[system]\nrow1 = 0, (")
    except ExprSyntaxError as exc:
        d = json.loads(emit_report(error_report(exc)))
    assert d["error"]["stage"] == "parse" and d["error"]["line"] == 4


@pytest.mark.parametrize("name", ["h1", "h0"])
def test_replay(name, h1_report, h0_report):
    r = h1_report if name == "h1" else h0_report
    checks = replay(json.loads(emit_report(r)))
    assert len(checks) >= 5 and all(checks.values()), checks


def test_replay_detects_tampering(h0_report):
    d = json.loads(emit_report(h0_report))
    d["matrices"]["B"][0][1] = "1"
    assert not all(replay(d).values())


def test_simplify_option():
    r = run_pipeline(load_problem(fixture_path("system_m3.problem")), simplify=True)
    assert "simplified" in r.matrices
    assert all(replay(json.loads(emit_report(r))).values())


def test_extension_override():
    spec = parse_problem(HILL_H1, extension="4*t^6 - t^2")
    assert spec.field_text["extension"] == "4*t^6 - t^2"
    assert run_pipeline(spec).verdict == "abelian"


def test_classify_only():
    r = run_pipeline(parse_problem(HILL_H1), stop_after="classify_nve")
    assert r.verdict == "not_computed" and r.trail["nve_case"] == "Finite"
    assert "B" not in r.matrices
