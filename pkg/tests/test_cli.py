import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finalg.cli import DSLError, algebra_from_json, algebra_to_json, jsonable, main, parse, print_doc
from finalg.cli.report import run_doc, select_commands
from finalg.families import green, r_family, random_family
from finalg.algebra import validate
from finalg.twisted import cyclic_twist, twisted_product

from samples import k1_dg

G3 = """\
quiver Q { vertices 2; arrow c1: 1 -> 2; arrow c2: 1 -> 2; arrow b1: 2 -> 1; }
relations I on Q { c1*b1 = 0; b1*c2 = 0; } trunc 4
algebra G3 = quotient(Q, I)
dims G3
"""

EXAMPLES = """\
algebra G4 = green(4)
family F = rfamily(n=2, m=1, k=1, seed=3)
matrix M = [[0, -1], [1, 0]]
gldim G4
chi F
realize M
"""


def run_text(tmp_path, text, *args):
    p = tmp_path / "doc.fa"
    p.write_text(text)
    return main(["run", str(p), *args])


def json_report(tmp_path, capsys, text, *args):
    assert run_text(tmp_path, text, "--json", "-", *args) in (0, 1, 2)
    return json.loads(capsys.readouterr().out)


def test_empty_document():
    doc = parse("")
    assert doc.definitions == [] and doc.commands == []
    assert print_doc(doc) == ""


def test_green_three_pipeline(tmp_path, capsys):
    rep = json_report(tmp_path, capsys, G3)
    assert rep["exit_code"] == 0
    assert rep["results"][0]["result"]["dim"] == 8


def test_malformed_arrow_column():
    with pytest.raises(DSLError) as exc:
        parse("quiver Q { vertices 2; arrow c1: 1 -> ; }")
    assert exc.value.kind == "syntax" and exc.value.line == 1 and exc.value.col == 39


@pytest.mark.parametrize("text,kind", [
    ("gldim X\n", "reference"),
    ("matrix M = [[1, 0], [0, 1]]\ngldim M\n", "type"),
    ("algebra A = green(2)\nalgebra A = green(3)\n", "reference"),
    ("algebra A = twist(B, B)\nalgebra B = green(1)\n", "reference"),
    ("algebra A = kronecker(1)\nalgebra B = twist(A, A, over=S, tau=v) nabla { c1 -> c1; }\n", "type"),
])
def test_parse_errors(text, kind):
    with pytest.raises(DSLError) as exc:
        parse(text)
    assert exc.value.kind == kind and exc.value.line >= 1


def test_documented_examples(tmp_path, capsys):
    rep = json_report(tmp_path, capsys, EXAMPLES)
    gl, chi, real = (r["result"] for r in rep["results"])
    assert gl["value"] == 4
    assert chi["matrix"] == [[2, 3], [1, 2]] and chi["matches_closed_form"]
    assert len(real["word"]) == 3 and real["chi"] == [[0, -1], [1, 0]] and real["chi_verified"]


def test_exit_codes(tmp_path, capsys):
    assert run_text(tmp_path, G3) == 0
    assert run_text(tmp_path, "matrix N = [[2, 0], [0, 1]]\nfactor-sl N\n") == 1
    assert run_text(tmp_path, "algebra A = green(\n") == 2
    err = capsys.readouterr().err
    assert "determinant is 2" in err and "syntax error" in err


def test_large_integers_are_strings(tmp_path, capsys):
    rep = json_report(tmp_path, capsys, "matrix M = [[1, 100000000000000000000], [0, 1]]\nfactor-sl M\n")
    assert rep["results"][0]["result"]["realized_dim"] == "100000000000000000002"
    assert jsonable(2 ** 53) == 2 ** 53 and jsonable(2 ** 53 + 1) == str(2 ** 53 + 1)
    assert jsonable(-(2 ** 60)) == str(-(2 ** 60))


def test_deterministic_and_parallel(tmp_path, capsys):
    text = EXAMPLES + G3
    a = json_report(tmp_path, capsys, text)
    b = json_report(tmp_path, capsys, text)
    c = json_report(tmp_path, capsys, text, "--parallel")
    assert a == b == c


def test_seed_override(tmp_path, capsys, monkeypatch):
    base = "family F = rfamily(n=3, m=2, k=1, seed=%d)\nexport F\n"
    explicit = json_report(tmp_path, capsys, base % 11)
    monkeypatch.setenv("FINALG_SEED", "11")
    forced = json_report(tmp_path, capsys, base % 4)
    assert forced["seed"] == 11
    assert forced["results"] == explicit["results"]
    monkeypatch.setenv("FINALG_SEED", "x")
    assert run_text(tmp_path, base % 4) == 2


def test_cmd_filter_runs_on_definitions(tmp_path, capsys):
    rep = json_report(tmp_path, capsys, "algebra A = green(2)\nalgebra B = kronecker(2)\n", "--cmd", "gldim")
    assert [r["result"]["value"] for r in rep["results"]] == [2, 1]


def test_json_to_file_and_timing(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert run_text(tmp_path, G3, "--json", str(out), "--timing", "--quiet") == 0
    assert capsys.readouterr().out == ""
    rep = json.loads(out.read_text())
    assert rep["schema"] == 1 and "seconds" in rep["results"][0]


def test_fmt(tmp_path, capsys):
    p = tmp_path / "doc.fa"
    p.write_text(G3)
    assert main(["fmt", str(p)]) == 0
    out = capsys.readouterr().out
    assert print_doc(parse(out)) == out


def test_console_script(tmp_path):
    p = tmp_path / "doc.fa"
    p.write_text(G3)
    r = subprocess.run([sys.executable, "-m", "finalg.cli.main", "run", str(p)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "dims G3: ok" in r.stdout


def test_report_all_and_verify_twist(tmp_path, capsys):
    text = ("algebra A = kronecker(1)\nalgebra B = kronecker(1)\n"
            "algebra C = twist(A, B, over=S, tau=v)\nverify-twist C\nreport-all C\n")
    rep = json_report(tmp_path, capsys, text)
    assert rep["exit_code"] == 0
    assert rep["results"][0]["result"]["ok"] is True


def test_select_commands_defaults():
    doc = parse(G3)
    assert [c.name for c in select_commands(doc, None)] == ["dims"]
    rep = run_doc(doc, select_commands(doc, "chi"))
    assert rep.exit_code == 0 and rep.results[0]["result"]["matrix"] == [[2, 3], [1, 2]]


@pytest.mark.parametrize("make", [lambda: green(3), lambda: r_family(random_family(3, 2, 1, 3)), k1_dg,
                                  lambda: twisted_product(cyclic_twist(2, -1, -1))])
def test_algebra_json_round_trip(make):
    A = make()
    data = json.loads(json.dumps(algebra_to_json(A)))
    B = algebra_from_json(data)
    assert B.labels == A.labels and B.table == A.table and B.degrees == A.degrees
    assert B.differential == A.differential and B.idempotents == A.idempotents
    assert validate(B, check_primitive=False).ok


# --------------------------------------------------------------------------
# printer / parser round trip

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda q: q != 0)
name = st.sampled_from(["A", "B", "Gx", "K_2", "alg1"])


@st.composite
def documents(draw):
    lines = []
    if draw(st.booleans()):
        lines.append(f"seed {draw(st.integers(0, 99))}")
    lines.append("quiver Q { vertices 2; arrow c1: 1 -> 2; arrow c2: 1 -> 2 deg %d; arrow b1: 2 -> 1; }"
                 % draw(st.integers(-2, 2)))
    rel = ""
    for c, p in zip(draw(st.lists(coeff, min_size=1, max_size=2)), ["c1*b1", "c2*b1"]):
        sign = "-" if c < 0 else ("+" if rel else "")
        rel += f" {sign} {abs(c)}*{p}" if rel else f"{sign}{abs(c)}*{p}"
    lines.append(f"relations I on Q {{ {rel} = 0; b1*c1 = 0; b1*c2 = 0; }} trunc {draw(st.integers(3, 6))}")
    lines.append("algebra P = quotient(Q, I)")
    alg = draw(name)
    lines.append(f"algebra {alg} = green({draw(st.integers(0, 6))})")
    n = draw(st.integers(2, 5))
    lines.append(f"family F = rfamily(n={n}, m={draw(st.integers(1, 3))}, k={draw(st.integers(1, n - 1))}, "
                 f"seed={draw(st.integers(0, 9))})")
    rows = draw(st.lists(st.lists(st.integers(-10 ** 20, 10 ** 20), min_size=2, max_size=2),
                         min_size=2, max_size=2))
    lines.append(f"matrix M = {rows}")
    cmds = [f"gldim {alg}", f"gldim {alg} bound {draw(st.integers(1, 9))}", "chi F", "factor-sl M",
            "resolve F S1", "dims P", "gamma F"]
    lines += draw(st.lists(st.sampled_from(cmds), max_size=5))
    sep = draw(st.sampled_from(["\n", "\n\n", " ; "]))
    return sep.join(lines) + "\n"


@settings(max_examples=60, deadline=None)
@given(documents())
def test_print_parse_round_trip(text):
    doc = parse(text)
    out = print_doc(doc)
    again = parse(out)
    assert print_doc(again) == out
    assert len(again.definitions) == len(doc.definitions)
    assert [c.name for c in again.commands] == [c.name for c in doc.commands]
    assert again.seed == doc.seed


def test_report_matches_schema(tmp_path, capsys):
    jsonschema = pytest.importorskip("jsonschema")
    from pathlib import Path
    schema = json.loads((Path(__file__).parent.parent / "docs" / "report.schema.json").read_text())
    text = EXAMPLES + G3 + "matrix N = [[2, 0], [0, 1]]\nfactor-sl N\nexport G3\nresolve F S2\n"
    for extra in ([], ["--timing"]):
        rep = json_report(tmp_path, capsys, text, *extra)
        jsonschema.validate(rep, schema)
    assert rep["exit_code"] == 1
