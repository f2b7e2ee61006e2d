import csv
import io
import json
from pathlib import Path

import pytest

from bezoutkit.cli import run_cli
from bezoutkit.parse import parse_polynomial, render_polynomial
from bezoutkit.poly import RingContext

from corpus import NONCONJUGATE, NONFINITE, SQUARING, TRIANGULAR

DATA = Path(__file__).resolve().parent.parent / "data"
R3 = RingContext.standard(3)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in [
        ("squaring.sys", SQUARING),
        ("nonconjugate.sys", NONCONJUGATE),
        ("nonfinite.sys", NONFINITE),
        ("triangular.sys", TRIANGULAR),
        ("nonconjugate.mat", "0 1 0\n-1 0 1\n0 1 0\n"),
        ("identity.mat", "1 0\n0 1\n"),
        ("big.mat", "\n".join(" ".join("0" for _ in range(7)) for _ in range(7)) + "\n"),
        ("bad.sys", "vars x1 x2\nf1 = x1 +* x2\nf2 = x2\n"),
    ]:
        p = tmp_path / name
        p.write_text(text)
        paths[name] = p
    return paths


def strings_in(obj):
    if isinstance(obj, str):
        yield obj
    elif isinstance(obj, dict):
        for v in obj.values():
            yield from strings_in(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from strings_in(v)


class TestExamples:
    def test_jacobian(self, files):
        code, out, err = run("jacobian", files["squaring.sys"])
        assert (code, out, err) == (0, "8*x1*x2*x3\n", "")

    def test_bezoutian(self, files):
        code, out, _ = run("bezoutian", files["squaring.sys"])
        assert code == 0
        assert parse_polynomial(out.strip(), R3) == parse_polynomial(
            "x1*x2*x3 + x2*x3*y1 + x1*x3*y2 + x1*x2*y3 + x1*y2*y3 + x2*y1*y3 + x3*y1*y2 + y1*y2*y3", R3
        )

    def test_reduced_bezoutian_json(self, files):
        code, out, _ = run("reduced-bezoutian", files["nonconjugate.sys"], "--point", "0,0,0", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == 1
        assert doc["status"] == "ok"
        assert doc["command"] == "reduced-bezoutian"
        assert doc["input_digest"].startswith("sha256:")
        assert doc["payload"]["constant"] is True
        assert doc["payload"]["value"] == "1"

    def test_json_flag_before_subcommand(self, files):
        code, out, _ = run("--json", "jacobian", files["squaring.sys"])
        assert code == 0
        assert json.loads(out)["payload"]["jacobian"] == "8*x1*x2*x3"

    def test_nonfinite_exits_3(self, files):
        code, out, err = run("check-injectivity", files["nonfinite.sys"], "--point", "0,0")
        assert code == 3
        assert out == ""
        assert "NotFiniteFibers" in err

    def test_nonfinite_json_error(self, files):
        code, out, err = run("reduced-bezoutian", files["nonfinite.sys"], "--json")
        assert code == 3 and out == ""
        assert json.loads(err)["status"]["error"]["kind"] == "NotFiniteFibers"

    def test_quotient_dim(self, files):
        code, out, _ = run("quotient-dim", files["squaring.sys"])
        assert code == 0
        assert out.splitlines()[0] == "8"
        code, out, _ = run("quotient-dim", files["nonfinite.sys"], "--json")
        assert json.loads(out)["payload"]["dimension"] == "infinite"

    def test_coefficient_matrix(self, files):
        code, out, _ = run("coefficient-matrix", files["squaring.sys"], "--json")
        assert code == 0
        payload = json.loads(out)["payload"]
        assert len(payload["matrix"]) == 8
        assert payload["determinant"] in ("1", "-1")

    def test_global_certificate(self, files):
        code, out, _ = run("check-injectivity", files["triangular.sys"], "--global", "--json")
        assert code == 0
        payload = json.loads(out)["payload"]
        assert payload["verdict"] == "CertifiedInjective"
        assert payload["scope"] == "global"

    def test_druzkowski(self, files):
        code, out, _ = run("druzkowski", "--matrix", files["nonconjugate.mat"])
        assert code == 0
        assert out.startswith("vars x1 x2 x3\nf1 = ")
        assert len(out.splitlines()) == 4

    def test_druzkowski_rejects_identity(self, files):
        code, out, err = run("druzkowski", "--matrix", files["identity.mat"])
        assert code == 3 and out == ""
        assert "NotDruzkowski" in err

    def test_conjugate_search(self, files):
        assert run("conjugate-search", "--matrix", files["nonconjugate.mat"])[:2] == (0, "none\n")
        code, _, err = run("conjugate-search", "--matrix", files["big.mat"])
        assert code == 3 and "SearchSpaceTooLarge" in err

    def test_shipped_data_files(self):
        code, out, _ = run("jacobian", DATA / "squaring.sys")
        assert (code, out) == (0, "8*x1*x2*x3\n")
        code, out, _ = run("reduced-bezoutian", DATA / "nonconjugate.sys", "--json")
        assert code == 0 and json.loads(out)["payload"]["value"] == "1"


class TestContracts:
    @pytest.mark.parametrize(
        "argv",
        [
            ("bezoutian", "squaring.sys"),
            ("reduced-bezoutian", "squaring.sys", "--point", "1,-2,3/4", "--json"),
            ("check-injectivity", "nonconjugate.sys", "--point", "1,1,1"),
            ("coefficient-matrix", "squaring.sys"),
            ("experiment", "q411", "--matrix", "nonconjugate.mat", "--samples", "4", "--seed", "2", "--range", "2"),
        ],
    )
    def test_byte_identical(self, files, argv):
        argv = [files.get(a, a) for a in argv]
        first = run(*argv)
        second = run(*argv)
        assert first[0] == 0
        assert first == second

    def test_json_polynomials_reparse(self, files):
        code, out, _ = run("check-injectivity", files["nonconjugate.sys"], "--point", "1,-1,2", "--json")
        payload = json.loads(out)["payload"]
        for key in ("bezoutian", "jacobian"):
            p = parse_polynomial(payload[key], R3)
            assert render_polynomial(p) == payload[key]
        ev = payload["evidence"]
        assert render_polynomial(parse_polynomial(ev["reduced_bezoutian"], R3)) == ev["reduced_bezoutian"]

    def test_usage_errors_exit_1(self, files):
        for argv in [(), ("frobnicate",), ("check-injectivity", files["squaring.sys"]),
                     ("check-injectivity", files["squaring.sys"], "--global", "--point", "0,0,0"),
                     ("experiment", "q411", "--matrix", files["nonconjugate.mat"])]:
            code, out, err = run(*argv)
            assert code == 1, argv
            assert out == ""
            assert "usage:" in err

    def test_non_positive_samples_is_usage_error(self, files):
        code, out, _ = run("experiment", "q411", "--matrix", files["nonconjugate.mat"],
                           "--samples", "0", "--seed", "1", "--range", "1")
        assert code == 1 and out == ""

    def test_parse_errors_exit_2(self, files, tmp_path):
        code, out, err = run("bezoutian", files["bad.sys"])
        assert code == 2 and out == ""
        assert "2:" in err or "line 2" in err
        assert run("bezoutian", tmp_path / "missing.sys")[0] == 2
        assert run("reduced-bezoutian", files["squaring.sys"], "--point", "1,2")[0] == 2
        assert run("reduced-bezoutian", files["squaring.sys"], "--point", "1,a,2")[0] == 2


class TestExperiment:
    def test_csv(self, files, tmp_path):
        target = tmp_path / "out.csv"
        code, out, _ = run("experiment", "q411", "--matrix", files["nonconjugate.mat"],
                           "--samples", "5", "--seed", "3", "--range", "3", "--csv", target)
        assert code == 0
        with open(target, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["sample_index", "q", "constant_value", "is_one", "elapsed_ms"]
        assert len(rows) == 6
        assert rows[1][:4] == ["0", "0;0;0", "1", "true"]
        assert all(r[3] == "true" for r in rows[1:])
        assert out.splitlines()[-1] == "all_one: true"

    def test_json(self, files):
        code, out, _ = run("experiment", "q411", "--matrix", files["nonconjugate.mat"],
                           "--samples", "3", "--seed", "0", "--range", "1", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["command"] == "experiment q411"
        assert [r["sample_index"] for r in doc["payload"]["records"]] == [0, 1, 2]
        assert doc["payload"]["all_one"] is True

    def test_not_druzkowski_before_output(self, files):
        code, out, err = run("experiment", "q411", "--matrix", files["identity.mat"],
                             "--samples", "3", "--seed", "0", "--range", "1")
        assert code == 3 and out == ""
