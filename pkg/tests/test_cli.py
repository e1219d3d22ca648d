import json

import pytest

from multiperfect.cli import main, parse_int_expr


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_int_expr():
    assert parse_int_expr("120") == 120
    assert parse_int_expr("41^13*5^4") == 41**13 * 5**4
    assert parse_int_expr("2^3 * 3") == 24
    with pytest.raises(Exception):
        parse_int_expr("41^^2")


def test_valuation_subcommand(capsys):
    code, out, _ = run(capsys, "valuation", "--p", "7", "--e", "3")
    assert code == 0
    data = json.loads(out)
    assert data["nu2_sigma"] == 4
    assert data["nu2_sigma_minus_one"] == 0
    assert data["broughan_zhou_holds"] is True


def test_valuation_rejects_composite(capsys):
    code, _, err = run(capsys, "valuation", "--p", "6", "--e", "3")
    assert code == 1
    assert "not prime" in err


def test_shapes_k2(capsys):
    code, out, _ = run(capsys, "shapes", "--k", "2")
    assert code == 0
    shapes = [json.loads(line) for line in out.splitlines()]
    assert shapes == [{
        "k": 2, "s": 1, "a": [0], "b": [0],
        "prime_classes": [{"residue": 1, "modulus": 4}],
        "exponent_classes": [{"residue": 1, "modulus": 4}],
    }]


def test_shapes_k4(capsys):
    code, out, _ = run(capsys, "shapes", "--k", "4")
    shapes = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(shapes) == 3


def test_split_subcommand(capsys):
    code, out, _ = run(capsys, "split", "--n", "3^3*5^2")
    data = json.loads(out)
    assert code == 0
    assert data["euler_part"] == [[3, 3]]
    assert data["square_part"] == [[5, 2]]
    assert data["identity_holds"] is True


def test_check_euler_part_subcommand(capsys):
    code, out, _ = run(capsys, "check-euler-part", "--q", "5", "--beta", "1",
                       "--others", "13:1")
    data = json.loads(out)
    assert code == 0 and data["divides"] is True
    code, out, _ = run(capsys, "check-euler-part", "--q", "5", "--beta", "1",
                       "--others", "11:2")
    assert json.loads(out)["divides"] is False


def test_mod8_subcommand(capsys):
    code, out, _ = run(capsys, "mod8", "--pi", "13", "--alpha", "1",
                       "--m-square", "5^2")
    data = json.loads(out)
    assert code == 0
    assert data["class"] == "shifted_by_4"
    assert data["sigma_m_square_mod4"] == 3


def test_certify_exit_codes(capsys):
    code, out, _ = run(capsys, "certify", "--pi", "30029",
                       "--m-constraint", "all-3-mod-4")
    assert code == 2
    assert json.loads(out)["kind"] == "omega_parity"
    # no obstruction: exit 0
    code, out, _ = run(capsys, "certify", "--pi", "5", "--alpha", "5",
                       "--m-square", "9")
    assert code == 0
    assert json.loads(out)["certificate"] is None
    # composite pi: usage/validation error, exit 1
    code, _, err = run(capsys, "certify", "--pi", "209",
                       "--m-constraint", "all-3-mod-4")
    assert code == 1
    assert "composite" in err


def test_certify_writes_file(tmp_path, capsys):
    out_file = tmp_path / "cert.json"
    code, _, _ = run(capsys, "certify", "--pi", "41", "--alpha", "13",
                     "--q", "5", "--out", str(out_file))
    assert code == 2
    cert = json.loads(out_file.read_text())
    assert cert["kind"] == "fermat_divisibility_contradiction"
    assert cert["witnesses"]["sigma_euler_factor_mod_q"] == 4
    from multiperfect.euler_part import check_certificate

    assert check_certificate(cert)


def test_search_subcommand(capsys):
    code, out, _ = run(capsys, "search", "--k", "2", "--bound", "10000")
    data = json.loads(out)
    assert code == 0
    assert data["hits"] == [6, 28, 496, 8128]
    assert data["pruned_count"] == 0
    assert "elapsed_ms" in data


def test_search_deterministic_output(capsys):
    def strip_elapsed(payload):
        d = json.loads(payload)
        d.pop("elapsed_ms")
        return d

    _, out1, _ = run(capsys, "search", "--k", "2", "--bound", "2000")
    _, out2, _ = run(capsys, "search", "--k", "2", "--bound", "2000",
                     "--workers", "3")
    assert strip_elapsed(out1) == strip_elapsed(out2)


def test_search_report_dir(tmp_path, capsys):
    code, out, _ = run(capsys, "search", "--k", "2", "--bound", "1000",
                       "--report-dir", str(tmp_path))
    assert code == 0
    data = json.loads(out)
    csv_text = (tmp_path / "hits.csv").read_text().splitlines()
    assert csv_text[0] == "n,sigma,abundancy"
    assert csv_text[1].startswith("6,12")
    assert (tmp_path / "abundancy.png").stat().st_size > 0
    assert data["report_files"]["csv"].endswith("hits.csv")


def test_oracle_subcommand(capsys):
    code, out, _ = run(capsys, "oracle", "--family", "mod16-tables")
    data = json.loads(out)
    assert code == 0 and data["passed"] is True
    code, _, err = run(capsys, "oracle", "--family", "nope")
    assert code == 1 and "unknown oracle family" in err


def test_abundancy_subcommand(capsys):
    code, out, _ = run(capsys, "abundancy", "--n", "120")
    data = json.loads(out)
    assert code == 0
    assert (data["numerator"], data["denominator"]) == (3, 1)


def test_text_format(capsys):
    code, out, _ = run(capsys, "--format", "text", "abundancy", "--n", "6")
    assert code == 0
    assert "sigma(6)/6 = 2/1" in out


def test_config_file_defaults(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "mp.conf"
    cfg.write_text("bound = 1000\nworkers = 2\n")
    monkeypatch.setenv("MULTIPERFECT_CONFIG", str(cfg))
    code, out, _ = run(capsys, "search", "--k", "2")
    assert code == 0
    assert json.loads(out)["hits"] == [6, 28, 496]


def test_flag_overrides_config(tmp_path, capsys):
    cfg = tmp_path / "mp.conf"
    cfg.write_text("bound = 10\n")
    code, out, _ = run(capsys, "--config", str(cfg), "search", "--k", "2",
                       "--bound", "500")
    assert json.loads(out)["hits"] == [6, 28, 496]


def test_unknown_subcommand_exit_1(capsys):
    assert main(["frobnicate"]) == 1


def test_json_roundtrip(capsys):
    _, out, _ = run(capsys, "split", "--n", "105")
    assert json.loads(json.dumps(json.loads(out))) == json.loads(out)
