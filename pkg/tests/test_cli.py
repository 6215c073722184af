"""End-to-end tests for the command-line interface.

Every test drives :func:`ptmoments.cli.main` with an explicit argv vector and
inspects the exit code together with captured stdout/stderr, exactly as a
shell invocation would.  Moment tables are written to per-test temporary
directories and read back through the same CLI, so the JSON round trip is
exercised as a whole rather than through internal helpers.
"""

from __future__ import annotations

import contextlib
import io
import json
import math

import numpy as np
import pytest

from ptmoments.cli import (
    EXIT_IO,
    EXIT_MISSING_MOMENTS,
    EXIT_NO_CERTIFICATE,
    EXIT_NO_NEGATIVITY,
    EXIT_OK,
    EXIT_USAGE,
    main,
    parse_complex,
)


def invoke(argv):
    """Run the CLI entry point and capture (exit_code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def write_table(tmp_path, name, argv):
    """Generate a moment table via the CLI and return its path."""
    path = tmp_path / name
    code, out, err = invoke(argv + ["--out", str(path)])
    assert code == EXIT_OK, err
    assert out == ""
    return path


class TestParseComplex:
    def test_pure_real(self):
        assert parse_complex("0.5") == 0.5 + 0j

    def test_interior_whitespace_stripped(self):
        assert parse_complex(" 1 + 2i ") == 1 + 2j

    def test_uppercase_imaginary_unit(self):
        assert parse_complex("-2I") == -2j

    def test_engineering_j_suffix(self):
        assert parse_complex("3-4j") == 3 - 4j

    def test_garbage_rejected(self):
        with pytest.raises(ValueError):
            parse_complex("zebra")

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            parse_complex("")


class TestIndexNth:
    def test_identity_position(self):
        code, out, err = invoke(["index", "nth", "2", "1"])
        assert code == EXIT_OK
        assert out == "(0,0)  1\n"

    def test_single_mode_annihilator(self):
        code, out, err = invoke(["index", "nth", "2", "2"])
        assert code == EXIT_OK
        assert out == "(1,0)  a1\n"

    def test_four_mode_pair_position(self):
        code, out, err = invoke(["index", "nth", "8", "13"])
        assert code == EXIT_OK
        assert out == "(1,0,1,0,0,0,0,0)  a1 a2\n"

    def test_odd_dimension_prints_tuple_only(self):
        code, out, err = invoke(["index", "nth", "3", "2"])
        assert code == EXIT_OK
        assert out == "(1,0,0)\n"

    def test_position_zero_rejected(self):
        code, out, err = invoke(["index", "nth", "2", "0"])
        assert code == EXIT_USAGE
        assert "position" in err


class TestIndexOf:
    def test_two_mode_pair(self):
        code, out, err = invoke(["index", "of", "a1 a2", "--modes", "2"])
        assert code == EXIT_OK
        assert out == "9\n"

    def test_four_mode_pairs(self):
        expected = {"a1 a2": "13", "a3 a4": "35", "a1 a4": "31"}
        for monomial, position in expected.items():
            code, out, err = invoke(["index", "of", monomial, "--modes", "4"])
            assert code == EXIT_OK
            assert out == position + "\n"

    def test_modes_flag_required(self):
        code, out, err = invoke(["index", "of", "a1 a2"])
        assert code == EXIT_USAGE

    def test_mode_out_of_range(self):
        code, out, err = invoke(["index", "of", "a5 a2", "--modes", "2"])
        assert code == EXIT_USAGE
        assert "mode 5" in err


class TestMomentsGen:
    def test_coherent_table_on_stdout(self):
        code, out, err = invoke(
            ["moments-gen", "--state", "coherent", "--gamma", "0.5", "--order", "2"]
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["modes"] == 1
        assert doc["tolerance"] == pytest.approx(1e-9)
        photon = [e for e in doc["entries"] if e["k"] == [1] and e["l"] == [1]]
        assert len(photon) == 1
        assert photon[0]["re"] == pytest.approx(0.25)
        assert photon[0]["im"] == 0.0

    def test_tmsv_anomalous_moment(self, tmp_path):
        path = write_table(
            tmp_path,
            "tmsv.json",
            ["moments-gen", "--state", "tmsv", "--r", "0.6", "--order", "2"],
        )
        doc = json.loads(path.read_text())
        assert doc["modes"] == 2
        pair = [e for e in doc["entries"] if e["k"] == [1, 1] and e["l"] == [0, 0]]
        assert pair[0]["re"] == pytest.approx(math.sinh(0.6) * math.cosh(0.6), rel=1e-11)

    def test_every_entry_within_declared_order(self):
        code, out, err = invoke(
            ["moments-gen", "--state", "coherent", "--gamma", "0.2,0.1", "--order", "3"]
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        weights = {sum(e["k"]) + sum(e["l"]) for e in doc["entries"]}
        assert max(weights) == 3
        assert min(weights) == 0

    def test_output_is_deterministic(self):
        argv = ["moments-gen", "--state", "wstate", "--alpha", "0.3", "--modes", "3", "--order", "2"]
        first = invoke(argv)
        second = invoke(argv)
        assert first == second
        assert first[0] == EXIT_OK


class TestScan:
    def test_entangled_table_yields_findings(self, tmp_path):
        path = write_table(
            tmp_path,
            "tmsv4.json",
            ["moments-gen", "--state", "tmsv", "--r", "0.6", "--order", "4"],
        )
        code, out, err = invoke(["scan", "--moments", str(path)])
        assert code == EXIT_OK
        report = json.loads(out)
        assert sorted(report.keys()) == ["budget", "findings", "inconclusive", "modes", "note"]
        assert report["modes"] == 2
        assert report["findings"], "two-mode squeezing must produce a negative minor"
        first = report["findings"][0]
        assert first["verdict"] == "negative"
        assert first["det"] < -1e-6
        assert first["I"] == [1]
        assert all(isinstance(p, int) for p in first["R"])

    def test_separable_table_exits_without_negativity(self, tmp_path):
        path = write_table(
            tmp_path,
            "coh.json",
            ["moments-gen", "--state", "coherent", "--gamma", "0.2,0.3", "--order", "4"],
        )
        code, out, err = invoke(["scan", "--moments", str(path)])
        assert code == EXIT_NO_NEGATIVITY
        report = json.loads(out)
        assert report["findings"] == []
        assert report["inconclusive"] == [[1]]

    def test_single_mode_table_has_no_cuts(self, tmp_path):
        path = write_table(
            tmp_path,
            "coh1.json",
            ["moments-gen", "--state", "coherent", "--gamma", "0.4", "--order", "4"],
        )
        code, out, err = invoke(["scan", "--moments", str(path)])
        assert code == EXIT_NO_NEGATIVITY
        assert json.loads(out)["findings"] == []

    def test_order_exceeding_table_reports_missing_keys(self, tmp_path):
        path = write_table(
            tmp_path,
            "tmsv2.json",
            ["moments-gen", "--state", "tmsv", "--r", "0.6", "--order", "2"],
        )
        code, out, err = invoke(["scan", "--moments", str(path), "--order", "2"])
        assert code == EXIT_MISSING_MOMENTS
        assert "moments unresolved" in err
        assert "a1^3" in err and "ad2^4" in err

    def test_default_order_clamps_to_table(self, tmp_path):
        path = write_table(
            tmp_path,
            "tmsv2.json",
            ["moments-gen", "--state", "tmsv", "--r", "0.6", "--order", "2"],
        )
        code, out, err = invoke(["scan", "--moments", str(path)])
        assert code == EXIT_OK
        finding = json.loads(out)["findings"][0]
        assert finding["R"] == [2, 4]
        assert finding["det"] == pytest.approx(-math.sinh(0.6) ** 2, rel=1e-10)

    def test_report_written_to_file(self, tmp_path):
        table = write_table(
            tmp_path,
            "tmsv4.json",
            ["moments-gen", "--state", "tmsv", "--r", "0.6", "--order", "4"],
        )
        out_path = tmp_path / "report.json"
        code, out, err = invoke(["scan", "--moments", str(table), "--out", str(out_path)])
        assert code == EXIT_OK
        assert out == ""
        assert json.loads(out_path.read_text())["findings"]


class TestCertify:
    def test_wstate_full_certificate(self):
        code, out, err = invoke(
            ["certify", "--state", "wstate", "--alpha", "0.3", "--modes", "4"]
        )
        assert code == EXIT_OK
        report = json.loads(out)
        assert sorted(report.keys()) == [
            "bipartitions",
            "budget",
            "certificate",
            "excluded_decompositions",
            "modes",
            "note",
        ]
        assert report["certificate"] is True
        assert report["modes"] == 4
        assert len(report["bipartitions"]) == 7
        assert all(entry["verdict"] == "NPT" for entry in report["bipartitions"])
        assert len(report["excluded_decompositions"]) == 14
        first = report["bipartitions"][0]
        assert first["I"] == [1]
        assert first["minor"]["R"] == [2, 22]
        assert first["minor"]["det"] == pytest.approx(-1.592126931410287e-4, rel=1e-9)

    def test_separable_state_refused(self):
        code, out, err = invoke(["certify", "--state", "coherent", "--gamma", "0.1,0.1"])
        assert code == EXIT_NO_CERTIFICATE
        report = json.loads(out)
        assert report["certificate"] is False
        assert report["excluded_decompositions"] == []
        assert "separability" in report["note"]

    def test_moments_file_input(self, tmp_path):
        path = write_table(
            tmp_path,
            "tmsv4.json",
            ["moments-gen", "--state", "tmsv", "--r", "0.6", "--order", "4"],
        )
        code, out, err = invoke(["certify", "--moments", str(path)])
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["certificate"] is True
        assert report["excluded_decompositions"] == ["{1|2}"]

    def test_fock_file_input(self, tmp_path):
        cutoff = 16
        amplitudes = np.zeros((cutoff, cutoff))
        ratio = math.tanh(0.5)
        for n in range(cutoff):
            amplitudes[n, n] = ratio**n / math.cosh(0.5)
        path = tmp_path / "state.npy"
        np.save(path, amplitudes.reshape(-1))
        code, out, err = invoke(
            [
                "certify",
                "--state",
                "fock-file",
                "--fock-file",
                str(path),
                "--cutoffs",
                "16,16",
            ]
        )
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["certificate"] is True
        assert report["excluded_decompositions"] == ["{1|2}"]

    def test_moments_and_state_mutually_exclusive(self, tmp_path):
        path = write_table(
            tmp_path,
            "tmsv2.json",
            ["moments-gen", "--state", "tmsv", "--r", "0.6", "--order", "2"],
        )
        code, out, err = invoke(
            ["certify", "--state", "wstate", "--alpha", "0.3", "--moments", str(path)]
        )
        assert code == EXIT_USAGE
        assert "exactly one" in err

    def test_source_required(self):
        code, out, err = invoke(["certify"])
        assert code == EXIT_USAGE
        assert "exactly one" in err

    def test_alpha_list_must_match_modes(self):
        code, out, err = invoke(
            ["certify", "--state", "wstate", "--alpha", "0.3,0.2", "--modes", "4"]
        )
        assert code == EXIT_USAGE

    def test_alpha_broadcast_matches_explicit_list(self):
        single = invoke(["certify", "--state", "wstate", "--alpha", "0.3", "--modes", "4"])
        explicit = invoke(
            ["certify", "--state", "wstate", "--alpha", "0.3,0.3,0.3,0.3", "--modes", "4"]
        )
        assert single == explicit

    def test_output_is_deterministic(self):
        argv = ["certify", "--state", "wstate", "--alpha", "0.3", "--modes", "4"]
        assert invoke(argv) == invoke(argv)


class TestFigure1:
    def test_single_point_rows(self):
        code, out, err = invoke(["figure1", "--alphas", "0.3", "--nbars", "0"])
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "param,nbar,minor,I,value"
        assert len(lines) == 1 + 7
        labels = [tuple(line.split(",")[2:4]) for line in lines[1:]]
        assert labels == [
            ("d1", "1"),
            ("d1", "2"),
            ("d1", "3"),
            ("d1", "1+2+3"),
            ("d2", "1+2"),
            ("d2", "1+3"),
            ("d2", "2+3"),
        ]
        values = [float(line.split(",")[4]) for line in lines[1:]]
        assert all(v < 0 for v in values), "symmetric four-mode state shows negativity"

    def test_grid_size_and_vacuum_point(self):
        code, out, err = invoke(["figure1", "--alphas", "0,0.3", "--nbars", "0,0.01"])
        assert code == EXIT_OK
        lines = out.splitlines()
        assert len(lines) == 1 + 2 * 2 * 7
        first = lines[1].split(",")
        assert first[:2] == ["0", "0"]
        assert float(first[4]) == 0.0

    def test_csv_written_to_file(self, tmp_path):
        path = tmp_path / "fig.csv"
        code, out, err = invoke(
            ["figure1", "--alphas", "0.3", "--nbars", "0", "--out", str(path)]
        )
        assert code == EXIT_OK
        assert out == ""
        text = path.read_text()
        assert text.startswith("param,nbar,minor,I,value\n")
        assert text.endswith("\n")

    def test_empty_alpha_grid_rejected(self):
        code, out, err = invoke(["figure1", "--alphas", "", "--nbars", "0"])
        assert code == EXIT_USAGE
        assert "alpha" in err


class TestConfigFile:
    def test_config_supplies_missing_arguments(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"state": "tmsv", "r": 0.6, "order": 2}))
        code, out, err = invoke(["moments-gen", "--config", str(cfg)])
        assert code == EXIT_OK
        doc = json.loads(out)
        pair = [e for e in doc["entries"] if e["k"] == [1, 1] and e["l"] == [0, 0]]
        assert pair[0]["re"] == pytest.approx(math.sinh(0.6) * math.cosh(0.6), rel=1e-11)

    def test_command_line_overrides_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"state": "tmsv", "r": 0.6, "order": 2}))
        code, out, err = invoke(["moments-gen", "--config", str(cfg), "--r", "0.9"])
        assert code == EXIT_OK
        doc = json.loads(out)
        pair = [e for e in doc["entries"] if e["k"] == [1, 1] and e["l"] == [0, 0]]
        assert pair[0]["re"] == pytest.approx(math.sinh(0.9) * math.cosh(0.9), rel=1e-11)

    def test_unknown_config_key_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"state": "tmsv", "r": 0.6, "bogus": 1}))
        code, out, err = invoke(["moments-gen", "--config", str(cfg)])
        assert code == EXIT_USAGE
        assert "bogus" in err

    def test_non_object_config_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("[1, 2]")
        code, out, err = invoke(["moments-gen", "--config", str(cfg)])
        assert code == EXIT_USAGE
        assert "JSON object" in err

    def test_missing_config_file_is_io_error(self, tmp_path):
        code, out, err = invoke(
            ["moments-gen", "--config", str(tmp_path / "nope.json")]
        )
        assert code == EXIT_IO


class TestTopLevelErrors:
    def test_help_exits_cleanly(self):
        code, out, err = invoke(["--help"])
        assert code == EXIT_OK
        assert "usage" in out.lower()

    def test_unknown_subcommand(self):
        code, out, err = invoke(["bogus-subcommand"])
        assert code == EXIT_USAGE

    def test_no_arguments(self):
        code, out, err = invoke([])
        assert code == EXIT_USAGE

    def test_missing_moment_table_is_io_error(self):
        code, out, err = invoke(["scan", "--moments", "no_such_file.json"])
        assert code == EXIT_IO
        assert "No such file" in err

    def test_corrupt_moment_table_is_data_error(self, tmp_path):
        path = tmp_path / "garbage.json"
        path.write_text("{not json")
        code, out, err = invoke(["scan", "--moments", str(path)])
        assert code == EXIT_USAGE
        assert "JSON" in err
