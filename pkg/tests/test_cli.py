import io
import sys
from pathlib import Path

import pytest

from leavittk.cli import main, parse_records

DATA = Path(__file__).parent / "data"


def run_cli(args):
    stdout, stderr = io.StringIO(), io.StringIO()
    old_out, old_err = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = stdout, stderr
    try:
        code = main(args)
    finally:
        sys.stdout, sys.stderr = old_out, old_err
    return code, stdout.getvalue(), stderr.getvalue()


def quiver_path(name: str) -> str:
    return str(DATA / name)


class TestKmod:
    def test_rose2_vanishes(self):
        code, out, err = run_cli(["kmod", quiver_path("rose2.q"), "--mod", "8"])
        assert code == 0 and err == ""
        lines = [l for l in out.splitlines() if l.startswith("K_")]
        assert len(lines) == 10
        assert all(l.endswith("= 0") for l in lines)

    def test_rose1_laurent(self):
        code, out, _ = run_cli(["kmod", quiver_path("rose1.q"), "--mod", "9"])
        assert code == 0
        assert "K_{-1}(L_Q; Z/9) = 0" in out
        assert "K_{0}(L_Q; Z/9) = Z/9" in out
        assert "K_{7}(L_Q; Z/9) = Z/9" in out

    def test_jacobson_collapse(self):
        code, out, _ = run_cli(["kmod", quiver_path("jacobson2.q"), "--mod", "5"])
        assert code == 0
        assert "K_{0}(L_Q; Z/5) = Z/5" in out
        assert "K_{1}(L_Q; Z/5) = 0" in out

    def test_hypothesis_banner(self):
        _, out, _ = run_cli(["kmod", quiver_path("rose1.q"), "--mod", "9"])
        assert out.splitlines()[0].startswith("# hypothesis: base field k")

    def test_composite_modulus_label(self):
        _, out, _ = run_cli(["kmod", quiver_path("rose3.q"), "--mod", "6"])
        assert "not a prime power" in out

    def test_window_flags(self):
        _, out, _ = run_cli(["kmod", quiver_path("rose1.q"), "--mod", "4",
                             "--from", "0", "--to", "1"])
        lines = [l for l in out.splitlines() if l.startswith("K_")]
        assert len(lines) == 2

    def test_deterministic(self):
        args = ["kmod", quiver_path("jacobson2.q"), "--mod", "8"]
        assert run_cli(args) == run_cli(args)


class TestExitCodes:
    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.q"
        bad.write_text("arrow a x y\n")
        code, out, err = run_cli(["kmod", str(bad), "--mod", "4"])
        assert code == 1
        assert out == ""
        assert "undeclared endpoint" in err

    def test_missing_file(self):
        code, out, err = run_cli(["kmod", "no-such-file.q", "--mod", "4"])
        assert code == 1 and out == ""

    def test_sources_exit_two(self, tmp_path):
        src = tmp_path / "sourced.q"
        src.write_text("vertices a b\narrow x a b\narrow l b b\n")
        code, out, err = run_cli(["kmod", str(src), "--mod", "4"])
        assert code == 2
        assert out == ""
        assert "sources" in err

    def test_bad_modulus_exit_three(self):
        for bad in ("1", "0", "x"):
            code, out, err = run_cli(["kmod", quiver_path("rose1.q"),
                                      "--mod", bad])
            assert code == 3
            assert out == ""

    def test_bad_prime_exit_three(self):
        code, _, _ = run_cli(["analyze", quiver_path("rose3.q"),
                              "--primes", "4"])
        assert code == 3

    def test_expression_error_exit_one(self):
        code, out, err = run_cli(["algebra", quiver_path("rose2.q"),
                                  "--eval", "x +"])
        assert code == 1
        assert out == ""
        assert "position" in err


class TestAnalyze:
    def test_rose3_divisible(self):
        code, out, _ = run_cli(["analyze", quiver_path("rose3.q"),
                                "--primes", "5"])
        assert code == 0
        assert "determinant = -2" in out
        assert "uniquely 5^1-divisible for n >= 0" in out

    def test_rose3_prime_two(self):
        _, out, _ = run_cli(["analyze", quiver_path("rose3.q"), "--primes", "2"])
        assert "at least one of IK_n(L_Q), IK_{n-1}(L_Q) is nonzero" in out

    def test_rose1_nonvanishing(self):
        _, out, _ = run_cli(["analyze", quiver_path("rose1.q"), "--primes", "3"])
        assert "uniquely" not in out
        assert out.count("at least one of") == 2

    def test_prime_power_syntax(self):
        code, out, _ = run_cli(["analyze", quiver_path("rose3.q"),
                                "--primes", "5^2,2"])
        assert code == 0
        assert "[modulus 5^2 = 25]" in out


class TestAlgebraCommand:
    def test_ck1(self):
        code, out, _ = run_cli(["algebra", quiver_path("rose2.q"),
                                "--eval", "x* . x"])
        assert code == 0
        assert "normal form: 1" in out

    def test_ck2(self):
        _, out, _ = run_cli(["algebra", quiver_path("rose2.q"),
                             "--eval", "x . x*"])
        assert "normal form: 1 - y y*" in out
        assert "degree 0: 1 - y y*" in out

    def test_toeplitz_sum(self):
        _, out, _ = run_cli(["algebra", quiver_path("toeplitz.q"),
                             "--eval", "(a* + b*).(a + b)"])
        assert "normal form: 1" in out

    def test_grading_lines(self):
        _, out, _ = run_cli(["algebra", quiver_path("rose2.q"),
                             "--eval", "x + y*"])
        assert "degree -1: y*" in out
        assert "degree 1: x" in out


class TestFiltrationCommand:
    def test_toeplitz_level_two(self):
        code, out, _ = run_cli(["filtration", quiver_path("toeplitz.q"),
                                "--level", "2"])
        assert code == 0
        assert "4 blocks" in out
        assert "sum of squares = 4" in out
        assert "symbolic dimension = 4" in out
        assert "dimension match: OK" in out
        assert "inclusion matrix equals diag(id, incidence^T): OK" in out
        assert "corner matrix equals zero-over-identity: OK" in out

    def test_rose3_level_one(self):
        _, out, _ = run_cli(["filtration", quiver_path("rose3.q"),
                             "--level", "1"])
        assert "1 blocks" in out
        assert "sum of squares = 9" in out
        assert "symbolic dimension = 9" in out

    def test_level_zero(self):
        _, out, _ = run_cli(["filtration", quiver_path("jacobson2.q"),
                             "--level", "0"])
        assert "2 blocks" in out


class TestSplitCommand:
    def test_equal_fixture(self):
        code, out, _ = run_cli(["split", "--n", "6", "--mod", "4"])
        assert code == 0
        assert out.strip().endswith("verdict: EQUAL")

    def test_single_factor(self):
        _, out, _ = run_cli(["split", "--n", "8", "--mod", "8"])
        assert "verdict: EQUAL" in out

    def test_trivial_sides(self):
        _, out, _ = run_cli(["split", "--n", "15", "--mod", "8"])
        assert "verdict: EQUAL" in out

    def test_small_n_rejected(self):
        code, out, _ = run_cli(["split", "--n", "1", "--mod", "4"])
        assert code == 1 and out == ""


class TestRecordsFormat:
    def test_round_trip_kmod(self):
        _, out, _ = run_cli(["kmod", quiver_path("jacobson2.q"), "--mod", "5",
                             "--format", "records"])
        records = parse_records(out)
        data = dict(records)
        assert data["modulus"] == "5"
        assert data["K_{0}"] == "Z/5"
        assert data["K_{1}"] == "0"
        # Re-rendering the records reproduces the output byte for byte.
        again = "\n".join(f"{k}={v}" for k, v in records) + "\n"
        assert again == out

    def test_round_trip_split(self):
        _, out, _ = run_cli(["split", "--n", "6", "--mod", "4",
                             "--format", "records"])
        data = dict(parse_records(out))
        assert data["verdict"] == "EQUAL"
        assert data["factors"] == "2 3"

    def test_round_trip_filtration(self):
        _, out, _ = run_cli(["filtration", quiver_path("toeplitz.q"),
                             "--level", "1", "--format", "records"])
        data = dict(parse_records(out))
        assert data["dimension_match"] == "OK"
        assert data["inclusion_match"] == "OK"

    def test_round_trip_analyze(self):
        _, out, _ = run_cli(["analyze", quiver_path("rose3.q"),
                             "--primes", "5,2", "--format", "records"])
        records = parse_records(out)
        data = dict(records)
        assert data["determinant"] == "-2"
        assert "uniquely 5^1-divisible" in data["conclusion(mod 5)"]
        again = "\n".join(f"{k}={v}" for k, v in records) + "\n"
        assert again == out

    def test_bad_record_line(self):
        with pytest.raises(ValueError):
            parse_records("no separator here\n")


class TestDeterminism:
    INVOCATIONS = [
        ["kmod", "jacobson2.q", "--mod", "8"],
        ["analyze", "rose3.q", "--primes", "2,3,5"],
        ["algebra", "rose2.q", "--eval", "x x x* x* - 1/2 y"],
        ["filtration", "jacobson2.q", "--level", "2"],
        ["split", "--n", "30", "--mod", "16"],
    ]

    @pytest.mark.parametrize("argv", INVOCATIONS, ids=lambda a: a[0])
    def test_byte_identical_reruns(self, argv):
        args = [quiver_path(a) if a.endswith(".q") else a for a in argv]
        first = run_cli(args)
        second = run_cli(args)
        assert first == second
        assert first[0] == 0


class TestSourcesAllowedInAlgebra:
    def test_algebra_engine_accepts_sources(self, tmp_path):
        # The rewriting engine works on any finite quiver; only the
        # K-theory pipelines need source-free input.
        sourced = tmp_path / "sourced.q"
        sourced.write_text("vertices a b\narrow x a b\narrow l b b\n")
        code, out, _ = run_cli(["algebra", str(sourced), "--eval", "x* . x"])
        assert code == 0
        assert "normal form: e(b)" in out
        code, _, err = run_cli(["filtration", str(sourced), "--level", "1"])
        assert code == 2
