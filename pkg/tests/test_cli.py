"""
Тесты командной строки phaseroot
"""
import json
from argparse import Namespace

import pytest

import phaseroot
from middlewares import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, CommandMiddleware
from numerics import ConvergenceFailureError, OutputSpec
from services.problem_service import problem_service


def test_legendre_text(capsys):
    assert phaseroot.run(["legendre", "2", "--format", "text"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    node, weight = map(float, lines[0].split())
    assert node == pytest.approx(-0.5773502691896257, abs=1e-13)
    assert weight == pytest.approx(1.0, rel=1e-13)


def test_jacobi_json(capsys):
    assert phaseroot.run(["jacobi", "5", "--gamma", "0.5", "--zeta", "-0.5", "--format", "json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["family"] == "jacobi"
    assert document["n"] == 5
    assert document["params"] == {"gamma": 0.5, "zeta": -0.5}
    assert len(document["nodes"]) == len(document["weights"]) == 5


def test_precision_rounds_output(capsys):
    assert phaseroot.run(["laguerre", "2", "--precision", "3"]) == EXIT_OK
    first = capsys.readouterr().out.splitlines()[0].split()
    assert first == ["0.586", "0.854"]


def test_count_only(capsys):
    assert phaseroot.run(["roots", "--problem", "artificial", "--lambda", "1000", "--count-only"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "2096"


def test_kth_root_json(capsys, artificial_solution):
    argv = ["roots", "--problem", "artificial", "--lambda", "1000", "--kth", "1", "--format", "json"]
    assert phaseroot.run(argv) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["k"] == 1
    assert document["n"] == 2096
    # корень y(0) = 0 не нумеруется, первый корень лежит внутри (0, 1]
    assert document["roots"] == [pytest.approx(artificial_solution.kth(2), rel=1e-13)]
    assert document["roots"][0] > 0.0


def test_kth_beyond_last_root_is_numerical_failure(capsys):
    argv = ["roots", "--problem", "artificial", "--lambda", "1000", "--kth", "2097"]
    assert phaseroot.run(argv) == EXIT_NUMERICAL
    assert "[root-index-out-of-range]" in capsys.readouterr().err


def test_bessel_to_file(tmp_path, capsys):
    target = tmp_path / "out" / "roots.txt"
    assert phaseroot.run(["bessel", "--nu", "10", "--count", "3", "--out", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    roots = [float(line) for line in target.read_text(encoding="utf-8").splitlines()]
    assert roots == pytest.approx([14.4755006865545, 18.4334636669666, 22.0469853646978], rel=1e-13)


def test_thread_count_does_not_change_output(capsys):
    base = ["roots", "--problem", "artificial", "--lambda", "1000"]
    assert phaseroot.run(base + ["--threads", "1"]) == EXIT_OK
    single = capsys.readouterr().out
    assert phaseroot.run(base + ["--threads", "4"]) == EXIT_OK
    assert capsys.readouterr().out == single
    assert len(single.splitlines()) == 2096


@pytest.mark.parametrize(
    "argv",
    [
        ["legendre", "0"],
        ["legendre", "10", "--precision", "18"],
        ["jacobi", "10", "--gamma", "-1.5", "--zeta", "0"],
        ["bessel", "--nu", "0.5", "--count", "3"],
        ["roots", "--problem", "artificial", "--lambda", "1000", "--kth", "2", "--count-only"],
        ["quadrature", "10"],
    ],
)
def test_usage_errors(argv, capsys):
    assert phaseroot.run(argv) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_numerical_failure(monkeypatch, capsys):
    def failing(lam, opts=None):
        raise ConvergenceFailureError("no convergence")

    monkeypatch.setattr(problem_service, "artificial", failing)
    assert phaseroot.run(["roots", "--problem", "artificial", "--lambda", "10"]) == EXIT_NUMERICAL
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "[convergence-failure]" in captured.err


def test_unwritable_destination(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("", encoding="utf-8")
    code = phaseroot.run(["legendre", "3", "--out", str(blocker / "nested.txt")])
    assert code == EXIT_USAGE
    assert "cannot write" in capsys.readouterr().err


def test_middleware_returns_ok_for_plain_handler(capsys):
    middleware = CommandMiddleware(slow_threshold=0.0)
    code = middleware(lambda args, output: "done\n", Namespace(command="noop"), OutputSpec())
    assert code == EXIT_OK
    assert capsys.readouterr().out == "done\n"


@pytest.mark.slow
def test_legendre_output_is_byte_identical_across_threads(capsys):
    outputs = []
    for threads in ("1", "4", "16"):
        assert phaseroot.run(["legendre", "10000", "--threads", threads]) == EXIT_OK
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] == outputs[2]
