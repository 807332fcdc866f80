import logging

import pytest

from fwlp.cli import main
from fwlp.constants import EXIT_BUDGET, EXIT_CONVERGED, EXIT_INPUT_ERROR, TRACE_HEADER
from fwlp.harness.tracefile import read_trace
from fwlp.lib.log import logger

GENERATE = ["solve", "--generate", "0,5,10,0.5", "--max-iters", "200", "--trace-every", "50", "--quiet"]

TINY = """\
NAME TINY
ROWS
 N COST
 E R1
COLUMNS
 X COST 1 R1 1
RHS
 RHS R1 1
ENDATA
"""


def test_generate_writes_trace(tmp_path, capsys):
    path = tmp_path / "trace.csv"
    code = main(GENERATE + ["--trace", str(path)])
    assert code in (EXIT_CONVERGED, EXIT_BUDGET)
    assert path.read_text().splitlines()[0] == ",".join(TRACE_HEADER)
    out = capsys.readouterr().out
    assert "status:" in out
    assert "column touches:" in out


def test_summary_values_line_up(capsys):
    main(GENERATE + ["--max-iters", "2000", "--trace-every", "1000", "--tol", "0"])
    out = capsys.readouterr().out.splitlines()
    summary = out[next(i for i, line in enumerate(out) if line.startswith("status:")):]
    assert any(line.startswith("U (k=2000):") for line in summary)
    columns = set()
    for line in summary:
        label, _, rest = line.partition(":")
        columns.add(len(label) + 1 + len(rest) - len(rest.lstrip()))
    assert len(columns) == 1


def test_quiet_sets_package_log_level():
    main(GENERATE)
    assert logger.level == logging.WARNING
    main(GENERATE[:-1])
    assert logger.level == logging.INFO


def test_algorithms_give_different_traces(tmp_path):
    paths = {}
    for algo in ("fwlp", "fwlp-p"):
        paths[algo] = tmp_path / f"{algo}.csv"
        main(GENERATE + ["--algo", algo, "--tol", "0", "--trace", str(paths[algo])])
    first, second = read_trace(paths["fwlp"]), read_trace(paths["fwlp-p"])
    assert [row.k for row in first] == [row.k for row in second] == [50, 100, 150, 200]
    assert [row.U for row in first] != [row.U for row in second]


def test_mps_input_needs_radii(tmp_path, capsys):
    path = tmp_path / "tiny.mps"
    path.write_text(TINY)
    assert main(["solve", "--input", str(path), "--quiet"]) == EXIT_INPUT_ERROR
    assert "--xi" in capsys.readouterr().err


def test_mps_input_solves(tmp_path, capsys):
    path = tmp_path / "tiny.mps"
    path.write_text(TINY)
    code = main(["solve", "--input", str(path), "--xi", "2", "--eta", "2", "--max-iters", "100", "--quiet"])
    assert code in (EXIT_CONVERGED, EXIT_BUDGET)
    assert "objective:" in capsys.readouterr().out


def test_bundled_example(capsys):
    code = main(["solve", "--example", "transport", "--fixed-mps", "--xi", "110", "--eta", "20",
                 "--max-iters", "100", "--screening", "on", "--quiet"])
    assert code in (EXIT_CONVERGED, EXIT_BUDGET)
    assert "objective:" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["solve", "--example", "nowhere", "--xi", "1", "--eta", "1"],
    ["solve", "--generate", "1,2"],
    ["solve", "--generate", "0,5,5,0.5"],
    ["solve", "--input", "/nonexistent/file.mps", "--xi", "1", "--eta", "1"],
    ["solve", "--generate", "0,5,10,0.5", "--xi", "-1"],
])
def test_input_errors(argv):
    assert main(argv + ["--quiet"]) == EXIT_INPUT_ERROR


@pytest.mark.parametrize("argv", [
    ["solve"],
    ["solve", "--generate", "0,5,10,0.5", "--example", "transport"],
    ["solve", "--example", "transport", "--algo", "simplex"],
    [],
])
def test_usage_errors_exit_with_one(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == EXIT_INPUT_ERROR
