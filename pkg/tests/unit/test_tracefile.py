import pytest

from fwlp.constants import TRACE_HEADER
from fwlp.core.fwlpp import run_fwlpp
from fwlp.harness.tracefile import TraceRow, read_trace, write_trace
from fwlp.lib.errors import MalformedFieldError
from tests.helpers.instances import generated


def test_trace_survives_a_file(tmp_path):
    instance, params = generated(0)
    params.max_iters = 50
    params.trace_every = 10
    trace = run_fwlpp(instance.problem, params)
    assert trace.records

    path = tmp_path / "trace.csv"
    write_trace(path, trace.records)
    assert path.read_text().splitlines()[0] == ",".join(TRACE_HEADER)
    assert read_trace(path) == [TraceRow.from_record(r) for r in trace.records]


def test_floats_are_bit_exact():
    row = TraceRow(3, 0.1, 1 / 3, -2e-17, 1e300, 0.0, 5e-324, -0.0, 7.25, 12, 99)
    assert TraceRow.from_strings(row.as_strings()) == row


def test_wrong_header(tmp_path):
    path = tmp_path / "trace.csv"
    path.write_text("k,gap\n3,0.5\n")
    with pytest.raises(MalformedFieldError):
        read_trace(path)


def test_short_row(tmp_path):
    path = tmp_path / "trace.csv"
    path.write_text(",".join(TRACE_HEADER) + "\n3,0.5\n")
    with pytest.raises(MalformedFieldError):
        read_trace(path)
