"""
Tests de la exportación CSV
"""
import io

from backend.analytics import MetricsReport
from backend.reports import ERROR_SENTINEL, format_report, write_summary_csv, write_trace_csv
from backend.simulation import run_closed_loop


def _report(**overrides):
    values = dict(
        switch_count=3, total_variation=1.5, settling_time=None, steady_control_mean=0.25,
        steady_control_tv=0.0, peak_control=1.0, peak_error=10.0,
    )
    values.update(overrides)
    return MetricsReport(**values)


def test_summary_keeps_input_order_and_marks_failures():
    rows = [_report().summary_row("b"), None, _report(settling_time=12.5).summary_row("a")]
    buffer = io.StringIO()
    write_summary_csv(rows, ["b", "broken", "a"], buffer)

    lines = buffer.getvalue().split("\n")
    assert lines[0] == "name,switch_count,total_variation,settling_time,steady_control_mean,steady_control_tv,peak_control"
    assert lines[1] == "b,3,1.5,none,0.25,0,1"
    assert lines[2] == ",".join(["broken"] + [ERROR_SENTINEL] * 6)
    assert lines[3] == "a,3,1.5,12.5,0.25,0,1"
    assert lines[4] == ""


def test_trace_csv_uses_significant_digits(short_scenario):
    trace = run_closed_loop(short_scenario("smc1", duration=0.01))
    buffer = io.StringIO()
    write_trace_csv(trace, buffer, digits=4)

    lines = buffer.getvalue().splitlines()
    assert lines[0] == "t,z,theta,e,s,u"
    assert len(lines) == 12
    assert lines[1] == "0,0,0,10,10,3"
    assert all(len(value.lstrip("-").replace(".", "").split("e")[0].lstrip("0")) <= 4
               for line in lines[1:] for value in line.split(","))


def test_format_report():
    text = format_report(_report(aborted=True), "smc1")
    assert text.splitlines()[0] == "scenario: smc1"
    assert "settling_time: none" in text
    assert "aborted: true" in text
