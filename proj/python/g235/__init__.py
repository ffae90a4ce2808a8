"""Python access to the g235 library.

The heavy lifting happens in the compiled ``_core`` module; this wrapper
decodes its JSON reports.
"""

import json

from ._core import (
    EXIT_DEGENERATE,
    EXIT_FAIL,
    EXIT_INPUT,
    EXIT_PASS,
    ChartMismatch,
    ClosureError,
    DegeneracyError,
    DomainError,
    Error,
    Expr,
    InputError,
    InvariantViolation,
    ParseError,
    UnknownIdentifier,
    constants,
    parse,
)
from ._core import run as _run

__all__ = [
    "EXIT_DEGENERATE", "EXIT_FAIL", "EXIT_INPUT", "EXIT_PASS",
    "ChartMismatch", "ClosureError", "DegeneracyError", "DomainError", "Error", "Expr",
    "InputError", "InvariantViolation", "ParseError", "UnknownIdentifier",
    "Report", "constants", "parse", "run", "monge_problem", "metric_at", "g2_selftest",
]


class Report:
    """Exit status, decoded JSON report and the text summary of one command."""

    def __init__(self, status, data, summary):
        self.status = status
        self.data = data
        self.summary = summary

    @property
    def ok(self):
        return self.status == EXIT_PASS

    def __repr__(self):
        return f"Report(status={self.status}, command={self.data.get('command')!r})"


def run(command, problem="", *, seed=None, tol=None, mutate=(), point=None):
    status, text, summary = _run(command, problem, seed, tol, list(mutate), point)
    return Report(status, json.loads(text), summary)


def monge_problem(F, points, rescale=None):
    """Problem-file text for z' = F(x, y, y', y'', z) sampled at `points`."""
    lines = ["[monge]", f"F = {F}"]
    if rescale is not None:
        lines += ["[rescale]", f"f = {rescale}"]
    lines.append("[points]")
    lines += [", ".join(repr(float(c)) for c in p) for p in points]
    return "\n".join(lines) + "\n"


def metric_at(F, point):
    """The 5x5 metric of the canonical contact form at one point."""
    rep = run("eval", monge_problem(F, [point]), point=list(point))
    if not rep.ok:
        raise DegeneracyError(rep.data.get("error", rep.summary))
    return rep.data["metric"]


def g2_selftest(seed=1):
    return run("g2-selftest", seed=seed)
