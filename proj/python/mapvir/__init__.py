"""Python front end for the mapvir C++ core.

Specs are passed as dicts (or JSON strings) in the same schema as the CLI
spec files; reports come back as dicts.
"""

import json

from . import _mapvir
from ._mapvir import ComputationError, ValidationError

__all__ = [
    "ComputationError",
    "ValidationError",
    "annihilator_support",
    "bracket",
    "check",
    "classify",
    "int_series_act",
    "pbw_basis",
    "quotient_dims",
    "run",
    "selftest",
    "singular_vectors",
    "split",
    "straighten",
    "verma_dims",
    "weight_multiplicities",
]


def _js(spec):
    if spec is None:
        return ""
    return spec if isinstance(spec, str) else json.dumps(spec)


def run(*args):
    """Run the CLI in-process; returns (exit_code, stdout, stderr)."""
    return _mapvir.run([str(a) for a in args])


def bracket(x, y, algebra=None):
    return _mapvir.bracket(x, y, _js(algebra))


def straighten(word, algebra=None):
    return _mapvir.straighten(word, _js(algebra))


def pbw_basis(n, algebra=None, colors=None):
    return _mapvir.pbw_basis(n, _js(algebra), colors)


def verma_dims(n, algebra=None, colors=None):
    return _mapvir.verma_dims(n, _js(algebra), colors)


def quotient_dims(phi, n, algebra=None, colors=None):
    return _mapvir.quotient_dims(_js(phi), n, _js(algebra), colors)


def singular_vectors(phi, depth, algebra=None):
    return _mapvir.singular_vectors(_js(phi), depth, _js(algebra))


def int_series_act(a, b, window, mode, k):
    """(coefficient, target exponent) of d_mode on t^k in V(a, b)."""
    return _mapvir.int_series_act(str(a), str(b), window[0], window[1], mode, k)


def weight_multiplicities(spec, offsets, algebra=None):
    return json.loads(_mapvir.weight_multiplicities(_js(spec), offsets[0], offsets[1], _js(algebra)))


def annihilator_support(spec, algebra=None):
    return json.loads(_mapvir.annihilator_support(_js(spec), _js(algebra)))


def _report(*args):
    code, out, err = run(*args)
    if code == 1:
        raise ValidationError(err.strip())
    if code != 0:
        raise ComputationError(err.strip())
    return json.loads(out)


def check(phi, algebra=None, reducible=True, bound=16, exact=False):
    args = ["check", "--reducible" if reducible else "--quasifinite", "--phi", _js(phi), "--bound", bound]
    if algebra is not None:
        args += ["-A", _js(algebra)]
    if exact:
        args.append("--exact")
    return _report(*args, "--format", "json")


def split(phi, algebra):
    return _report("split", "-A", _js(algebra), "--phi", _js(phi), "--format", "json")


def classify(phi=None, algebra=None, spec=None, lowest=False, explain=False, bound=16, exact=False):
    args = ["classify", "--bound", bound]
    if algebra is not None:
        args += ["-A", _js(algebra)]
    if spec is not None:
        args += ["--spec", _js(spec)]
    else:
        args += ["--phi", _js(phi)]
    for flag, on in (("--lowest", lowest), ("--explain", explain), ("--exact", exact)):
        if on:
            args.append(flag)
    return _report(*args, "--format", "json")


def selftest(seed=1):
    return [{"suite": n, "cases": c, "failures": f} for n, c, f in _mapvir.selftest(seed)]
