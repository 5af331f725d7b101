"""Python access to the tclab engine. Every function returns the JSON report as a dict."""

import json as _json

from . import _core
from ._core import TclabError

__all__ = [
    "TclabError",
    "canonical",
    "cohomology",
    "e0_check",
    "essential",
    "ext",
    "obstructions",
    "phi_check",
    "power",
    "suite_names",
    "tc_bound",
    "tc_report",
    "verify",
    "zdcl",
]


def _wrap(name):
    fn = getattr(_core, name)

    def call(*args, **kwargs):
        return _json.loads(fn(*args, **kwargs))

    call.__name__ = name
    call.__doc__ = fn.__doc__
    return call


cohomology = _wrap("cohomology")
ext = _wrap("ext")
canonical = _wrap("canonical")
power = _wrap("power")
obstructions = _wrap("obstructions")
essential = _wrap("essential")
e0_check = _wrap("e0_check")
phi_check = _wrap("phi_check")
zdcl = _wrap("zdcl")
tc_report = _wrap("tc_report")
tc_bound = _wrap("tc_bound")
verify = _wrap("verify")
suite_names = _core.suite_names
