"""Exact p-adic representation analysis for integral quadratic forms.

Thin wrapper over the compiled module: forms are passed as dicts (or JSON
strings) in the same format the CLI accepts, results come back as dicts.
"""

import json

from . import _padiq

__all__ = [
    "jordan",
    "rep",
    "spectrum",
    "universal",
    "gap",
    "scan",
    "verdict",
    "theorem3",
    "is_isotropic",
    "hilbert_symbol",
    "square_class",
]


def _form(form):
    if isinstance(form, str):
        return form
    return json.dumps(form)


def jordan(form, p):
    return json.loads(_padiq.jordan(_form(form), p))


def rep(form, p, a, primitive=False):
    return json.loads(_padiq.rep(_form(form), p, str(a), primitive))


def spectrum(form, p, e_max=4, primitive=False):
    return json.loads(_padiq.spectrum(_form(form), p, e_max, primitive))


def universal(form, p):
    return json.loads(_padiq.universal(_form(form), p))


def gap(form, p):
    return json.loads(_padiq.gap(_form(form), p))


def scan(form, bound, threads=1):
    return json.loads(_padiq.scan(_form(form), bound, threads))


def verdict(form):
    return json.loads(_padiq.verdict(_form(form)))


def theorem3(form):
    return json.loads(_padiq.theorem3(_form(form)))


def is_isotropic(form, p):
    return _padiq.is_isotropic(_form(form), p)


def hilbert_symbol(a, b, p):
    return _padiq.hilbert_symbol(a, b, p)


def square_class(a, p):
    return json.loads(_padiq.square_class(str(a), p))
