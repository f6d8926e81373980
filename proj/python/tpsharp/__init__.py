"""Ratio criteria for total positivity.

Matrices are lists of rows. Exact entries are ints, ``fractions.Fraction``
or strings such as ``"3/2"``; floats are read as binary64. Reports come back
as plain dicts with rationals rendered as ``"p/q"`` strings.
"""

import json as _json
from fractions import Fraction

from . import _core
from ._core import DEFAULT_TAU, TpsharpError, det_mn_closed, epsilon_cascade, lemma4_exponents

__all__ = [
    "DEFAULT_TAU",
    "TpsharpError",
    "ck_enclosure",
    "constant_c_tilde",
    "constant_d",
    "corollary3_moment_check",
    "corollary5_check",
    "critical_ratio",
    "det_exact",
    "det_float",
    "det_mn_closed",
    "epsilon_cascade",
    "f_closed",
    "f_recurrence",
    "hankel_dn",
    "hankel_moment_check",
    "hankel_witness",
    "hutchinson_ratio",
    "lemma4_exponents",
    "lemma4_leading_check",
    "minor_scan",
    "pfm_check",
    "proof_chain_check",
    "run_cli",
    "theorem1_check",
    "theorem2_check",
    "theorem3_check",
    "theorem5_check",
    "theorem6_bound",
    "toeplitz_mn",
    "toeplitz_witness",
]


def _num(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return x


def _matrix(rows):
    return [[_num(v) for v in row] for row in rows]


def _seq(values):
    return [_num(v) for v in values]


def fraction(text):
    """Parse a ``"p/q"`` string from a report into a Fraction."""
    return Fraction(text)


def _interval(raw):
    d = _json.loads(raw)
    return Fraction(d["lo"]), Fraction(d["hi"])


def det_exact(matrix):
    return Fraction(_core.det_exact(_matrix(matrix)))


def det_float(matrix, tau=DEFAULT_TAU):
    """(value, verdict) with verdict one of Negative, Zero, Positive, Uncertain."""
    return _core.det_float(_matrix(matrix), tau)


def ck_enclosure(k, width=Fraction(1, 2**60)):
    """(lo, hi) Fractions enclosing 4 cos^2(pi / (k + 1))."""
    return _interval(_core.ck_enclosure(k, _num(Fraction(width))))


def constant_c_tilde(width=Fraction(1, 10**12)):
    return _interval(_core.constant_c_tilde(_num(Fraction(width))))


def constant_d(width=Fraction(1, 10**12)):
    return _interval(_core.constant_d(_num(Fraction(width))))


def f_closed(m, c):
    return _core.f_closed(m, _num(c))


def f_recurrence(max_m, c):
    return _json.loads(_core.f_recurrence(max_m, _num(c)))


def critical_ratio(matrix):
    return _json.loads(_core.critical_ratio(_matrix(matrix)))


def minor_scan(matrix, k, contiguous=False, tau=DEFAULT_TAU):
    return _json.loads(_core.minor_scan(_matrix(matrix), k, contiguous, tau))


def theorem1_check(matrix, strict=False, tau=DEFAULT_TAU):
    return _json.loads(_core.theorem1_check(_matrix(matrix), strict, tau))


def theorem2_check(matrix, k, strict=False, tau=DEFAULT_TAU):
    return _json.loads(_core.theorem2_check(_matrix(matrix), k, strict, tau))


def theorem3_check(matrix, tau=DEFAULT_TAU):
    return _json.loads(_core.theorem3_check(_matrix(matrix), tau))


def theorem5_check(matrix, tau=DEFAULT_TAU):
    return _json.loads(_core.theorem5_check(_matrix(matrix), tau))


def theorem6_bound(matrix, c):
    return _json.loads(_core.theorem6_bound(_matrix(matrix), _num(c)))


def proof_chain_check(matrix, c):
    return _json.loads(_core.proof_chain_check(_matrix(matrix), _num(c)))


def toeplitz_mn(n, phi):
    return _json.loads(_core.toeplitz_mn(n, phi))


def hankel_dn(n, p, q):
    return _json.loads(_core.hankel_dn(n, _num(p), _num(q)))


def lemma4_leading_check(n, p, q_values):
    return _json.loads(_core.lemma4_leading_check(n, _num(p), _seq(q_values)))


def toeplitz_witness(k, c):
    return _json.loads(_core.toeplitz_witness(k, _num(c)))


def hankel_witness(k, c):
    return _json.loads(_core.hankel_witness(k, _num(c)))


def pfm_check(seq, m, n):
    return _json.loads(_core.pfm_check(_seq(seq), m, n))


def hutchinson_ratio(seq):
    return _json.loads(_core.hutchinson_ratio(_seq(seq)))


def corollary5_check(seq, m, N=None):
    return _json.loads(_core.corollary5_check(_seq(seq), m, N))


def hankel_moment_check(seq, k):
    return _json.loads(_core.hankel_moment_check(_seq(seq), k))


def corollary3_moment_check(seq, k):
    return _json.loads(_core.corollary3_moment_check(_seq(seq), k))


def run_cli(*args):
    """Run the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
