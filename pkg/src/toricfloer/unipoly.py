"""Univariate polynomial helpers over an arbitrary exact field.

Polynomials are plain coefficient lists (index = degree) with no trailing
zeros; the empty list is the zero polynomial.  Root finding is deliberately
unsophisticated: exhaustive search over finite fields and the rational-root
test over Q, which is all the desk-scale quotients here require.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def trim(dom, coeffs: list) -> list:
    out = list(coeffs)
    while out and dom.is_zero(out[-1]):
        out.pop()
    return out


def degree(coeffs: list) -> int:
    return len(coeffs) - 1


def add(dom, a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else dom.zero
        y = b[i] if i < len(b) else dom.zero
        out.append(x + y)
    return trim(dom, out)


def neg(a: list) -> list:
    return [-c for c in a]


def sub(dom, a: list, b: list) -> list:
    return add(dom, a, neg(b))


def mul(dom, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [dom.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if dom.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(dom, out)


def scale(dom, a: list, c) -> list:
    return trim(dom, [x * c for x in a])


def divmod_poly(dom, num: list, den: list) -> tuple[list, list]:
    den = trim(dom, den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    num = list(num)
    dd = len(den) - 1
    inv_lead = dom.inv(den[-1])
    quot = [dom.zero] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] * inv_lead
        if dom.is_zero(c):
            continue
        quot[i - dd] = c
        for j, d in enumerate(den):
            num[i - dd + j] = num[i - dd + j] - c * d
    return trim(dom, quot), trim(dom, num)


def evaluate(dom, a: list, x):
    acc = dom.zero
    for c in reversed(a):
        acc = acc * x + c
    return acc


def derivative(dom, a: list) -> list:
    return trim(dom, [a[i] * dom.from_int(i) for i in range(1, len(a))])


def monic(dom, a: list) -> list:
    a = trim(dom, a)
    if not a:
        return a
    return scale(dom, a, dom.inv(a[-1]))


def gcd_poly(dom, a: list, b: list) -> list:
    a, b = trim(dom, a), trim(dom, b)
    while b:
        _, r = divmod_poly(dom, a, b)
        a, b = b, r
    return monic(dom, a)


def _root_multiplicity(dom, coeffs: list, r) -> tuple[int, list]:
    """Strip all factors (x - r); return (multiplicity, cofactor)."""
    m = 0
    while coeffs and dom.is_zero(evaluate(dom, coeffs, r)):
        coeffs, rem = divmod_poly(dom, coeffs, [-r, dom.one])
        assert not rem
        m += 1
    return m, coeffs


def _rational_root_candidates(coeffs: list):
    # Clear denominators; candidates p/q with p | a0, q | lead (a0 != 0 here).
    denls = 1
    for c in coeffs:
        denls = denls * c.denominator // gcd(denls, c.denominator)
    ints = [int(c * denls) for c in coeffs]
    a0, an = abs(ints[0]), abs(ints[-1])
    ps = [d for d in range(1, a0 + 1) if a0 % d == 0]
    qs = [d for d in range(1, an + 1) if an % d == 0]
    seen = set()
    for p in ps:
        for q in qs:
            for s in (1, -1):
                cand = Fraction(s * p, q)
                if cand not in seen:
                    seen.add(cand)
                    yield cand


def roots_in_field(dom, coeffs: list) -> tuple[list, list]:
    """All roots in the ground field, with multiplicity.

    Returns (list of (root, multiplicity), non-split cofactor).  The cofactor
    is monic of degree 0 exactly when the polynomial splits completely.
    """
    coeffs = trim(dom, coeffs)
    if not coeffs:
        raise ValueError("zero polynomial has every root")
    found = []
    if dom.order is not None:
        for x in dom.elements():
            if dom.is_zero(evaluate(dom, coeffs, x)):
                m, coeffs = _root_multiplicity(dom, coeffs, x)
                found.append((x, m))
            if degree(coeffs) == 0:
                break
    else:
        if degree(coeffs) > 0 and dom.is_zero(coeffs[0]):
            m, coeffs = _root_multiplicity(dom, coeffs, dom.zero)
            found.append((dom.zero, m))
        if degree(coeffs) > 0:
            for cand in _rational_root_candidates(coeffs):
                if dom.is_zero(evaluate(dom, coeffs, cand)):
                    m, coeffs = _root_multiplicity(dom, coeffs, cand)
                    found.append((cand, m))
                if degree(coeffs) == 0:
                    break
    return found, monic(dom, coeffs)


def format_poly(dom, coeffs: list, var: str = "x") -> str:
    if not coeffs:
        return "0"
    parts = []
    for i, c in enumerate(coeffs):
        if dom.is_zero(c):
            continue
        if i == 0:
            parts.append(f"{c}")
        elif i == 1:
            parts.append(f"{c}*{var}")
        else:
            parts.append(f"{c}*{var}^{i}")
    return " + ".join(parts)
