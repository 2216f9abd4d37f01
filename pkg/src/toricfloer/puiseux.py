"""Root finding for univariate polynomials with Novikov coefficients:
Newton-polygon valuation split at leading order, residual roots over the base
field, and Hensel/Newton lifting to the working precision.

Only desk-scale degrees are expected.  When a residual polynomial fails to
split over the base field the irreducible cofactor is reported verbatim so a
caller can extend the field and retry.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from . import unipoly
from .scalars import INF, Novikov, NovikovField


class SplitFieldError(RuntimeError):
    """Spectrum (or residual polynomial) does not split over the base field."""

    def __init__(self, message: str, factor=None):
        super().__init__(message)
        self.factor = factor


def _trim(coeffs: list) -> list:
    out = list(coeffs)
    while out and out[-1].is_zero():
        out.pop()
    return out


def _lower_hull(points: list) -> list:
    """Lower convex hull of (i, val) points, left to right."""
    pts = sorted(points)
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _shift_poly(novdom: NovikovField, coeffs: list, x0: Novikov) -> list:
    """Taylor coefficients of P(x0 + w) in w; integer binomials only."""
    n = len(coeffs) - 1
    out = []
    for k in range(n + 1):
        acc = novdom.zero
        for i in range(k, n + 1):
            b = comb(i, k)
            if b:
                acc = acc + coeffs[i] * novdom.from_int(b) * x0 ** (i - k)
        out.append(acc)
    return out


def _newton_lift(novdom: NovikovField, coeffs: list, x0: Novikov, target: Fraction) -> Novikov:
    deriv = [coeffs[i] * novdom.from_int(i) for i in range(1, len(coeffs))]
    x = x0
    for _ in range(64):
        px = _eval(novdom, coeffs, x)
        dpx = _eval(novdom, deriv, x)
        if px.is_zero():
            # the residual vanishes only to its own precision: the root is
            # certified modulo prec(residual) - val(derivative)
            if px.prec is None:
                return x
            if dpx.is_zero():
                raise SplitFieldError("Newton lift stalled on a critical point")
            return x.truncate(min(target, px.prec - dpx.val()))
        if dpx.is_zero():
            raise SplitFieldError("Newton lift stalled on a critical point")
        step = px * novdom.inv(dpx)
        if step.is_zero():
            cap = target if step.prec is None else min(target, step.prec)
            return x.truncate(cap)
        if step.val() >= target:
            return x.truncate(target)
        x = x - step
    raise SplitFieldError("Newton lift did not converge within the iteration budget")


def _eval(novdom: NovikovField, coeffs: list, x: Novikov) -> Novikov:
    acc = novdom.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def novikov_roots(coeffs: list, novdom: NovikovField, min_val=None) -> list:
    """All roots of sum coeffs[i] x^i with multiplicity, as (root, mult) pairs.

    Roots are found edge by edge on the Newton polygon (only edges of
    valuation strictly greater than `min_val`, used by the recursion), with
    simple residual roots lifted by Newton iteration to the domain's working
    precision and multiple residual roots handled by recursion on the shifted
    polynomial.  Raises SplitFieldError if a residual polynomial does not
    split over the base field.
    """
    target = novdom.default_prec
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial")
    roots: list = []
    # x = 0 roots: leading zero-mod-precision coefficients.
    nzero = 0
    while nzero < len(coeffs) - 1 and coeffs[nzero].is_zero():
        nzero += 1
    if nzero:
        prec = min(
            (c.prec for c in coeffs[:nzero] if c.prec is not None),
            default=None,
        )
        roots.append((Novikov.zero(novdom.base, prec), nzero))
        coeffs = coeffs[nzero:]
    if len(coeffs) == 1:
        return roots
    # corrections below the working precision are indistinguishable from 0:
    # collapse them rather than recursing past the precision floor
    if min_val is not None and min_val >= target:
        roots.append((Novikov.zero(novdom.base, target), len(coeffs) - 1))
        return roots
    points = [(i, coeffs[i].val()) for i in range(len(coeffs)) if not coeffs[i].is_zero()]
    hull = _lower_hull(points)
    for (i1, m1), (i2, m2) in zip(hull, hull[1:]):
        v = Fraction(m1 - m2, i2 - i1)  # root valuation for this edge
        if min_val is not None and v <= min_val:
            continue
        if v >= target:
            roots.append((Novikov.zero(novdom.base, target), i2 - i1))
            continue
        # residual polynomial in the leading coefficients along the edge
        base = novdom.base
        res = [base.zero] * (i2 - i1 + 1)
        for i in range(i1, i2 + 1):
            c = coeffs[i]
            if not c.is_zero():
                line_val = m1 + (i - i1) * (m2 - m1) / (i2 - i1) if i2 != i1 else m1
                if c.val() == line_val:
                    res[i - i1] = c.leading_coeff()
        found, cofactor = unipoly.roots_in_field(base, res)
        if unipoly.degree(cofactor) > 0:
            raise SplitFieldError(
                "residual polynomial does not split over the base field: "
                + unipoly.format_poly(base, cofactor, "u"),
                factor=cofactor,
            )
        for u0, mult in found:
            x0 = Novikov.monomial(base, v, u0)
            if mult == 1:
                roots.append((_newton_lift(novdom, coeffs, x0, target), 1))
            else:
                shifted = _shift_poly(novdom, coeffs, x0)
                for w, wm in novikov_roots(shifted, novdom, min_val=v):
                    roots.append((x0 + w, wm))
    return roots
