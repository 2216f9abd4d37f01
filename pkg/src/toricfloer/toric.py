"""Toric input data, moment polytope geometry, monotone normalisation, and
superpotential assembly.

Conventions: the reference fibre sits over 0, so the moment polytope is
{x : <x, normal_j> >= -area_j} and the basic disc classes contribute the
monomials T^(area_j) tau^(normal_j).  Translations of the reference point are
explicit outputs, never applied silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .groupring import GroupRingElement, dot
from .scalars import QQ, Novikov, NovikovField, rational


class ToricDataError(ValueError):
    pass


class NotMonotoneError(ValueError):
    pass


@dataclass(frozen=True)
class ToricData:
    dim: int
    normals: tuple
    areas: tuple

    def __post_init__(self):
        if len(self.normals) != len(self.areas):
            raise ToricDataError("need one area per facet normal")
        if any(len(nu) != self.dim for nu in self.normals):
            raise ToricDataError("normal of wrong dimension")
        if any(lam <= 0 for lam in self.areas):
            raise ToricDataError("areas must be positive (0 must be interior)")
        mat = [list(nu) for nu in self.normals]
        if linalg.rank(QQ, [[Fraction(x) for x in row] for row in mat]) != self.dim:
            raise ToricDataError("facet normals do not span")
        if not _positively_spanning(self.dim, self.normals):
            raise ToricDataError("polytope is unbounded (normals do not positively span)")

    @property
    def n_facets(self) -> int:
        return len(self.normals)

    def facet_values(self, x) -> list:
        return [dot(x, nu) + lam for nu, lam in zip(self.normals, self.areas)]


def _positively_spanning(dim: int, normals: tuple) -> bool:
    # The polytope is bounded iff the recession cone {<x, nu_j> >= 0} is {0}.
    # The normals span, so the cone is pointed and a nonzero cone would have
    # an extreme ray cut out by dim-1 of the constraints: enumerate those.
    def feasible(d) -> bool:
        return all(dot(d, nu) >= 0 for nu in normals) and any(x != 0 for x in d)

    if dim == 1:
        return not (feasible((1,)) or feasible((-1,)))
    for subset in combinations(range(len(normals)), dim - 1):
        rows = [[Fraction(x) for x in normals[i]] for i in subset]
        for d in linalg.kernel_basis(QQ, rows) if rows else []:
            for cand in (d, [-x for x in d]):
                if feasible(tuple(cand)):
                    return False
    return True


def interior_contains(t: ToricData, x) -> bool:
    """True iff x satisfies every facet inequality strictly."""
    x = tuple(rational(v) if not isinstance(v, Fraction) else v for v in x)
    return all(v > 0 for v in t.facet_values(x))


def monotone_normalize(t: ToricData):
    """Translate and scale so every facet area equals 1.

    Solves <x, normal_j> + area_j = c for a translation x and common value c;
    requires the system to be consistent, c > 0, and x interior.  Returns
    (normalised data, translation vector, scale 1/c).
    """
    n, m = t.dim, t.n_facets
    # Unknowns (x_1..x_n, c): <x, nu_j> - c = -lambda_j.
    rows = [[Fraction(v) for v in t.normals[j]] + [Fraction(-1)] for j in range(m)]
    rhs = [-t.areas[j] for j in range(m)]
    sol = linalg.solve(QQ, rows, rhs)
    if sol is None:
        raise NotMonotoneError("facet equalisation system is inconsistent")
    x_star, c = tuple(sol[:n]), sol[n]
    if c <= 0:
        raise NotMonotoneError("equalised area is not positive")
    if not interior_contains(t, x_star):
        raise NotMonotoneError("equalising translation is not interior")
    scale = Fraction(1) / c
    normalized = ToricData(
        dim=n,
        normals=t.normals,
        areas=tuple(Fraction(1) for _ in range(m)),
    )
    return normalized, x_star, scale


@dataclass(frozen=True)
class DiscClass:
    """One disc class contribution: area, boundary, counting coefficient, and
    optionally its pairing vector against the divisor classes.

    Pairings are needed wherever divisor classes are evaluated; purely formal
    extra terms of the superpotential may omit them."""

    area: Fraction
    boundary: tuple
    coefficient: object
    pairings: tuple | None = None

    def __repr__(self) -> str:
        return f"DiscClass(area={self.area}, boundary={self.boundary}, c={self.coefficient})"


class Superpotential:
    """The collection of disc classes defining W, with the scalar mode.

    In Novikov mode the monomial for a class is c T^area tau^boundary; in
    monotone mode the Novikov variable is set to 1 and areas are all equal
    after normalisation.
    """

    def __init__(self, toric: ToricData, domain, mode: str, classes: tuple):
        if mode not in ("novikov", "monotone"):
            raise ToricDataError(f"unknown mode {mode!r}")
        if mode == "novikov" and not isinstance(domain, NovikovField):
            raise ToricDataError("novikov mode needs a NovikovField domain")
        self.toric = toric
        self.domain = domain
        self.mode = mode
        self.classes = tuple(classes)

    @property
    def rank(self) -> int:
        return self.toric.dim

    def base_field(self):
        return self.domain.base if isinstance(self.domain, NovikovField) else self.domain

    def weight(self, beta: DiscClass):
        """The scalar T^area(beta) (1 in monotone mode)."""
        if self.mode == "monotone":
            return self.domain.one
        return self.domain.monomial(beta.area)

    def term(self, beta: DiscClass) -> GroupRingElement:
        coeff = self.weight(beta) * self._embed(beta.coefficient)
        return GroupRingElement.monomial(self.domain, beta.boundary, coeff)

    def _embed(self, c):
        if isinstance(self.domain, NovikovField) and not isinstance(c, Novikov):
            return Novikov.constant(self.domain.base, c)
        return c

    def group_ring(self) -> GroupRingElement:
        acc = GroupRingElement.zero(self.domain, self.rank)
        for beta in self.classes:
            acc = acc + self.term(beta)
        return acc

    def divisor_image(self, j: int) -> GroupRingElement:
        """Sum over classes of <H_j, beta> times the class monomial."""
        acc = GroupRingElement.zero(self.domain, self.rank)
        for beta in self.classes:
            if beta.pairings is None:
                raise ToricDataError(
                    f"class {beta.boundary} has no pairing data against the divisors"
                )
            k = beta.pairings[j]
            if k:
                acc = acc + self.term(beta).scale(self.domain.from_int(k))
        return acc

    def translate_reference(self, shift: tuple) -> "Superpotential":
        """Areas for the fibre translated by `shift`; boundaries are fixed.

        Only meaningful in Novikov mode.  Every translated area must stay
        positive, which holds whenever `shift` is interior for the classes
        actually present.
        """
        if self.mode == "monotone":
            raise ToricDataError("reference translation only applies in Novikov mode")
        new_classes = []
        for beta in self.classes:
            new_area = beta.area + dot(shift, beta.boundary)
            if new_area <= 0:
                raise ToricDataError(
                    f"translated area {new_area} of class {beta.boundary} is not positive"
                )
            new_classes.append(
                DiscClass(new_area, beta.boundary, beta.coefficient, beta.pairings)
            )
        return Superpotential(self.toric, self.domain, self.mode, tuple(new_classes))

    def __repr__(self) -> str:
        return f"Superpotential({self.mode}, {len(self.classes)} classes)"


def basic_classes(t: ToricData, field) -> list:
    out = []
    for j, (nu, lam) in enumerate(zip(t.normals, t.areas)):
        pair = tuple(1 if i == j else 0 for i in range(t.n_facets))
        out.append(DiscClass(lam, tuple(nu), field.one, pair))
    return out


def build_superpotential(t: ToricData, domain, mode: str, corrections=()) -> Superpotential:
    """Basic terms T^(area_j) tau^(normal_j) plus validated corrections.

    A correction carries (area, boundary, coefficient, pairings); the pairing
    vector must reproduce the stated boundary and area against the basic data
    and sum to 1, matching an index-2 class.  Duplicates of basic classes and
    any correction in monotone mode are rejected.
    """
    field = domain.base if isinstance(domain, NovikovField) else domain
    classes = basic_classes(t, field)
    if mode == "monotone":
        if corrections:
            raise ToricDataError("monotone mode admits no correction classes")
        if len(set(t.areas)) != 1:
            raise ToricDataError("monotone mode requires equal areas; normalise first")
        return Superpotential(t, domain, mode, tuple(classes))
    for corr in corrections:
        if corr.area <= 0:
            raise ToricDataError("correction class has nonpositive area")
        if field.is_zero(corr.coefficient):
            raise ToricDataError("correction class has zero coefficient")
        for basic in classes[: t.n_facets]:
            if basic.boundary == corr.boundary and basic.area == corr.area:
                raise ToricDataError(f"correction duplicates basic class {corr.boundary}")
        if corr.pairings is not None:
            if len(corr.pairings) != t.n_facets:
                raise ToricDataError("correction pairing vector has wrong length")
            if sum(corr.pairings) != 1:
                raise ToricDataError(
                    "correction pairings describe a class of index other than 2"
                )
            bound = tuple(
                sum(k * nu[i] for k, nu in zip(corr.pairings, t.normals))
                for i in range(t.dim)
            )
            if bound != tuple(corr.boundary):
                raise ToricDataError("correction pairings do not reproduce its boundary")
            area = sum(k * lam for k, lam in zip(corr.pairings, t.areas))
            if area != corr.area:
                raise ToricDataError("correction pairings do not reproduce its area")
        classes.append(corr)
    return Superpotential(t, domain, mode, tuple(classes))
