"""The group ring of Z^n over an exact scalar domain, with log-derivatives,
hat-evaluation of bounded maps, and the energy filtration level diagnostic.

Exponent vectors are plain integer tuples.  The completion with respect to
the energy filtration is represented by Novikov-precision truncation on the
coefficients, so elements always have finitely many stored monomials.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iter_product
from typing import Callable

from .scalars import rational


class RankMismatchError(ValueError):
    pass


def vec_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(k: int, a: tuple) -> tuple:
    return tuple(k * x for x in a)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


class GroupRingElement:
    """Finite sum of monomials coeff * tau^gamma, gamma in Z^rank."""

    __slots__ = ("domain", "rank", "coeffs")

    def __init__(self, domain, rank: int, coeffs: dict):
        self.domain = domain
        self.rank = rank
        clean = {}
        for g, c in coeffs.items():
            if len(g) != rank:
                raise RankMismatchError(f"exponent {g} has wrong length for rank {rank}")
            if not domain.is_zero(c):
                clean[tuple(g)] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, domain, rank: int) -> "GroupRingElement":
        return cls(domain, rank, {})

    @classmethod
    def monomial(cls, domain, gamma: tuple, coeff=None) -> "GroupRingElement":
        c = domain.one if coeff is None else coeff
        return cls(domain, len(gamma), {tuple(gamma): c})

    def _check(self, other: "GroupRingElement"):
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs {other.rank}")
        if self.domain != other.domain:
            raise RankMismatchError("mixed scalar domains")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out[g] + c if g in out else c
        return GroupRingElement(self.domain, self.rank, out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.domain, self.rank, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GroupRingElement):
            self._check(other)
            out: dict = {}
            for g1, c1 in self.coeffs.items():
                for g2, c2 in other.coeffs.items():
                    g = vec_add(g1, g2)
                    c = c1 * c2
                    out[g] = out[g] + c if g in out else c
            return GroupRingElement(self.domain, self.rank, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "GroupRingElement":
        return GroupRingElement(self.domain, self.rank, {g: x * c for g, x in self.coeffs.items()})

    def __pow__(self, n: int) -> "GroupRingElement":
        if n < 0:
            raise ValueError("group ring elements only take nonnegative powers here")
        result = GroupRingElement.monomial(self.domain, (0,) * self.rank)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        if self.rank != other.rank:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        dom = self.domain
        for g in keys:
            a = self.coeffs.get(g, dom.zero)
            b = other.coeffs.get(g, dom.zero)
            if not dom.eq(a, b):
                return False
        return True

    def __hash__(self):
        return hash((self.rank, tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0]))))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for g in sorted(self.coeffs):
            c = self.coeffs[g]
            mono = "*".join(f"y{i+1}^{e}" for i, e in enumerate(g) if e != 0)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def log_derivative(a: GroupRingElement, j: int) -> GroupRingElement:
    """d/dx_j, acting on tau^gamma as multiplication by gamma_j.

    Axis indices are 1-based to match the coordinates x_1, ..., x_n.
    """
    if not 1 <= j <= a.rank:
        raise IndexError(f"axis {j} out of range for rank {a.rank}")
    dom = a.domain
    out = {}
    for g, c in a.coeffs.items():
        k = g[j - 1]
        if k != 0:
            out[g] = c * dom.from_int(k)
    return GroupRingElement(dom, a.rank, out)


def hat_evaluate(a: GroupRingElement, f: Callable[[tuple], object], zero):
    """Sum of coeff_gamma * f(gamma) over the stored monomials of a.

    `f` may be any map on exponent vectors with bounded image; `zero` is the
    zero of the target.  Linear in a by construction.
    """
    acc = zero
    for g, c in a.coeffs.items():
        acc = acc + f(g) * c
    return acc


def multiplicative_map(dom, values: list, one=None, inv=None) -> Callable[[tuple], object]:
    """Extend generator values to a homomorphism gamma -> prod values_i^gamma_i.

    Negative exponents go through `inv` (defaults to dom.inv), so the values
    must be invertible.  `one` overrides the unit when the values live in an
    algebra rather than in the scalar domain itself.
    """
    invert = inv if inv is not None else dom.inv
    unit = one if one is not None else dom.one

    def f(gamma: tuple):
        acc = unit
        for v, k in zip(values, gamma):
            if k > 0:
                acc = acc * v**k
            elif k < 0:
                acc = acc * invert(v) ** (-k)
        return acc

    return f


class FiltrationLevel:
    """Outcome of the bounded filtration-level search: either a value with a
    witnessing representation, or an explicit 'undetermined' marker."""

    def __init__(self, value: Fraction | None, witness: tuple | None, certified: bool):
        self.value = value
        self.witness = witness
        self.certified = certified

    @property
    def determined(self) -> bool:
        return self.value is not None

    def __repr__(self) -> str:
        if self.value is None:
            return "FiltrationLevel(undetermined)"
        tag = "certified" if self.certified else "within search bound"
        return f"FiltrationLevel({self.value}, {tag})"


def filtration_level(exponent, gamma: tuple, normals, areas, search_bound: int) -> FiltrationLevel:
    """Largest mu with T^exponent * tau^gamma in F^mu, by bounded enumeration.

    F^0 is generated by the monomials T^(area_j) tau^(normal_j), so the level
    is exponent - min over representations gamma = sum a_j normal_j (a_j >= 0,
    sum a_j <= search_bound) of sum a_j area_j.  Diagnostic only: if no
    representation exists within the bound the result is undetermined, never a
    silent value.  The result is certified optimal when every representation
    beyond the bound is provably more expensive.
    """
    if search_bound < 0:
        raise ValueError("search bound must be nonnegative")
    exponent = rational(exponent)
    n_classes = len(normals)
    best_cost = None
    best_rep = None
    for rep in iter_product(range(search_bound + 1), repeat=n_classes):
        if sum(rep) > search_bound:
            continue
        combo = tuple(sum(a * nu[i] for a, nu in zip(rep, normals)) for i in range(len(gamma)))
        if combo != tuple(gamma):
            continue
        cost = sum(a * lam for a, lam in zip(rep, areas))
        if best_cost is None or cost < best_cost:
            best_cost, best_rep = cost, rep
    if best_cost is None:
        return FiltrationLevel(None, None, False)
    # Any representation with sum a_j > search_bound costs more than
    # min(areas) * search_bound; below that threshold the minimum is certain.
    certified = best_cost <= min(areas) * search_bound
    return FiltrationLevel(exponent - best_cost, best_rep, certified)
