"""Degree-one sector of the Floer algebra of a torus fibre: symmetric
brackets, unshuffle brackets, their deformations by nilpotent bounding
cochains, the weak-bounding and zero-differential checks, and the comparison
of the length-zero closed-open composite against the summand projection.

Inputs of degree one are coordinate vectors in the basis b_1..b_n.  Only the
symmetrised quantities are computed here; individual operation values on
ordered tuples are pinned down (in the monotone model) by the pearl module.
Division by factorials is confined to the characteristic-zero cross-checks;
the unshuffle brackets themselves use integer binomials throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product as iter_product
from math import comb, factorial

from .commalg import AlgElement, CommAlgebra
from .groupring import GroupRingElement, dot, hat_evaluate, log_derivative
from .jacobian import Summand
from .scalars import Novikov, NovikovField
from .toric import DiscClass, Superpotential


class BracketMismatchError(AssertionError):
    """Two routes to the same bracket disagreed; carries both values."""

    def __init__(self, label, lhs, rhs):
        super().__init__(f"{label}: {lhs!r} != {rhs!r}")
        self.lhs = lhs
        self.rhs = rhs


def int_binomial(p: int, c: int) -> int:
    """binom(p, c) = p(p-1)...(p-c+1)/c! for any integer p, c >= 0."""
    if c < 0:
        return 0
    if p >= 0:
        return comb(p, c)
    return (-1) ** c * comb(-p + c - 1, c)


def counted_binomial(p: int, c: int) -> int:
    """Same number, by enumerating tuples of congruence solutions: strictly
    increasing c-tuples from p points for p > 0, non-decreasing c-tuples from
    |p| points with sign (-1)^c for p < 0."""
    if c == 0:
        return 1
    if p == 0:
        return 0
    if p > 0:
        return sum(1 for _ in combinations(range(p), c))
    return (-1) ** c * sum(1 for _ in combinations_with_replacement(range(-p), c))


def embed_scalar(domain, c):
    if isinstance(domain, NovikovField) and not isinstance(c, Novikov):
        return Novikov.constant(domain.base, c)
    return c


@dataclass(frozen=True)
class Character:
    """A homomorphism from the lattice to the units of the scalar domain,
    given by its values on the standard generators."""

    domain: object
    values: tuple

    def of(self, gamma: tuple):
        acc = self.domain.one
        for v, k in zip(self.values, gamma):
            if k > 0:
                acc = acc * v**k
            elif k < 0:
                acc = acc * self.domain.inv(v) ** (-k)
        return acc


@dataclass
class TorusAction:
    """Action of the lattice on a finite commutative algebra S whose
    simultaneous generalised eigenvalues are the character xi: on the i-th
    generator it acts by xi_i * (1 + psi_i) with psi_i nilpotent."""

    algebra: CommAlgebra
    character: Character
    psi: tuple

    def __post_init__(self):
        for p in self.psi:
            if self.algebra.nilpotency_index(p) is None:
                raise ValueError("torus action with non-nilpotent psi")

    @property
    def domain(self):
        return self.algebra.domain

    def rho_gen(self, i: int) -> AlgElement:
        return (self.algebra.one + self.psi[i]) * self.character.values[i]

    def rho(self, gamma: tuple) -> AlgElement:
        acc = self.algebra.one
        for i, k in enumerate(gamma):
            if k == 0:
                continue
            base = self.rho_gen(i)
            acc = acc * (base**k if k > 0 else base.inverse() ** (-k))
        return acc

    def hat(self, a: GroupRingElement) -> AlgElement:
        """Evaluate tau^gamma -> rho(gamma) linearly over the stored series."""
        return hat_evaluate(a, self.rho, self.algebra.zero)

    def psi_bounds(self) -> tuple:
        return tuple(self.algebra.nilpotency_index(p) for p in self.psi)


def action_from_summand(s: Summand) -> TorusAction:
    """The summand's own algebra acting on itself, re-referenced so the
    eigenvalue character is the unitary part."""
    return TorusAction(
        algebra=s.algebra,
        character=Character(s.quotient.domain, s.xi),
        psi=s.psi,
    )


def sector_potential(s: Summand) -> Superpotential:
    """The superpotential as seen from the summand's own fibre: in Novikov
    mode the areas shift by the eigenvalue valuations (all stay positive by
    interiority); in monotone mode it is unchanged."""
    W = s.quotient.W
    if W.mode == "monotone":
        return W
    return W.translate_reference(s.val_vector)


# ---------------------------------------------------------------------------
# Scalar brackets (no deformation).
# ---------------------------------------------------------------------------


def l_bracket(char: Character, beta: DiscClass, inputs) -> object:
    """Fully symmetric bracket on degree-one inputs for one disc class:
    c_beta * xi(boundary) * prod over inputs of <a, boundary>."""
    dom = char.domain
    acc = embed_scalar(dom, beta.coefficient) * char.of(beta.boundary)
    for a in inputs:
        pairing = dom.zero
        for x, k in zip(a, beta.boundary):
            if k:
                coord = dom.from_int(x) if isinstance(x, int) else embed_scalar(dom, x)
                pairing = pairing + coord * dom.from_int(k)
        acc = acc * pairing
    return acc


def l_bracket_derivative(char: Character, beta: DiscClass, axes) -> object:
    """The same bracket via iterated log-derivatives of the class monomial,
    evaluated at the character (axes are 1-based)."""
    dom = char.domain
    mono = GroupRingElement.monomial(
        dom, beta.boundary, embed_scalar(dom, beta.coefficient)
    )
    for j in axes:
        mono = log_derivative(mono, j)
    return hat_evaluate(mono, char.of, dom.zero)


def l_full(char: Character, potential: Superpotential, inputs) -> object:
    """Sum over all disc classes, weighted by T^area (1 in monotone mode)."""
    dom = char.domain
    acc = dom.zero
    for beta in potential.classes:
        acc = acc + potential.weight(beta) * l_bracket(char, beta, inputs)
    return acc


def basis_vector(n: int, j: int) -> tuple:
    """Coordinates of the j-th degree-one basis class (1-based)."""
    return tuple(1 if i == j - 1 else 0 for i in range(n))


def multiplicity_vectors(n: int, bound: int):
    """All c in Z_{>=0}^n with |c| <= bound."""

    def rec(rem, parts):
        if parts == 1:
            for v in range(rem + 1):
                yield (v,)
            return
        for v in range(rem + 1):
            for rest in rec(rem - v, parts - 1):
                yield (v,) + rest

    yield from rec(bound, n)


@dataclass
class UnshuffleBracket:
    """The bracket m_beta[c] computed every way available in the scalar's
    characteristic; `value` is the common result."""

    closed: object
    counted: object
    derivative: object | None
    value: object


def unshuffle_bracket(char: Character, beta: DiscClass, c: tuple) -> UnshuffleBracket:
    """m_beta[c]: closed binomial form, tuple-counting form, and (in
    characteristic zero) the derivative form y^c d^|c|/dy^c / c!.

    The three must agree exactly; a mismatch raises BracketMismatchError.
    """
    dom = char.domain
    p = beta.boundary
    w_at_xi = embed_scalar(dom, beta.coefficient) * char.of(p)

    closed_int = 1
    counted_int = 1
    for pi, ci in zip(p, c):
        closed_int *= int_binomial(pi, ci)
        counted_int *= counted_binomial(pi, ci)
    closed = w_at_xi * dom.from_int(closed_int)
    counted = w_at_xi * dom.from_int(counted_int)
    if not dom.eq(closed, counted):
        raise BracketMismatchError("unshuffle bracket closed vs counted", closed, counted)

    derivative = None
    if dom.char == 0:
        mono = GroupRingElement.monomial(
            dom, beta.boundary, embed_scalar(dom, beta.coefficient)
        )
        for j, cj in enumerate(c, start=1):
            for shift in range(cj):
                # falling factorial of the log-derivative: D_j - shift
                mono = log_derivative(mono, j) - mono.scale(dom.from_int(shift))
        deriv = hat_evaluate(mono, char.of, dom.zero)
        fact = 1
        for cj in c:
            fact *= factorial(cj)
        derivative = deriv * dom.inv(dom.from_int(fact))
        if not dom.eq(closed, derivative):
            raise BracketMismatchError(
                "unshuffle bracket closed vs derivative", closed, derivative
            )
    return UnshuffleBracket(closed, counted, derivative, closed)


# ---------------------------------------------------------------------------
# Deformed brackets.
# ---------------------------------------------------------------------------


@dataclass
class DeformedBracket:
    insertion: AlgElement
    closed: AlgElement
    value: AlgElement


def deformed_bracket(action: TorusAction, beta: DiscClass, c: tuple) -> DeformedBracket:
    """m^delta_beta[c] for delta = sum b_j (x) psi_j, two ways.

    (a) the defining insertion sum: sum over extra multiplicities d of
        m_beta[c + d] * prod binom(c_j + d_j, d_j) * psi_j^(d_j),
        finite because every psi_j is nilpotent; and
    (b) the closed form
        prod binom(p_j, c_j) * rho_hat(W_beta) * xi(gamma_c) / rho(gamma_c).
    Both are computed and must agree exactly.
    """
    alg = action.algebra
    dom = action.domain
    char = action.character
    p = beta.boundary
    w_at_xi = embed_scalar(dom, beta.coefficient) * char.of(p)
    bounds = action.psi_bounds()

    insertion = alg.zero
    psi_powers = []
    for i, bound in enumerate(bounds):
        powers = [alg.one]
        for _ in range(bound - 1):
            powers.append(powers[-1] * action.psi[i])
        psi_powers.append(powers)
    for d in iter_product(*(range(b) for b in bounds)):
        coeff_int = 1
        for pj, cj, dj in zip(p, c, d):
            coeff_int *= int_binomial(pj, cj + dj) * comb(cj + dj, dj)
        if coeff_int == 0:
            continue
        nil = alg.one
        for i, dj in enumerate(d):
            if dj:
                nil = nil * psi_powers[i][dj]
        insertion = insertion + nil * (w_at_xi * dom.from_int(coeff_int))

    closed_int = 1
    for pj, cj in zip(p, c):
        closed_int *= int_binomial(pj, cj)
    rho_w = action.rho(p) * embed_scalar(dom, beta.coefficient)
    gamma_c = tuple(c)
    closed = rho_w * action.rho(gamma_c).inverse() * (char.of(gamma_c) * dom.from_int(closed_int))

    if not (insertion == closed):
        raise BracketMismatchError(f"deformed bracket at c={c}", insertion, closed)
    return DeformedBracket(insertion, closed, closed)


def deformed_l_bracket(action: TorusAction, beta: DiscClass, axes) -> AlgElement:
    """Characteristic-zero deformation along theta = log(rho/xi): the
    insertion sum of symmetric brackets with 1/m! weights, checked against
    rho_hat of the iterated derivative of the class monomial."""
    alg = action.algebra
    dom = action.domain
    if dom.char != 0:
        raise ValueError("theta-deformation requires characteristic 0")
    from .commalg import log_one_plus

    thetas = [log_one_plus(p) for p in action.psi]
    bounds = [alg.nilpotency_index(t) for t in thetas]
    base = l_bracket(action.character, beta, [basis_vector(len(beta.boundary), j) for j in axes])
    insertion = alg.zero
    for d in iter_product(*(range(b) for b in bounds)):
        # sum over tuples of insertions collapses to multi-indices with
        # multinomial weight m!/(prod d_j!) and the 1/m! prefactor
        weight = Fraction(1)
        for dj in d:
            weight /= factorial(dj)
        pairing = 1
        for pj, dj in zip(beta.boundary, d):
            pairing *= pj**dj
        if pairing == 0:
            continue
        nil = alg.one
        for i, dj in enumerate(d):
            if dj:
                nil = nil * thetas[i] ** dj
        scalar = base * dom.from_int(pairing) * _embed_fraction(dom, weight)
        insertion = insertion + nil * scalar
    pfactor = 1
    for j in axes:
        pfactor *= beta.boundary[j - 1]
    closed = action.rho(beta.boundary) * (
        embed_scalar(dom, beta.coefficient) * dom.from_int(pfactor)
    )
    if not (insertion == closed):
        raise BracketMismatchError(f"theta-deformed bracket at axes={axes}", insertion, closed)
    return closed


def _embed_fraction(dom, q: Fraction):
    return dom.from_int(q.numerator) * dom.inv(dom.from_int(q.denominator))


# ---------------------------------------------------------------------------
# Whole-potential checks.
# ---------------------------------------------------------------------------


@dataclass
class BracketTable:
    """Values m_beta[c] (or their deformations) for all classes of a
    superpotential and all multiplicities up to a bound."""

    deformed: bool
    entries: dict  # (class position, c) -> scalar or algebra element


def bracket_table(
    potential: Superpotential,
    char_or_action,
    bound: int,
    deformed: bool = False,
) -> BracketTable:
    entries = {}
    n = potential.rank
    for pos, beta in enumerate(potential.classes):
        for c in multiplicity_vectors(n, bound):
            if deformed:
                entries[(pos, c)] = deformed_bracket(char_or_action, beta, c).value
            else:
                entries[(pos, c)] = unshuffle_bracket(char_or_action, beta, c).value
    return BracketTable(deformed, entries)


@dataclass
class PotentialReport:
    value: AlgElement
    via_hat: AlgElement
    matches: bool


def s_potential(action: TorusAction, potential: Superpotential) -> PotentialReport:
    """The S-potential: the full insertion sum over disc classes, which must
    equal rho_hat of the superpotential."""
    alg = action.algebra
    total = alg.zero
    for beta in potential.classes:
        total = total + deformed_bracket(action, beta, (0,) * potential.rank).value * potential.weight(beta)
    via_hat = action.hat(potential.group_ring())
    return PotentialReport(total, via_hat, bool(total == via_hat))


@dataclass
class DifferentialReport:
    values: list
    via_hat: list
    all_zero: bool


def deformed_differential(action: TorusAction, potential: Superpotential) -> DifferentialReport:
    """m_1^delta on each degree-one generator: the deformed bracket at the
    unit multiplicity vectors, which must equal rho_hat(dW/dx_j) and vanish
    when the action comes from an eigensummand."""
    n = potential.rank
    alg = action.algebra
    values = []
    hats = []
    gr = potential.group_ring()
    for j in range(1, n + 1):
        acc = alg.zero
        unit_c = tuple(1 if i == j - 1 else 0 for i in range(n))
        for beta in potential.classes:
            acc = acc + deformed_bracket(action, beta, unit_c).value * potential.weight(beta)
        values.append(acc)
        hats.append(action.hat(log_derivative(gr, j)))
    for v, h in zip(values, hats):
        if not (v == h):
            raise BracketMismatchError("differential vs rho_hat of derivative", v, h)
    return DifferentialReport(values, hats, all(v.is_zero() for v in values))


@dataclass
class CoEvaluation:
    value: AlgElement
    projected: AlgElement | None
    matches: bool


def co_evaluate(
    action: TorusAction,
    potential: Superpotential,
    j: int,
    summand: Summand | None = None,
) -> CoEvaluation:
    """Length-zero closed-open composite on the j-th divisor class (0-based):
    sum over classes of <H_j, beta> T^area m^delta_beta[0]; compared against
    the summand projection of the divisor's quotient class when available."""
    alg = action.algebra
    acc = alg.zero
    zero_c = (0,) * potential.rank
    for beta in potential.classes:
        k = beta.pairings[j]
        if k:
            acc = acc + deformed_bracket(action, beta, zero_c).value * (
                potential.weight(beta) * action.domain.from_int(k)
            )
    projected = None
    matches = True
    if summand is not None:
        projected = summand.project(summand.quotient.divisor_class(j))
        matches = bool(acc == projected)
    return CoEvaluation(acc, projected, matches)


def injectivity_matrix(s: Summand) -> tuple[list, int]:
    """Matrix of the projection composite over a basis of Q.

    Each basis element of Q is lifted to the group ring through its normal
    form, pushed back through the action of its monomials, and projected.
    The composite must act with full rank dim Q (it is the identity on Q).
    Re-referencing multiplies each monomial's action by a unit, so the rank
    is insensitive to it; the raw action is used.
    """
    q = s.quotient
    rows = []
    for t in range(s.dim):
        basis_elt = s.algebra.basis_element(t)
        lift = q.lift_to_group_ring(s.embed(basis_elt))
        image = hat_evaluate(
            lift,
            lambda g: s.project(q.gamma_element(g)),
            s.algebra.zero,
        )
        rows.append(list(image.coords))
    from . import linalg

    return rows, linalg.rank(q.domain, rows)
