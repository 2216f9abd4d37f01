"""Jacobian ideal, Groebner quotient, the torus action on it, generalised
eigensummands, and all per-summand data (valuations, unitary eigenvalues,
nilpotent parts, idempotents, projections).

Laurent invertibility is handled by one auxiliary variable u with
u*y_1*...*y_n = 1, which keeps Buchberger unmodified.  Eigenvalues are found
by exhaustive search over finite fields, the rational-root test over Q, and
the Newton-polygon lift over Novikov coefficients; a non-split spectrum
raises SplitFieldError naming the offending factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg, unipoly
from .commalg import AlgElement, CommAlgebra, exp_nilpotent, log_one_plus
from .groupring import GroupRingElement, dot, log_derivative
from .poly import (
    Poly,
    TERM_ORDERS,
    buchberger,
    normal_form,
    standard_monomials,
)
from .puiseux import SplitFieldError, novikov_roots
from .scalars import Novikov, NovikovField
from .toric import Superpotential


class QuotientError(RuntimeError):
    pass


def jacobian_ideal(W: Superpotential) -> list:
    """Generators of the Jacobian ideal in F[y_1..y_n, u]: the log-derivatives
    of W cleared of negative exponents, plus the saturation u*y_1*...*y_n - 1.
    """
    n = W.rank
    dom = W.domain
    gens = []
    gr = W.group_ring()
    for j in range(1, n + 1):
        d = log_derivative(gr, j)
        gens.append(_clear_denominators(d))
    sat = Poly(
        dom,
        n + 1,
        {
            tuple([1] * n + [1]): dom.one,
            (0,) * (n + 1): -dom.one,
        },
    )
    gens.append(sat)
    return gens


def _clear_denominators(a: GroupRingElement) -> Poly:
    """Multiply by a single monomial so all exponents become nonnegative."""
    n = a.rank
    if not a.coeffs:
        return Poly.zero(a.domain, n + 1)
    shift = tuple(max(0, -min(g[i] for g in a.coeffs)) for i in range(n))
    terms = {}
    for g, c in a.coeffs.items():
        e = tuple(g[i] + shift[i] for i in range(n)) + (0,)
        terms[e] = c
    return Poly(a.domain, n + 1, terms)


def group_ring_to_poly(a: GroupRingElement) -> Poly:
    """Rewrite tau^gamma with negative entries via y_i^-1 = u * prod_{j!=i} y_j."""
    n = a.rank
    dom = a.domain
    acc = Poly.zero(dom, n + 1)
    for g, c in a.coeffs.items():
        term = Poly.constant(dom, n + 1, c)
        for i, k in enumerate(g):
            if k > 0:
                term = term * Poly.variable(dom, n + 1, i) ** k
            elif k < 0:
                inv = Poly.monomial(
                    dom, tuple(1 if j != i else 0 for j in range(n)) + (1,)
                )
                term = term * inv ** (-k)
        acc = acc + term
    return acc


def _monomial_to_gamma(exps: tuple, n: int) -> tuple:
    # y^a u^b corresponds to gamma = a - b*(1,...,1)
    b = exps[n]
    return tuple(exps[i] - b for i in range(n))


class QuotientAlgebra:
    """The quotient of the Laurent ring by the Jacobian ideal, as a finite
    commutative algebra with a monomial basis and the H-action on it."""

    def __init__(self, W: Superpotential, order: str = "grevlex", basis_polys=None):
        self.W = W
        self.domain = W.domain
        self.n = W.rank
        self.order_name = order
        self.key = TERM_ORDERS[order]
        self.generators = jacobian_ideal(W)
        if basis_polys is not None:
            self.groebner = basis_polys
        else:
            self.groebner = buchberger(self.generators, self.key)
        self.monomials = standard_monomials(self.groebner, self.n + 1, self.key)
        self.dim = len(self.monomials)
        self._index = {m: i for i, m in enumerate(self.monomials)}
        self.algebra = self._build_algebra()
        self.variable_elements = [
            self.reduce_poly(Poly.variable(self.domain, self.n + 1, i)) for i in range(self.n)
        ]
        self._validate()

    # -- construction -------------------------------------------------------

    def _build_algebra(self) -> CommAlgebra:
        dom = self.domain
        labels = []
        names = [f"y{i+1}" for i in range(self.n)] + ["u"]
        for m in self.monomials:
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(m) if k)
            labels.append(mono if mono else "1")
        table = []
        for mi in self.monomials:
            row = []
            for mj in self.monomials:
                prod = Poly.monomial(dom, tuple(a + b for a, b in zip(mi, mj)))
                row.append(self._nf_coords(prod))
            table.append(row)
        unit = self._nf_coords(Poly.constant(dom, self.n + 1, dom.one))
        alg = CommAlgebra(dom, labels, table, unit)
        return alg

    def _nf_coords(self, p: Poly) -> tuple:
        r = normal_form(p, self.groebner, self.key)
        coords = [self.domain.zero] * self.dim
        for e, c in r.terms.items():
            if e not in self._index:
                raise QuotientError(f"normal form produced non-standard monomial {e}")
            coords[self._index[e]] = c
        return tuple(coords)

    def _validate(self):
        mats = [self.algebra.mult_matrix(v) for v in self.variable_elements]
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                lhs = linalg.mat_mul(self.domain, mats[i], mats[j])
                rhs = linalg.mat_mul(self.domain, mats[j], mats[i])
                if not linalg.mat_eq(self.domain, lhs, rhs):
                    raise QuotientError("multiplication operators fail to commute")
        for g in self.generators:
            if not self.reduce_poly(g).is_zero():
                raise QuotientError("an ideal generator has nonzero normal form")

    # -- elements ------------------------------------------------------------

    def reduce_poly(self, p: Poly) -> AlgElement:
        return self.algebra.element(self._nf_coords(p))

    def from_group_ring(self, a: GroupRingElement) -> AlgElement:
        return self.reduce_poly(group_ring_to_poly(a))

    def gamma_element(self, gamma: tuple) -> AlgElement:
        return self.from_group_ring(GroupRingElement.monomial(self.domain, gamma))

    def monomial_lift(self, index: int) -> tuple:
        """Exponent vector gamma of the basis monomial (u folded away)."""
        return _monomial_to_gamma(self.monomials[index], self.n)

    def lift_to_group_ring(self, x: AlgElement) -> GroupRingElement:
        coeffs = {}
        for i, c in enumerate(x.coords):
            if not self.domain.is_zero(c):
                g = self.monomial_lift(i)
                coeffs[g] = coeffs[g] + c if g in coeffs else c
        return GroupRingElement(self.domain, self.n, coeffs)

    def superpotential_class(self) -> AlgElement:
        return self.from_group_ring(self.W.group_ring())

    def divisor_class(self, j: int) -> AlgElement:
        """Normal form of sum_beta <H_j, beta> W_beta T^omega(beta)."""
        return self.from_group_ring(self.W.divisor_image(j))

    def derivative_class(self, j: int) -> AlgElement:
        return self.from_group_ring(log_derivative(self.W.group_ring(), j))

    def groebner_text(self, fmt) -> list:
        names = [f"y{i+1}" for i in range(self.n)] + ["u"]
        return [fmt(g, names) for g in self.groebner]


@dataclass
class Summand:
    """One simultaneous generalised eigensummand of the H-action."""

    quotient: QuotientAlgebra
    basis: list  # ambient coordinate vectors spanning Q
    eigenvalues: tuple  # lambda(gamma_i) as domain scalars
    index: int = 0
    val_vector: tuple = ()
    xi: tuple = ()  # unitary parts xi(gamma_i)
    idempotent: AlgElement | None = None
    algebra: CommAlgebra | None = None  # Q as an algebra with unit e_Q
    unit_in_q: AlgElement | None = None
    psi: tuple = ()  # nilpotent parts as elements of Q
    theta: tuple = ()  # nilpotent logarithms (characteristic 0 only)
    basis_matrix: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def project(self, x: AlgElement) -> AlgElement:
        """pi_Q: multiply by the idempotent, read off in the summand basis."""
        amb = self.idempotent * x
        coords = linalg.coords_in_basis(self.quotient.domain, self.basis, list(amb.coords))
        if coords is None:
            raise QuotientError("projection left the summand span; idempotent is broken")
        return self.algebra.element(coords)

    def embed(self, q: AlgElement) -> AlgElement:
        """Inclusion Q -> A/I."""
        dom = self.quotient.domain
        amb = [dom.zero] * self.quotient.dim
        for c, vec in zip(q.coords, self.basis):
            for i, v in enumerate(vec):
                amb[i] = amb[i] + c * v
        return self.quotient.algebra.element(amb)


def _scalar_roots(dom, coeffs: list) -> list:
    if isinstance(dom, NovikovField):
        return novikov_roots(coeffs, dom)
    found, cofactor = unipoly.roots_in_field(dom, coeffs)
    if unipoly.degree(cofactor) > 0:
        raise SplitFieldError(
            "spectrum does not split over the coefficient field; extend the field: "
            + unipoly.format_poly(dom, cofactor, "t"),
            factor=cofactor,
        )
    return found


def _roots_coincide(dom, a, b) -> bool:
    if isinstance(dom, NovikovField):
        return (a - b).is_zero()
    return dom.eq(a, b)


def _merge_roots(dom, roots: list) -> list:
    """Collapse roots that agree at the working precision, keeping the best
    known representative.  Eigenvalues that tie at every computed order give
    one summand; distinguishing them needs a higher working precision."""
    distinct: list = []
    for c, mult in roots:
        for k, (c2, m2) in enumerate(distinct):
            if _roots_coincide(dom, c, c2):
                best = c if getattr(c, "prec", 0) is None else c2
                if isinstance(dom, NovikovField) and c.prec is not None and c2.prec is not None:
                    best = c if c.prec >= c2.prec else c2
                distinct[k] = (best, m2 + mult)
                break
        else:
            distinct.append((c, mult))
    return distinct


def eigendecompose(q: QuotientAlgebra) -> list:
    """Simultaneous generalised eigenspaces of multiplication by y_1..y_n.

    Iteratively refines the full space: restrict the next operator to each
    invariant block, split its spectrum there, and take kernels of
    (M - c)^dim.  Kernel dimensions are authoritative for multiplicities (at
    finite Novikov precision the root finder may only bound them); the pieces
    of every block must add up exactly, so precision starvation surfaces as a
    QuotientError rather than a wrong decomposition.
    """
    dom = q.domain
    full = [
        [dom.one if i == j else dom.zero for i in range(q.dim)] for j in range(q.dim)
    ]  # list of basis column vectors
    spaces = [(full, ())]
    for gen_index in range(q.n):
        mat = q.algebra.mult_matrix(q.variable_elements[gen_index])
        refined = []
        for basis, eig in spaces:
            bmat = linalg.columns_to_matrix(basis)
            image = linalg.mat_mul(dom, mat, bmat)
            restricted = linalg.solve_matrix(dom, bmat, image)
            if restricted is None:
                raise QuotientError("summand basis is not invariant under the action")
            cp = linalg.charpoly(dom, restricted)
            roots = _merge_roots(dom, _scalar_roots(dom, cp))
            if sum(m for _, m in roots) != len(basis):
                raise SplitFieldError(
                    "characteristic polynomial has missing roots at the current precision"
                )
            d = len(basis)
            block_total = 0
            for c, mult in roots:
                shifted = [
                    [restricted[i][j] - (c if i == j else dom.zero) for j in range(d)]
                    for i in range(d)
                ]
                power = linalg.mat_pow(dom, shifted, d)
                local_kernel = linalg.kernel_basis(dom, power)
                if not local_kernel:
                    raise QuotientError(
                        f"empty generalised eigenspace for an eigenvalue of multiplicity {mult}"
                    )
                block_total += len(local_kernel)
                new_basis = [linalg.mat_vec(dom, bmat, v) for v in local_kernel]
                refined.append((new_basis, eig + (c,)))
            if block_total != d:
                raise QuotientError(
                    f"generalised eigenspaces of a block sum to {block_total}, expected {d}"
                )
        spaces = refined
    if sum(len(b) for b, _ in spaces) != q.dim:
        raise QuotientError("eigensummands do not add up to the whole quotient")
    out = []
    for k, (basis, eig) in enumerate(spaces):
        out.append(Summand(quotient=q, basis=basis, eigenvalues=eig, index=k))
    return out


def summand_data(s: Summand, sample_rng=None) -> Summand:
    """Fill and validate the per-summand data.

    Computes the idempotent, the summand's own algebra structure, valuation
    and unitary parts of the eigenvalues, the nilpotent parts psi, and (in
    characteristic zero) the nilpotent logarithms theta together with the
    exponential identity check.
    """
    q = s.quotient
    dom = q.domain
    novikov = isinstance(dom, NovikovField)

    # Valuations and unitary parts.
    vals = []
    xis = []
    for lam in s.eigenvalues:
        if novikov:
            if lam.is_zero():
                raise QuotientError("zero eigenvalue for an invertible action")
            v = lam.val()
            vals.append(v)
            xis.append(lam.scale_exponent_shift(-v))
        else:
            vals.append(Fraction(0))
            xis.append(lam)
    s.val_vector = tuple(vals)
    s.xi = tuple(xis)
    if novikov:
        for xi in s.xi:
            if xi.val() != 0:
                raise QuotientError("unitary part has nonzero valuation")
    s.basis_matrix = linalg.columns_to_matrix(s.basis)
    return s


def attach_idempotents(summands: list) -> None:
    """Compute all idempotents at once from the direct-sum decomposition and
    validate e^2 = e, e_Q e_Q' = 0, and sum e_Q = 1."""
    if not summands:
        return
    q = summands[0].quotient
    dom = q.domain
    all_cols = []
    blocks = []
    for s in summands:
        blocks.append((len(all_cols), len(s.basis)))
        all_cols.extend(s.basis)
    pmat = linalg.columns_to_matrix(all_cols)
    unit = list(q.algebra.one.coords)
    z = linalg.solve(dom, pmat, unit)
    if z is None:
        raise QuotientError("summand bases do not span the quotient")
    total = q.algebra.zero
    for s, (off, size) in zip(summands, blocks):
        amb = [dom.zero] * q.dim
        for t in range(size):
            c = z[off + t]
            for i, v in enumerate(s.basis[t]):
                amb[i] = amb[i] + c * v
        e = q.algebra.element(amb)
        if not (e * e == e):
            raise QuotientError("idempotent fails e^2 = e")
        s.idempotent = e
        total = total + e
    if not (total == q.algebra.one):
        raise QuotientError("idempotents do not sum to 1")
    for a in range(len(summands)):
        for b in range(a + 1, len(summands)):
            if not (summands[a].idempotent * summands[b].idempotent).is_zero():
                raise QuotientError("idempotents of distinct summands do not annihilate")
    for s in summands:
        _build_summand_algebra(s)


def _build_summand_algebra(s: Summand) -> None:
    q = s.quotient
    dom = q.domain
    table = []
    basis_elements = [q.algebra.element(vec) for vec in s.basis]
    for ei in basis_elements:
        row = []
        for ej in basis_elements:
            prod = ei * ej
            coords = linalg.coords_in_basis(dom, s.basis, list(prod.coords))
            if coords is None:
                raise QuotientError("summand is not closed under multiplication")
            row.append(tuple(coords))
        table.append(row)
    unit_coords = linalg.coords_in_basis(dom, s.basis, list(s.idempotent.coords))
    if unit_coords is None:
        raise QuotientError("idempotent does not lie in the summand")
    labels = [f"q{i}" for i in range(len(s.basis))]
    s.algebra = CommAlgebra(dom, labels, table, unit_coords)
    s.unit_in_q = s.algebra.one

    # Nilpotent parts psi(gamma_i) = rho(gamma_i)/xi(gamma_i) - 1, where rho
    # is the action re-referenced so its eigenvalues are the unitary parts.
    novikov = isinstance(dom, NovikovField)
    psis = []
    for i in range(q.n):
        act = s.project(q.variable_elements[i])
        if novikov:
            act = act * dom.monomial(-s.val_vector[i])
        psi = act * dom.inv(s.xi[i]) - s.algebra.one
        idx = s.algebra.nilpotency_index(psi)
        if idx is None or idx > s.dim + 1:
            raise QuotientError("rho/xi - 1 is not nilpotent of index <= dim Q")
        psis.append(psi)
    s.psi = tuple(psis)
    if dom.char == 0:
        s.theta = tuple(log_one_plus(p) for p in s.psi)
        for th, p in zip(s.theta, s.psi):
            if not (exp_nilpotent(th) == s.algebra.one + p):
                raise QuotientError("exp(theta) fails to recover rho/xi")
    else:
        s.theta = ()


def rho_element(s: Summand, gamma: tuple) -> AlgElement:
    """The re-referenced action of tau^gamma on Q, as an element of Q."""
    dom = s.quotient.domain
    acc = s.algebra.one
    for i, k in enumerate(gamma):
        if k == 0:
            continue
        base = (s.algebra.one + s.psi[i]) * s.xi[i]
        acc = acc * (base**k if k > 0 else base.inverse() ** (-k))
    return acc


def xi_value(s: Summand, gamma: tuple):
    """xi(gamma) as a scalar of the quotient's domain."""
    dom = s.quotient.domain
    acc = dom.one
    for x, k in zip(s.xi, gamma):
        if k > 0:
            acc = acc * x**k
        elif k < 0:
            acc = acc * dom.inv(x) ** (-k)
    return acc


def theta_is_additive(s: Summand, pairs) -> bool:
    """Check theta(g + g') = theta(g) + theta(g') on the given vector pairs."""
    for g1, g2 in pairs:
        lhs = _theta_of(s, tuple(a + b for a, b in zip(g1, g2)))
        rhs = _theta_of(s, g1) + _theta_of(s, g2)
        if not (lhs == rhs):
            return False
    return True


def _theta_of(s: Summand, gamma: tuple) -> AlgElement:
    ratio = rho_element(s, gamma) * s.algebra.domain.inv(xi_value(s, gamma))
    return log_one_plus(ratio - s.algebra.one)


def decompose(q: QuotientAlgebra) -> list:
    """Eigendecompose, attach idempotents, and fill all per-summand data."""
    summands = eigendecompose(q)
    for s in summands:
        summand_data(s)
    attach_idempotents(summands)
    return summands
