"""Finite-dimensional commutative algebras with explicit structure constants.

These serve two roles: the Jacobian quotient and its eigensummands are
instances, and so are the synthetic nilpotent coefficient algebras used to
exercise the deformed brackets.  An algebra can itself act as a scalar domain
(its elements support ring operations, zero tests, and inversion), which is
how algebras of coefficients slot into the generic Hochschild machinery.
"""

from __future__ import annotations

from itertools import product as iter_product

from . import linalg


class AlgebraError(ValueError):
    pass


class AlgElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: "CommAlgebra", coords):
        self.algebra = algebra
        self.coords = tuple(coords)

    def _coerce(self, other):
        if isinstance(other, AlgElement):
            if other.algebra is not self.algebra:
                raise AlgebraError("elements of different algebras")
            return other
        if isinstance(other, int):
            return self.algebra.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgElement(self.algebra, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return AlgElement(self.algebra, [-a for a in self.coords])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is not None:
            return self.algebra.mul(self, o)
        # otherwise treat as a scalar of the coefficient domain
        return AlgElement(self.algebra, [a * other for a in self.coords])

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is not None:
            return self * o.inverse()
        return AlgElement(self.algebra, [a * self.algebra.domain.inv(other) for a in self.coords])

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.algebra.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "AlgElement":
        return self.algebra.inv(self)

    def is_zero(self) -> bool:
        return all(self.algebra.domain.is_zero(c) for c in self.coords)

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if not isinstance(other, AlgElement) else other
        if o is None:
            return NotImplemented
        dom = self.algebra.domain
        return all(dom.eq(a, b) for a, b in zip(self.coords, o.coords))

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self) -> str:
        parts = []
        for c, lab in zip(self.coords, self.algebra.labels):
            if not self.algebra.domain.is_zero(c):
                parts.append(f"({c})*{lab}")
        return " + ".join(parts) if parts else "0"


class CommAlgebra:
    """Commutative associative unital algebra given by structure constants.

    `table[i][j]` holds the coordinates of basis_i * basis_j.  The instance
    also satisfies the scalar-domain protocol, with elements as its values.
    """

    def __init__(self, domain, labels, table, unit_coords, check: bool = False):
        self.domain = domain
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.table = [
            [tuple(table[i][j]) for j in range(self.dim)] for i in range(self.dim)
        ]
        self.unit_coords = tuple(unit_coords)
        self.char = domain.char
        self.order = None
        if check:
            self.check_axioms()

    # -- scalar-domain protocol -------------------------------------------

    @property
    def zero(self) -> AlgElement:
        return AlgElement(self, [self.domain.zero] * self.dim)

    @property
    def one(self) -> AlgElement:
        return AlgElement(self, self.unit_coords)

    def from_int(self, n: int) -> AlgElement:
        return self.from_scalar(self.domain.from_int(n))

    def from_scalar(self, c) -> AlgElement:
        return AlgElement(self, [c * u for u in self.unit_coords])

    def is_zero(self, x: AlgElement) -> bool:
        return x.is_zero()

    def eq(self, x: AlgElement, y: AlgElement) -> bool:
        return x == y

    def inv(self, x: AlgElement) -> AlgElement:
        sol = linalg.solve(self.domain, self.mult_matrix(x), list(self.unit_coords))
        if sol is None:
            raise ZeroDivisionError(f"{x!r} is not invertible")
        return AlgElement(self, sol)

    # -- algebra operations -------------------------------------------------

    def element(self, coords) -> AlgElement:
        if len(coords) != self.dim:
            raise AlgebraError("coordinate vector of wrong length")
        return AlgElement(self, coords)

    def basis_element(self, i: int) -> AlgElement:
        return AlgElement(
            self,
            [self.domain.one if j == i else self.domain.zero for j in range(self.dim)],
        )

    def mul(self, a: AlgElement, b: AlgElement) -> AlgElement:
        dom = self.domain
        out = [dom.zero] * self.dim
        for i, ca in enumerate(a.coords):
            if dom.is_zero(ca):
                continue
            for j, cb in enumerate(b.coords):
                if dom.is_zero(cb):
                    continue
                f = ca * cb
                for k, t in enumerate(self.table[i][j]):
                    if not dom.is_zero(t):
                        out[k] = out[k] + f * t
        return AlgElement(self, out)

    def mult_matrix(self, x: AlgElement) -> list:
        """Matrix of multiplication by x in the basis (columns = x * e_j)."""
        cols = [self.mul(x, self.basis_element(j)).coords for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def is_nilpotent(self, x: AlgElement) -> bool:
        return self.nilpotency_index(x) is not None

    def scalar_part(self, x: AlgElement):
        """The scalar c with x = c * 1, or None if x is not a unit multiple."""
        dom = self.domain
        c = None
        for xi, ui in zip(x.coords, self.unit_coords):
            if not dom.is_zero(ui):
                c = xi * dom.inv(ui)
                break
        if c is None:
            return None
        return c if x == self.from_scalar(c) else None

    def nilpotency_index(self, x: AlgElement) -> int | None:
        """Smallest k >= 1 with x^k = 0, or None if x is not nilpotent."""
        acc = x
        for k in range(1, self.dim + 2):
            if acc.is_zero():
                return k
            acc = self.mul(acc, x)
        return None

    def check_axioms(self, rng=None, samples: int = 0):
        """Verify commutativity and associativity on all basis triples, and
        unitality; with an rng, adds random sampled triples."""

        def expect(cond, msg):
            if not cond:
                raise AlgebraError(msg)

        for i in range(self.dim):
            bi = self.basis_element(i)
            expect(self.mul(self.one, bi) == bi, "unit fails on the left")
            expect(self.mul(bi, self.one) == bi, "unit fails on the right")
            for j in range(self.dim):
                bj = self.basis_element(j)
                expect(self.mul(bi, bj) == self.mul(bj, bi), "not commutative")
                for k in range(self.dim):
                    bk = self.basis_element(k)
                    expect(
                        self.mul(self.mul(bi, bj), bk) == self.mul(bi, self.mul(bj, bk)),
                        f"not associative at basis triple {(i, j, k)}",
                    )
        if rng is not None:
            for _ in range(samples):
                a = self.sample(rng)
                b = self.sample(rng)
                c = self.sample(rng)
                expect((a * b) * c == a * (b * c), "sampled associativity failure")

    def sample(self, rng) -> AlgElement:
        return AlgElement(self, [self.domain.sample(rng) for _ in range(self.dim)])

    def __repr__(self) -> str:
        return f"CommAlgebra(dim={self.dim}, over {self.domain!r})"


def log_one_plus(psi: AlgElement) -> AlgElement:
    """Nilpotent logarithm: psi - psi^2/2 + psi^3/3 - ...; finite by
    nilpotence, characteristic 0 only."""
    alg = psi.algebra
    if alg.char != 0:
        raise AlgebraError("nilpotent logarithm requires characteristic 0")
    idx = alg.nilpotency_index(psi)
    if idx is None:
        raise AlgebraError("logarithm argument 1 + psi needs nilpotent psi")
    acc = alg.zero
    power = alg.one
    for j in range(1, idx):
        power = power * psi
        sign = 1 if j % 2 == 1 else -1
        acc = acc + power * (alg.domain.inv(alg.domain.from_int(sign * j)))
    return acc


def exp_nilpotent(theta: AlgElement) -> AlgElement:
    """Sum of theta^j / j!, finite by nilpotence, characteristic 0 only."""
    alg = theta.algebra
    if alg.char != 0:
        raise AlgebraError("exponential requires characteristic 0")
    idx = alg.nilpotency_index(theta)
    if idx is None:
        raise AlgebraError("exponential argument must be nilpotent")
    acc = alg.one
    power = alg.one
    fact = 1
    for j in range(1, idx):
        power = power * theta
        fact *= j
        acc = acc + power * alg.domain.inv(alg.domain.from_int(fact))
    return acc


def monomial_nilpotent_algebra(domain, nvars: int, killed: set) -> CommAlgebra:
    """F[e_1..e_nvars] modulo the monomial ideal generated by `killed`.

    Every generator is nilpotent (the ideal must contain a pure power of each
    variable), so the result is local with nilradical spanned by the
    non-constant basis monomials.
    """
    killed = {tuple(m) for m in killed}
    bounds = []
    for i in range(nvars):
        pure = [m[i] for m in killed if all(m[j] == 0 for j in range(nvars) if j != i)]
        if not pure:
            raise AlgebraError(f"variable {i} is not nilpotent under the given ideal")
        bounds.append(min(pure))

    def in_ideal(m: tuple) -> bool:
        return any(all(k[i] <= m[i] for i in range(nvars)) for k in killed)

    basis = []
    for exps in iter_product(*(range(b) for b in bounds)):
        if not in_ideal(exps):
            basis.append(exps)
    basis.sort(key=lambda m: (sum(m), m))
    index = {m: i for i, m in enumerate(basis)}
    dim = len(basis)
    zero_row = [domain.zero] * dim
    table = []
    for mi in basis:
        row = []
        for mj in basis:
            prod = tuple(a + b for a, b in zip(mi, mj))
            coords = list(zero_row)
            if not in_ideal(prod) and prod in index:
                coords[index[prod]] = domain.one
            row.append(tuple(coords))
        table.append(row)
    labels = []
    for m in basis:
        if not any(m):
            labels.append("1")
        else:
            labels.append("*".join(f"e{i+1}^{k}" if k > 1 else f"e{i+1}" for i, k in enumerate(m) if k))
    unit = [domain.one if i == index[(0,) * nvars] else domain.zero for i in range(dim)]
    alg = CommAlgebra(domain, labels, table, unit)
    alg.nilradical_indices = [i for i, m in enumerate(basis) if any(m)]
    return alg


def random_nilpotent_algebra(domain, rng, max_dim: int = 4, max_nil: int = 3) -> CommAlgebra:
    """Random local algebra F[e..]/monomials with dim <= max_dim and
    nilradical^max_nil = 0."""
    nvars = rng.choice([1, 1, 2, 2, 3])
    nil = rng.randint(2, max_nil)
    killed = set()
    for m in iter_product(*(range(nil + 1) for _ in range(nvars))):
        if sum(m) == nil:
            killed.add(m)
    alg = monomial_nilpotent_algebra(domain, nvars, killed)
    guard = 0
    while alg.dim > max_dim:
        guard += 1
        if guard > 50:
            raise AlgebraError("could not shrink random algebra")
        candidates = [
            m
            for m in iter_product(*(range(nil) for _ in range(nvars)))
            if sum(m) >= 2 and not _in_monomial_ideal(m, killed)
        ]
        if not candidates:
            killed = {m for m in iter_product(*(range(3) for _ in range(nvars))) if sum(m) == 2}
            alg = monomial_nilpotent_algebra(domain, nvars, killed)
            continue
        killed.add(candidates[rng.randrange(len(candidates))])
        alg = monomial_nilpotent_algebra(domain, nvars, killed)
    nil_idx = alg.nilradical_indices
    # verify the requested nilpotency bound on the whole nilradical
    for picks in iter_product(nil_idx, repeat=max_nil):
        acc = alg.one
        for i in picks:
            acc = acc * alg.basis_element(i)
        if not acc.is_zero():
            raise AlgebraError("nilpotency bound violated in generated algebra")
    return alg


def _in_monomial_ideal(m: tuple, killed: set) -> bool:
    return any(all(k[i] <= m[i] for i in range(len(m))) for k in killed)


def random_nilradical_element(alg: CommAlgebra, rng) -> AlgElement:
    coords = [alg.domain.zero] * alg.dim
    for i in alg.nilradical_indices:
        coords[i] = alg.domain.sample(rng)
    return AlgElement(alg, coords)
