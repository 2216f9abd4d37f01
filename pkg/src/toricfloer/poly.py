"""Multivariate polynomials over an exact scalar domain, term orders, and a
desk-scale Buchberger completion with confluent normal forms.

Exponents are nonnegative integer tuples.  The basis returned by `buchberger`
is reduced (monic, fully inter-reduced), so `normal_form` against it is
canonical: idempotent, and zero exactly on ideal members (modulo coefficient
precision in Novikov mode).
"""

from __future__ import annotations

from typing import Iterable


class GroebnerBudgetError(RuntimeError):
    """Step budget exhausted before the basis stabilised."""


class NotZeroDimensionalError(RuntimeError):
    """The quotient by the ideal is not a finite-dimensional vector space."""


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def grevlex_key(exps: tuple):
    # graded reverse lexicographic with the LAST variable largest, so the
    # saturation variable (stored last) is preferentially rewritten away
    return (sum(exps), tuple(-e for e in exps))


def lex_key(exps: tuple):
    # lexicographic with the last variable largest, for the same reason
    return tuple(reversed(exps))


TERM_ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


class Poly:
    __slots__ = ("domain", "nvars", "terms")

    def __init__(self, domain, nvars: int, terms: dict):
        self.domain = domain
        self.nvars = nvars
        clean = {}
        for e, c in terms.items():
            if len(e) != nvars:
                raise ValueError("exponent tuple of wrong length")
            if not domain.is_zero(c):
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def zero(cls, domain, nvars: int) -> "Poly":
        return cls(domain, nvars, {})

    @classmethod
    def constant(cls, domain, nvars: int, c) -> "Poly":
        return cls(domain, nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, domain, exps: tuple, c=None) -> "Poly":
        coeff = domain.one if c is None else c
        return cls(domain, len(exps), {tuple(exps): coeff})

    @classmethod
    def variable(cls, domain, nvars: int, i: int) -> "Poly":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(domain, nvars, {e: domain.one})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Poly(self.domain, self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.domain, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = mono_mul(e1, e2)
                    c = c1 * c2
                    out[e] = out[e] + c if e in out else c
            return Poly(self.domain, self.nvars, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Poly":
        return Poly(self.domain, self.nvars, {e: x * c for e, x in self.terms.items()})

    def term_mul(self, exps: tuple, c) -> "Poly":
        return Poly(
            self.domain,
            self.nvars,
            {mono_mul(e, exps): x * c for e, x in self.terms.items()},
        )

    def __pow__(self, n: int) -> "Poly":
        result = Poly.constant(self.domain, self.nvars, self.domain.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def leading(self, key) -> tuple:
        exps = max(self.terms, key=key)
        return exps, self.terms[exps]

    def monic(self, key) -> "Poly":
        if self.is_zero():
            return self
        _, c = self.leading(key)
        return self.scale(self.domain.inv(c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        dom = self.domain
        return all(
            dom.eq(self.terms.get(e, dom.zero), other.terms.get(e, dom.zero)) for e in keys
        )

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms))))

    def format(self, names: list | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"v{i}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k
            )
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    __repr__ = format


def normal_form(f: Poly, basis: Iterable, key) -> Poly:
    """Remainder of full multivariate division of f by the basis."""
    dom = f.domain
    rem_terms: dict = {}
    work = Poly(dom, f.nvars, dict(f.terms))
    basis = list(basis)
    leads = [g.leading(key) for g in basis]
    while not work.is_zero():
        e, c = work.leading(key)
        reduced = False
        for g, (ge, gc) in zip(basis, leads):
            if mono_divides(ge, e):
                factor = c * dom.inv(gc)
                work = work - g.term_mul(mono_div(e, ge), factor)
                reduced = True
                break
        if not reduced:
            rem_terms[e] = rem_terms.get(e, dom.zero) + c
            work = Poly(dom, f.nvars, {ee: cc for ee, cc in work.terms.items() if ee != e})
    return Poly(dom, f.nvars, rem_terms)


def s_poly(f: Poly, g: Poly, key) -> Poly:
    dom = f.domain
    (fe, fc), (ge, gc) = f.leading(key), g.leading(key)
    l = mono_lcm(fe, ge)
    return f.term_mul(mono_div(l, fe), dom.inv(fc)) - g.term_mul(mono_div(l, ge), dom.inv(gc))


def buchberger(gens: list, key, max_steps: int = 20000) -> list:
    """Reduced Groebner basis of the ideal generated by `gens`.

    Uses the coprimality criterion to skip trivial pairs and a step budget as
    a non-termination guard; raises GroebnerBudgetError when exceeded.
    """
    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        return []
    basis = [g.monic(key) for g in basis]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    steps = 0
    while pairs:
        steps += 1
        if steps > max_steps:
            raise GroebnerBudgetError(f"Buchberger budget of {max_steps} pairs exceeded")
        i, j = pairs.pop(0)
        fe, _ = basis[i].leading(key)
        ge, _ = basis[j].leading(key)
        if mono_lcm(fe, ge) == mono_mul(fe, ge):
            continue  # coprime leading monomials
        r = normal_form(s_poly(basis[i], basis[j], key), basis, key)
        if not r.is_zero():
            basis.append(r.monic(key))
            new = len(basis) - 1
            pairs.extend((k, new) for k in range(new))
    return _reduce_basis(basis, key)


def _reduce_basis(basis: list, key) -> list:
    # Minimalise: drop members whose lead is divisible by another lead.
    leads = [g.leading(key)[0] for g in basis]
    keep = []
    for i, g in enumerate(basis):
        if any(
            j != i and mono_divides(leads[j], leads[i]) and (leads[j] != leads[i] or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(g)
    # Fully reduce each member against the others.
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        r = normal_form(g, others, key) if others else g
        if not r.is_zero():
            reduced.append(r.monic(key))
    reduced.sort(key=lambda g: key(g.leading(key)[0]))
    return reduced


def standard_monomials(basis: list, nvars: int, key, limit: int = 4096) -> list:
    """Monomial basis of the quotient: monomials outside the leading ideal.

    Raises NotZeroDimensionalError unless every variable has a pure power
    among the leading monomials.
    """
    leads = [g.leading(key)[0] for g in basis]
    bounds = []
    for i in range(nvars):
        pure = [e[i] for e in leads if all(e[j] == 0 for j in range(nvars) if j != i)]
        if not pure:
            raise NotZeroDimensionalError(f"no pure power of variable {i} in the leading ideal")
        bounds.append(min(pure))
    monos = [(0,) * nvars]
    for i in range(nvars):
        monos = [m[:i] + (k,) + m[i + 1 :] for m in monos for k in range(bounds[i])]
    out = [m for m in monos if not any(mono_divides(l, m) for l in leads)]
    if len(out) > limit:
        raise NotZeroDimensionalError(f"quotient dimension exceeds limit {limit}")
    out.sort(key=key)
    return out
