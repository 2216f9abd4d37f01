"""Exact coefficient scalars: rationals, prime fields, prime-power extensions,
and truncated Novikov series with valuation and precision tracking.

Every value here is immutable; all operations are pure.  Real exponents are
restricted to rationals throughout, so all arithmetic is exact.  Truncated
series carry their own precision cutoff and propagate it pessimistically, so
an identity checked on Novikov values means "equal modulo T^E" for the
reported E.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Union

INF = float("inf")

Rat = Union[int, str, Fraction]


class ScalarError(ValueError):
    """Malformed or mismatched scalar operands."""


def rational(x: Rat) -> Fraction:
    """Parse a rational from an int, a Fraction, or a "p/q" string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ScalarError(f"cannot parse rational from {x!r}")


def format_rational(x: Fraction) -> str:
    return str(x)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Field descriptors.  A field object exposes: char, order (None if infinite),
# zero, one, from_int, parse, is_zero, eq, inv, elements()/sample(rng).
# Elements themselves carry the ring operations through operator overloading.
# ---------------------------------------------------------------------------


class RationalField:
    """The field of rational numbers; elements are `fractions.Fraction`."""

    char = 0
    order = None

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def parse(self, obj) -> Fraction:
        return rational(obj)

    def format(self, x: Fraction) -> str:
        return str(x)

    def is_zero(self, x) -> bool:
        return x == 0

    def eq(self, x, y) -> bool:
        return x == y

    def inv(self, x: Fraction) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / x

    def sample(self, rng) -> Fraction:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")


QQ = RationalField()


class FpElement:
    """Residue in a prime field; arithmetic stays within one modulus."""

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        self.val = val % p
        self.p = p

    def _coerce(self, other) -> "FpElement":
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ScalarError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.val + other.val, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.val - other.val, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FpElement(-self.val, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.val * other.val, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElement(pow(self.val, n, self.p), self.p)

    def inverse(self) -> "FpElement":
        if self.val == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return FpElement(pow(self.val, -1, self.p), self.p)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.val == other % self.p
        return isinstance(other, FpElement) and self.p == other.p and self.val == other.val

    def __hash__(self) -> int:
        return hash((self.val, self.p))

    def __repr__(self) -> str:
        return f"{self.val}"

    def __bool__(self) -> bool:
        return self.val != 0


class PrimeField:
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ScalarError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p

    @property
    def zero(self) -> FpElement:
        return FpElement(0, self.p)

    @property
    def one(self) -> FpElement:
        return FpElement(1, self.p)

    def from_int(self, n: int) -> FpElement:
        return FpElement(n, self.p)

    def parse(self, obj) -> FpElement:
        if isinstance(obj, FpElement):
            return self.from_int(obj.val) if obj.p == self.p else self._mismatch(obj)
        if isinstance(obj, str):
            obj = int(obj)
        if isinstance(obj, int):
            return self.from_int(obj)
        raise ScalarError(f"cannot parse F_{self.p} element from {obj!r}")

    def _mismatch(self, obj):
        raise ScalarError(f"element of F_{obj.p} used in F_{self.p}")

    def format(self, x: FpElement) -> str:
        return str(x.val)

    def is_zero(self, x) -> bool:
        return x.val == 0

    def eq(self, x, y) -> bool:
        return x == y

    def inv(self, x: FpElement) -> FpElement:
        return x.inverse()

    def elements(self) -> Iterator[FpElement]:
        for v in range(self.p):
            yield FpElement(v, self.p)

    def sample(self, rng) -> FpElement:
        return FpElement(rng.randrange(self.p), self.p)

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Fp", self.p))


class ExtElement:
    """Element of GF(p^k) in the polynomial basis 1, x, ..., x^(k-1)."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: tuple, field: "ExtensionField"):
        self.coeffs = coeffs
        self.field = field

    def _coerce(self, other):
        if isinstance(other, ExtElement):
            if other.field is not self.field and other.field != self.field:
                raise ScalarError("mixed extension fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, FpElement):
            if other.p != self.field.p:
                raise ScalarError("mixed characteristics")
            return self.field.embed(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return ExtElement(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.field)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return ExtElement(tuple((-a) % p for a in self.coeffs), self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field._mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "ExtElement":
        return self.field.inv(self)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == self.field.from_int(other)
        if isinstance(other, FpElement):
            return self == self.field.embed(other)
        return isinstance(other, ExtElement) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.field.p, self.field.k))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        return f"GF({self.field.p}^{self.field.k}){list(self.coeffs)}"


def _fp_poly_divmod(num: list, den: list, p: int):
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], -1, p)
    quot = [0] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = (num[i] * inv_lead) % p
        if c:
            quot[i - dd] = c
            for j, d in enumerate(den):
                num[i - dd + j] = (num[i - dd + j] - c * d) % p
    while num and num[-1] == 0:
        num.pop()
    return quot, num


def _fp_poly_mulmod(a: list, b: list, mod: list, p: int) -> list:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    _, rem = _fp_poly_divmod(prod, mod, p)
    return rem


def _fp_poly_powmod(a: list, n: int, mod: list, p: int) -> list:
    result = [1]
    base = a
    while n:
        if n & 1:
            result = _fp_poly_mulmod(result, base, mod, p)
        base = _fp_poly_mulmod(base, base, mod, p)
        n >>= 1
    return result


def _fp_poly_gcd(a: list, b: list, p: int) -> list:
    a, b = list(a), list(b)
    while b:
        _, r = _fp_poly_divmod(a, b, p)
        a, b = b, r
    return a


def _irreducible_mod_p(poly: list, p: int) -> bool:
    # Rabin test: x^(p^k) == x mod f, and gcd(x^(p^(k/q)) - x, f) = 1 for
    # prime divisors q of k.
    k = len(poly) - 1
    if k < 1:
        return False
    x = [0, 1]
    xq = _fp_poly_powmod(x, p**k, poly, p)
    diff = [(a - b) % p for a, b in zip(xq + [0] * 2, x + [0] * len(xq))]
    while diff and diff[-1] == 0:
        diff.pop()
    if diff:
        return False
    for q in range(2, k + 1):
        if k % q == 0 and _is_prime(q):
            xe = _fp_poly_powmod(x, p ** (k // q), poly, p)
            d = [(a - b) % p for a, b in zip(xe + [0] * 2, x + [0] * len(xe))]
            while d and d[-1] == 0:
                d.pop()
            g = _fp_poly_gcd(poly, d, p)
            if len(g) - 1 > 0:
                return False
    return True


def _find_irreducible(p: int, k: int) -> tuple:
    # Smallest monic irreducible of degree k over F_p, by exhaustive search;
    # fine at the field sizes used here.
    for code in range(p**k):
        coeffs = []
        c = code
        for _ in range(k):
            coeffs.append(c % p)
            c //= p
        poly = coeffs + [1]
        if _irreducible_mod_p(poly, p):
            return tuple(poly)
    raise ScalarError(f"no irreducible polynomial of degree {k} over F_{p}")


class ExtensionField:
    """GF(p^k) in a fixed polynomial basis modulo a monic irreducible."""

    def __init__(self, p: int, k: int, modulus: tuple | None = None):
        if not _is_prime(p):
            raise ScalarError(f"{p} is not prime")
        if k < 1:
            raise ScalarError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.char = p
        self.order = p**k
        self.modulus = tuple(modulus) if modulus else _find_irreducible(p, k)
        if len(self.modulus) != k + 1 or self.modulus[-1] != 1:
            raise ScalarError("modulus must be monic of degree k")

    @property
    def zero(self) -> ExtElement:
        return ExtElement((0,) * self.k, self)

    @property
    def one(self) -> ExtElement:
        return ExtElement((1,) + (0,) * (self.k - 1), self)

    def gen(self) -> ExtElement:
        """The class of x, a root of the modulus."""
        if self.k == 1:
            return ExtElement(((-self.modulus[0]) % self.p,), self)
        return ExtElement((0, 1) + (0,) * (self.k - 2), self)

    def from_int(self, n: int) -> ExtElement:
        """The ring homomorphism Z -> GF(p^k), landing in the prime subfield."""
        return ExtElement((n % self.p,) + (0,) * (self.k - 1), self)

    def from_code(self, n: int) -> ExtElement:
        """Literal codec: base-p digits of n, so 0..p^k-1 enumerates the field."""
        digits = []
        m = n % self.order
        for _ in range(self.k):
            digits.append(m % self.p)
            m //= self.p
        return ExtElement(tuple(digits), self)

    def embed(self, x: FpElement) -> ExtElement:
        return ExtElement((x.val,) + (0,) * (self.k - 1), self)

    def parse(self, obj) -> ExtElement:
        if isinstance(obj, ExtElement):
            return obj
        if isinstance(obj, str):
            obj = int(obj)
        if isinstance(obj, int):
            return self.from_code(obj)
        if isinstance(obj, (list, tuple)):
            if len(obj) != self.k:
                raise ScalarError("coefficient vector has wrong length")
            return ExtElement(tuple(int(c) % self.p for c in obj), self)
        raise ScalarError(f"cannot parse GF({self.p}^{self.k}) element from {obj!r}")

    def format(self, x: ExtElement) -> str:
        return str(sum(c * self.p**i for i, c in enumerate(x.coeffs)))

    def _mul(self, a: ExtElement, b: ExtElement) -> ExtElement:
        rem = _fp_poly_mulmod(list(a.coeffs), list(b.coeffs), list(self.modulus), self.p)
        rem = rem + [0] * (self.k - len(rem))
        return ExtElement(tuple(rem), self)

    def is_zero(self, x) -> bool:
        return not any(x.coeffs)

    def eq(self, x, y) -> bool:
        return x == y

    def inv(self, x: ExtElement) -> ExtElement:
        if self.is_zero(x):
            raise ZeroDivisionError(f"inverse of 0 in GF({self.p}^{self.k})")
        # Extended Euclid in F_p[x] against the modulus.
        a, b = list(self.modulus), list(x.coeffs)
        while b and b[-1] == 0:
            b.pop()
        s0, s1 = [], [1]
        while b:
            q, r = _fp_poly_divmod(a, b, self.p)
            qs = [0] * (len(q) + len(s1) - 1) if q and s1 else []
            for i, qc in enumerate(q):
                if qc:
                    for j, sc in enumerate(s1):
                        qs[i + j] = (qs[i + j] + qc * sc) % self.p
            new_s = [( (s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)) % self.p
                     for i in range(max(len(s0), len(qs), 1))]
            while new_s and new_s[-1] == 0:
                new_s.pop()
            a, b, s0, s1 = b, r, s1, new_s
        # a is now gcd = nonzero constant
        c_inv = pow(a[0], -1, self.p)
        res = [(c * c_inv) % self.p for c in s0]
        res = res + [0] * (self.k - len(res))
        return ExtElement(tuple(res[: self.k]), self)

    def elements(self) -> Iterator[ExtElement]:
        for n in range(self.order):
            yield self.from_code(n)

    def sample(self, rng) -> ExtElement:
        return self.from_code(rng.randrange(self.order))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.k == self.k
            and other.modulus == self.modulus
        )

    def __hash__(self) -> int:
        return hash(("Fpk", self.p, self.k, self.modulus))


def field_from_spec(spec) -> RationalField | PrimeField | ExtensionField:
    """Decode a field description: "rational" or {"char": p, "degree": k}."""
    if spec in ("rational", "Q", None):
        return QQ
    if isinstance(spec, dict):
        p = int(spec["char"])
        k = int(spec.get("degree", 1))
        return PrimeField(p) if k == 1 else ExtensionField(p, k)
    raise ScalarError(f"unrecognised field spec {spec!r}")


def field_to_spec(field) -> object:
    if isinstance(field, RationalField):
        return "rational"
    if isinstance(field, PrimeField):
        return {"char": field.p, "degree": 1}
    if isinstance(field, ExtensionField):
        return {"char": field.p, "degree": field.k}
    raise ScalarError(f"unrecognised field {field!r}")


# ---------------------------------------------------------------------------
# Truncated Novikov series.
# ---------------------------------------------------------------------------


class Novikov:
    """Finite series sum a_i T^(e_i) with strictly increasing rational
    exponents, and a precision cutoff: `prec` None means the series is known
    exactly, otherwise only terms with exponent < prec are meaningful.

    The valuation of the zero series is reported as the INF sentinel.
    """

    __slots__ = ("field", "terms", "prec")

    def __init__(self, field, terms: Iterable, prec: Fraction | None = None):
        cleaned = {}
        for e, c in terms:
            e = rational(e) if not isinstance(e, Fraction) else e
            if e in cleaned:
                cleaned[e] = cleaned[e] + c
            else:
                cleaned[e] = c
        items = []
        for e in sorted(cleaned):
            if prec is not None and e >= prec:
                continue
            c = cleaned[e]
            if not field.is_zero(c):
                items.append((e, c))
        self.field = field
        self.terms = tuple(items)
        self.prec = prec

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field, prec=None) -> "Novikov":
        return cls(field, (), prec)

    @classmethod
    def constant(cls, field, c, prec=None) -> "Novikov":
        return cls(field, [(Fraction(0), c)], prec)

    @classmethod
    def monomial(cls, field, exponent: Rat, c=None, prec=None) -> "Novikov":
        e = rational(exponent)
        coeff = field.one if c is None else c
        return cls(field, [(e, coeff)], prec)

    # -- inspection ---------------------------------------------------------

    def val(self):
        """Leading exponent of the stored truncation; INF for 0."""
        return self.terms[0][0] if self.terms else INF

    def leading_coeff(self):
        if not self.terms:
            raise ScalarError("zero series has no leading coefficient")
        return self.terms[0][1]

    def is_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return self.prec is None

    def coeff(self, exponent: Rat):
        e = rational(exponent)
        for ee, c in self.terms:
            if ee == e:
                return c
        return self.field.zero

    # -- arithmetic ----------------------------------------------------------

    def _meet_prec(self, other: "Novikov"):
        if self.prec is None:
            return other.prec
        if other.prec is None:
            return self.prec
        return min(self.prec, other.prec)

    def _coerce(self, other):
        if isinstance(other, Novikov):
            if other.field != self.field:
                raise ScalarError("mixed base fields in Novikov arithmetic")
            return other
        if isinstance(other, int):
            return Novikov.constant(self.field, self.field.from_int(other))
        try:
            return Novikov.constant(self.field, self.field.parse(other))
        except (ScalarError, TypeError):
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Novikov(self.field, self.terms + other.terms, self._meet_prec(other))

    __radd__ = __add__

    def __neg__(self):
        return Novikov(self.field, [(e, -c) for e, c in self.terms], self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # Truncate to min(E_a + val(b), E_b + val(a)); exact stays exact.
        prec = None
        if self.prec is not None:
            prec = self.prec + (other.val() if other.terms else 0)
        if other.prec is not None:
            q = other.prec + (self.val() if self.terms else 0)
            prec = q if prec is None else min(prec, q)
        prod = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                prod.append((e1 + e2, c1 * c2))
        return Novikov(self.field, prod, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) == 1:
                e, c = self.terms[0]
                prec = None if self.prec is None else self.prec + (n - 1) * e
                return Novikov(self.field, [(e * n, self.field.inv(c) ** (-n))], prec)
            raise ScalarError("negative powers of multi-term series require invert() with a precision")
        result = Novikov.constant(self.field, self.field.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale_exponent_shift(self, shift: Rat) -> "Novikov":
        """Multiply by the monomial T^shift (exact)."""
        s = rational(shift)
        prec = None if self.prec is None else self.prec + s
        return Novikov(self.field, [(e + s, c) for e, c in self.terms], prec)

    def invert(self, prec: Fraction | None = None) -> "Novikov":
        """Inverse with a * result == 1 modulo T^prec (geometric series).

        A nonzero monomial inverts exactly.  For anything longer a finite
        target precision is required, either supplied or inherited.
        """
        if not self.terms:
            raise ZeroDivisionError("inverse of Novikov zero")
        v, lead = self.terms[0]
        lead_inv = self.field.inv(lead)
        if len(self.terms) == 1:
            out_prec = None if self.prec is None else self.prec - 2 * v
            if prec is not None:
                out_prec = prec if out_prec is None else min(out_prec, prec)
            return Novikov(self.field, [(-v, lead_inv)], out_prec)
        if prec is None:
            if self.prec is None:
                raise ScalarError("inverting a multi-term exact series needs a precision")
            prec = self.prec - 2 * v
        # a = lead T^v (1 + u) with val(u) > 0; invert the unit part.
        u = Novikov(
            self.field,
            [(e - v, lead_inv * c) for e, c in self.terms[1:]],
            None if self.prec is None else self.prec - v,
        )
        rel = prec + v  # needed relative precision of the unit inverse
        acc = Novikov.constant(self.field, self.field.one, rel)
        if u.terms:
            term = Novikov.constant(self.field, self.field.one, rel)
            step_val = u.val()
            k = 1
            while step_val * k < rel:
                term = Novikov(self.field, ((-u) * term).terms, rel)
                acc = acc + term
                k += 1
        return Novikov(self.field, [(e - v, lead_inv * c) for e, c in acc.terms], prec)

    def truncate(self, prec: Rat) -> "Novikov":
        p = rational(prec)
        if self.prec is not None:
            p = min(p, self.prec)
        return Novikov(self.field, self.terms, p)

    # -- comparisons ----------------------------------------------------------

    def same_mod_prec(self, other: "Novikov") -> bool:
        """Equality modulo T^E where E is the meet of the two precisions."""
        other = self._coerce(other)
        diff = self - other
        return not diff.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, Novikov):
            return self.field == other.field and self.terms == other.terms and self.prec == other.prec
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.terms, self.prec))

    def __repr__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            parts = []
            for e, c in self.terms:
                if e == 0:
                    parts.append(f"{c}")
                elif e == 1:
                    parts.append(f"{c}*T")
                else:
                    parts.append(f"{c}*T^({e})")
            body = " + ".join(parts)
        if self.prec is not None:
            body += f" + O(T^({self.prec}))"
        return body


class NovikovField:
    """Field-like view of truncated Novikov series over a base field.

    `default_prec` is the working precision used when inverting exact
    multi-term series inside generic algorithms.
    """

    def __init__(self, base, default_prec: Rat):
        self.base = base
        self.char = base.char
        self.order = None
        self.default_prec = rational(default_prec)

    @property
    def zero(self) -> Novikov:
        return Novikov.zero(self.base)

    @property
    def one(self) -> Novikov:
        return Novikov.constant(self.base, self.base.one)

    def from_int(self, n: int) -> Novikov:
        return Novikov.constant(self.base, self.base.from_int(n))

    def parse(self, obj) -> Novikov:
        if isinstance(obj, Novikov):
            return obj
        if isinstance(obj, (list, tuple)):
            return Novikov(self.base, [(rational(e), self.base.parse(c)) for e, c in obj])
        return Novikov.constant(self.base, self.base.parse(obj))

    def format(self, x: Novikov):
        return {
            "terms": [[str(e), self.base.format(c)] for e, c in x.terms],
            "prec": None if x.prec is None else str(x.prec),
        }

    def monomial(self, exponent: Rat, c=None) -> Novikov:
        return Novikov.monomial(self.base, exponent, c)

    def is_zero(self, x: Novikov) -> bool:
        return not x.terms

    def eq(self, x: Novikov, y: Novikov) -> bool:
        return x.same_mod_prec(y)

    def inv(self, x: Novikov) -> Novikov:
        if len(x.terms) == 1:
            return x.invert()
        return x.invert(self.default_prec - 2 * x.val() if x.prec is None else None)

    def sample(self, rng) -> Novikov:
        terms = []
        for _ in range(rng.randint(0, 3)):
            e = Fraction(rng.randint(0, 8), rng.choice([1, 2, 3]))
            terms.append((e, self.base.sample(rng)))
        return Novikov(self.base, terms, self.default_prec)

    def __repr__(self) -> str:
        return f"Novikov({self.base!r}, E={self.default_prec})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NovikovField)
            and other.base == self.base
            and other.default_prec == self.default_prec
        )

    def __hash__(self) -> int:
        return hash(("Nov", self.base, self.default_prec))
