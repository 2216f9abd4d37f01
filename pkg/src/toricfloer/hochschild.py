"""Length-truncated Hochschild complex for finite curved A-infinity algebras
with Z/2 grading, deformation by nilpotent bounding cochains, the push-forward
of cochains along the deformation, and the length-zero projection.

Operation tensors store inputs in display order (a_k, ..., a_1): the
rightmost argument is consumed first.  Components not stored are zero.  The
sign convention of the differential is kept in one explicit rule object so a
deliberately mutated rule can be injected to confirm that the d^2 = 0 guard
actually detects transcription errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from itertools import product as iter_product
from typing import Callable

from .commalg import AlgElement, CommAlgebra


class ArityOverflowError(RuntimeError):
    """A required operation lies beyond the stored arity budget."""


@dataclass
class FiniteAInfinity:
    """Z/2-graded A-infinity algebra on a finite basis, arities <= k_max.

    `ops[k]` maps input index tuples (display order) to output coordinate
    vectors; missing tuples mean zero.  `unit_index` designates a strict unit
    basis element, or None for non-unital fixtures.
    """

    domain: object
    labels: list
    parities: tuple
    k_max: int
    ops: dict
    unit_index: int | None = None
    complete: bool = False  # True: arities beyond k_max are genuinely zero

    @property
    def dim(self) -> int:
        return len(self.labels)

    def zero_vector(self) -> tuple:
        return tuple(self.domain.zero for _ in range(self.dim))

    def basis_vector(self, i: int) -> tuple:
        return tuple(
            self.domain.one if j == i else self.domain.zero for j in range(self.dim)
        )

    def op(self, k: int, idx: tuple) -> tuple:
        if k > self.k_max and not self.complete:
            raise ArityOverflowError(f"operation arity {k} exceeds budget {self.k_max}")
        return self.ops.get(k, {}).get(tuple(idx), self.zero_vector())

    def op_on_vectors(self, k: int, vectors: list) -> tuple:
        """Multilinear extension of the arity-k operation to coordinate
        vectors (entries may be scalars of any domain extension)."""
        if k > self.k_max and not self.complete:
            raise ArityOverflowError(f"operation arity {k} exceeds budget {self.k_max}")
        dom = self.domain
        out = list(self.zero_vector())
        table = self.ops.get(k, {})
        if k == 0:
            return table.get((), self.zero_vector())
        for idx, val in table.items():
            coeff = None
            for slot, i in enumerate(idx):
                c = vectors[slot][i]
                coeff = c if coeff is None else coeff * c
                if _is_zero_entry(dom, coeff):
                    coeff = None
                    break
            if coeff is None:
                continue
            for t in range(self.dim):
                if not _is_zero_entry(dom, val[t]):
                    out[t] = out[t] + coeff * val[t]
        return tuple(out)

    def max_nonzero_arity(self) -> int:
        return max((k for k, tab in self.ops.items() if tab), default=0)

    def parity_of_op(self, k: int) -> int:
        # deg m_k = 2 - k, so its parity is k mod 2
        return k % 2

    def check_strict_unit(self) -> None:
        """m_2(1, a) = a, m_2(a, 1) = (-1)^|a| a, other arities vanish on 1."""
        if self.unit_index is None:
            raise ValueError("algebra has no designated unit")
        e = self.unit_index
        dom = self.domain
        for i in range(self.dim):
            left = self.op(2, (e, i))
            right = self.op(2, (i, e))
            want = self.basis_vector(i)
            sign = -1 if self.parities[i] else 1
            if not _vec_eq(dom, left, want):
                raise ValueError(f"m_2(1, e_{i}) != e_{i}")
            if not _vec_eq(dom, right, tuple(c * dom.from_int(sign) for c in want)):
                raise ValueError(f"m_2(e_{i}, 1) != (-1)^|e_{i}| e_{i}")
        for k, tab in self.ops.items():
            if k == 2:
                continue
            for idx, val in tab.items():
                if e in idx and not _vec_eq(dom, val, self.zero_vector()):
                    raise ValueError(f"m_{k} does not vanish on the unit at {idx}")

    def ainfinity_defects(self, max_arity: int | None = None) -> list:
        """Nonzero A-infinity relation values on basis tuples, for arities
        whose inner and outer operations both fit the budget."""
        dom = self.domain
        top = self.max_nonzero_arity()
        limit = max_arity if max_arity is not None else self.k_max
        defects = []
        curved = bool(self.ops.get(0, {}))
        for k in range(0, limit + 1):
            if curved and k + 1 > self.k_max and not self.complete:
                break
            for idx in iter_product(range(self.dim), repeat=k):
                acc = list(self.zero_vector())
                for q in range(0, min(k, top) + 1):
                    for p in range(0, k - q + 1):
                        outer_arity = k - q + 1
                        if outer_arity > self.k_max:
                            if self.ops.get(q, {}) and not self.complete:
                                raise ArityOverflowError(
                                    f"relation at arity {k} needs m_{outer_arity}"
                                )
                            continue
                        inner_idx = idx[k - p - q : k - p]
                        inner = self.ops.get(q, {}).get(tuple(inner_idx))
                        if inner is None:
                            continue
                        weight = sum(self.parities[i] - 1 for i in idx[k - p :])
                        sign = dom.from_int((-1) ** (weight % 2))
                        for t in range(self.dim):
                            if _is_zero_entry(dom, inner[t]):
                                continue
                            outer_idx = idx[: k - p - q] + (t,) + idx[k - p :]
                            val = self.ops.get(outer_arity, {}).get(outer_idx)
                            if val is None:
                                continue
                            f = inner[t] * sign
                            for s in range(self.dim):
                                acc[s] = acc[s] + f * val[s]
                if not _vec_eq(dom, tuple(acc), self.zero_vector()):
                    defects.append((k, idx, tuple(acc)))
        return defects

    def to_dense(self) -> dict:
        """Exchange form: parities plus dense nested arrays per arity."""
        def nest(k):
            if k == 0:
                return list(self.op(0, ()))
            shape = [self.dim] * k
            def build(prefix):
                if len(prefix) == k:
                    return list(self.op(k, tuple(prefix)))
                return [build(prefix + (i,)) for i in range(self.dim)]
            return build(())
        return {
            "labels": list(self.labels),
            "parities": list(self.parities),
            "unit": self.unit_index,
            "k_max": self.k_max,
            "ops": {str(k): nest(k) for k in sorted(self.ops)},
        }


def _is_zero_entry(dom, x) -> bool:
    if isinstance(x, AlgElement):
        return x.is_zero()
    return dom.is_zero(x)


def _vec_eq(dom, a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if isinstance(x, AlgElement) or isinstance(y, AlgElement):
            if not (x == y):
                return False
        elif not dom.eq(x, y):
            return False
    return True


@dataclass
class Cochain:
    """Hochschild cochain: length components as tensors like the operations.

    `parity` is the total Z/2 degree, which includes the length shift: the
    length-k component is a map of parity (parity - k), so a homogeneous
    cochain's component values at an input tuple lie in basis parities
    (parity - k + sum of input parities) mod 2.
    """

    parity: int
    comps: dict = dataclass_field(default_factory=dict)

    def component(self, k: int) -> dict:
        return self.comps.get(k, {})

    def max_length(self) -> int:
        return max((k for k, tab in self.comps.items() if tab), default=0)


@dataclass(frozen=True)
class SignRule:
    """The two Koszul signs of the Hochschild differential, as parity
    functions of (cochain parity, sum of input parities minus count)."""

    name: str
    insert_cochain: Callable[[int, int], int]
    insert_operation: Callable[[int, int], int]


DEFAULT_SIGNS = SignRule(
    "two-sum rule",
    insert_cochain=lambda g_par, w: ((g_par - 1) * w) % 2,
    insert_operation=lambda g_par, w: (g_par + w) % 2,
)

MUTATED_SIGNS = SignRule(
    "mutated second-sum rule",
    insert_cochain=lambda g_par, w: ((g_par - 1) * w) % 2,
    insert_operation=lambda g_par, w: (g_par + w + 1) % 2,
)


def hochschild_differential(
    alg: FiniteAInfinity, g: Cochain, signs: SignRule = DEFAULT_SIGNS
) -> tuple[Cochain, list]:
    """The two-sum differential with the stated Koszul signs.

    Returns (cochain, truncation notices).  A notice is emitted whenever a
    term would need an operation beyond the arity budget against a nonzero
    cochain component, or the output would have a component beyond it.
    """
    dom = alg.domain
    out = Cochain(parity=(g.parity + 1) % 2)
    notices = []
    top_g = g.max_length()
    top_m = alg.max_nonzero_arity()
    if top_g + top_m - 1 > alg.k_max and top_g and top_m:
        notices.append(
            f"output length {top_g + top_m - 1} exceeds budget {alg.k_max}; truncated"
        )
    seen_notices = set()
    for k in range(0, alg.k_max + 1):
        tensor = {}
        for idx in iter_product(range(alg.dim), repeat=k):
            acc = list(alg.zero_vector())
            nonzero = False
            for q in range(0, k + 1):
                for p in range(0, k - q + 1):
                    # First sum: apply g to a substring, feed into an operation.
                    g_tab = g.component(q)
                    if g_tab:
                        outer_arity = k - q + 1
                        if outer_arity > alg.k_max:
                            if not alg.complete:
                                note = f"skipped m_{outer_arity} insertion at output length {k}"
                                if note not in seen_notices:
                                    seen_notices.add(note)
                                    notices.append(note)
                        else:
                            inner_idx = tuple(idx[k - p - q : k - p])
                            inner = g_tab.get(inner_idx)
                            if inner is not None:
                                w = sum(alg.parities[i] - 1 for i in idx[k - p :])
                                sgn = dom.from_int(
                                    -1 if signs.insert_cochain(g.parity, w % 2) else 1
                                )
                                _accumulate(
                                    alg, acc, outer_arity, idx, p, q, inner, sgn
                                )
                                nonzero = True
                    # Second sum: apply an operation to a substring, feed into g.
                    m_tab = alg.ops.get(q, {})
                    g_outer = g.component(k - q + 1)
                    if m_tab and g_outer:
                        inner_idx = tuple(idx[k - p - q : k - p])
                        inner = m_tab.get(inner_idx)
                        if inner is not None:
                            w = sum(alg.parities[i] - 1 for i in idx[k - p :])
                            sgn = dom.from_int(
                                -1 if signs.insert_operation(g.parity, w % 2) else 1
                            )
                            _accumulate_cochain(
                                alg, acc, g_outer, idx, p, q, inner, sgn
                            )
                            nonzero = True
            if nonzero and not _vec_eq(dom, tuple(acc), alg.zero_vector()):
                tensor[idx] = tuple(acc)
        if tensor:
            out.comps[k] = tensor
    return out, notices


def _accumulate(alg, acc, outer_arity, idx, p, q, inner, sgn):
    dom = alg.domain
    for t in range(alg.dim):
        if _is_zero_entry(dom, inner[t]):
            continue
        outer_idx = idx[: len(idx) - p - q] + (t,) + idx[len(idx) - p :]
        val = alg.ops.get(outer_arity, {}).get(outer_idx)
        if val is None:
            continue
        f = inner[t] * sgn
        for s in range(alg.dim):
            acc[s] = acc[s] + f * val[s]


def _accumulate_cochain(alg, acc, g_tab, idx, p, q, inner, sgn):
    dom = alg.domain
    for t in range(alg.dim):
        if _is_zero_entry(dom, inner[t]):
            continue
        outer_idx = idx[: len(idx) - p - q] + (t,) + idx[len(idx) - p :]
        val = g_tab.get(outer_idx)
        if val is None:
            continue
        f = inner[t] * sgn
        for s in range(alg.dim):
            acc[s] = acc[s] + f * val[s]


def length_zero_projection(g: Cochain, alg: FiniteAInfinity) -> tuple:
    """The length-zero part g_0, as an element of the algebra."""
    return g.component(0).get((), alg.zero_vector())


def random_cochain(alg: FiniteAInfinity, parity: int, max_length: int, rng) -> Cochain:
    """Homogeneous random cochain of the given total degree: the value of a
    length-k component on a basis tuple is supported on output parities
    (parity - k + sum of input parities) mod 2."""
    dom = alg.domain
    comps = {}
    for k in range(0, max_length + 1):
        tab = {}
        for idx in iter_product(range(alg.dim), repeat=k):
            out_par = (parity - k + sum(alg.parities[i] for i in idx)) % 2
            vec = [
                dom.sample(rng) if alg.parities[t] == out_par else dom.zero
                for t in range(alg.dim)
            ]
            if any(not dom.is_zero(v) for v in vec):
                tab[idx] = tuple(vec)
        if tab:
            comps[k] = tab
    return Cochain(parity, comps)


# ---------------------------------------------------------------------------
# Deformation by a bounding cochain.
# ---------------------------------------------------------------------------


def _insertion_bound(s_alg: CommAlgebra, coeffs: list) -> int:
    """Smallest m such that every m-fold product of the given nilpotent
    coefficients vanishes."""
    nonzero = [c for c in coeffs if not c.is_zero()]
    if not nonzero:
        return 0
    level = list(nonzero)
    m = 1
    while level and m <= s_alg.dim + 2:
        nxt = []
        for x in level:
            for c in nonzero:
                y = x * c
                if not y.is_zero():
                    nxt.append(y)
        if not nxt:
            return m + 1
        level = nxt
        m += 1
    if level:
        raise ValueError("bounding cochain coefficients are not nilpotent")
    return m + 1


def deform_algebra(
    alg: FiniteAInfinity, s_alg: CommAlgebra, delta: list, check: bool = True
) -> FiniteAInfinity:
    """The deformed algebra over S: operations sum over all insertions of the
    odd element delta (a coordinate vector of nilpotent S-elements).

    Raises ArityOverflowError if a needed insertion arity exceeds the budget,
    and ValueError if delta sits in even degree or has non-nilpotent
    coefficients.  With `check`, verifies the curvature is a central multiple
    of the unit and that the deformed differential squares to zero.
    """
    dom = alg.domain
    for i, c in enumerate(delta):
        if not c.is_zero() and alg.parities[i] % 2 == 0:
            raise ValueError("bounding cochain must be odd")
    bound = _insertion_bound(s_alg, list(delta))
    support = [i for i in range(alg.dim) if not delta[i].is_zero()]
    # a truncated model can only support deformed operations whose insertion
    # sums stay inside the stored arities
    effective_k = alg.k_max if alg.complete else alg.k_max - max(bound - 1, 0)
    if effective_k < 0:
        raise ArityOverflowError("arity budget too small for the insertion depth")

    new_ops: dict = {}
    for k in range(0, effective_k + 1):
        tensor = {}
        for idx in iter_product(range(alg.dim), repeat=k):
            acc = [s_alg.zero] * alg.dim
            nonzero = False
            for total, pattern_val in _insertions(alg, s_alg, idx, support, delta, bound):
                for t in range(alg.dim):
                    if _is_zero_entry(alg.domain, total[t]):
                        continue
                    acc[t] = acc[t] + pattern_val * _embed(s_alg, total[t])
                nonzero = True
            if nonzero and not all(a.is_zero() for a in acc):
                tensor[idx] = tuple(acc)
        if tensor:
            new_ops[k] = tensor
    deformed = FiniteAInfinity(
        domain=s_alg,
        labels=list(alg.labels),
        parities=alg.parities,
        k_max=effective_k,
        ops=new_ops,
        unit_index=alg.unit_index,
        complete=alg.complete,
    )
    if check:
        _check_deformation(deformed)
    return deformed


def _embed(s_alg: CommAlgebra, scalar) -> AlgElement:
    if isinstance(scalar, AlgElement):
        return scalar
    return s_alg.from_scalar(scalar)


def _insertions(alg, s_alg, idx, support, delta, bound):
    """Yield (operation value vector, S-coefficient) over all ways to insert
    up to `bound - 1` copies of delta around the fixed inputs."""
    k = len(idx)
    max_extra = max(bound - 1, 0)
    for m in range(0, max_extra + 1):
        if k + m > alg.k_max:
            if alg.complete:
                continue
            if m == 0:
                raise ArityOverflowError("base arity already exceeds budget")
            # deeper insertions cannot be represented; they must vanish
            for combo in iter_product(support, repeat=m):
                coeff = s_alg.one
                for i in combo:
                    coeff = coeff * delta[i]
                if not coeff.is_zero():
                    raise ArityOverflowError(
                        f"insertion arity {k + m} exceeds budget {alg.k_max}"
                    )
            continue
        # choose how many deltas go in each of the k+1 gaps
        for gaps in _compositions(m, k + 1):
            for combo in iter_product(support, repeat=m):
                coeff = s_alg.one
                for i in combo:
                    coeff = coeff * delta[i]
                if coeff.is_zero():
                    continue
                merged = _merge(idx, gaps, combo)
                val = alg.ops.get(k + m, {}).get(merged)
                if val is None:
                    continue
                yield val, coeff


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _merge(idx: tuple, gaps: tuple, combo: tuple) -> tuple:
    # display order: gaps[j] deltas sit before input j counted from the left
    # (gap 0 is leftmost, past a_k); combo is consumed left to right
    out = []
    pos = 0
    for j in range(len(idx) + 1):
        for _ in range(gaps[j]):
            out.append(combo[pos])
            pos += 1
        if j < len(idx):
            out.append(idx[j])
    return tuple(out)


def _check_deformation(deformed: FiniteAInfinity) -> None:
    s_alg = deformed.domain
    curv = deformed.ops.get(0, {}).get((), None)
    if curv is not None and deformed.unit_index is not None:
        for t in range(deformed.dim):
            if t != deformed.unit_index and not curv[t].is_zero():
                raise ValueError("curvature of the deformation is not a unit multiple")
    # m_1 squared must vanish
    d1 = deformed.ops.get(1, {})
    for i in range(deformed.dim):
        v = d1.get((i,), None)
        if v is None:
            continue
        acc = [s_alg.zero] * deformed.dim
        for t in range(deformed.dim):
            if v[t].is_zero():
                continue
            w = d1.get((t,), None)
            if w is None:
                continue
            for s in range(deformed.dim):
                acc[s] = acc[s] + v[t] * w[s]
        if not all(a.is_zero() for a in acc):
            raise ValueError("deformed differential does not square to zero")


def cc_delta_push(
    alg: FiniteAInfinity,
    deformed: FiniteAInfinity,
    delta: list,
    g: Cochain,
) -> Cochain:
    """Push a cochain to the deformed algebra: insert delta in all ways into
    the S-multilinear extension of each component."""
    s_alg = deformed.domain
    bound = _insertion_bound(s_alg, list(delta))
    support = [i for i in range(alg.dim) if not delta[i].is_zero()]
    out = Cochain(parity=g.parity)
    for r in range(0, alg.k_max + 1):
        tensor = {}
        for idx in iter_product(range(alg.dim), repeat=r):
            acc = [s_alg.zero] * alg.dim
            nonzero = False
            max_extra = max(bound - 1, 0)
            for m in range(0, max_extra + 1):
                comp = g.component(r + m)
                if not comp:
                    continue
                for gaps in _compositions(m, r + 1):
                    for combo in iter_product(support, repeat=m):
                        coeff = s_alg.one
                        for i in combo:
                            coeff = coeff * delta[i]
                        if coeff.is_zero():
                            continue
                        val = comp.get(_merge(idx, gaps, combo))
                        if val is None:
                            continue
                        for t in range(alg.dim):
                            if _is_zero_entry(alg.domain, val[t]):
                                continue
                            acc[t] = acc[t] + coeff * _embed(s_alg, val[t])
                        nonzero = True
            if nonzero and not all(a.is_zero() for a in acc):
                tensor[idx] = tuple(acc)
        if tensor:
            out.comps[r] = tensor
    return out


def degree_one_model(char, potential, k_max: int) -> FiniteAInfinity:
    """The degree-one sector of the Floer algebra as a finite curved model:
    basis 1 (even) and b_1..b_n (odd), with operations on b-tuples supported
    on the sorted arrangement and valued in multiples of the unit.

    Only unshuffle sums of operation values are model-independent, so each
    bracket m_beta[c] is stored on one representative arrangement; this is
    exactly enough for every deformation identity used here, which consumes
    the operations through insertion sums.  Operations of every arity are
    nonzero in general, so the model is truncated at k_max, not complete.
    """
    from .floer import unshuffle_bracket

    dom = char.domain
    n = len(char.values)
    dim = n + 1
    labels = ["1"] + [f"b{j}" for j in range(1, n + 1)]
    parities = (0,) + (1,) * n

    def unit_vec(scalar) -> tuple:
        return tuple(scalar if t == 0 else dom.zero for t in range(dim))

    def basis_vec(t: int, scalar) -> tuple:
        return tuple(scalar if s == t else dom.zero for s in range(dim))

    ops: dict = {}
    # strict unit rules on m_2
    m2 = {}
    for t in range(dim):
        m2[(0, t)] = basis_vec(t, dom.one)
        sign = dom.from_int(-1 if parities[t] else 1)
        if t != 0:
            m2[(t, 0)] = basis_vec(t, sign)
    ops[2] = m2
    # brackets on sorted b-tuples, all arities up to the budget
    for k in range(0, k_max + 1):
        tab = ops.setdefault(k, {})
        for c in _multiplicities(n, k):
            total = dom.zero
            for beta in potential.classes:
                total = total + potential.weight(beta) * unshuffle_bracket(char, beta, c).value
            if dom.is_zero(total):
                continue
            idx = tuple(j for j in range(1, n + 1) for _ in range(c[j - 1]))
            tab[idx] = unit_vec(total)
        if not tab:
            ops.pop(k, None)
    return FiniteAInfinity(dom, labels, parities, k_max, ops, unit_index=0, complete=False)


def _multiplicities(n: int, total: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _multiplicities(n - 1, total - first):
            yield (first,) + rest


def unshuffle_sum(alg: FiniteAInfinity, k: int, c: tuple):
    """Sum of the arity-k operation over all distinct arrangements of the
    multiset with multiplicities c of the odd generators (unit excluded)."""
    dom = alg.domain
    letters = [j for j in range(1, len(c) + 1) for _ in range(c[j - 1])]
    acc = None
    for arrangement in _distinct_permutations(tuple(letters)):
        val = alg.ops.get(k, {}).get(arrangement)
        if val is None:
            continue
        acc = val if acc is None else tuple(a + b for a, b in zip(acc, val))
    if acc is None:
        return alg.zero_vector()
    return acc


def _distinct_permutations(items: tuple):
    if not items:
        yield ()
        return
    seen = set()
    for i, x in enumerate(items):
        if x in seen:
            continue
        seen.add(x)
        for rest in _distinct_permutations(items[:i] + items[i + 1 :]):
            yield (x,) + rest


def chain_map_gap(
    alg: FiniteAInfinity,
    deformed: FiniteAInfinity,
    delta: list,
    g: Cochain,
    signs: SignRule = DEFAULT_SIGNS,
) -> list:
    """Differences (length, index tuple, lhs, rhs) between d(CC(delta) g) and
    CC(delta)(d g); empty exactly when the push is a chain map here."""
    lhs, _ = hochschild_differential(deformed, cc_delta_push(alg, deformed, delta, g), signs)
    rhs = cc_delta_push(alg, deformed, delta, hochschild_differential(alg, g, signs)[0])
    gaps = []
    s_alg = deformed.domain
    for k in range(0, deformed.k_max + 1):
        ltab = lhs.component(k)
        rtab = rhs.component(k)
        for idx in set(ltab) | set(rtab):
            lv = ltab.get(idx, tuple(s_alg.zero for _ in range(deformed.dim)))
            rv = rtab.get(idx, tuple(s_alg.zero for _ in range(deformed.dim)))
            if not _vec_eq(s_alg, lv, rv):
                gaps.append((k, idx, lv, rv))
    return gaps
