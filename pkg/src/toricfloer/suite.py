"""The verification battery: every acceptance criterion as a callable check.

Each criterion returns a CheckResult with a pass flag and a one-line detail
string; the battery runner prints one line per criterion and reports overall
success.  The same functions back the CLI `verify` subcommand and the
acceptance test module, so the gate runs identically in both.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from . import floer, pearl
from .commalg import (
    exp_nilpotent,
    log_one_plus,
    monomial_nilpotent_algebra,
    random_nilpotent_algebra,
    random_nilradical_element,
)
from .hochschild import (
    Cochain,
    DEFAULT_SIGNS,
    FiniteAInfinity,
    MUTATED_SIGNS,
    chain_map_gap,
    deform_algebra,
    degree_one_model,
    hochschild_differential,
    random_cochain,
    unshuffle_sum,
)
from .jacobian import QuotientAlgebra, decompose
from .puiseux import SplitFieldError
from .scalars import QQ, NovikovField, PrimeField
from .toric import ToricData, build_superpotential, interior_contains


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _timed(name: str, budget: float | None, fn) -> CheckResult:
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # noqa: BLE001 - every failure must surface as a result
        return CheckResult(name, False, f"exception: {exc}", time.perf_counter() - start)
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed > budget:
        passed = False
        detail += f"; exceeded {budget}s budget"
    return CheckResult(name, passed, detail, elapsed)


# -- desk examples -----------------------------------------------------------

CP1 = ToricData(1, ((1,), (-1,)), (Fraction(1), Fraction(1)))
CP2 = ToricData(2, ((1, 0), (0, 1), (-1, -1)), (Fraction(1),) * 3)
CP1_AREAS_12 = ToricData(1, ((1,), (-1,)), (Fraction(1), Fraction(2)))

_CACHE: dict = {}


def desk_example(name: str):
    """(quotient, summands) for a named desk example, memoised per battery."""
    if name in _CACHE:
        return _CACHE[name]
    if name == "cp1_f5":
        W = build_superpotential(CP1, PrimeField(5), "monotone")
    elif name == "cp1_f2":
        W = build_superpotential(CP1, PrimeField(2), "monotone")
    elif name == "cp1_q":
        W = build_superpotential(CP1, QQ, "monotone")
    elif name == "cp2_f7":
        W = build_superpotential(CP2, PrimeField(7), "monotone")
    elif name == "cp1_novikov":
        W = build_superpotential(
            CP1_AREAS_12, NovikovField(QQ, Fraction(5)), "novikov"
        )
    else:
        raise KeyError(name)
    q = QuotientAlgebra(W)
    out = (q, decompose(q))
    _CACHE[name] = out
    return out


DESK_EXAMPLES = ("cp1_f5", "cp1_f2", "cp1_q", "cp2_f7", "cp1_novikov")


def _summand_floer_checks(s) -> tuple[bool, str]:
    action = floer.action_from_summand(s)
    potential = floer.sector_potential(s)
    pot = floer.s_potential(action, potential)
    diff = floer.deformed_differential(action, potential)
    co_ok = all(
        floer.co_evaluate(action, potential, j, s).matches
        for j in range(len(potential.classes[0].pairings))
    )
    _, rank = floer.injectivity_matrix(s)
    ok = pot.matches and diff.all_zero and co_ok and rank == s.dim
    return ok, f"potential-match={pot.matches} d1=0:{diff.all_zero} co={co_ok} rank={rank}/{s.dim}"


# -- the criteria -------------------------------------------------------------


def criterion_1() -> CheckResult:
    def body():
        q, summands = desk_example("cp1_f5")
        xi_vals = sorted(s.xi[0].val for s in summands)
        pots = []
        notes = []
        ok = q.dim == 2 and len(summands) == 2 and all(s.dim == 1 for s in summands)
        ok = ok and xi_vals == [1, 4]
        for s in summands:
            action = floer.action_from_summand(s)
            potential = floer.sector_potential(s)
            rep = floer.s_potential(action, potential)
            sp = s.algebra.scalar_part(rep.value)
            pots.append(sp.val)
            sub_ok, note = _summand_floer_checks(s)
            ok = ok and sub_ok
            notes.append(note)
        ok = ok and sorted(pots) == [2, 3]
        return ok, f"dim=2 xi={xi_vals} potentials={sorted(pots)}"

    return _timed("1 projective line over F5", 1.0, body)


def criterion_2() -> CheckResult:
    def body():
        q, summands = desk_example("cp1_f2")
        ok = q.dim == 2 and len(summands) == 1 and summands[0].dim == 2
        s = summands[0]
        psi = s.psi[0]
        ok = ok and not psi.is_zero() and (psi * psi).is_zero()
        # the cochain coefficient is the class of y - 1
        y_elt = s.project(q.variable_elements[0])
        ok = ok and psi == y_elt - s.algebra.one
        action = floer.action_from_summand(s)
        potential = floer.sector_potential(s)
        rep = floer.s_potential(action, potential)
        ok = ok and rep.matches and rep.value.is_zero()
        sub_ok, note = _summand_floer_checks(s)
        ok = ok and sub_ok
        return ok, f"single 2-dim summand, psi=[y-1], potential=0; {note}"

    return _timed("2 projective line over F2", 1.0, body)


def criterion_3() -> CheckResult:
    def body():
        q, summands = desk_example("cp2_f7")
        ok = q.dim == 3 and len(summands) == 3 and all(s.dim == 1 for s in summands)
        seen = set()
        pots = []
        for s in summands:
            ok = ok and s.xi[0] == s.xi[1]
            seen.add(s.xi[0].val)
            action = floer.action_from_summand(s)
            potential = floer.sector_potential(s)
            rep = floer.s_potential(action, potential)
            pots.append(s.algebra.scalar_part(rep.value).val)
            sub_ok, _ = _summand_floer_checks(s)
            ok = ok and sub_ok
        ok = ok and seen == {1, 2, 4} and sorted(pots) == [3, 5, 6]
        # F5 must terminate with the documented error
        W5 = build_superpotential(CP2, PrimeField(5), "monotone")
        q5 = QuotientAlgebra(W5)
        try:
            decompose(q5)
            return False, "F5 spectrum unexpectedly split"
        except SplitFieldError as exc:
            return ok, f"xi={sorted(seen)} potentials={sorted(pots)}; F5: {exc}"

    return _timed("3 projective plane over F7 (and F5 extend-field)", 5.0, body)


def criterion_4() -> CheckResult:
    def body():
        q, summands = desk_example("cp1_novikov")
        ok = len(summands) == 2
        lead_coeffs = set()
        for s in summands:
            lam = s.eigenvalues[0]
            ok = ok and lam.val() == Fraction(1, 2)
            lead_coeffs.add(lam.leading_coeff())
            ok = ok and s.val_vector == (Fraction(1, 2),)
            ok = ok and interior_contains(CP1_AREAS_12, s.val_vector)
            # z_1 eigenvalue valuation = area_1 + val_Q(normal_1) = 3/2
            zval = CP1_AREAS_12.areas[0] + s.val_vector[0] * CP1_AREAS_12.normals[0][0]
            ok = ok and zval == Fraction(3, 2) and zval > 0
            action = floer.action_from_summand(s)
            potential = floer.sector_potential(s)
            diff = floer.deformed_differential(action, potential)
            ok = ok and diff.all_zero
        ok = ok and lead_coeffs == {Fraction(1), Fraction(-1)}
        return ok, "eigenvalues +-T^(1/2), val=1/2 interior, z1 valuation 3/2, d1=0 mod T^5"

    return _timed("4 Novikov projective line, areas (1,2), E=5", 10.0, body)


def criterion_5(bound: int = 6) -> CheckResult:
    def body():
        total = 0
        for name in DESK_EXAMPLES:
            q, summands = desk_example(name)
            for s in summands:
                action = floer.action_from_summand(s)
                potential = floer.sector_potential(s)
                basics = potential.classes[: q.W.toric.n_facets]
                for beta in basics:
                    for c in floer.multiplicity_vectors(q.n, bound):
                        floer.unshuffle_bracket(action.character, beta, c)
                        total += 1
        return True, f"{total} bracket triples agreed on {len(DESK_EXAMPLES)} desk examples"

    return _timed(f"5 bracket-equality sweep |c| <= {bound}", None, body)


def criterion_6(samples: int = 200) -> CheckResult:
    def body():
        rng = random.Random(60)
        fields = [QQ, PrimeField(2), PrimeField(3), PrimeField(5)]
        from .toric import DiscClass

        done = 0
        for trial in range(samples):
            fld = fields[trial % len(fields)]
            alg = random_nilpotent_algebra(fld, rng, max_dim=4, max_nil=3)
            n = rng.choice([1, 2])
            xi = []
            for _ in range(n):
                while True:
                    u = fld.sample(rng)
                    if not fld.is_zero(u):
                        xi.append(u)
                        break
            psi = tuple(random_nilradical_element(alg, rng) for _ in range(n))
            action = floer.TorusAction(alg, floer.Character(fld, tuple(xi)), psi)
            boundary = tuple(rng.randint(-3, 3) for _ in range(n))
            coeff = fld.one if fld.is_zero(c0 := fld.sample(rng)) else c0
            beta = DiscClass(Fraction(1), boundary, coeff, (1,) + (0,) * (n - 1))
            c = tuple(rng.randint(0, 3) for _ in range(n))
            floer.deformed_bracket(action, beta, c)  # raises on mismatch
            done += 1
        return True, f"{done} randomised nilpotent coefficient algebras agreed"

    return _timed("6 deformed-bracket oracle on random nilpotent algebras", None, body)


def criterion_7(samples: int = 100) -> CheckResult:
    def body():
        rng = random.Random(70)
        checked = 0
        for name in DESK_EXAMPLES:
            _, summands = desk_example(name)
            for s in summands:
                if s.quotient.domain.char != 0:
                    continue
                for th, p in zip(s.theta, s.psi):
                    if not (exp_nilpotent(th) == s.algebra.one + p):
                        return False, f"exp(log) failed on summand of {name}"
                    checked += 1
        for _ in range(samples):
            alg = random_nilpotent_algebra(QQ, rng, max_dim=4, max_nil=3)
            psi = random_nilradical_element(alg, rng)
            theta = log_one_plus(psi)
            if not (exp_nilpotent(theta) == alg.one + psi):
                return False, "exp(log(1+psi)) != 1+psi on a random nilpotent"
            checked += 1
        return True, f"exponential identity exact on {checked} instances"

    return _timed("7 exp-log identity", None, body)


# -- criterion 8 fixtures -----------------------------------------------------


def _seed_associative(dom, kind: int, rng) -> FiniteAInfinity:
    if kind == 0:  # group algebra of Z/k
        k = rng.choice([2, 3])
        ops = {2: {}}
        for i in range(k):
            for j in range(k):
                out = [dom.zero] * k
                out[(i + j) % k] = dom.one
                ops[2][(i, j)] = tuple(out)
        return FiniteAInfinity(dom, [f"g{i}" for i in range(k)], (0,) * k, 4, ops, 0, complete=True)
    if kind == 1:  # truncated polynomials F[x]/x^k
        k = rng.choice([2, 3])
        ops = {2: {}}
        for i in range(k):
            for j in range(k):
                out = [dom.zero] * k
                if i + j < k:
                    out[i + j] = dom.one
                ops[2][(i, j)] = tuple(out)
        return FiniteAInfinity(dom, [f"x^{i}" for i in range(k)], (0,) * k, 4, ops, 0, complete=True)
    if kind == 2:  # non-unital commutative nilpotent: a*a = b
        ops = {2: {(0, 0): (dom.zero, dom.one)}}
        return FiniteAInfinity(dom, ["a", "b"], (0, 0), 4, ops, None, complete=True)
    # non-commutative idempotent/absorbing pair: e*e=e, e*f=f, f*e=f*f=0
    ops = {
        2: {
            (0, 0): (dom.one, dom.zero),
            (0, 1): (dom.zero, dom.one),
        }
    }
    return FiniteAInfinity(dom, ["e", "f"], (0, 0), 4, ops, None, complete=True)


def _conjugate(alg: FiniteAInfinity, rng) -> FiniteAInfinity:
    """Random exact change of basis; preserves the relations exactly."""
    from . import linalg

    dom = alg.domain
    dim = alg.dim
    while True:
        p = [[dom.from_int(rng.randint(-2, 2)) for _ in range(dim)] for _ in range(dim)]
        try:
            p_inv = linalg.inverse(dom, p)
            break
        except ZeroDivisionError:
            continue
    ops = {}
    for k, tab in alg.ops.items():
        new_tab = {}
        for idx in iter_product(range(dim), repeat=k):
            vectors = [[p[r][i] for r in range(dim)] for i in idx]
            val = alg.op_on_vectors(k, vectors)
            out = [
                sum((p_inv[r][t] * val[t] for t in range(dim)), start=dom.zero)
                for r in range(dim)
            ]
            if any(not dom.is_zero(x) for x in out):
                new_tab[idx] = tuple(out)
        if new_tab:
            ops[k] = new_tab
    return FiniteAInfinity(dom, alg.labels, alg.parities, alg.k_max, ops, None, complete=True)


def _random_graded_instance(rng):
    """Random parity-homogeneous operations plus a nilpotent deformation:
    exercises the formal chain-map identity, which needs only that the
    cochain parities are consistent and the deformation is odd."""
    fld = rng.choice([QQ, PrimeField(2), PrimeField(3), PrimeField(5)])
    dim = rng.choice([2, 3])
    parities = tuple(rng.randint(0, 1) for _ in range(dim - 1)) + (1,)
    ops = {}
    for k in range(0, 4):
        tab = {}
        for idx in iter_product(range(dim), repeat=k):
            out_par = (k + sum(parities[i] for i in idx)) % 2
            vec = [
                fld.sample(rng) if parities[t] == out_par and rng.random() < 0.5 else fld.zero
                for t in range(dim)
            ]
            if any(not fld.is_zero(v) for v in vec):
                tab[idx] = tuple(vec)
        if tab:
            ops[k] = tab
    alg = FiniteAInfinity(fld, [f"v{i}" for i in range(dim)], parities, 6, ops, None, complete=True)
    s_alg = monomial_nilpotent_algebra(fld, 1, {(rng.choice([2, 3]),)})
    delta = [
        random_nilradical_element(s_alg, rng) if parities[i] else s_alg.zero
        for i in range(dim)
    ]
    return alg, s_alg, delta


def criterion_8(n_assoc: int = 50, n_chain: int = 50) -> CheckResult:
    def body():
        rng = random.Random(80)
        fields = [QQ, PrimeField(2), PrimeField(3), PrimeField(5)]
        for trial in range(n_assoc):
            dom = fields[trial % len(fields)]
            alg = _conjugate(_seed_associative(dom, trial % 4, rng), rng)
            if alg.ainfinity_defects(3):
                return False, "fixture lost associativity"
            g = random_cochain(alg, rng.randint(0, 1), 2, rng)
            dg, notices = hochschild_differential(alg, g)
            ddg, notices2 = hochschild_differential(alg, dg)
            if notices or notices2:
                return False, f"unexpected truncation: {notices + notices2}"
            for tab in ddg.comps.values():
                for vec in tab.values():
                    if any(not dom.is_zero(c) for c in vec):
                        return False, "d^2 != 0 on an associative fixture"
        for _ in range(n_chain):
            alg, s_alg, delta = _random_graded_instance(rng)
            try:
                deformed = deform_algebra(alg, s_alg, delta, check=False)
            except Exception as exc:
                return False, f"deformation failed: {exc}"
            g = random_cochain(alg, rng.randint(0, 1), 2, rng)
            if chain_map_gap(alg, deformed, delta, g):
                return False, "CC(delta) failed the chain-map identity"
        # the deliberately mutated sign rule must be caught
        dom = QQ
        alg = _seed_associative(dom, 0, rng)
        caught = False
        for _ in range(10):
            g = random_cochain(alg, 1, 2, rng)
            dg, _ = hochschild_differential(alg, g, MUTATED_SIGNS)
            ddg, _ = hochschild_differential(alg, dg, MUTATED_SIGNS)
            for tab in ddg.comps.values():
                for vec in tab.values():
                    if any(not dom.is_zero(c) for c in vec):
                        caught = True
        if not caught:
            return False, "sign mutation was not detected by the d^2 guard"
        return True, f"d^2=0 on {n_assoc} algebras; chain map on {n_chain}; mutant caught"

    return _timed("8 Hochschild guards", None, body)


def criterion_9(cp1_bound: int = 4, cp2_bound: int = 3, resamples: int = 20) -> CheckResult:
    def body():
        rng = random.Random(90)
        total = 0
        for name, toric, bound in (
            ("cp1_f5", CP1, cp1_bound),
            ("cp2_f7", CP2, cp2_bound),
        ):
            q, summands = desk_example(name)
            md = pearl.choose_morse_data(toric, seed=9)
            conditions = pearl.emptiness_checks(md, toric)
            if not conditions.all_pass:
                return False, f"emptiness hypotheses failed for {name}"
            for s in summands:
                char = floer.action_from_summand(s).character
                rep = pearl.oracle_compare(md, q.W, char, bound, rng, resamples=resamples)
                if not rep.all_match:
                    bad = rep.mismatches()[0]
                    return False, (
                        f"{name} mismatch at class {bad.class_index}, c={bad.multiplicities}: "
                        f"counts {bad.counts} vs {bad.expected_count}"
                    )
                total += len(rep.entries)
        return True, f"{total} (class, multiplicity) types matched over {resamples} resamples"

    return _timed("9 pearl-count oracle", 60.0, body)


def criterion_10() -> CheckResult:
    def body():
        notes = []
        for name in DESK_EXAMPLES:
            _, summands = desk_example(name)
            for s in summands:
                _, rank = floer.injectivity_matrix(s)
                if rank != s.dim:
                    return False, f"rank {rank} < dim {s.dim} on {name}"
            notes.append(f"{name}:{'+'.join(str(s.dim) for s in summands)}")
        return True, "full rank on " + ", ".join(notes)

    return _timed("10 injectivity witness", None, body)


def run_battery(level: str = "full", stream=None) -> tuple[bool, list]:
    """Run the acceptance battery; prints one line per criterion."""
    _CACHE.clear()
    if level == "quick":
        checks = [
            criterion_1(),
            criterion_2(),
            criterion_3(),
            criterion_4(),
            criterion_5(bound=3),
            criterion_6(samples=40),
            criterion_7(samples=20),
            criterion_8(n_assoc=12, n_chain=12),
            criterion_9(cp1_bound=2, cp2_bound=2, resamples=3),
            criterion_10(),
        ]
    else:
        checks = [
            criterion_1(),
            criterion_2(),
            criterion_3(),
            criterion_4(),
            criterion_5(),
            criterion_6(),
            criterion_7(),
            criterion_8(),
            criterion_9(),
            criterion_10(),
        ]
    ok = all(c.passed for c in checks)
    if stream is not None:
        for c in checks:
            print(c.line(), file=stream)
        print(("ALL CRITERIA PASS" if ok else "CRITERIA FAILED"), file=stream)
    return ok, checks
