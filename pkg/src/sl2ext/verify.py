"""The check registry: every finitely verifiable statement the workbench
covers, as one entry with stable id, parameter instances, and a Report.

Counting certificates run at arbitrary levels with big integers; module
level checks stop at the enumeration budget and the ambient-degree cap,
and report SKIPPED with a reason beyond them.  Negative controls are
their own entries: they PASS exactly when the sabotaged input is caught.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field as dc_field

from . import cohom, grp, polyutil, towerext
from .charmod import TorusCharacter
from .coeff import CyclotomicField, PrimeField, RationalField, field_from_spec
from .indmod import InducedModule
from .linalg import SparseSpan
from .tower import BudgetError, Tower
from .towerext import CenterMismatchError

MODULE_DEGREE_CAP = 12  # ambient F_p-degree cap for explicit module work
CYCLOTOMIC_ORDER_CAP = 2000  # cap for the auto-selected cyclotomic order
EXT_GROUP_CAP = 60  # largest level-1 group the cocycle oracle enumerates
COUNTING_LEVELS = 6


@dataclass
class RunConfig:
    q: int = 2
    imax: int = 3
    coeff: str = "cyclo"
    theta_exp: int = 0
    lambda_exp: int = 0
    mu_exp: int = 0
    lemmas: str = "all"
    budget: int = 100000

    def to_json(self):
        return {
            "q": self.q,
            "imax": self.imax,
            "coeff": self.coeff,
            "theta_exp": self.theta_exp,
            "lambda_exp": self.lambda_exp,
            "mu_exp": self.mu_exp,
            "lemmas": self.lemmas,
            "budget": self.budget,
        }


@dataclass
class CheckSpec:
    lemma_id: str
    params: dict


@dataclass
class Report:
    lemma_id: str
    params: dict
    verdict: str  # PASS | FAIL | SKIPPED
    payload: dict = dc_field(default_factory=dict)
    reason: str = ""
    seconds: float = 0.0  # informational only; never serialized

    def to_json(self):
        out = {
            "id": self.lemma_id,
            "params": self.params,
            "verdict": self.verdict,
            "payload": self.payload,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


class Context:
    """Lazy tower/field/character bundle for one configuration."""

    def __init__(self, config: RunConfig):
        pk = polyutil.prime_power(config.q)
        if pk is None:
            raise ValueError("q must be a prime power")
        self.config = config
        self.p, self.d0 = pk
        self._tower = None
        self._tower_error = None
        self._field = None
        self._field_error = None

    @property
    def q(self):
        return self.config.q

    @property
    def imax(self):
        return self.config.imax

    @property
    def budget(self):
        return self.config.budget

    def module_degree(self, i: int) -> int:
        return math.factorial(i) * self.d0

    @property
    def tower(self) -> Tower | None:
        if self._tower is None and self._tower_error is None:
            if self.module_degree(self.imax) > MODULE_DEGREE_CAP:
                self._tower_error = (
                    f"ambient degree {self.module_degree(self.imax)} exceeds the "
                    f"module cap {MODULE_DEGREE_CAP}; only counting checks run"
                )
            else:
                try:
                    self._tower = Tower(self.q, self.imax)
                except BudgetError as e:
                    self._tower_error = str(e)
        return self._tower

    @property
    def tower_error(self) -> str | None:
        _ = self.tower
        return self._tower_error

    @property
    def field(self):
        if self._field is None and self._field_error is None:
            order = self.q ** math.factorial(self.imax) - 1
            if self.config.coeff == "cyclo" and order > CYCLOTOMIC_ORDER_CAP:
                self._field_error = (
                    f"auto cyclotomic order {order} exceeds the cap "
                    f"{CYCLOTOMIC_ORDER_CAP}; pick rat, fp, or an explicit cyclo:N"
                )
            else:
                self._field = field_from_spec(self.config.coeff, order)
        return self._field

    def blocked(self) -> str | None:
        """Reason module-level checks cannot run at this configuration."""
        if self.tower is None:
            return self.tower_error
        _ = self.field
        return self._field_error

    def char(self, exp: int) -> TorusCharacter:
        return TorusCharacter(self.tower, self.field, exp)

    def char_supported(self, exp: int) -> bool:
        """Whether every value of the exponent-exp character fits the mode."""
        n = self.tower.size - 1
        return self.field.supports_order(n // math.gcd(n, exp % n if exp % n else n))

    @property
    def theta(self):
        return self.char(self.config.theta_exp)

    @property
    def lam(self):
        return self.char(self.config.lambda_exp)

    @property
    def mu(self):
        return self.char(self.config.mu_exp)

    def group_order(self, i: int, pgl=False) -> int:
        return grp.subgroup_order("G", self.q, i, pgl=pgl)

    def module_levels(self):
        """Levels whose induced module fits the budget."""
        if self.blocked():
            return []
        return [
            i
            for i in range(1, self.imax + 1)
            if self.tower.level_size(i) + 1 <= self.budget
        ]


def _skip_no_tower(ctx, lemma_id, params):
    return Report(lemma_id, params, "SKIPPED", reason=ctx.tower_error)


def _skip_blocked(ctx, lemma_id, params):
    return Report(lemma_id, params, "SKIPPED", reason=ctx.blocked())


# -- individual checks --------------------------------------------------------


def _chk_sus(ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.tower is None:
        return _skip_no_tower(ctx, "sus", params)
    tw = ctx.tower
    cases = 0
    for a in tw.enumerate_level(i):
        if a.val == 0:
            continue
        if not grp.check_big_cell_rewrite(a):
            return Report("sus", params, "FAIL", {"counterexample": a.val})
    cases = tw.level_size(i) - 1
    return Report("sus", params, "PASS", {"cases": cases})


def _chk_bruhat(ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.tower is None:
        return _skip_no_tower(ctx, "bruhat", params)
    tw = ctx.tower
    n = tw.level_size(i)
    small = big = 0
    for g in grp.enumerate_subgroup(tw, "G", i, budget=ctx.budget):
        form = grp.bruhat(g)
        if grp.reassemble(form, tw) != g:
            return Report("bruhat", params, "FAIL", {"element": g.key()})
        if form.big_cell:
            big += 1
        else:
            small += 1
    expect_small = n * (n - 1)
    expect_big = n * n * (n - 1)
    ok = small == expect_small and big == expect_big
    payload = {
        "group_order": small + big,
        "small_cell": small,
        "big_cell": big,
        "expected": [expect_small, expect_big],
    }
    return Report("bruhat", params, "PASS" if ok else "FAIL", payload)


def _chk_act_oracle(ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.blocked():
        return _skip_blocked(ctx, "act-oracle", params)
    tw = ctx.tower
    exps = [e for e in sorted({0, 1, 2, ctx.config.theta_exp}) if ctx.char_supported(e)]
    if not exps:
        return Report("act-oracle", params, "SKIPPED",
                      reason="no sweep exponent is representable in this mode")
    gens = grp.generators(tw, i)
    elements = grp.enumerate_subgroup(tw, "G", i, budget=ctx.budget)
    checked = 0
    for e in exps:
        mod = InducedModule(tw, ctx.char(e), i)
        for g in gens:
            for label in mod.labels():
                if mod.act_label(g, label) != mod.oracle_act_label(g, label):
                    return Report(
                        "act-oracle", params, "FAIL",
                        {"exp": e, "label": label, "generator": g.key()},
                    )
                checked += 1
        rng = random.Random(20240 + i)
        labels = mod.labels()
        for _ in range(200):
            g1 = rng.choice(elements)
            g2 = rng.choice(elements)
            label = rng.choice(labels)
            v = mod.basis_vector(label)
            if mod.act(g1 * g2, v) != mod.act(g1, mod.act(g2, v)):
                return Report(
                    "act-oracle", params, "FAIL",
                    {"exp": e, "associativity": [g1.key(), g2.key(), label]},
                )
    return Report("act-oracle", params, "PASS",
                  {"exponents": exps, "oracle_pairs": checked, "random_pairs": 200 * len(exps)})


def _chk_m_dims(ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.blocked():
        return _skip_blocked(ctx, "M-dims", params)
    tw = ctx.tower
    n = tw.level_size(i)
    theta = ctx.theta if ctx.char_supported(ctx.config.theta_exp) else ctx.char(0)
    mod = InducedModule(tw, theta, i)
    closure = mod.span_closure([mod.highest_vector()])
    trivial = ctx.char(0)
    mod_tr = InducedModule(tw, trivial, i)
    st = SparseSpan(ctx.field)
    for v in mod_tr.steinberg_vectors():
        st.insert(v.support)
    st_closure = mod_tr.span_closure(mod_tr.steinberg_vectors())
    # the quotient by the Steinberg piece carries the trivial action
    quotient_ok = True
    hv = mod_tr.highest_vector()
    for g in grp.generators(tw, i):
        if not st_closure.contains((mod_tr.act(g, hv) - hv).support):
            quotient_ok = False
    payload = {
        "dim_module": closure.dim,
        "dim_steinberg": st.dim,
        "expected": [n + 1, n],
        "steinberg_stable": st_closure.dim == st.dim,
        "quotient_trivial": quotient_ok,
    }
    ok = (
        closure.dim == n + 1
        and st.dim == n
        and payload["steinberg_stable"]
        and quotient_ok
    )
    return Report("M-dims", params, "PASS" if ok else "FAIL", payload)


def _chk_suw(ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.blocked():
        return _skip_blocked(ctx, "P2.1-suw", params)
    tw = ctx.tower
    cases = 0
    for e in sorted({0, 1, 2, ctx.config.theta_exp}):
        if not ctx.char_supported(e):
            continue
        mod = InducedModule(tw, ctx.char(e), i)
        for x in tw.enumerate_level(i):
            if x.val == 0:
                continue
            if not mod.check_lowering_formula(x):
                return Report("P2.1-suw", params, "FAIL", {"exp": e, "x": x.val, "part": "lowering"})
            cases += 1
    mod_tr = InducedModule(tw, ctx.char(0), i)
    for x in tw.enumerate_level(i):
        if x.val == 0:
            continue
        if not mod_tr.check_alternating_relation(x):
            return Report("P2.1-suw", params, "FAIL", {"x": x.val, "part": "alternating"})
        cases += 1
    return Report("P2.1-suw", params, "PASS", {"cases": cases})


def _chk_normalize(ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.blocked():
        return _skip_blocked(ctx, "L3.3-normalize", params)
    tw = ctx.tower
    field = ctx.field
    rng = random.Random(3301 + i)
    rounds = 0
    for _ in range(5):
        e = rng.randrange(1, tw.size - 1)
        if not ctx.char_supported(e):
            continue
        theta = ctx.char(e)
        if theta.is_trivial_on_level(i):
            continue
        a = field.scalar(rng.randrange(-9, 10))  # may vanish mod small characteristics
        phi = {
            t.val: a * (theta.eval(t) - field.one)
            for t in tw.enumerate_level(i)
            if t.val != 0
        }
        out = cohom.normalize_torus_cochain(theta, i, phi)
        if a and (out.status != "corrected" or out.correction != a):
            return Report("L3.3-normalize", params, "FAIL", {"round_trip_exp": e})
        rounds += 1
    theta0 = ctx.char(0)
    zero_phi = {t.val: field.zero for t in tw.enumerate_level(i) if t.val != 0}
    if cohom.normalize_torus_cochain(theta0, i, zero_phi).status != "normal":
        return Report("L3.3-normalize", params, "FAIL", {"case": "zero cochain"})
    # a non-cochain must be rejected: theta(x)^2 - 1 for theta of order > 2
    rejected = None
    for e in range(1, tw.size - 1):
        if not ctx.char_supported(e):
            continue
        theta = ctx.char(e)
        vals = {theta.eval(t).serialize() for t in tw.enumerate_level(i) if t.val != 0}
        if len(vals) > 2:
            bad = {
                t.val: theta.eval(t) * theta.eval(t) - field.one
                for t in tw.enumerate_level(i)
                if t.val != 0
            }
            try:
                cohom.normalize_torus_cochain(theta, i, bad)
                rejected = False
            except ValueError:
                rejected = True
            break
    table_ok = all(
        cohom.order_condition_forces_zero(m, c) == (c == 0 or m % c != 0)
        for m in (2, 3, 4, 6)
        for c in (0, 2, 3, 5, 7)
    )
    ok = rejected is not False and table_ok
    payload = {"round_trips": rounds, "non_cochain_rejected": rejected, "order_table": table_ok}
    return Report("L3.3-normalize", params, "PASS" if ok else "FAIL", payload)


def _coset_distinct_count(tw: Tower, i: int, a) -> int:
    """Number of distinct unipotent cosets among the shifted elements
    a t^2 (t over central-quotient reps); coset key is the smallest
    element of a + (level i)."""
    low = [x.val for x in tw.enumerate_level(i)]
    keys = set()
    for t in grp.center_quotient_reps(tw, i):
        shift = (a * t * t).val
        keys.add(min(tw._add(shift, u) for u in low))
    return len(keys)


def _chk_l44(ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.tower is None:
        return _skip_no_tower(ctx, "L4.4-basis", params)
    if i + 1 > ctx.imax:
        return Report("L4.4-basis", params, "SKIPPED",
                      reason="level budget: the construction needs level i+1 inside the tower")
    tw = ctx.tower
    reps = grp.center_quotient_reps(tw, i)
    a = tw.first_outside_subfield(i)
    explicit = tw.level_size(i + 1) <= ctx.budget
    if explicit:
        count = _coset_distinct_count(tw, i, a)
    else:
        # algebraic criterion: a (t1^2 - t2^2) outside level i for t1 != t2
        d = tw.level_degree(i)
        count = len(reps)
        for x1 in range(len(reps)):
            for x2 in range(x1 + 1, len(reps)):
                diff = a * (reps[x1] * reps[x1] - reps[x2] * reps[x2])
                if tw._frobenius_fixed(diff.val, d):
                    count -= 1
    ok = count == len(reps)
    payload = {"distinct_cosets": count, "expected": len(reps), "mode": "explicit" if explicit else "criterion"}
    return Report("L4.4-basis", params, "PASS" if ok else "FAIL", payload)


def _chk_l44_neg(ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.tower is None:
        return _skip_no_tower(ctx, "L4.4-neg-control", params)
    tw = ctx.tower
    reps = grp.center_quotient_reps(tw, i)
    if len(reps) < 2:
        return Report(
            "L4.4-neg-control", params, "SKIPPED",
            reason="a collision needs at least two quotient representatives",
        )
    bad = tw.generator(i)  # deliberately inside level i
    count = _coset_distinct_count(tw, i, bad)
    caught = count < len(reps)
    return Report(
        "L4.4-neg-control", params, "PASS" if caught else "FAIL",
        {"distinct_cosets": count, "expected_if_valid": len(reps)},
    )


def _chk_eta_weight(ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.blocked():
        return _skip_blocked(ctx, "eta-weight", params)
    if i + 1 > ctx.imax:
        return Report("eta-weight", params, "SKIPPED",
                      reason="level budget: the construction needs level i+1 inside the tower")
    tw = ctx.tower
    pairs = [(0, 0)]
    if (ctx.config.lambda_exp, ctx.config.mu_exp) != (0, 0):
        pairs.append((ctx.config.lambda_exp, ctx.config.mu_exp))
    results = []
    for (el, em) in pairs:
        if not (ctx.char_supported(el) and ctx.char_supported(em)):
            results.append({"pair": [el, em], "status": "skipped: mode lacks the order"})
            continue
        lam, mu = ctx.char(el), ctx.char(em)
        try:
            mod_next = InducedModule(tw, mu, i + 1)
            eta = towerext.borel_weight_vector(lam, mu, i, mod_next)
        except CenterMismatchError:
            results.append({"pair": [el, em], "status": "rejected: center mismatch"})
            continue
        ok = bool(eta) and towerext.check_borel_weight(eta, lam, i)
        results.append({"pair": [el, em], "status": "ok" if ok else "failed", "support": len(eta.support)})
        if not ok:
            return Report("eta-weight", params, "FAIL", {"pairs": results})
    return Report("eta-weight", params, "PASS", {"pairs": results})


def _chk_eta_weight_neg(ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.blocked():
        return _skip_blocked(ctx, "eta-weight-neg-control", params)
    tw = ctx.tower
    if tw.level_size(i) - 1 < 2:
        return Report(
            "eta-weight-neg-control", params, "SKIPPED",
            reason="every character agrees on a trivial level torus",
        )
    n_i = tw.level_size(i) - 1
    wrong = next(
        (ctx.char(e) for e in range(1, tw.size - 1)
         if e % n_i and ctx.char_supported(e)),
        None,
    )
    if wrong is None:
        return Report(
            "eta-weight-neg-control", params, "SKIPPED",
            reason="no representable character distinguishes the level torus in this mode",
        )
    lam, mu = ctx.char(0), ctx.char(0)
    mod_next = InducedModule(tw, mu, i + 1)
    eta = towerext.borel_weight_vector(lam, mu, i, mod_next)
    caught = not towerext.check_borel_weight(eta, wrong, i)
    return Report("eta-weight-neg-control", params, "PASS" if caught else "FAIL", {})


def _chk_clm(ctx: Context, params: dict) -> Report:
    i, q = params["i"], ctx.q
    fi, fi1 = math.factorial(i), math.factorial(i + 1)
    lhs = (q ** fi - 1) * q ** fi
    rhs = q ** fi1
    payload = {"lhs": lhs, "rhs": rhs, "holds": lhs < rhs}
    if ctx.tower is not None and i < ctx.imax and ctx.tower.level_size(i + 1) <= ctx.budget:
        tw = ctx.tower
        a = tw.first_outside_subfield(i)
        covered = _coset_distinct_count(tw, i, a)
        total = tw.level_size(i + 1) // tw.level_size(i)
        payload["explicit"] = {"covered_cosets": covered, "total_cosets": total, "proper": covered < total}
        if not payload["explicit"]["proper"]:
            return Report("clm-4", params, "FAIL", payload)
    return Report("clm-4", params, "PASS" if payload["holds"] else "FAIL", payload)


def _chk_ineq36(ctx: Context, params: dict) -> Report:
    i, q = params["i"], ctx.q
    fi, fi1 = math.factorial(i), math.factorial(i + 1)
    lhs = q ** fi * (q ** (2 * fi) - 1)
    rhs = 2 * q ** fi1
    payload = {"lhs_doubled": lhs, "rhs_doubled": rhs, "holds": lhs < rhs}
    if i == 1:
        return Report(
            "ineq-36", params, "SKIPPED", payload,
            reason="below level 2 the quadratic-free element does not exist; "
                   "the inequality is reported, not asserted",
        )
    return Report("ineq-36", params, "PASS" if payload["holds"] else "FAIL", payload)


def _chk_ineq37(ctx: Context, params: dict) -> Report:
    i, q = params["i"], ctx.q
    fi, fi1 = math.factorial(i), math.factorial(i + 1)
    lhs = 2 * q ** (2 * fi)
    rhs = q ** fi1 - 1
    payload = {"lhs_doubled": lhs, "rhs_doubled": rhs, "holds": lhs < rhs}
    if i == 1:
        return Report(
            "ineq-37", params, "SKIPPED", payload,
            reason="below level 2 the quadratic-free element does not exist; "
                   "the inequality is reported, not asserted",
        )
    return Report("ineq-37", params, "PASS" if payload["holds"] else "FAIL", payload)


def _chk_xi(ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.blocked():
        return _skip_blocked(ctx, "L5.3-xi", params)
    if i < 2 or i + 1 > ctx.imax:
        return Report("L5.3-xi", params, "SKIPPED",
                      reason="level budget: needs 2 <= i < imax")
    if not ctx.char_supported(ctx.config.theta_exp):
        return Report("L5.3-xi", params, "SKIPPED", reason="mode lacks the character order")
    theta = ctx.theta
    if not theta.is_trivial_on_center():
        return Report("L5.3-xi", params, "SKIPPED", reason="theta is nontrivial on the center")
    tw = ctx.tower
    mod_next = InducedModule(tw, theta, i + 1)
    xi = towerext.group_average_vector(theta, i, mod_next)
    if not xi:
        return Report("L5.3-xi", params, "FAIL", {"nonzero": False})
    pgl_order = ctx.group_order(i, pgl=True)
    payload = {"support": len(xi.support), "group_order": pgl_order}
    if pgl_order <= ctx.budget:
        naive = towerext.naive_group_average(theta, i, mod_next, tw.first_outside_double_subfield(i), budget=ctx.budget)
        payload["structured_equals_naive"] = xi == naive
        if not payload["structured_equals_naive"]:
            return Report("L5.3-xi", params, "FAIL", payload)
        elements = grp.enumerate_subgroup(tw, "G", i, budget=ctx.budget, pgl=True)
        payload["invariance"] = "exhaustive"
    else:
        rng = random.Random(5303 + i)
        elements = _sample_group(tw, i, rng, 200)
        payload["invariance"] = "sampled-200"
    for g in elements:
        if mod_next.act(g, xi) != xi:
            return Report("L5.3-xi", params, "FAIL", {"moved_by": g.key()})
    return Report("L5.3-xi", params, "PASS", payload)


def _sample_group(tw: Tower, i: int, rng: random.Random, count: int) -> list:
    """Deterministic PGL-representative sample via random Bruhat data."""
    out = []
    nonzero = [t for t in grp.center_quotient_reps(tw, i)]
    level = tw.enumerate_level(i)
    for _ in range(count):
        x = rng.choice(level)
        t = rng.choice(nonzero)
        g = grp.unip(x) * grp.torus(t)
        if rng.random() < 0.8:
            y = rng.choice(level)
            g = g * grp.weyl(tw) * grp.unip(y)
        out.append(g)
    return out


def _chk_zeta(ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.blocked():
        return _skip_blocked(ctx, "L5.5-zeta", params)
    if i < 2 or i + 1 > ctx.imax:
        return Report("L5.5-zeta", params, "SKIPPED",
                      reason="level budget: needs 2 <= i < imax")
    if not ctx.char_supported(ctx.config.theta_exp):
        return Report("L5.5-zeta", params, "SKIPPED", reason="mode lacks the character order")
    theta = ctx.theta
    if not theta.is_trivial_on_center():
        return Report("L5.5-zeta", params, "SKIPPED", reason="theta is nontrivial on the center")
    tw = ctx.tower
    mod_next = InducedModule(tw, theta, i + 1)
    b = tw.first_outside_double_subfield(i)
    zeta = towerext.steinberg_weight_vector(theta, i, mod_next, b)
    support = towerext.expansion_support(theta, i, mod_next, b)
    reps = len(grp.center_quotient_reps(tw, i))
    expected_terms = 2 * reps * tw.level_size(i)
    payload = {"support": support, "expected_terms": expected_terms}
    if not support["distinct"] or len(zeta.support) != expected_terms:
        return Report("L5.5-zeta", params, "FAIL", payload)
    if not towerext.check_steinberg_relations(zeta, theta, i):
        return Report("L5.5-zeta", params, "FAIL", payload)
    # (1 - s) applied to the plain Borel average reproduces the expansion
    borel = _borel_average(theta, i, mod_next, b)
    alt = borel - mod_next.act(grp.weyl(tw), borel)
    payload["matches_one_minus_s"] = alt == zeta
    ok = payload["matches_one_minus_s"]
    return Report("L5.5-zeta", params, "PASS" if ok else "FAIL", payload)


def _borel_average(theta, i, mod_next, b):
    tw = mod_next.tower
    out = mod_next.zero()
    for t in grp.center_quotient_reps(tw, i):
        c = theta.eval(t.inverse())
        for u in tw.enumerate_level(i):
            out = out + c * mod_next.cell_vector(b * t * t + u)
    return out


def _chk_zeta_neg(ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.blocked():
        return _skip_blocked(ctx, "L5.5-neg-control", params)
    use_user = ctx.char_supported(ctx.config.theta_exp) and ctx.theta.is_trivial_on_center()
    theta = ctx.theta if use_user else ctx.char(0)
    tw = ctx.tower
    mod_next = InducedModule(tw, theta, i + 1)
    bad = tw.generator(i)  # inside level i, hence quadratic over it
    support = towerext.expansion_support(theta, i, mod_next, bad)
    caught = not support["distinct"]
    return Report("L5.5-neg-control", params, "PASS" if caught else "FAIL", {"support": support})


def _certificate_check(lemma_id: str, tag: str, ctx: Context, params: dict) -> Report:
    i = params["i"]
    if ctx.blocked():
        return _skip_blocked(ctx, lemma_id, params)
    if i + 1 > ctx.imax or (tag != "F" and i < 2):
        return Report(lemma_id, params, "SKIPPED",
                      reason="level budget: the connecting vector needs a feasible level")
    tw = ctx.tower
    try:
        if tag == "F":
            if not (ctx.char_supported(ctx.config.lambda_exp) and ctx.char_supported(ctx.config.mu_exp)):
                return Report(lemma_id, params, "SKIPPED", reason="mode lacks the character order")
            payload = towerext.nonsplit_certificate(
                "F", tw, ctx.field, i, lam=ctx.lam, mu=ctx.mu
            )
        else:
            if not ctx.char_supported(ctx.config.theta_exp):
                return Report(lemma_id, params, "SKIPPED", reason="mode lacks the character order")
            theta = ctx.theta
            if not theta.is_trivial_on_center():
                return Report(lemma_id, params, "SKIPPED", reason="theta is nontrivial on the center")
            payload = towerext.nonsplit_certificate(tag, tw, ctx.field, i, theta=theta)
    except CenterMismatchError as e:
        return Report(lemma_id, params, "SKIPPED", reason=str(e))
    verdict = payload.pop("verdict")
    reason = payload.pop("note", "")
    return Report(lemma_id, params, verdict, payload, reason=reason)


def _chk_noFU(ctx, params):
    return _certificate_check("L4.6-noFU", "F", ctx, params)


def _chk_noHG(ctx, params):
    return _certificate_check("L5.7-noHG", "H", ctx, params)


def _chk_noLG(ctx, params):
    return _certificate_check("L5.8-noLG", "L", ctx, params)


def _chk_connect(ctx: Context, params: dict) -> Report:
    i, tag = params["i"], params["system"]
    if ctx.blocked():
        return _skip_blocked(ctx, "connect-inj", params)
    tw = ctx.tower
    try:
        if tag == "F":
            if not (ctx.char_supported(ctx.config.lambda_exp) and ctx.char_supported(ctx.config.mu_exp)):
                return Report("connect-inj", params, "SKIPPED", reason="mode lacks the character order")
            system = towerext.DirectSystem("F", tw, ctx.field, i, lam=ctx.lam, mu=ctx.mu)
        else:
            if not ctx.char_supported(ctx.config.theta_exp):
                return Report("connect-inj", params, "SKIPPED", reason="mode lacks the character order")
            theta = ctx.theta
            if not theta.is_trivial_on_center():
                return Report("connect-inj", params, "SKIPPED", reason="theta is nontrivial on the center")
            system = towerext.DirectSystem(tag, tw, ctx.field, i, theta=theta)
    except CenterMismatchError as e:
        return Report("connect-inj", params, "SKIPPED", reason=str(e))
    if not system.check_injective():
        return Report("connect-inj", params, "FAIL", {"stage": "injectivity"})
    if tag == "F":
        elements = grp.enumerate_subgroup(tw, "B", i, budget=min(ctx.budget, 2000))
        mode = "exhaustive-borel"
    else:
        order = ctx.group_order(i, pgl=True)
        if order <= 200:
            elements = grp.enumerate_subgroup(tw, "G", i, budget=ctx.budget, pgl=True)
            mode = "exhaustive"
        else:
            rng = random.Random(7001 + i)
            elements = grp.generators(tw, i) + _sample_group(tw, i, rng, 50)
            mode = "generators+sampled-50"
    if not system.check_equivariance(elements):
        return Report("connect-inj", params, "FAIL", {"stage": "equivariance", "mode": mode})
    return Report("connect-inj", params, "PASS", {"mode": mode, "elements": len(elements)})


def _chk_ext1(ctx: Context, params: dict) -> Report:
    q = ctx.q
    if ctx.blocked():
        return _skip_blocked(ctx, "ext1-maschke", params)
    if grp.subgroup_order("G", q, 1) > EXT_GROUP_CAP:
        return Report(
            "ext1-maschke", params, "SKIPPED",
            reason=f"the cocycle oracle is budgeted for level-1 groups of order "
                   f"<= {EXT_GROUP_CAP}",
        )
    tw = ctx.tower
    group = cohom.GroupTable(tw, level=1, budget=ctx.budget)
    order = len(group)
    torus_order = q - 1
    from .coeff import choose_prime_for_order

    ell = choose_prime_for_order(max(torus_order, 1), 5)
    while order % ell == 0 or ell == ctx.p:
        ell = choose_prime_for_order(max(torus_order, 1), ell + 1)
    fields = [("char0", CyclotomicField(max(torus_order, 1)) if torus_order > 2 else RationalField()),
              (f"char{ell}", PrimeField(ell))]
    dims = {}
    for tag_f, field in fields:
        theta1 = TorusCharacter(tw, field, ctx.config.theta_exp)
        trivial = TorusCharacter(tw, field, 0)
        reps = {
            "tr": cohom.FiniteRep.trivial(group, field),
            "St": cohom.FiniteRep.steinberg(group, InducedModule(tw, trivial, 1)),
            "M": cohom.FiniteRep.from_induced(group, InducedModule(tw, theta1, 1)),
        }
        for name_m, M in reps.items():
            for name_n, N in reps.items():
                d, _ = cohom.ext1_bfs(M, N)
                dims[f"{tag_f}:{name_m}->{name_n}"] = d
                if d != 0:
                    return Report("ext1-maschke", params, "FAIL", {"dims": dims})
    # dual-solver agreement on the smallest pair, including a modular case
    field_mod = PrimeField([p for p in (2, 3, 5, 7, 11) if order % p == 0 and p != ctx.p][0])
    agreements = {}
    for tag_f, field in [("char0", fields[0][1]), ("modular", field_mod)]:
        trivial = TorusCharacter(tw, field, 0)
        reps = {
            "tr": cohom.FiniteRep.trivial(group, field),
            "St": cohom.FiniteRep.steinberg(group, InducedModule(tw, trivial, 1)),
        }
        for name_m, M in reps.items():
            for name_n, N in reps.items():
                d1, _ = cohom.ext1_bfs(M, N)
                d2 = cohom.ext1_unreduced(M, N)
                agreements[f"{tag_f}:{name_m}->{name_n}"] = [d1, d2]
                if d1 != d2:
                    return Report("ext1-maschke", params, "FAIL", {"agreement": agreements})
    # Hom dimensions against the torus-twist count
    field0 = fields[0][1]
    hom_ok = True
    for el in range(max(torus_order, 1)):
        for em in range(max(torus_order, 1)):
            lam = TorusCharacter(tw, field0, el)
            mu = TorusCharacter(tw, field0, em)
            Ml = cohom.FiniteRep.from_induced(group, InducedModule(tw, lam, 1))
            Mm = cohom.FiniteRep.from_induced(group, InducedModule(tw, mu, 1))
            if len(cohom.hom_space(Ml, Mm)) != cohom.mackey_hom_dim(lam, mu, 1):
                hom_ok = False
    payload = {"maschke_dims": dims, "agreement": agreements, "hom_matches_twist_count": hom_ok}
    return Report("ext1-maschke", params, "PASS" if hom_ok else "FAIL", payload)


# -- registry -----------------------------------------------------------------


def _module_instances(ctx: Context):
    return [{"q": ctx.q, "i": i} for i in ctx.module_levels()]


def _group_instances(ctx: Context):
    out = []
    for i in range(1, ctx.imax + 1):
        if ctx.blocked():
            break
        if ctx.group_order(i) <= ctx.budget:
            out.append({"q": ctx.q, "i": i})
    return out


def _eta_instances(ctx: Context):
    out = []
    for i in range(1, ctx.imax):
        if ctx.blocked():
            break
        if ctx.tower.level_size(i + 1) + 1 <= ctx.budget:
            out.append({"q": ctx.q, "i": i})
    return out


def _xi_instances(ctx: Context):
    return [p for p in _eta_instances(ctx) if p["i"] >= 2]


def _counting_instances(ctx: Context):
    return [{"q": ctx.q, "i": i} for i in range(1, max(COUNTING_LEVELS, ctx.imax) + 1)]


def _single_instance(ctx: Context):
    return [{"q": ctx.q}]


def _first_control_instance(ctx: Context):
    for p in _eta_instances(ctx):
        i = p["i"]
        if len(grp.center_quotient_reps(ctx.tower, i)) >= 2:
            return [p]
    return [{"q": ctx.q, "i": 1}] if not ctx.blocked() else []


def _eta_neg_instances(ctx: Context):
    for p in _eta_instances(ctx):
        if ctx.tower.level_size(p["i"]) - 1 >= 2:
            return [p]
    return [{"q": ctx.q, "i": 1}] if not ctx.blocked() else []


def _connect_instances(ctx: Context):
    out = []
    for p in _eta_instances(ctx):
        out.append({"q": ctx.q, "i": p["i"], "system": "F"})
    for p in _xi_instances(ctx):
        out.append({"q": ctx.q, "i": p["i"], "system": "H"})
        out.append({"q": ctx.q, "i": p["i"], "system": "L"})
    return out


def _normalize_instances(ctx: Context):
    if ctx.blocked():
        return []
    return [{"q": ctx.q, "i": min(2, ctx.imax)}]


REGISTRY = [
    ("sus", _module_instances, _chk_sus),
    ("bruhat", _group_instances, _chk_bruhat),
    ("act-oracle", _group_instances, _chk_act_oracle),
    ("M-dims", _module_instances, _chk_m_dims),
    ("P2.1-suw", _module_instances, _chk_suw),
    ("L3.3-normalize", _normalize_instances, _chk_normalize),
    ("L4.4-basis", _eta_instances, _chk_l44),
    ("L4.4-neg-control", _first_control_instance, _chk_l44_neg),
    ("eta-weight", _eta_instances, _chk_eta_weight),
    ("eta-weight-neg-control", _eta_neg_instances, _chk_eta_weight_neg),
    ("clm-4", _counting_instances, _chk_clm),
    ("ineq-36", _counting_instances, _chk_ineq36),
    ("ineq-37", _counting_instances, _chk_ineq37),
    ("L4.6-noFU", _eta_instances, _chk_noFU),
    ("L5.3-xi", _xi_instances, _chk_xi),
    ("L5.5-zeta", _xi_instances, _chk_zeta),
    ("L5.5-neg-control", _xi_instances, _chk_zeta_neg),
    ("L5.7-noHG", _xi_instances, _chk_noHG),
    ("L5.8-noLG", _xi_instances, _chk_noLG),
    ("connect-inj", _connect_instances, _chk_connect),
    ("ext1-maschke", _single_instance, _chk_ext1),
]

REGISTRY_IDS = [entry[0] for entry in REGISTRY]
_RUNNERS = {entry[0]: entry[2] for entry in REGISTRY}
_INSTANCES = {entry[0]: entry[1] for entry in REGISTRY}


def run_lemma(ctx: Context, spec: CheckSpec) -> Report:
    if spec.lemma_id not in _RUNNERS:
        raise ValueError(f"unknown lemma id {spec.lemma_id!r}")
    t0 = time.monotonic()
    try:
        report = _RUNNERS[spec.lemma_id](ctx, spec.params)
    except BudgetError as e:
        report = Report(spec.lemma_id, spec.params, "SKIPPED", reason=f"level budget: {e}")
    report.seconds = time.monotonic() - t0
    return report


def run_all(ctx: Context, lemmas: list | None = None) -> list:
    selected = REGISTRY_IDS if lemmas is None else lemmas
    unknown = [l for l in selected if l not in _RUNNERS]
    if unknown:
        raise ValueError(f"unknown lemma ids {unknown}")
    reports = []
    for lemma_id in REGISTRY_IDS:
        if lemma_id not in selected:
            continue
        instances = _INSTANCES[lemma_id](ctx)
        if not instances:
            reason = ctx.blocked() or "no valid level at this configuration"
            reports.append(Report(lemma_id, {"q": ctx.q}, "SKIPPED", reason=reason))
            continue
        for params in instances:
            reports.append(run_lemma(ctx, CheckSpec(lemma_id, params)))
    return reports


def summarize(reports: list) -> dict:
    out = {"pass": 0, "fail": 0, "skipped": 0}
    for r in reports:
        out[r.verdict.lower()] += 1
    return out
