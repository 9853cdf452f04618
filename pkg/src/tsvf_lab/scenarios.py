"""Catalog of worked pre/post-selection examples.

Every scenario returns a :class:`ScenarioResult` whose checks compare a
closed-form value either with a second analytic route (tolerance 1e-10 or
tighter) or with a Monte Carlo estimate from :func:`measurement.simulate`
(binomial tolerance). Scenarios are deterministic in ``(trials, seed)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import hilbert as hb
from .hilbert import (SIGMA_X, SIGMA_Y, SIGMA_Z, UP, UP_X, UP_Y, StateVector, local_op, spin_observable,
                      spin_state, tensor_op, tensor_state)
from .measurement import MeasurementChain, Outcome, ProjectiveMeasurement, born_prob, simulate
from .rng import hash64
from .tsvf import (TwoStateVector, abl_amplitudes, abl_general, abl_table, certain_outcome, decomposition_check,
                   final_outcome_probs, weak_value)
from .weakpointer import PointerModel, is_converging, pointer_distribution, pointer_mean, weak_convergence_report

ANALYTIC_TOL = 1e-12
IDENTITY_TOL = 1e-10


def binomial_tolerance(p: float, n: int, sigma: float = 4.0) -> float:
    """``sigma * sqrt(p(1-p)/n)``, floored at ``5/n`` so certainty claims keep a nonzero width."""
    if n <= 0:
        raise ValueError("binomial tolerance needs at least one trial")
    return max(sigma * math.sqrt(max(p * (1 - p), 0.0) / n), 5.0 / n)


def derive_seed(seed: int, tag: int) -> int:
    return hash64(seed, tag, 1 << 32)


@dataclass(frozen=True)
class Check:
    description: str
    analytic: float | complex
    estimate: float | complex | None
    tolerance: float
    passed: bool
    kind: str  # "analytic", "monte_carlo", "every_record" or "record"
    anchor: str
    n: int | None = None


@dataclass
class ScenarioResult:
    name: str
    checks: list[Check]
    trials: int
    seed: int
    anchor: str = ""
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


class _Recorder:
    def __init__(self, anchor: str, sigma: float):
        self.anchor = anchor
        self.sigma = sigma
        self.checks: list[Check] = []

    def analytic(self, description, expected, computed, tol=ANALYTIC_TOL):
        ok = bool(abs(complex(expected) - complex(computed)) <= tol)
        self.checks.append(Check(description, _num(expected), _num(computed), tol, ok, "analytic", self.anchor))

    def mc(self, description, p, table, label):
        n = table.retained
        est = table.frequencies.get(label, 0.0)
        tol = binomial_tolerance(p, n, self.sigma)
        self.checks.append(Check(description, float(p), est, tol, abs(p - est) <= tol, "monte_carlo", self.anchor, n))

    def every(self, description, ok_mask):
        ok_mask = np.asarray(ok_mask, dtype=bool)
        n = int(ok_mask.size)
        frac = float(ok_mask.mean()) if n else 0.0
        self.checks.append(Check(description, 1.0, frac, 0.0, n > 0 and frac == 1.0, "every_record", self.anchor, n))

    def record(self, description, value):
        self.checks.append(Check(description, _num(value), None, 0.0, True, "record", self.anchor))


def _num(x):
    if x is None:
        return None
    z = complex(x)
    return z.real if z.imag == 0 else z


def _is(values, target, tol=1e-9):
    return np.abs(np.asarray(values) - target) <= tol


def _spin(theta, phi=0.0, label=""):
    return ProjectiveMeasurement.from_observable(spin_observable(theta, phi), label or f"spin({theta:.4g},{phi:.4g})")


def _local(op, site, n, label):
    return ProjectiveMeasurement.from_observable(local_op(op, site, n), label)


def _final(state: StateVector, label="final"):
    return ProjectiveMeasurement.binary(state.projector(), label, "post", "other")


M_X = ProjectiveMeasurement.from_observable(SIGMA_X, "sigma_x")
M_Y = ProjectiveMeasurement.from_observable(SIGMA_Y, "sigma_y")
M_Z = ProjectiveMeasurement.from_observable(SIGMA_Z, "sigma_z")


# -- tilted spin between identical selections ---------------------------------

def xi_spin_formulas(theta: float) -> tuple[float, float]:
    """(pre-selected-only probability, two-sided probability) of spin up along xi."""
    c2, s2 = math.cos(theta / 2) ** 2, math.sin(theta / 2) ** 2
    return c2, c2 ** 2 / (c2 ** 2 + s2 ** 2)


def scenario_xi_spin(theta: float = 2 * math.pi / 3, trials: int = 100_000, seed: int = 42,
                     sigma: float = 4.0) -> ScenarioResult:
    rec = _Recorder("tilted spin: pre-selection only vs pre- and post-selection", sigma)
    born_ref, abl_ref = xi_spin_formulas(theta)
    m_xi = _spin(theta, label="sigma_xi")
    tsv = TwoStateVector(UP, UP)

    rec.analytic("pre-selected probability of up_xi equals cos^2(theta/2)", born_ref, born_prob(UP, m_xi.projector("+1")))
    rec.analytic("two-sided probability of up_xi equals cos^4/(cos^4+sin^4)", abl_ref, abl_table(tsv, m_xi)["+1"])

    batch = simulate(MeasurementChain(UP, (m_xi, M_Z)), trials, derive_seed(seed, 0))
    rec.mc("unselected frequency of up_xi", born_ref, batch.frequencies(0), "+1")
    rec.mc("frequency of up_xi among trials ending in up_z", abl_ref, batch.post_selected(1, "+1", 0), "+1")

    plain = simulate(MeasurementChain(UP, (M_Z,)), trials, derive_seed(seed, 1))
    rec.analytic("post-selection probability without intermediate measurement", 1.0, born_prob(UP, M_Z.projector("+1")))
    rec.every("every trial without intermediate measurement is retained", plain.mask(0, "+1"))
    return ScenarioResult("scenario_xi_spin", rec.checks, trials, seed, rec.anchor, {"theta": theta})


# -- three consecutive spin measurements --------------------------------------

def sharp_shanks_formulas(theta_ab: float, theta_bc: float) -> dict[str, float]:
    ca, sa = math.cos(theta_ab / 2) ** 2, math.sin(theta_ab / 2) ** 2
    cb, sb = math.cos(theta_bc / 2) ** 2, math.sin(theta_bc / 2) ** 2
    p1, p2 = ca * cb + sa * sb, ca * sb + sa * cb
    return {
        "prob_1f": p1,
        "prob_2f": p2,
        "up_given_1f": ca * cb / p1 if p1 > 0 else float("nan"),
        "up_given_2f": ca * sb / p2 if p2 > 0 else float("nan"),
        "prob_up": ca,
    }


def sharp_shanks_setup(theta_ab: float, theta_bc: float):
    """Initial up along z; intermediate spin at angle theta_ab; final at theta_ab + theta_bc (one plane)."""
    return UP, _spin(theta_ab, label="sigma_b"), _spin(theta_ab + theta_bc, label="sigma_c")


def sharp_shanks_assembly(theta_ab: float, theta_bc: float) -> float:
    """sum_f Prob(f) Prob(up | f), with Prob(f) computed given the intermediate measurement."""
    pre, m_b, m_c = sharp_shanks_setup(theta_ab, theta_bc)
    total = 0.0
    for f, p_f in final_outcome_probs(pre, m_b, m_c).items():
        if p_f > 1e-30:
            total += p_f * abl_general(pre, m_b, m_c.projector(f))["+1"]
    return total


def scenario_sharp_shanks(theta_ab: float = math.pi / 3, theta_bc: float = math.pi / 4, trials: int = 100_000,
                          seed: int = 42, sigma: float = 4.0, random_pairs: int = 20) -> ScenarioResult:
    rec = _Recorder("three consecutive spin measurements, correctly conditioned", sigma)
    ref = sharp_shanks_formulas(theta_ab, theta_bc)
    pre, m_b, m_c = sharp_shanks_setup(theta_ab, theta_bc)
    p_final = final_outcome_probs(pre, m_b, m_c)

    rec.analytic("final up probability with intermediate measurement performed", ref["prob_1f"], p_final["+1"])
    rec.analytic("final down probability with intermediate measurement performed", ref["prob_2f"], p_final["-1"])
    for f, key in (("+1", "up_given_1f"), ("-1", "up_given_2f")):
        if p_final[f] > 1e-30:
            rec.analytic(f"two-sided probability of intermediate up given final {f}", ref[key],
                         abl_general(pre, m_b, m_c.projector(f))["+1"])
    assembled = sharp_shanks_assembly(theta_ab, theta_bc)
    rec.analytic("final-outcome decomposition equals Born probability cos^2(theta_ab/2)", ref["prob_up"], assembled)
    lhs, rhs = decomposition_check(pre, m_b, m_c, "+1")
    rec.analytic("generic decomposition identity lhs = rhs", lhs, rhs, IDENTITY_TOL)

    # the inconsistent variant: final probabilities as if nothing were measured in between
    naive_final = {f: born_prob(pre, m_c.projector(f)) for f in m_c.labels}
    naive = sum(naive_final[f] * abl_general(pre, m_b, m_c.projector(f))["+1"]
                for f in m_c.labels if naive_final[f] > 1e-30)
    rec.record("decomposition with final probabilities computed as if no intermediate measurement", naive)

    rng = np.random.default_rng(derive_seed(seed, 7))
    worst = 0.0
    for a, b in rng.uniform(0, 2 * math.pi, size=(random_pairs, 2)):
        worst = max(worst, abs(sharp_shanks_assembly(a, b) - math.cos(a / 2) ** 2))
    rec.analytic(f"decomposition equals cos^2(theta_ab/2) on {random_pairs} random angle pairs (max deviation)",
                 0.0, worst)

    batch = simulate(MeasurementChain(pre, (m_b, m_c)), trials, derive_seed(seed, 0))
    rec.mc("frequency of intermediate up", ref["prob_up"], batch.frequencies(0), "+1")
    rec.mc("frequency of final up", ref["prob_1f"], batch.frequencies(1), "+1")
    if ref["prob_1f"] > 1e-9:
        rec.mc("frequency of intermediate up among final up", ref["up_given_1f"], batch.post_selected(1, "+1", 0), "+1")
    if ref["prob_2f"] > 1e-9:
        rec.mc("frequency of intermediate up among final down", ref["up_given_2f"], batch.post_selected(1, "-1", 0), "+1")
    return ScenarioResult("scenario_sharp_shanks", rec.checks, trials, seed, rec.anchor,
                          {"theta_ab": theta_ab, "theta_bc": theta_bc, "naive_assembly": naive})


# -- two sequential sigma_x measurements --------------------------------------

def scenario_repeated_sigma_x(trials: int = 100_000, seed: int = 42, sigma: float = 4.0) -> ScenarioResult:
    rec = _Recorder("sequential sigma_x measurements on up_z", sigma)
    batch = simulate(MeasurementChain(UP, (M_X, M_X)), trials, derive_seed(seed, 0))
    both_up = batch.mask(0, "+1") & batch.mask(1, "+1")
    n = batch.trials
    est = float(both_up.mean())
    tol = binomial_tolerance(0.5, n, sigma)
    rec.checks.append(Check("joint frequency of (+1, +1)", 0.5, est, tol, abs(est - 0.5) <= tol, "monte_carlo",
                            rec.anchor, n))
    rec.every("both outcomes equal in every record", batch.outcome_index[:, 0] == batch.outcome_index[:, 1])
    rec.record("product of the separate single-measurement probabilities (not the joint probability)", 0.25)
    return ScenarioResult("scenario_repeated_sigma_x", rec.checks, trials, seed, rec.anchor)


# -- GHZ game ------------------------------------------------------------------

GHZ_QUESTIONS = {"XXX": -1, "XYY": 1, "YXY": 1, "YYX": 1}
_PAULI = {"X": SIGMA_X, "Y": SIGMA_Y}


def scenario_ghz(trials: int = 10_000, seed: int = 42, sigma: float = 4.0) -> ScenarioResult:
    rec = _Recorder("three-player GHZ game", sigma)
    psi = hb.ghz_state()
    wins = []
    for q_idx, (questions, target) in enumerate(GHZ_QUESTIONS.items()):
        op = tensor_op(*(_PAULI[c] for c in questions))
        residual = float(np.linalg.norm(op.matrix @ psi.amplitudes - target * psi.amplitudes))
        rec.analytic(f"GHZ state is a {target:+d} eigenstate of {questions}", 0.0, residual)

        events = tuple(_local(_PAULI[c], site, 3, f"sigma_{c.lower()}[{'ABC'[site]}]")
                       for site, c in enumerate(questions))
        batch = simulate(MeasurementChain(psi, events), trials, derive_seed(seed, q_idx))
        product = batch.values(0) * batch.values(1) * batch.values(2)
        hit = _is(product, target)
        rec.every(f"answers to {questions} multiply to {target:+d}", hit)
        wins.append(hit)
        for site in range(3):
            rec.mc(f"{questions}: player {'ABC'[site]} answers +1 half the time", 0.5, batch.frequencies(site), "+1")
    rec.every("quantum strategy wins every game under uniform questions", np.concatenate(wins))
    return ScenarioResult("scenario_ghz", rec.checks, trials, seed, rec.anchor)


def classical_ghz_search() -> tuple[int, float, int]:
    """(max constraints satisfied, max win probability, number of perfect strategies) over 2**6 assignments."""
    best, perfect = 0, 0
    for xa, ya, xb, yb, xc, yc in itertools.product((1, -1), repeat=6):
        satisfied = sum((
            xa * xb * xc == -1,
            xa * yb * yc == 1,
            ya * xb * yc == 1,
            ya * yb * xc == 1,
        ))
        best = max(best, satisfied)
        perfect += satisfied == 4
    return best, best / len(GHZ_QUESTIONS), perfect


def ghz_classical_bound(trials: int = 0, seed: int = 42, sigma: float = 4.0) -> ScenarioResult:
    rec = _Recorder("GHZ game, deterministic local strategies", sigma)
    best, p_win, perfect = classical_ghz_search()
    rec.analytic("no deterministic assignment satisfies all four constraints", 0, perfect, 0.0)
    rec.analytic("maximum number of satisfied constraints", 3, best, 0.0)
    rec.analytic("maximum win probability under uniform questions", 0.75, p_win, 0.0)
    rec.analytic("product of required right-hand sides", -1, math.prod(GHZ_QUESTIONS.values()), 0.0)
    return ScenarioResult("ghz_classical_bound", rec.checks, 0, seed, rec.anchor)


# -- singlet with product post-selection ----------------------------------------

def singlet_tsv() -> TwoStateVector:
    return TwoStateVector(hb.singlet(), tensor_state(UP_X, UP_Y))


def singlet_measurements() -> dict[str, ProjectiveMeasurement]:
    return {
        "sigma_1y": _local(SIGMA_Y, 0, 2, "sigma_1y"),
        "sigma_2x": _local(SIGMA_X, 1, 2, "sigma_2x"),
        "sigma_1y sigma_2x": ProjectiveMeasurement.from_observable(tensor_op(SIGMA_Y, SIGMA_X), "sigma_1y sigma_2x"),
    }


def joint_y1_x2_measurement() -> ProjectiveMeasurement:
    """Simultaneous measurement of sigma_1y and sigma_2x; eigenvalue is the product of the two outcomes."""
    named = []
    for a, sa in ((1, UP_Y), (-1, hb.DOWN_Y)):
        for b, sb in ((1, UP_X), (-1, hb.DOWN_X)):
            named.append((f"({a:+d},{b:+d})", a * b, tensor_state(sa, sb).projector()))
    return ProjectiveMeasurement("joint sigma_1y, sigma_2x", tuple(Outcome(n, v, p) for n, v, p in named))


def scenario_singlet_product_rule(trials: int = 100_000, seed: int = 42, sigma: float = 4.0) -> ScenarioResult:
    rec = _Recorder("singlet pre-selected, product state post-selected", sigma)
    tsv = singlet_tsv()
    ms = singlet_measurements()
    certain = {}
    for name, m in ms.items():
        rec.analytic(f"probability that {name} = -1", 1.0, abl_table(tsv, m)["-1"])
        label = certain_outcome(tsv, m)
        certain[name] = m.outcomes[m.index(label)].eigenvalue if label else float("nan")
        rec.analytic(f"weak value of {name} equals its certain value", certain[name], weak_value(tsv, m.observable()),
                     IDENTITY_TOL)
    rec.analytic("product of the individually certain values", 1.0, certain["sigma_1y"] * certain["sigma_2x"])
    rec.analytic("certain value of the product observable", -1.0, certain["sigma_1y sigma_2x"])

    joint = joint_y1_x2_measurement()
    table = abl_table(tsv, joint)
    p_minus = sum(p for lab, p in table.items() if joint.outcomes[joint.index(lab)].eigenvalue < 0)
    rec.analytic("joint measurement: probability that the product is -1", 0.5, p_minus)
    rec.analytic("joint measurement: product -1 is not certain", 1.0, float(0.0 < p_minus < 1.0), 0.0)

    final = _final(tsv.post)
    for k, (name, m) in enumerate(ms.items()):
        batch = simulate(MeasurementChain(tsv.pre, (m, final)), trials, derive_seed(seed, k))
        kept = batch.mask(1, "post")
        rec.every(f"{name} = -1 in every post-selected trial", batch.mask(0, "-1")[kept])
    batch = simulate(MeasurementChain(tsv.pre, (joint, final)), trials, derive_seed(seed, 9))
    kept = batch.mask(1, "post")
    product_minus = (batch.values(0) < 0)[kept]
    n = int(kept.sum())
    est = float(product_minus.mean())
    tol = binomial_tolerance(p_minus, n, sigma)
    rec.checks.append(Check("joint measurement: frequency of product -1 among post-selected", p_minus, est, tol,
                            abs(est - p_minus) <= tol, "monte_carlo", rec.anchor, n))
    return ScenarioResult("scenario_singlet_product_rule", rec.checks, trials, seed, rec.anchor)


# -- two-time relations ------------------------------------------------------

def scenario_two_time(trials: int = 100_000, seed: int = 42, sigma: float = 4.0) -> ScenarioResult:
    rec = _Recorder("singlet and single-spin multi-time relations", sigma)
    psi = hb.singlet()
    s1x, s2x = _local(SIGMA_X, 0, 2, "sigma_1x"), _local(SIGMA_X, 1, 2, "sigma_2x")
    s1y, s2y = _local(SIGMA_Y, 0, 2, "sigma_1y"), _local(SIGMA_Y, 1, 2, "sigma_2y")
    sum_x = local_op(SIGMA_X, 0, 2) + local_op(SIGMA_X, 1, 2)
    sum_y = local_op(SIGMA_Y, 0, 2) + local_op(SIGMA_Y, 1, 2)

    rec.analytic("singlet is a 0-eigenstate of sigma_1x + sigma_2x", 0.0, np.linalg.norm(sum_x.matrix @ psi.amplitudes))
    rec.analytic("singlet is a 0-eigenstate of sigma_1y + sigma_2y", 0.0, np.linalg.norm(sum_y.matrix @ psi.amplitudes))

    b = simulate(MeasurementChain(psi, (s1x, s2x)), trials, derive_seed(seed, 0))
    rec.every("sigma_1x(t1) + sigma_2x(t2) = 0", _is(b.values(0) + b.values(1), 0))
    b = simulate(MeasurementChain(psi, (s2y, s1y)), trials, derive_seed(seed, 1))
    rec.every("sigma_2y(t1) + sigma_1y(t2) = 0", _is(b.values(0) + b.values(1), 0))

    m_sum_x = ProjectiveMeasurement.from_observable(sum_x, "sigma_1x + sigma_2x")
    m_sum_y = ProjectiveMeasurement.from_observable(sum_y, "sigma_1y + sigma_2y")
    b = simulate(MeasurementChain(psi, (m_sum_x, m_sum_y)), trials, derive_seed(seed, 2))
    rec.every("sequential sum measurements both return 0", _is(b.values(0), 0) & _is(b.values(1), 0))

    b = simulate(MeasurementChain(UP_Y, (M_X, M_X)), trials, derive_seed(seed, 3))
    rec.every("up_y: sigma_x(t1) = sigma_x(t3)", _is(b.values(0), b.values(1)))
    rec.mc("up_y: sigma_x(t1) = +1 half the time", 0.5, b.frequencies(0), "+1")
    b = simulate(MeasurementChain(UP_Y, (M_Y,)), trials, derive_seed(seed, 4))
    rec.every("up_y: sigma_y(t2) = +1", b.mask(0, "+1"))
    return ScenarioResult("scenario_two_time", rec.checks, trials, seed, rec.anchor)


# -- erasure of the past by a Bell measurement -----------------------------------

ERASURE_DIRECTIONS = ((1.0, math.pi / 2), (math.pi / 3, math.pi / 2), (2.0, math.pi / 2))
ERASURE_OBLIQUE = (1.0, 0.0)


def erasure_chain(theta: float, phi: float) -> MeasurementChain:
    """Particle (site 0) and ancilla (site 1) start in up_z; Bell measurement, spin along n on the particle, sigma_x."""
    bell = ProjectiveMeasurement.from_states(hb.bell_basis(), "bell")
    m_n = _local(spin_observable(theta, phi), 0, 2, "sigma_n")
    m_x = _local(SIGMA_X, 0, 2, "sigma_x")
    return MeasurementChain(tensor_state(UP, UP), (bell, m_n, m_x))


def scenario_erasure(trials: int = 100_000, seed: int = 42, sigma: float = 4.0) -> ScenarioResult:
    rec = _Recorder("erasing the past with a Bell-type measurement", sigma)
    directions = [("sigma_y", math.pi / 2, math.pi / 2)]
    directions += [(f"sigma_xi(theta={t:.4g}, phi={p:.4g})", t, p) for t, p in ERASURE_DIRECTIONS]
    for k, (name, theta, phi) in enumerate(directions):
        batch = simulate(erasure_chain(theta, phi), trials, derive_seed(seed, k))
        table = batch.post_selected(2, "+1", 1)
        for label in ("+1", "-1"):
            rec.mc(f"{name} = {label} given later sigma_x = +1", 0.5, table, label)

    # off the y-z plane the retrodicted distribution is the time mirror of the prediction from up_x
    theta, phi = ERASURE_OBLIQUE
    mirrored = born_prob(UP_X, spin_state(theta, phi).projector())
    batch = simulate(erasure_chain(theta, phi), trials, derive_seed(seed, 10))
    rec.mc(f"sigma_n(theta={theta:.4g}, phi={phi:.4g}) = +1 given later sigma_x = +1 matches the forward prediction",
           mirrored, batch.post_selected(2, "+1", 1), "+1")

    control = simulate(MeasurementChain(UP, (M_Y, M_X)), trials, derive_seed(seed, 11))
    rec.mc("without erasure: sigma_y = +1 on up_z", 0.5, control.frequencies(0), "+1")
    return ScenarioResult("scenario_erasure", rec.checks, trials, seed, rec.anchor)


# -- three boxes -------------------------------------------------------------------

def three_box_tsv() -> TwoStateVector:
    return TwoStateVector(StateVector.from_amplitudes([1, 1, 1]), StateVector.from_amplitudes([1, 1, -1]))


def box_projector(box: str) -> np.ndarray:
    return StateVector.basis(3, "ABC".index(box)).projector()


def box_measurement(box: str) -> ProjectiveMeasurement:
    return ProjectiveMeasurement.binary(box_projector(box), f"open box {box}", f"in {box}", f"not in {box}")


def all_boxes_measurement() -> ProjectiveMeasurement:
    return ProjectiveMeasurement.from_states([(f"in {b}", StateVector.basis(3, k)) for k, b in enumerate("ABC")],
                                             "open all boxes")


def scenario_three_box(trials: int = 100_000, seed: int = 42, sigma: float = 4.0) -> ScenarioResult:
    rec = _Recorder("three-box particle, pre- and post-selected", sigma)
    tsv = three_box_tsv()
    for box in "AB":
        rec.analytic(f"probability of finding the particle on opening box {box}", 1.0,
                     abl_table(tsv, box_measurement(box))[f"in {box}"])
    full = abl_table(tsv, all_boxes_measurement())
    rec.analytic("opening all boxes finds the particle somewhere", 1.0, sum(full.values()))
    identity = ProjectiveMeasurement.from_observable(np.eye(3), "P_A + P_B + P_C")
    rec.analytic("P_A + P_B + P_C = 1 with certainty", 1.0, abl_table(tsv, identity)["+1"])

    p = {b: box_projector(b) for b in "ABC"}
    rec.analytic("weak value of P_A", 1.0, weak_value(tsv, p["A"]))
    rec.analytic("weak value of P_B", 1.0, weak_value(tsv, p["B"]))
    rec.analytic("weak value of P_A + P_B + P_C", 1.0, weak_value(tsv, p["A"] + p["B"] + p["C"]))
    rec.analytic("weak value of P_C", -1.0, weak_value(tsv, p["C"]))

    final = _final(tsv.post)
    for k, box in enumerate("AB"):
        batch = simulate(MeasurementChain(tsv.pre, (box_measurement(box), final)), trials, derive_seed(seed, k))
        kept = batch.mask(1, "post")
        rec.every(f"particle found in box {box} in every post-selected trial", batch.mask(0, f"in {box}")[kept])
        yield_p = float(np.sum(np.abs(abl_amplitudes(tsv, box_measurement(box))) ** 2))
        rec.mc(f"post-selection yield with box {box} opened", yield_p, batch.frequencies(1), "post")
    batch = simulate(MeasurementChain(tsv.pre, (all_boxes_measurement(), final)), trials, derive_seed(seed, 2))
    table = batch.post_selected(1, "post", 0)
    for box in "ABC":
        rec.mc(f"all boxes opened: particle in {box}", full[f"in {box}"], table, f"in {box}")

    report = weak_convergence_report(tsv, p["C"], PointerModel(coupling=0.1, width=1.0), halvings=3)
    g_last = report[-1][0]
    ratio_c = pointer_mean(pointer_distribution(tsv, p["C"], PointerModel(coupling=g_last, width=1.0))) / g_last
    rec.analytic(f"pointer mean/g for P_C at g = {g_last:g} width", -1.0, ratio_c, 0.02)
    rec.analytic("pointer error sequence is non-increasing and ends below 0.02", 1.0,
                 float(is_converging(report)), 0.0)
    dist = pointer_distribution(tsv, p["A"], PointerModel(coupling=0.01, width=1.0))
    rec.analytic("pointer mean/g for P_A at g = 0.01 width", 1.0, pointer_mean(dist) / 0.01, 1e-2)
    return ScenarioResult("scenario_three_box", rec.checks, trials, seed, rec.anchor,
                          {"convergence": [[g, e] for g, e in report]})


# -- simultaneous sigma_x, sigma_y, sigma_z certainty -------------------------------

def grid_directions() -> list[tuple[float, float]]:
    """The 26 directions of the cube lattice {-1, 0, 1}^3 minus the origin, as (theta, phi)."""
    dirs = []
    for v in itertools.product((-1, 0, 1), repeat=3):
        if v == (0, 0, 0):
            continue
        x, y, z = np.array(v) / np.linalg.norm(v)
        dirs.append((float(np.arccos(np.clip(z, -1, 1))), float(np.arctan2(y, x))))
    return dirs


def search_xyz_certainty(pre: StateVector | None = None) -> tuple[int, list]:
    """Search product post-selections for ABL certainty of sigma_x, sigma_y and sigma_z on particle 1.

    Returns (largest number of simultaneously certain components, list of
    (theta1, phi1, theta2, phi2, certain values) achieving it).
    """
    if pre is None:
        pre = hb.bell_basis()[0][1]
    ms = [_local(op, 0, 2, name) for op, name in ((SIGMA_X, "x"), (SIGMA_Y, "y"), (SIGMA_Z, "z"))]
    dirs = grid_directions()
    best, witnesses = 0, []
    for (t1, p1), (t2, p2) in itertools.product(dirs, dirs):
        tsv = TwoStateVector(pre, tensor_state(spin_state(t1, p1), spin_state(t2, p2)))
        values = {}
        for m in ms:
            try:
                label = certain_outcome(tsv, m)
            except ValueError:
                label = None
            if label is not None:
                values[m.label] = m.outcomes[m.index(label)].eigenvalue
        if len(values) > best:
            best, witnesses = len(values), []
        if len(values) == best:
            witnesses.append((t1, p1, t2, p2, values))
    return best, witnesses


def scenario_elements_of_reality_note(trials: int = 0, seed: int = 42, sigma: float = 4.0) -> ScenarioResult:
    rec = _Recorder("simultaneous sigma_x, sigma_y, sigma_z elements of reality (grid search)", sigma)
    best, witnesses = search_xyz_certainty()
    rec.record("largest number of simultaneously certain spin components on the grid", best)
    notes = {"max_certain": best, "n_witnesses": len(witnesses)}
    if best == 3:
        t1, p1, t2, p2, values = witnesses[0]
        tsv = TwoStateVector(hb.bell_basis()[0][1], tensor_state(spin_state(t1, p1), spin_state(t2, p2)))
        for comp, op in (("x", SIGMA_X), ("y", SIGMA_Y), ("z", SIGMA_Z)):
            m = _local(op, 0, 2, comp)
            rec.analytic(f"sigma_{comp} = {values[comp]:+g} with certainty", 1.0,
                         abl_table(tsv, m)[m.labels[list(m.eigenvalues).index(values[comp])]])
        notes["witness"] = [t1, p1, t2, p2]
    else:
        rec.record("simultaneous certainty of all three components: not found on grid", 0)
    return ScenarioResult("scenario_elements_of_reality_note", rec.checks, 0, seed, rec.anchor, notes)


# -- catalog -------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    run: Callable[..., ScenarioResult]
    description: str
    anchor: str


CATALOG: dict[str, CatalogEntry] = {
    "ghz_classical_bound": CatalogEntry(ghz_classical_bound, "exhaustive search over 64 deterministic GHZ strategies",
                                        "GHZ game, classical bound"),
    "scenario_elements_of_reality_note": CatalogEntry(
        scenario_elements_of_reality_note, "grid search for simultaneous sigma_x/y/z certainty",
        "spin elements of reality"),
    "scenario_erasure": CatalogEntry(scenario_erasure, "Bell-measurement erasure restores retrodiction symmetry",
                                     "erasure procedure"),
    "scenario_ghz": CatalogEntry(scenario_ghz, "GHZ state wins all four question sets", "GHZ game, quantum strategy"),
    "scenario_repeated_sigma_x": CatalogEntry(scenario_repeated_sigma_x,
                                              "two sigma_x measurements on up_z agree: joint probability 1/2",
                                              "erroneous counterfactual probability"),
    "scenario_sharp_shanks": CatalogEntry(scenario_sharp_shanks, "three spin measurements, decomposition restored",
                                          "inconsistency proof, correctly conditioned"),
    "scenario_singlet_product_rule": CatalogEntry(scenario_singlet_product_rule,
                                                  "singlet/product post-selection breaks the product rule",
                                                  "product rule failure"),
    "scenario_three_box": CatalogEntry(scenario_three_box, "three-box paradox: certainties and weak values",
                                       "three-box paradox"),
    "scenario_two_time": CatalogEntry(scenario_two_time, "singlet sums and single-spin two-time relations",
                                      "two-time counterfactuals"),
    "scenario_xi_spin": CatalogEntry(scenario_xi_spin, "tilted spin: Born vs two-sided probability",
                                     "tilted spin between identical selections"),
}


def scenario_names() -> list[str]:
    return sorted(CATALOG)


def run_scenario(name: str, trials: int = 100_000, seed: int = 42, sigma: float = 4.0) -> ScenarioResult:
    if name not in CATALOG:
        raise KeyError(f"unknown scenario {name!r}; valid names: {', '.join(scenario_names())}")
    return CATALOG[name].run(trials=trials, seed=seed, sigma=sigma)


def certainty_cases() -> list[tuple[str, TwoStateVector, ProjectiveMeasurement]]:
    """Catalog (tsv, measurement) pairs for which the two-sided rule gives a certain outcome."""
    cases = [("tilted spin at theta=0", TwoStateVector(UP, UP), _spin(0.0, label="sigma_xi(0)"))]
    tsv = three_box_tsv()
    cases += [(f"three boxes, open {b}", tsv, box_measurement(b)) for b in "AB"]
    cases.append(("three boxes, identity", tsv, ProjectiveMeasurement.from_observable(np.eye(3), "identity")))
    tsv = singlet_tsv()
    cases += [(f"singlet, {name}", tsv, m) for name, m in singlet_measurements().items()]
    cases.append(("up_y preparation and post-selection, sigma_y", TwoStateVector(UP_Y, UP_Y), M_Y))
    cases.append(("up_z to up_x, sigma_x", TwoStateVector(UP, UP_X), M_X))
    cases.append(("up_z to up_x, sigma_z", TwoStateVector(UP, UP_X), M_Z))
    return cases
