"""A fully worked three-sector economy with frozen reference numbers.

The numbers below were produced once, independently of this package's
solvers, and are replayed as a golden regression: ``replay()`` recomputes
every figure from the embedded data and compares at REPLAY_TOL. The
economy has a viable capital-using labor-saving change in sector 3 and a
replacement wage bundle that keeps the exploitation rate at 0.75 while
the profit rate falls from about 0.176 to about 0.160.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .equilibrium import admissibility, uniform_profit_rate
from .linear_economy import Technology, WageBundle, labor_values, value_of_bundle
from .synthesis import EqualOffPivot, build_region, sample_constant_exploitation
from .technical_change import TechChange, apply_change, classify

REPLAY_TOL = 1e-5

_INPUTS = [
    [0.35, 0.05, 0.25],
    [0.15, 0.45, 0.05],
    [0.15, 0.15, 0.35],
]
_LABOR = [0.2, 0.15, 0.25]
_BUNDLE = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]

# Sector 3 gets a dearer column and less direct labor.
_NEW_COLUMN = [0.27, 0.07, 0.37]
_NEW_LABOR = 0.18

# Replacement bundle as printed in the reference run (6 decimals). The
# heavy good is sector 2; the off-pivot goods share the remaining value
# equally. ``solved_bundle`` reconstructs it at full precision.
_PRINTED_BUNDLE = [0.008613, 1.170977, 0.008613]
_PIVOT = 1
_PIVOT_QUANTITY = 1.170977

REFERENCE = {
    "profit_rate": 0.1764706,
    "price_1": 1.0,
    "price_2": 0.9090909,
    "price_3": 1.0909091,
    "labor_value_1": 0.5714286,
    "labor_value_2": 0.5,
    "labor_value_3": 0.6428571,
    "bundle_value": 0.5714286,
    "exploitation": 0.75,
    "max_price_value_ratio": 1.8181818,
    "cost_before": 0.9272727,
    "cost_after": 0.9172727,
    "break_even_wage": 1.0555556,
    "new_labor_value_1": 0.5511364,
    "new_labor_value_2": 0.4797078,
    "new_labor_value_3": 0.5752165,
    "price_intercept_1": 1.0555556,
    "price_intercept_2": 1.1611111,
    "price_intercept_3": 0.9675926,
    "value_intercept_1": 1.0368189,
    "value_intercept_2": 1.1912014,
    "value_intercept_3": 0.9934149,
    "new_bundle_value": 0.5714286,
    "new_exploitation": 0.75,
    "new_profit_rate": 0.1604551,
    "new_price_1": 0.9288424,
    "new_price_2": 0.8398318,
    "new_price_3": 0.9956171,
    "new_max_price_value_ratio": 1.7507170,
}


def economy() -> tuple[Technology, WageBundle]:
    return Technology(np.array(_INPUTS), np.array(_LABOR)), WageBundle(np.array(_BUNDLE))


def change() -> TechChange:
    return TechChange(sector=2, new_column=np.array(_NEW_COLUMN), new_labor=_NEW_LABOR)


def printed_bundle() -> WageBundle:
    """The replacement bundle exactly as printed in the reference run."""
    return WageBundle(np.array(_PRINTED_BUNDLE))


def solved_bundle() -> WageBundle:
    """The same bundle at full precision.

    Reconstructed by pinning the pivot coordinate and solving the
    equal-split tail on the value plane, so the new bundle's labor value
    matches the old one to machine precision (the printed figures are
    rounded to 6 decimals and only match to about 5e-7).
    """
    tech, bundle = economy()
    equilibrium = uniform_profit_rate(tech, bundle)
    values = labor_values(tech)
    new_values = labor_values(apply_change(tech, change()))
    classification = classify(tech, equilibrium, change())
    region = build_region(
        equilibrium, new_values, value_of_bundle(values, bundle), classification
    )
    return sample_constant_exploitation(
        region, strategy=EqualOffPivot(pivot=_PIVOT, value=_PIVOT_QUANTITY)
    )


@dataclass(frozen=True)
class Check:
    name: str
    expected: float
    actual: float
    ok: bool


@dataclass(frozen=True)
class ReplayReport:
    checks: tuple
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(check.ok for check in self.checks)


def replay(perturb: bool = False) -> ReplayReport:
    """Recompute every reference figure and compare at REPLAY_TOL.

    ``perturb`` nudges one input coefficient before solving; it exists as
    a negative control, making the comparison fail on purpose.
    """
    start = time.perf_counter()
    tech, bundle = economy()
    if perturb:
        inputs = tech.inputs.copy()
        inputs[0, 0] += 0.01
        tech = Technology(inputs, tech.labor)
    equilibrium = uniform_profit_rate(tech, bundle)
    values = labor_values(tech)
    bundle_value = value_of_bundle(values, bundle)
    exploitation = (1.0 - bundle_value) / bundle_value
    flags = admissibility(equilibrium.prices, values, bundle_value)
    classification = classify(tech, equilibrium, change())
    patched = apply_change(tech, change())
    new_values = labor_values(patched)
    region = build_region(equilibrium, new_values, bundle_value, classification)
    new_bundle = printed_bundle()
    post = uniform_profit_rate(patched, new_bundle)
    new_bundle_value = value_of_bundle(new_values, new_bundle)
    new_exploitation = (1.0 - new_bundle_value) / new_bundle_value
    post_flags = admissibility(post.prices, new_values, new_bundle_value)

    actual = {
        "profit_rate": equilibrium.profit_rate,
        "price_1": equilibrium.prices[0],
        "price_2": equilibrium.prices[1],
        "price_3": equilibrium.prices[2],
        "labor_value_1": values[0],
        "labor_value_2": values[1],
        "labor_value_3": values[2],
        "bundle_value": bundle_value,
        "exploitation": exploitation,
        "max_price_value_ratio": flags.max_ratio,
        "cost_before": classification.cost_pre,
        "cost_after": classification.cost_post,
        "break_even_wage": classification.break_even_wage,
        "new_labor_value_1": new_values[0],
        "new_labor_value_2": new_values[1],
        "new_labor_value_3": new_values[2],
        "price_intercept_1": region.price_plane_intercepts[0],
        "price_intercept_2": region.price_plane_intercepts[1],
        "price_intercept_3": region.price_plane_intercepts[2],
        "value_intercept_1": region.value_plane_intercepts[0],
        "value_intercept_2": region.value_plane_intercepts[1],
        "value_intercept_3": region.value_plane_intercepts[2],
        "new_bundle_value": new_bundle_value,
        "new_exploitation": new_exploitation,
        "new_profit_rate": post.profit_rate,
        "new_price_1": post.prices[0],
        "new_price_2": post.prices[1],
        "new_price_3": post.prices[2],
        "new_max_price_value_ratio": post_flags.max_ratio,
    }
    checks = tuple(
        Check(
            name=name,
            expected=expected,
            actual=float(actual[name]),
            ok=abs(float(actual[name]) - expected) <= REPLAY_TOL,
        )
        for name, expected in REFERENCE.items()
    )
    return ReplayReport(checks=checks, elapsed=time.perf_counter() - start)
