"""Long-run equilibria of circulating-capital economies.

Library for computing prices of production, the uniform profit rate,
labor values, and the rate of exploitation in n-sector linear economies
with the wage advanced as a bundle of goods; plus constructive tools
that synthesize technical changes and replacement wage bundles under
which the profit rate falls while exploitation stays constant or rises,
alongside the classical fixed-bundle control where it cannot fall.
"""

from .errors import (
    Decomposable,
    DegenerateNormalization,
    EconomyError,
    Infeasible,
    InvalidFraction,
    InvalidSector,
    NegativeExploitationWarning,
    NoConvergence,
    NonPositiveValue,
    NotInB,
    NotProductive,
    OracleLimit,
    SamplingExhausted,
    SingularSystem,
)
from .equilibrium import (
    Equilibrium,
    WageAdmissibility,
    admissibility,
    augmented_inputs,
    check_wage_admissibility,
    max_profit_rate,
    uniform_profit_rate,
)
from .linear_economy import (
    ProductivityDiagnosis,
    Technology,
    ValueSystem,
    WageBundle,
    check_productive_indecomposable,
    exploitation_rate,
    labor_values,
    load_economy,
    load_wage,
    save_economy,
    save_wage,
    value_of_bundle,
    value_system,
)
from .synthesis import (
    EqualOffPivot,
    PivotUniform,
    SynthesizedChange,
    WageRegion,
    build_region,
    ratio_condition_holds,
    ratio_condition_sectors,
    sample_constant_exploitation,
    sample_rising_exploitation,
    synthesize_culs_change,
)
from .technical_change import (
    ChangeClassification,
    PropertyReport,
    TechChange,
    apply_change,
    check_properties,
    classify,
    load_tech_change,
    save_tech_change,
)
from .verify import (
    RegionMembership,
    ScenarioFlags,
    ScenarioReport,
    SweepRecord,
    Verdict,
    oracle_region_membership,
    oracle_spectral_radius,
    random_economy,
    run_scenario,
    run_suite,
    suite_csv,
    suite_summary,
)

__version__ = "0.1.0"

__all__ = [
    "ChangeClassification",
    "Decomposable",
    "DegenerateNormalization",
    "EconomyError",
    "EqualOffPivot",
    "Equilibrium",
    "Infeasible",
    "InvalidFraction",
    "InvalidSector",
    "NegativeExploitationWarning",
    "NoConvergence",
    "NonPositiveValue",
    "NotInB",
    "NotProductive",
    "OracleLimit",
    "PivotUniform",
    "ProductivityDiagnosis",
    "PropertyReport",
    "RegionMembership",
    "SamplingExhausted",
    "ScenarioFlags",
    "ScenarioReport",
    "SingularSystem",
    "SweepRecord",
    "SynthesizedChange",
    "TechChange",
    "Technology",
    "ValueSystem",
    "Verdict",
    "WageAdmissibility",
    "WageBundle",
    "WageRegion",
    "admissibility",
    "apply_change",
    "augmented_inputs",
    "build_region",
    "check_productive_indecomposable",
    "check_properties",
    "check_wage_admissibility",
    "classify",
    "exploitation_rate",
    "labor_values",
    "load_economy",
    "load_tech_change",
    "load_wage",
    "max_profit_rate",
    "oracle_region_membership",
    "oracle_spectral_radius",
    "random_economy",
    "ratio_condition_holds",
    "ratio_condition_sectors",
    "run_scenario",
    "run_suite",
    "sample_constant_exploitation",
    "sample_rising_exploitation",
    "save_economy",
    "save_tech_change",
    "save_wage",
    "suite_csv",
    "suite_summary",
    "synthesize_culs_change",
    "uniform_profit_rate",
    "value_of_bundle",
    "value_system",
]
