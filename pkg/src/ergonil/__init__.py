"""ergonil: weighted double-recurrence averages, nilsequence generators, and
finite-scale uniformity seminorms on explicit torus systems.

The package is organized by subject:

* `systems`: rotations, the skew product, exact lattice automorphisms,
  trigonometric-polynomial observables, model factor projections;
* `nilseq`: polynomial phases, torus and Heisenberg nilsequences, products,
  table-backed weights, Cesaro averaging;
* `averages`: Birkhoff / frequency-twisted / double-recurrence averages,
  certified sup-over-frequency sweeps, schedule driver;
* `seminorms`: sequence and orbit uniformity seminorms, the finite van der
  Corput inequality, order-3 cube averages;
* `joinings`: power-invariant conditional expectations and the product
  formula check;
* `harness` / `cli`: JSON-config experiments with CSV + summary output.
"""

from .averages import (
    DualSystemResult,
    SupResult,
    birkhoff_avg,
    double_avg,
    dual_system_avg,
    nil_wwdr_avg,
    poly_wwdr_avg,
    run_schedule,
    sup_over_frequency,
    ww_avg,
    ww_sup,
    wwdr_avg,
)
from .errors import (
    ConfigError,
    DimensionMismatchError,
    ErgonilError,
    GridTooFineError,
    InvalidExponentsError,
    SequenceTooShortError,
    UnsupportedSystemError,
)
from .joinings import (
    InvariantExpectation,
    ProductFormulaReport,
    expectation_pairing,
    invariant_conditional_expectation,
    product_formula_check,
)
from .nilseq import (
    HeisenbergElement,
    HeisenbergNilseq,
    PolynomialPhase,
    Product,
    Scaled,
    Table,
    ThetaType,
    TorusChar,
    TorusNilseq,
    WeightSequence,
    cesaro_nilseq,
    check_gamma_invariance,
    constant_weight,
    eval_weight,
    heisenberg_pow,
    product_weight,
    reduce_fundamental,
    table_from_csv,
    weight_samples,
)
from .report import ConvergenceReport, SupPoint, make_report
from .seminorms import (
    CorrelationBox,
    SeminormEstimate,
    VdcReport,
    c_h_estimate,
    cube_average,
    ghk_seminorm,
    local_seminorm,
    orbit_product_sequence,
    vanishing_experiment,
    vdc_bound,
)
from .systems import (
    AnzaiSkew,
    Observable,
    RotationTorus,
    ToralAutomorphism,
    constant_observable,
    eval_observable,
    integrate_observable,
    observable,
    orbit_coords,
    orbit_point,
    project_Zk,
    zk_complement,
)

__version__ = "0.1.0"
