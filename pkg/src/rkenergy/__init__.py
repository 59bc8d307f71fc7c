"""Exact strong-stability analysis of explicit Runge-Kutta methods.

The pipeline is polynomial -> energy equality -> verdict::

    >>> from rkenergy import preset, classify
    >>> classify(preset("taylor(3)")).status.value
    'StronglyStable'
"""

from .classify import (
    EvenOrderCheck,
    StabilityVerdict,
    Status,
    classify,
    classify_strong_stability,
    even_order_check,
    even_order_sufficient,
    odd_order_criterion,
)
from .energy import (
    ClosedForm,
    EnergyEquality,
    LeadingData,
    closed_form_leading,
    energy_accuracy,
    expand_energy,
    leading_data,
)
from .linalg import is_negative_definite_exact, symmetric_eigenvalues
from .polynomial import (
    ButcherTableau,
    DegenerateMethodError,
    StabilityPolynomial,
    TableauError,
    compose_steps,
    linear_order,
    load_tableau,
    parse_rational,
    tableau_stability_coefficients,
    taylor_polynomial,
)
from .presets import preset, preset_polynomial

__version__ = "0.1.0"
