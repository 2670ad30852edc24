"""Variance-based entanglement conditions on finite-dimensional and
truncated bosonic Hilbert spaces, plus exact polynomial identity checking.

The package splits into small layers:

- :mod:`entwit.hilbert` — matrices, states, moments and variances;
- :mod:`entwit.operators` — ladder/quadrature, spin and paired-level spin
  operators;
- :mod:`entwit.states` — the state families under study and a declarative
  :class:`~entwit.states.StateSpec`;
- :mod:`entwit.witnesses` — the entanglement conditions themselves, each
  returning a :class:`~entwit.witnesses.WitnessReport`;
- :mod:`entwit.optimize` — the truncated quadratic-form matrix, its minimal
  eigenvalue by Sturm bisection, and scans over the small families;
- :mod:`entwit.polyid` — exact rational polynomial algebra behind the
  power-sum identities;
- :mod:`entwit.cli` — the ``entwit`` command.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .config import DEFAULT, Tolerances
from .hilbert import (
    ComplexMatrix,
    QuantumState,
    commutator,
    expectation,
    kron,
    mix,
    variance,
)
from .operators import (
    QuadraturePair,
    annihilation,
    block_spin,
    quadratures,
    rotated_spin,
    spin_ops,
)
from .optimize import (
    ScanResult,
    TridiagonalMatrix,
    c_matrix,
    convergence_study,
    min_eigenvalue,
    psi2_scan,
    quadratic_form,
    vmax_from_lambda,
)
from .polyid import (
    ParseError,
    Polynomial,
    builtin_identity,
    equal,
    eval_expr,
    expand,
    parse,
    pretty,
    verify,
)
from .states import (
    StateSpec,
    bell,
    build_state,
    fock_pair_superposition,
    pair_cutoff,
    schmidt_pair,
    squeezed_cutoff,
    squeezed_vacuum,
    vacuum_mixture,
)
from .witnesses import (
    WitnessReport,
    four_variance,
    heisenberg_floor,
    multipartite,
    ramanujan_witness,
    schmidt_optimal_witness,
    uffink,
    variance_product,
    variance_sum,
)

__all__ = [
    "__version__",
    "DEFAULT",
    "Tolerances",
    "ComplexMatrix",
    "QuantumState",
    "commutator",
    "expectation",
    "kron",
    "mix",
    "variance",
    "QuadraturePair",
    "annihilation",
    "block_spin",
    "quadratures",
    "rotated_spin",
    "spin_ops",
    "ScanResult",
    "TridiagonalMatrix",
    "c_matrix",
    "convergence_study",
    "min_eigenvalue",
    "psi2_scan",
    "quadratic_form",
    "vmax_from_lambda",
    "ParseError",
    "Polynomial",
    "builtin_identity",
    "equal",
    "eval_expr",
    "expand",
    "parse",
    "pretty",
    "verify",
    "StateSpec",
    "bell",
    "build_state",
    "fock_pair_superposition",
    "pair_cutoff",
    "schmidt_pair",
    "squeezed_cutoff",
    "squeezed_vacuum",
    "vacuum_mixture",
    "WitnessReport",
    "four_variance",
    "heisenberg_floor",
    "multipartite",
    "ramanujan_witness",
    "schmidt_optimal_witness",
    "uffink",
    "variance_product",
    "variance_sum",
]
