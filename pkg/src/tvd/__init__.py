"""Detect time-reversal violation in finite-dimensional dynamical laws.

Three detection routes are implemented, each phrased as a decision
procedure returning an explicit verdict with a witness:

* a symmetric state that evolves off its symmetry ray convicts the
  Hamiltonian (``unitary_curie_check``), with a scattering variant built
  on one cross-parity amplitude (``scattering_curie_check``);
* an in/out amplitude that differs from its motion-reversed partner
  convicts the S-matrix (``kabir_check``);
* a non-degenerate energy eigenvector moved off its ray by an
  antiunitary candidate convicts that candidate
  (``wigner_principle_check``).

Scenario documents bundle matrices, symmetries, states and detector
requests into canonical JSON; ``run_scenario`` executes them and the
oracle in ``runner`` re-derives every verdict from first principles.
"""

__version__ = "0.1.0"

from .builders import MODEL_NAMES, build_model_scenario, shipped_scenario_paths
from .config import DEFAULT_TOLERANCES, Tolerances
from .curie import s_matrix_inference, scattering_curie_check, unitary_curie_check
from .errors import (
    ClassificationError,
    ConfigError,
    DimensionMismatchError,
    MisuseError,
    ParameterError,
    PremiseError,
    ScenarioError,
    TvdError,
)
from .kabir import (
    AmplitudePair,
    amplitude_pair,
    kabir_check,
    probability_asymmetry,
    transition_probability,
)
from .linalg import (
    EigenDecomposition,
    commutator,
    dagger,
    frobenius_norm,
    herm_eig,
    is_hermitian,
    is_unitary,
    mat_exp,
    normalize,
    random_hermitian,
    random_unitary,
)
from .models import (
    ChainRecord,
    EdmModel,
    KaonDecayModel,
    KaonModel,
    SpinAlgebra,
    build_s_matrix,
    edm_model,
    kaon_decay_scattering_model,
    kaon_oscillation_model,
    spin_operators,
    symmetrize_invariant,
    t_symmetric_smatrix,
    wigner_eckart_chain,
)
from .runner import oracle_compare, render_text, run_request, run_scenario
from .scenario import (
    DETECTORS,
    SCHEMA_VERSION,
    OracleRecord,
    Provenance,
    Report,
    Request,
    Scenario,
    VerdictRecord,
    canonical_dumps,
    parse_scenario,
    report_jsonable,
    scenario_jsonable,
    serialize_report,
    serialize_scenario,
)
from .selftest import SUITES, SuiteResult, run_all
from .symmetry import (
    COMMUTANT,
    TIME_REVERSAL_SMATRIX,
    TIME_REVERSAL_UNITARY,
    InvarianceMargin,
    SymmetryTransform,
    apply,
    compose,
    conjugate_operator,
    conjugation,
    cpt_link_inference,
    identity_transform,
    invariance_margin,
    inverse,
    smatrix_reversal_margin,
    time_reversal_consistency,
)
from .verdict import (
    NO_CONCLUSION,
    REASON_BELOW_THRESHOLD,
    REASON_INDETERMINATE,
    REASON_PREMISE_UNMET,
    VIOLATION,
    Verdict,
)
from .wigner import (
    MINUS_IDENTITY,
    OTHER,
    PLUS_IDENTITY,
    Cluster,
    KramersReport,
    SpectrumClusters,
    TSquareClass,
    kramers_degeneracy_verify,
    kramers_square,
    ray_displacement,
    spectrum_clusters,
    wigner_principle_check,
)

__all__ = [
    "AmplitudePair",
    "COMMUTANT",
    "ChainRecord",
    "ClassificationError",
    "Cluster",
    "ConfigError",
    "DEFAULT_TOLERANCES",
    "DETECTORS",
    "DimensionMismatchError",
    "EdmModel",
    "EigenDecomposition",
    "InvarianceMargin",
    "KaonDecayModel",
    "KaonModel",
    "KramersReport",
    "MINUS_IDENTITY",
    "MODEL_NAMES",
    "MisuseError",
    "NO_CONCLUSION",
    "OTHER",
    "OracleRecord",
    "PLUS_IDENTITY",
    "ParameterError",
    "PremiseError",
    "Provenance",
    "REASON_BELOW_THRESHOLD",
    "REASON_INDETERMINATE",
    "REASON_PREMISE_UNMET",
    "Report",
    "Request",
    "SCHEMA_VERSION",
    "SUITES",
    "Scenario",
    "ScenarioError",
    "SpectrumClusters",
    "SpinAlgebra",
    "SuiteResult",
    "SymmetryTransform",
    "TIME_REVERSAL_SMATRIX",
    "TIME_REVERSAL_UNITARY",
    "TSquareClass",
    "Tolerances",
    "TvdError",
    "VIOLATION",
    "Verdict",
    "VerdictRecord",
    "amplitude_pair",
    "apply",
    "build_model_scenario",
    "build_s_matrix",
    "canonical_dumps",
    "commutator",
    "compose",
    "conjugate_operator",
    "conjugation",
    "cpt_link_inference",
    "dagger",
    "edm_model",
    "frobenius_norm",
    "herm_eig",
    "identity_transform",
    "invariance_margin",
    "inverse",
    "is_hermitian",
    "is_unitary",
    "kabir_check",
    "kaon_decay_scattering_model",
    "kaon_oscillation_model",
    "kramers_degeneracy_verify",
    "kramers_square",
    "mat_exp",
    "normalize",
    "oracle_compare",
    "parse_scenario",
    "probability_asymmetry",
    "random_hermitian",
    "random_unitary",
    "ray_displacement",
    "render_text",
    "report_jsonable",
    "run_request",
    "run_scenario",
    "run_all",
    "s_matrix_inference",
    "scattering_curie_check",
    "scenario_jsonable",
    "serialize_report",
    "serialize_scenario",
    "shipped_scenario_paths",
    "smatrix_reversal_margin",
    "spectrum_clusters",
    "spin_operators",
    "symmetrize_invariant",
    "t_symmetric_smatrix",
    "time_reversal_consistency",
    "transition_probability",
    "unitary_curie_check",
    "wigner_eckart_chain",
    "wigner_principle_check",
    "__version__",
]
