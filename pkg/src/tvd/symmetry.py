"""Unitary and antiunitary transforms and their invariance margins.

An antiunitary transform is stored as a pair ``(U, antilinear=True)``
and acts as ``psi -> U @ conj(psi)``, i.e. componentwise conjugation in
the computational basis followed by a unitary. Linear transforms act as
``psi -> U @ psi``. The unitary part is always required to be unitary;
non-unitary linear maps are out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import DimensionMismatchError, MisuseError
from .linalg import (
    as_square_matrix,
    as_state_vector,
    dagger,
    frobenius_norm,
    mat_exp,
    require_hermitian,
    require_unitary,
)
from .verdict import (
    REASON_BELOW_THRESHOLD,
    REASON_INDETERMINATE,
    REASON_PREMISE_UNMET,
    Verdict,
)

COMMUTANT = "commutant"
TIME_REVERSAL_UNITARY = "time_reversal_unitary"
TIME_REVERSAL_SMATRIX = "time_reversal_smatrix"


@dataclass(frozen=True)
class SymmetryTransform:
    unitary_part: np.ndarray
    antilinear: bool
    label: str = ""

    def __post_init__(self) -> None:
        arr = require_unitary(self.unitary_part, name=f"unitary_part of {self.label or 'transform'}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "unitary_part", arr)
        object.__setattr__(self, "antilinear", bool(self.antilinear))

    @property
    def dim(self) -> int:
        return self.unitary_part.shape[0]


def identity_transform(dim: int, label: str = "1") -> SymmetryTransform:
    return SymmetryTransform(np.eye(dim, dtype=complex), antilinear=False, label=label)


def conjugation(dim: int, label: str = "K") -> SymmetryTransform:
    """Componentwise complex conjugation in the computational basis."""
    return SymmetryTransform(np.eye(dim, dtype=complex), antilinear=True, label=label)


def apply(g: SymmetryTransform, psi: np.ndarray) -> np.ndarray:
    vec = as_state_vector(psi, dim=g.dim)
    if g.antilinear:
        return g.unitary_part @ vec.conj()
    return g.unitary_part @ vec


def compose(g: SymmetryTransform, h: SymmetryTransform, label: str = "") -> SymmetryTransform:
    """The transform ``g after h``.

    Pulling h's unitary part through g's conjugation gives
    ``U = U_g @ conj(U_h)`` when g is antilinear and ``U_g @ U_h``
    otherwise; the antilinear flags combine by exclusive or.
    """
    if g.dim != h.dim:
        raise DimensionMismatchError(f"dimension mismatch {g.dim} vs {h.dim}")
    right = h.unitary_part.conj() if g.antilinear else h.unitary_part
    return SymmetryTransform(
        g.unitary_part @ right,
        antilinear=g.antilinear != h.antilinear,
        label=label or f"{g.label}{h.label}",
    )


def inverse(g: SymmetryTransform, label: str = "") -> SymmetryTransform:
    unit = g.unitary_part.T if g.antilinear else dagger(g.unitary_part)
    return SymmetryTransform(unit, antilinear=g.antilinear, label=label or f"{g.label}^-1")


def conjugate_operator(g: SymmetryTransform, a: np.ndarray) -> np.ndarray:
    """The linear operator ``g A g^-1``."""
    arr = as_square_matrix(a)
    if arr.shape[0] != g.dim:
        raise DimensionMismatchError(f"operator dim {arr.shape[0]} vs transform dim {g.dim}")
    middle = arr.conj() if g.antilinear else arr
    return g.unitary_part @ middle @ dagger(g.unitary_part)


@dataclass(frozen=True)
class InvarianceMargin:
    """A scalar distance from exact invariance.

    ``comparison_kind`` records which comparison produced the value so
    that downstream inferences cannot mix incompatible margins.
    """

    value: float
    comparison_kind: str


def invariance_margin(g: SymmetryTransform, a: np.ndarray) -> InvarianceMargin:
    """``||g A g^-1 - A||_F / max(1, ||A||_F)``."""
    arr = as_square_matrix(a)
    value = frobenius_norm(conjugate_operator(g, arr) - arr) / max(1.0, frobenius_norm(arr))
    return InvarianceMargin(value=value, comparison_kind=COMMUTANT)


def time_reversal_consistency(
    t: SymmetryTransform,
    h: np.ndarray,
    time: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InvarianceMargin:
    """Distance between ``T exp(-itH) T^-1`` and ``exp(+itH)``.

    Zero exactly when the candidate reversal sends forward evolution to
    backward evolution.
    """
    if not t.antilinear:
        raise MisuseError("time reversal consistency requires an antilinear transform")
    arr = require_hermitian(h, tol=tol.tau_zero, name="hamiltonian")
    forward = mat_exp(arr, -1j * time)
    backward = mat_exp(arr, 1j * time)
    value = frobenius_norm(conjugate_operator(t, forward) - backward) / max(1.0, float(t.dim))
    return InvarianceMargin(value=value, comparison_kind=TIME_REVERSAL_UNITARY)


def smatrix_reversal_margin(t: SymmetryTransform, s: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> InvarianceMargin:
    """Distance between ``T S T^-1`` and ``S^-1`` for unitary S."""
    if not t.antilinear:
        raise MisuseError("scattering reversal requires an antilinear transform")
    arr = require_unitary(s, tol=tol.tau_zero, name="smatrix")
    value = frobenius_norm(conjugate_operator(t, arr) - dagger(arr)) / max(1.0, frobenius_norm(arr))
    return InvarianceMargin(value=value, comparison_kind=TIME_REVERSAL_SMATRIX)


def cpt_link_inference(
    cpt_margin: InvarianceMargin,
    cp_margin: InvarianceMargin,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Verdict:
    """Indirect time reversal test through the combined CPT transform.

    When the composite CPT transform commutes with the dynamics while CP
    alone does not, time reversal invariance must fail as well. Both
    margins must be commutant margins against the same Hamiltonian.
    """
    for margin, name in ((cpt_margin, "cpt_margin"), (cp_margin, "cp_margin")):
        if margin.comparison_kind != COMMUTANT:
            raise MisuseError(f"{name} must be a commutant margin, got {margin.comparison_kind!r}")
    witness = {
        "cpt_margin": cpt_margin.value,
        "cp_margin": cp_margin.value,
    }
    if cpt_margin.value > tol.tau_zero:
        witness["note"] = "composite CPT transform does not commute with the dynamics"
        return Verdict.no_conclusion(REASON_PREMISE_UNMET, margin=cp_margin.value, witness=witness)
    if cp_margin.value <= tol.tau_zero:
        witness["note"] = "CP margin is consistent with zero"
        return Verdict.no_conclusion(REASON_BELOW_THRESHOLD, margin=cp_margin.value, witness=witness)
    if cp_margin.value <= tol.tau_violation:
        witness["note"] = "CP margin falls in the hysteresis band"
        return Verdict.no_conclusion(REASON_INDETERMINATE, margin=cp_margin.value, witness=witness)
    witness["note"] = "CPT invariant while CP is violated"
    return Verdict.violation("T", margin=cp_margin.value, witness=witness)
