"""Symmetry-of-effects detectors for unitary evolution and scattering.

The underlying logic: a symmetric cause cannot develop an asymmetric
effect under symmetric laws. If a state starts exactly on a symmetry
ray and evolves off it, the dynamics cannot commute with the symmetry.
The scattering variant compares definite-parity in and out states; a
non-vanishing amplitude between opposite parities rules out a commuting
S-matrix. Both checks apply to linear symmetries only; an antilinear
transform permutes in and out states and its fixed rays carry no such
constraint, so passing one here is a usage error.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import MisuseError, PremiseError
from .linalg import as_state_vector, mat_exp, require_hermitian, require_unitary
from .symmetry import COMMUTANT, InvarianceMargin, SymmetryTransform, apply
from .verdict import (
    REASON_BELOW_THRESHOLD,
    REASON_INDETERMINATE,
    REASON_PREMISE_UNMET,
    Verdict,
)


def _require_linear(r: SymmetryTransform, what: str) -> None:
    if r.antilinear:
        raise MisuseError(f"{what} requires a linear symmetry, got antilinear {r.label!r}")


def _require_normalized(psi: np.ndarray, tol: Tolerances, name: str) -> None:
    dev = abs(float(np.linalg.norm(psi)) - 1.0)
    if dev > tol.tau_zero:
        raise PremiseError(f"{name} is not normalized (deviation {dev:.3e})")


def unitary_curie_check(
    h: np.ndarray,
    r: SymmetryTransform,
    psi_initial: np.ndarray,
    time: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Verdict:
    """Detect a broken symmetry from one evolved state.

    If ``R psi_i = psi_i`` while the evolved ``psi_f = exp(-itH) psi_i``
    has ``R psi_f != psi_f`` (or the mirror image of that), then
    ``[R, H] != 0``. The margin is the offending deviation norm.
    """
    _require_linear(r, "unitary_curie_check")
    arr = require_hermitian(h, tol=tol.tau_zero, name="hamiltonian")
    psi_i = as_state_vector(psi_initial, dim=arr.shape[0], name="psi_initial")
    _require_normalized(psi_i, tol, "psi_initial")
    psi_f = mat_exp(arr, -1j * time) @ psi_i

    dev_initial = float(np.linalg.norm(apply(r, psi_i) - psi_i))
    dev_final = float(np.linalg.norm(apply(r, psi_f) - psi_f))
    witness = {
        "initial_deviation": dev_initial,
        "final_deviation": dev_final,
        "time": float(time),
    }

    for armed, moved, branch in (
        (dev_initial, dev_final, "initial-fixed-final-moved"),
        (dev_final, dev_initial, "final-fixed-initial-moved"),
    ):
        if armed <= tol.tau_zero:
            if moved > tol.tau_violation:
                witness["branch"] = branch
                witness["final_state"] = [complex(x) for x in psi_f]
                return Verdict.violation(r.label or "R", margin=moved, witness=witness)
            if moved > tol.tau_zero:
                witness["note"] = "deviation falls in the hysteresis band"
                return Verdict.no_conclusion(REASON_INDETERMINATE, margin=moved, witness=witness)

    witness["note"] = "neither state is fixed by the symmetry, or both are"
    return Verdict.no_conclusion(REASON_PREMISE_UNMET, witness=witness)


def scattering_curie_check(
    s: np.ndarray,
    r: SymmetryTransform,
    psi_in: np.ndarray,
    psi_out: np.ndarray,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Verdict:
    """Detect ``[R, S] != 0`` from one cross-parity amplitude.

    Needs an R-even state on one side and an R-odd state on the other
    (eigenphases +1 and -1). A transition amplitude above threshold
    between opposite parities is impossible for an R-commuting S.
    """
    _require_linear(r, "scattering_curie_check")
    smat = require_unitary(s, tol=tol.tau_zero, name="smatrix")
    v_in = as_state_vector(psi_in, dim=smat.shape[0], name="psi_in")
    v_out = as_state_vector(psi_out, dim=smat.shape[0], name="psi_out")

    in_even = float(np.linalg.norm(apply(r, v_in) - v_in))
    in_odd = float(np.linalg.norm(apply(r, v_in) + v_in))
    out_even = float(np.linalg.norm(apply(r, v_out) - v_out))
    out_odd = float(np.linalg.norm(apply(r, v_out) + v_out))

    if in_even <= tol.tau_zero and out_odd <= tol.tau_zero:
        branch = "in-even-out-odd"
    elif in_odd <= tol.tau_zero and out_even <= tol.tau_zero:
        branch = "in-odd-out-even"
    else:
        return Verdict.no_conclusion(
            REASON_PREMISE_UNMET,
            witness={
                "note": "in and out states do not have opposite definite parity",
                "in_even_deviation": in_even,
                "in_odd_deviation": in_odd,
                "out_even_deviation": out_even,
                "out_odd_deviation": out_odd,
            },
        )

    amplitude = complex(np.vdot(v_out, smat @ v_in))
    witness = {
        "branch": branch,
        "amplitude": amplitude,
        "amplitude_magnitude": abs(amplitude),
    }
    if abs(amplitude) > tol.tau_violation:
        return Verdict.violation(f"{r.label or 'R'} on S", margin=abs(amplitude), witness=witness)
    if abs(amplitude) > tol.tau_zero:
        witness["note"] = "amplitude falls in the hysteresis band"
        return Verdict.no_conclusion(REASON_INDETERMINATE, margin=abs(amplitude), witness=witness)
    witness["note"] = "cross-parity amplitude is consistent with zero"
    return Verdict.no_conclusion(REASON_BELOW_THRESHOLD, margin=abs(amplitude), witness=witness)


def s_matrix_inference(
    r_h0_margin: InvarianceMargin,
    r_s_margin: InvarianceMargin,
    label: str = "R",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Verdict:
    """Push a scattering-level violation down to the full Hamiltonian.

    If R commutes with the free Hamiltonian but not with the S-matrix,
    the interacting dynamics cannot commute with R either. Both inputs
    must be commutant margins.
    """
    for margin, name in ((r_h0_margin, "r_h0_margin"), (r_s_margin, "r_s_margin")):
        if margin.comparison_kind != COMMUTANT:
            raise MisuseError(f"{name} must be a commutant margin, got {margin.comparison_kind!r}")
    witness = {
        "free_hamiltonian_margin": r_h0_margin.value,
        "smatrix_margin": r_s_margin.value,
    }
    if r_h0_margin.value > tol.tau_zero:
        witness["note"] = "symmetry does not commute with the free Hamiltonian"
        return Verdict.no_conclusion(REASON_PREMISE_UNMET, margin=r_s_margin.value, witness=witness)
    if r_s_margin.value <= tol.tau_zero:
        witness["note"] = "S-matrix margin is consistent with zero"
        return Verdict.no_conclusion(REASON_BELOW_THRESHOLD, margin=r_s_margin.value, witness=witness)
    if r_s_margin.value <= tol.tau_violation:
        witness["note"] = "S-matrix margin falls in the hysteresis band"
        return Verdict.no_conclusion(REASON_INDETERMINATE, margin=r_s_margin.value, witness=witness)
    witness["note"] = "free dynamics symmetric while the S-matrix is not"
    return Verdict.violation(f"{label} on H", margin=r_s_margin.value, witness=witness)
