"""Two-time correlators: sequential-measurement protocol vs. Heisenberg form.

Two routes to a correlation between a quantity measured at t1 and another at
t2 > t1:

* :func:`tpm_correlator` simulates the two-point-measurement protocol —
  projective measurement at t1 with Lueders update, evolution, projective
  measurement at t2 — and averages the product of outcomes.
* :func:`heisenberg_correlator` evaluates Tr(C12 rho0), where C12 is a single
  Hermitian two-time operator built from Heisenberg-picture observables:
  the symmetrized product {A1, B2}/2 or the sum A1 + B2.

The two generally disagree. They coincide whenever the evolved state at t1
is already dephased in the first observable's eigenbasis, and (by cross-term
cancellation) for every qubit observable with spectrum {+1, -1} under unitary
dynamics. :func:`qutrit_gap_fixture` ships a three-level instance with a
finite gap.

:func:`lambda_operator` exposes the conditional operator that the Heisenberg
form implicitly substitutes for the post-measurement projector; it is
generally not a valid state.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import ChannelFamily
from .qcore import DensityMatrix, Observable, _as_square_complex, _readonly

MARGINAL_TOL = 1e-12

_KINDS = ("product", "sum")


@dataclass(frozen=True)
class TwoTimeOperator:
    """Specification of a Hermitian operator built from A at t1 and B at t2.

    kind "product" realizes {A1, B2}/2; kind "sum" realizes A1 + B2. The
    channel must be a unitary family (the realization uses the Heisenberg
    direction).
    """

    kind: str
    A: Observable
    B: Observable
    t1: float
    t2: float
    channel: ChannelFamily

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if not (self.A.dim == self.B.dim == self.channel.dim):
            raise ValueError(
                f"dimension mismatch: A dim {self.A.dim}, B dim {self.B.dim}, channel dim {self.channel.dim}"
            )


@dataclass(frozen=True)
class LambdaReport:
    """The conditional operator {alpha, rho_t1} / (2 Tr(alpha rho_t1)).

    ``physical`` is True when the minimum eigenvalue clears -1e-10, i.e. when
    the operator happens to be a valid state.
    """

    matrix: np.ndarray
    min_eigenvalue: float
    trace: float
    physical: bool


def _require_unitary(channel):
    if not getattr(channel, "unitary", False):
        raise TypeError("this operation requires a unitary channel family")


def realize(op: TwoTimeOperator, group_tol: float = None) -> Observable:
    """Realize a two-time operator as a single Observable with its spectrum.

    Heisenberg-evolves both constituents and combines them; degenerate
    eigenvalues of the result are grouped (the spin product {Sx(t1), Sy(t2)}/2,
    for instance, is proportional to the identity).
    """
    _require_unitary(op.channel)
    a1 = op.channel.propagate_observable(op.A.matrix, op.t1)
    b2 = op.channel.propagate_observable(op.B.matrix, op.t2)
    if op.kind == "product":
        c = 0.5 * (a1 @ b2 + b2 @ a1)
    else:
        c = a1 + b2
    c = (c + c.conj().T) / 2.0
    if group_tol is None:
        group_tol = max(op.A.group_tol, op.B.group_tol)
    return Observable(c, group_tol=group_tol)


def heisenberg_correlator(op: TwoTimeOperator, rho0: DensityMatrix) -> float:
    """Tr(C12 rho0) for the realized two-time operator; real up to roundoff."""
    _require_unitary(op.channel)
    if rho0.dim != op.channel.dim:
        raise ValueError(f"dimension mismatch: state dim {rho0.dim}, operator dim {op.channel.dim}")
    value = np.trace(realize(op).matrix @ rho0.matrix)
    if abs(value.imag) > 1e-12:
        raise ArithmeticError(f"correlator has spurious imaginary part {value.imag:.3e}")
    return float(value.real)


def tpm_joint_distribution(A: Observable, B: Observable, t1: float, t2: float, channel, rho0: DensityMatrix):
    """Joint outcome distribution of the two-point-measurement protocol.

    Returns (a_values, b_values, joint) where joint[i, j] is the probability
    of outcome a_i at t1 followed by b_j at t2. The update after the first
    measurement is the Lueders projection alpha rho alpha / Tr(alpha rho);
    for rank-1 projectors the conditional probabilities reduce to
    Tr[beta phi*(alpha)]. Outcomes whose first-measurement marginal is below
    1e-12 contribute zero rows and are skipped.
    """
    if not (A.dim == B.dim == channel.dim == rho0.dim):
        raise ValueError("A, B, channel and state must share one dimension")
    if not t2 > t1:
        raise ValueError(f"the protocol requires t2 > t1, got t1={t1!r}, t2={t2!r}")
    rho_t1 = channel.propagate_state(rho0.matrix, t1)
    a_values = np.array(A.eigenvalues)
    b_values = np.array(B.eigenvalues)
    joint = np.zeros((len(a_values), len(b_values)))
    for i, alpha in enumerate(A.projectors):
        branch = alpha @ rho_t1 @ alpha
        marginal = branch.trace().real
        if marginal <= MARGINAL_TOL:
            continue
        evolved = channel.propagate_state(branch / marginal, t2 - t1)
        conditional = np.array([np.trace(beta @ evolved).real for beta in B.projectors])
        if abs(conditional.sum() - 1.0) > 1e-10:
            raise ArithmeticError(f"conditional distribution sums to {conditional.sum():.15g}")
        joint[i] = marginal * np.clip(conditional, 0.0, 1.0)
    return a_values, b_values, joint


def tpm_correlator(A: Observable, B: Observable, t1: float, t2: float, channel, rho0: DensityMatrix) -> float:
    """Correlator of the two-point-measurement protocol: E[a * b].

    Accepts either a unitary family or the fixed-Kraus hook as the channel;
    t2 must be strictly later than t1.
    """
    a_values, b_values, joint = tpm_joint_distribution(A, B, t1, t2, channel, rho0)
    return float(a_values @ joint @ b_values)


def lambda_operator(projector, rho0: DensityMatrix, t1: float, channel) -> LambdaReport:
    """Conditional operator the Heisenberg form assigns to one t1 outcome.

    For the outcome projector alpha and evolved state rho_t1, this is
    {alpha, rho_t1} / (2 Tr(alpha rho_t1)) — unit trace and Hermitian, but
    with negative eigenvalues whenever alpha and rho_t1 fail to commute badly
    enough. When they commute and alpha is rank one, it equals alpha itself.
    """
    alpha = _as_square_complex(projector)
    if np.max(np.abs(alpha - alpha.conj().T)) > 1e-10 or np.max(np.abs(alpha @ alpha - alpha)) > 1e-10:
        raise ValueError("projector must be Hermitian and idempotent")
    if alpha.shape[0] != rho0.dim or channel.dim != rho0.dim:
        raise ValueError("projector, state and channel must share one dimension")
    rho_t1 = channel.propagate_state(rho0.matrix, t1)
    denom = np.trace(alpha @ rho_t1).real
    if denom <= MARGINAL_TOL:
        raise ValueError(f"unconditioned outcome: Tr(alpha rho_t1) = {denom:.3e}")
    lam = (alpha @ rho_t1 + rho_t1 @ alpha) / (2.0 * denom)
    lam = (lam + lam.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(lam)
    min_eig = float(eigs[0])
    return LambdaReport(
        matrix=_readonly(lam),
        min_eigenvalue=min_eig,
        trace=float(lam.trace().real),
        physical=min_eig >= -1e-10,
    )


def prepare_eigenstate(op: TwoTimeOperator, k: int) -> DensityMatrix:
    """State supported on the k-th distinct eigenvalue of the realized operator.

    Indexing follows the ascending spectrum. A degenerate eigenvalue yields
    the maximally mixed state on its eigenspace, which is basis independent
    and leaves the realized operator an exact fixed point of its dephasing,
    so the operator's irreality vanishes in the prepared state.
    """
    obs = realize(op)
    spectrum = obs.spectrum
    if not 0 <= k < len(spectrum):
        raise IndexError(f"eigenvalue index {k} out of range for {len(spectrum)} distinct eigenvalues")
    _, proj = spectrum[k]
    rank = int(round(proj.trace().real))
    return DensityMatrix(proj / rank)


@dataclass(frozen=True)
class CorrelatorInstance:
    """A complete (A, B, times, channel, preparation) correlator scenario."""

    A: Observable
    B: Observable
    t1: float
    t2: float
    channel: ChannelFamily
    rho0: DensityMatrix


def qutrit_gap_fixture() -> CorrelatorInstance:
    """Three-level instance where the two correlator routes disagree.

    A is the diagonal quantity diag(1, 0, -1), B the spin-1 x component,
    the evolution is trivial (H = 0) and the preparation is the coherent
    superposition (|0> + |1>)/sqrt(2). The protocol correlator vanishes (B
    has zero diagonal in A's eigenbasis), while Tr(C12 rho0) = 1/(2 sqrt(2)).
    """
    a = Observable(np.diag([1.0, 0.0, -1.0]).astype(complex))
    sx1 = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / math.sqrt(2.0)
    b = Observable(sx1)
    channel = ChannelFamily(np.zeros((3, 3), dtype=complex))
    rho0 = DensityMatrix.from_ket([1.0, 1.0, 0.0])
    return CorrelatorInstance(A=a, B=b, t1=0.0, t2=1.0, channel=channel, rho0=rho0)
