"""One-parameter evolution families generated by time-independent Hamiltonians.

A :class:`ChannelFamily` provides both directions of a unitary family
U_t = exp(-i H t) (hbar = 1): the state map rho -> U_t rho U_t^dag and the
observable map A -> U_t^dag A U_t. For unitary families the adjoint of the
state map at time t equals the observable map at -t, which is what the
two-time correlator machinery in :mod:`twotime.correlators` relies on; those
operations therefore accept unitary families only.

:class:`KrausChannel` is a deliberately minimal non-unitary hook for the
sequential-measurement simulator: a fixed Kraus map applied once per
propagation segment, with no time parameterization.
"""

import numpy as np

from .qcore import DensityMatrix, Observable, _as_square_complex, _readonly, hermiticity_defect


class ChannelFamily:
    """Unitary evolution family generated by a Hermitian Hamiltonian.

    U_t is computed from the spectral decomposition of H, which is exact to
    machine precision at the intended dimensions (d <= ~8). For spin systems
    driven at a Larmor frequency the natural time variable is the
    dimensionless phase tau = omega * t; build the family with H = S_h
    (omega = 1) and pass tau as the time.
    """

    kind = "unitary"
    unitary = True

    def __init__(self, hamiltonian):
        h = _as_square_complex(hamiltonian)
        defect = hermiticity_defect(h)
        if defect > 1e-10:
            raise ValueError(f"hamiltonian is not Hermitian: max |H - H^dag| = {defect:.3e}")
        h = (h + h.conj().T) / 2.0
        self._hamiltonian = _readonly(h)
        self._energies, self._modes = np.linalg.eigh(h)

    @property
    def hamiltonian(self) -> np.ndarray:
        return self._hamiltonian

    @property
    def dim(self) -> int:
        return self._hamiltonian.shape[0]

    def unitary_at(self, t: float) -> np.ndarray:
        phases = np.exp(-1j * self._energies * t)
        return (self._modes * phases) @ self._modes.conj().T

    def propagate_state(self, matrix: np.ndarray, t: float) -> np.ndarray:
        """Schrodinger direction: U_t M U_t^dag."""
        u = self.unitary_at(t)
        return u @ matrix @ u.conj().T

    def propagate_observable(self, matrix: np.ndarray, t: float) -> np.ndarray:
        """Heisenberg direction: U_t^dag M U_t."""
        u = self.unitary_at(t)
        return u.conj().T @ matrix @ u


class KrausChannel:
    """Fixed single-step Kraus map sum_k K_k M K_k^dag.

    The map is applied once per propagation segment regardless of the
    duration argument; it exists only so the sequential-measurement protocol
    can be driven with non-unitary noise. It carries no Heisenberg direction
    and is rejected by the two-time operator machinery.
    """

    kind = "kraus"
    unitary = False

    def __init__(self, kraus_ops):
        ops = [_as_square_complex(k) for k in kraus_ops]
        if not ops:
            raise ValueError("at least one Kraus operator is required")
        d = ops[0].shape[0]
        if any(k.shape != (d, d) for k in ops):
            raise ValueError("Kraus operators must share one square shape")
        total = sum(k.conj().T @ k for k in ops)
        defect = np.max(np.abs(total - np.eye(d)))
        if defect > 1e-10:
            raise ValueError(f"Kraus operators are not trace preserving: |sum K^dag K - 1| = {defect:.3e}")
        self._ops = [_readonly(k.copy()) for k in ops]

    @property
    def kraus_ops(self):
        return list(self._ops)

    @property
    def dim(self) -> int:
        return self._ops[0].shape[0]

    def propagate_state(self, matrix: np.ndarray, t: float) -> np.ndarray:
        # t is ignored: one application per segment.
        out = np.zeros_like(np.asarray(matrix, dtype=complex))
        for k in self._ops:
            out += k @ matrix @ k.conj().T
        return out


def evolve_state(channel, rho: DensityMatrix, t: float) -> DensityMatrix:
    """Evolve a state forward: the Schrodinger-picture map of the channel."""
    if channel.dim != rho.dim:
        raise ValueError(f"dimension mismatch: channel dim {channel.dim}, state dim {rho.dim}")
    return DensityMatrix(channel.propagate_state(rho.matrix, t))


def evolve_observable(channel, obs: Observable, t: float) -> Observable:
    """Heisenberg-picture evolution U_t^dag A U_t; preserves the spectrum.

    Requires a unitary family; the Kraus hook has no observable direction.
    """
    if not getattr(channel, "unitary", False):
        raise TypeError("Heisenberg evolution requires a unitary channel family")
    if channel.dim != obs.dim:
        raise ValueError(f"dimension mismatch: channel dim {channel.dim}, observable dim {obs.dim}")
    u = channel.unitary_at(t)
    udag = u.conj().T
    matrix = udag @ obs.matrix @ u
    spectrum = [(val, (udag @ proj @ u + (udag @ proj @ u).conj().T) / 2.0) for val, proj in obs.spectrum]
    return Observable._from_parts(matrix, spectrum, obs.group_tol)
