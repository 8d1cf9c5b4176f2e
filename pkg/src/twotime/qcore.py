"""States, observables, entropies, and Bloch-sphere geometry for small Hilbert spaces.

Everything here is dense complex linear algebra intended for dimensions up to
about 8. All entropies are in nats. hbar = 1 throughout; spin-1/2 component
observables carry an explicit factor 1/2 relative to the Pauli matrices.
"""

import math

import numpy as np

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_FLOOR = -1e-10
GROUP_TOL_DEFAULT = 1e-9
SUPPORT_TOL = 1e-12
SUPPORT_WEIGHT_TOL = 1e-10

LN2 = math.log(2.0)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr

SIGMA_X = _readonly(np.array([[0, 1], [1, 0]], dtype=complex))
SIGMA_Y = _readonly(np.array([[0, -1j], [1j, 0]], dtype=complex))
SIGMA_Z = _readonly(np.array([[1, 0], [0, -1]], dtype=complex))
SIGMA = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def _as_square_complex(matrix) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def hermiticity_defect(matrix) -> float:
    """Max-norm distance of a square matrix from its own adjoint."""
    m = _as_square_complex(matrix)
    return float(np.max(np.abs(m - m.conj().T)))


class DensityMatrix:
    """A d x d Hermitian, unit-trace, positive-semidefinite matrix.

    Construction validates all three properties (tolerances 1e-12, 1e-12 and
    -1e-10 on the minimum eigenvalue) and the stored matrix is read-only.
    """

    def __init__(self, matrix):
        m = _as_square_complex(matrix)
        defect = hermiticity_defect(m)
        if defect > HERMITICITY_TOL:
            raise ValueError(f"density matrix is not Hermitian: max |M - M^dag| = {defect:.3e}")
        m = (m + m.conj().T) / 2.0
        trace = m.trace()
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace is {trace:.15g}, expected 1")
        eigs = np.linalg.eigvalsh(m)
        if eigs[0] < PSD_FLOOR:
            raise ValueError(f"density matrix is not positive semidefinite: min eigenvalue = {eigs[0]:.3e}")
        self._matrix = _readonly(m)
        self._eigs = _readonly(eigs)

    @classmethod
    def from_ket(cls, ket) -> "DensityMatrix":
        """Pure state |psi><psi| from a (not necessarily normalized) state vector."""
        v = np.asarray(ket, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise ValueError("cannot build a state from the zero vector")
        v = v / norm
        return cls(np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=complex) / dim)

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in ascending order (read-only)."""
        return self._eigs

    def purity(self) -> float:
        return float(np.vdot(self._matrix, self._matrix).real)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, purity={self.purity():.6g})"


def spectral_decompose(matrix, group_tol: float = GROUP_TOL_DEFAULT):
    """Decompose a Hermitian matrix into (eigenvalue, projector) pairs.

    Eigenvalues closer than ``group_tol`` are merged into a single projector,
    so degenerate operators (e.g. multiples of the identity) come out with the
    correct coarse-grained spectrum. Projectors are orthogonal, idempotent and
    sum to the identity; ``sum(eig * proj)`` reconstructs the input.

    Raises ValueError for non-Hermitian input, quoting the defect.
    """
    m = _as_square_complex(matrix)
    defect = hermiticity_defect(m)
    if defect > 1e-10:
        raise ValueError(f"matrix is not Hermitian: max |H - H^dag| = {defect:.3e}")
    eigvals, eigvecs = np.linalg.eigh((m + m.conj().T) / 2.0)
    spectrum = []
    start = 0
    for stop in range(1, len(eigvals) + 1):
        if stop == len(eigvals) or eigvals[stop] - eigvals[stop - 1] > group_tol:
            block = eigvecs[:, start:stop]
            proj = block @ block.conj().T
            proj = (proj + proj.conj().T) / 2.0
            spectrum.append((float(eigvals[start:stop].mean()), _readonly(proj)))
            start = stop
    return spectrum


class Observable:
    """A Hermitian matrix with its grouped spectral decomposition cached.

    ``spectrum`` is a list of (eigenvalue, projector) pairs in ascending
    eigenvalue order; distinct eigenvalues are separated by more than the
    grouping tolerance used at construction.
    """

    def __init__(self, matrix, group_tol: float = GROUP_TOL_DEFAULT):
        m = _as_square_complex(matrix)
        spectrum = spectral_decompose(m, group_tol=group_tol)
        self._matrix = _readonly((m + m.conj().T) / 2.0)
        self._spectrum = spectrum
        self._group_tol = group_tol
        self._validate()

    @classmethod
    def _from_parts(cls, matrix, spectrum, group_tol: float) -> "Observable":
        # Internal constructor for pre-diagonalized operators (e.g. a rotated
        # spectrum under unitary evolution); skips the eigh call but not the
        # consistency checks.
        obj = cls.__new__(cls)
        m = _as_square_complex(matrix)
        obj._matrix = _readonly((m + m.conj().T) / 2.0)
        obj._spectrum = [(float(val), _readonly(np.asarray(proj))) for val, proj in spectrum]
        obj._group_tol = group_tol
        obj._validate()
        return obj

    def _validate(self):
        d = self.dim
        total = np.zeros((d, d), dtype=complex)
        for i, (_, proj) in enumerate(self._spectrum):
            total += proj
            for j, (_, other) in enumerate(self._spectrum):
                target = proj if i == j else 0.0
                if np.max(np.abs(proj @ other - target)) > 1e-10:
                    raise ValueError("projectors are not orthogonal/idempotent")
        if np.max(np.abs(total - np.eye(d))) > 1e-10:
            raise ValueError("projectors do not resolve the identity")
        rebuilt = sum(val * proj for val, proj in self._spectrum)
        if np.max(np.abs(rebuilt - self._matrix)) > 1e-9:
            raise ValueError("spectral decomposition does not reconstruct the matrix")

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    @property
    def spectrum(self):
        return list(self._spectrum)

    @property
    def eigenvalues(self):
        return tuple(val for val, _ in self._spectrum)

    @property
    def projectors(self):
        return tuple(proj for _, proj in self._spectrum)

    @property
    def group_tol(self) -> float:
        return self._group_tol

    def __repr__(self):
        vals = ", ".join(f"{v:.6g}" for v in self.eigenvalues)
        return f"Observable(dim={self.dim}, eigenvalues=[{vals}])"


class BlochVector:
    """Real 3-vector r with ||r|| <= 1 parameterizing a qubit state."""

    def __init__(self, components):
        vec = np.asarray(components, dtype=float)
        if vec.shape != (3,):
            raise ValueError(f"Bloch vector must have 3 real components, got shape {vec.shape}")
        if not np.all(np.isfinite(vec)):
            raise ValueError("Bloch vector components must be finite")
        norm = float(np.linalg.norm(vec))
        if norm > 1.0 + 1e-12:
            raise ValueError(f"Bloch vector norm {norm:.15g} exceeds 1")
        self._vec = _readonly(vec.copy())
        self._norm = norm

    @classmethod
    def from_angles(cls, r: float, theta: float, phi: float) -> "BlochVector":
        st = math.sin(theta)
        return cls((r * st * math.cos(phi), r * st * math.sin(phi), r * math.cos(theta)))

    @property
    def components(self) -> np.ndarray:
        return self._vec

    @property
    def r(self) -> float:
        """Norm of the vector."""
        return self._norm

    @property
    def theta(self) -> float:
        """Polar angle in [0, pi]; 0 for the zero vector."""
        if self._norm == 0.0:
            return 0.0
        return float(math.acos(min(1.0, max(-1.0, self._vec[2] / self._norm))))

    @property
    def phi(self) -> float:
        """Azimuthal angle in [0, 2*pi)."""
        if self._vec[0] == 0.0 and self._vec[1] == 0.0:
            return 0.0
        return float(math.atan2(self._vec[1], self._vec[0]) % (2.0 * math.pi))

    def __repr__(self):
        x, y, z = self._vec
        return f"BlochVector(({x:.6g}, {y:.6g}, {z:.6g}))"


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Entropy -Tr(rho ln rho) in nats; 0*ln(0) is taken as 0.

    Eigenvalues in [-1e-10, 0) are clamped to zero before the log; anything
    more negative is already rejected by the DensityMatrix invariants.
    """
    p = np.maximum(rho.eigenvalues(), 0.0)
    pos = p[p > 0.0]
    return max(float(-(pos * np.log(pos)).sum()), 0.0)


def relative_entropy(rho: DensityMatrix, eta: DensityMatrix) -> float:
    """Relative entropy Tr[rho (ln rho - ln eta)] in nats.

    Returns +inf when the support of rho is not contained in the support of
    eta (an eta-eigenvalue below 1e-12 carrying rho-weight above 1e-10).
    """
    if rho.dim != eta.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {eta.dim}")
    q, basis = np.linalg.eigh(eta.matrix)
    weights = np.einsum("ji,jk,ki->i", basis.conj(), rho.matrix, basis).real
    null = q < SUPPORT_TOL
    if np.any(weights[null] > SUPPORT_WEIGHT_TOL):
        return math.inf
    cross = float((weights[~null] * np.log(q[~null])).sum())
    value = -von_neumann_entropy(rho) - cross
    if value < 0.0:
        if value < -1e-9:
            raise ArithmeticError(f"relative entropy evaluated to {value:.3e} < 0")
        value = 0.0
    return value


def binary_entropy(u: float) -> float:
    """-u ln u - (1-u) ln(1-u) for u in [0, 1], in nats.

    Inputs within 1e-12 outside the unit interval are clamped; anything
    further out is rejected.
    """
    if u < -1e-12 or u > 1.0 + 1e-12:
        raise ValueError(f"binary entropy argument {u!r} outside [0, 1]")
    u = min(max(u, 0.0), 1.0)
    if u == 0.0 or u == 1.0:
        return 0.0
    return -u * math.log(u) - (1.0 - u) * math.log(1.0 - u)


def bloch_to_state(r) -> DensityMatrix:
    """Qubit state (1 + r . sigma) / 2 from a Bloch vector (or 3-sequence)."""
    vec = r if isinstance(r, BlochVector) else BlochVector(r)
    x, y, z = vec.components
    m = 0.5 * (np.eye(2, dtype=complex) + x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z)
    return DensityMatrix(m)


def state_to_bloch(rho: DensityMatrix) -> BlochVector:
    """Bloch vector of a qubit state via r_i = Tr(rho sigma_i)."""
    if rho.dim != 2:
        raise ValueError(f"Bloch extraction requires a qubit state, got dim {rho.dim}")
    comps = [float(np.trace(rho.matrix @ s).real) for s in SIGMA]
    return BlochVector(comps)


def random_bloch_states(r: float, n: int, seed) -> list:
    """n Bloch vectors of fixed norm r with theta ~ U[0, pi], phi ~ U[0, 2*pi).

    Sampling is uniform in the angles (not area-uniform on the sphere). The
    same seed always yields the identical sequence.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"radius {r!r} outside [0, 1]")
    rng = np.random.default_rng(seed)
    thetas = rng.uniform(0.0, math.pi, n)
    phis = rng.uniform(0.0, 2.0 * math.pi, n)
    return [BlochVector.from_angles(r, t, p) for t, p in zip(thetas, phis)]


def random_density_matrix(dim: int, rng: np.random.Generator) -> DensityMatrix:
    """Full-rank random state from a normalized Ginibre matrix G G^dag."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    m /= m.trace().real
    return DensityMatrix((m + m.conj().T) / 2.0)


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian matrix with Gaussian entries."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2.0
