"""Symmetric tridiagonal radial Hamiltonian and its lowest eigenpairs.

Eigenvalues come from Sturm-sequence bisection, eigenvectors from inverse
iteration at the converged shift.  A dense diagonalization is deliberately
not used here; the test-suite keeps it as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.linalg import LinAlgError, solve_banded

from .errors import ContractError, NumericalFailure
from .grid import RadialGrid, WaveFunction
from .potentials import PotentialOnGrid

__all__ = [
    "TridiagonalHamiltonian",
    "EigenPair",
    "assemble_hamiltonian",
    "sturm_count",
    "bisect_eigenvalues",
    "lowest_eigenpairs",
    "count_nodes",
    "residual_norm",
    "residual_bound",
]

EPS = np.finfo(float).eps
# Eigenvalues closer than this are treated as an unresolvable cluster.
CLUSTER_GAP = 1e-14
NODE_DEADBAND = 1e-12
MAX_INVERSE_ITERATIONS = 8


@dataclass(frozen=True)
class TridiagonalHamiltonian:
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        diag = np.ascontiguousarray(self.diag, dtype=float)
        offdiag = np.ascontiguousarray(self.offdiag, dtype=float)
        if diag.ndim != 1 or offdiag.shape != (max(diag.size - 1, 0),):
            raise ContractError(
                f"inconsistent tridiagonal shapes {diag.shape} and {offdiag.shape}"
            )
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)

    @property
    def n(self) -> int:
        return self.diag.size

    def matvec(self, x: np.ndarray) -> np.ndarray:
        y = self.diag * x
        y[:-1] += self.offdiag * x[1:]
        y[1:] += self.offdiag * x[:-1]
        return y

    def inf_norm(self) -> float:
        row = np.abs(self.diag).copy()
        row[:-1] += np.abs(self.offdiag)
        row[1:] += np.abs(self.offdiag)
        return float(row.max())

    def gershgorin_bounds(self) -> tuple[float, float]:
        radius = np.zeros(self.n)
        radius[:-1] += np.abs(self.offdiag)
        radius[1:] += np.abs(self.offdiag)
        return float(np.min(self.diag - radius)), float(np.max(self.diag + radius))

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


@dataclass(frozen=True)
class EigenPair:
    energy: float
    phi: WaveFunction
    nodes: int
    residual: float


def assemble_hamiltonian(
    grid: RadialGrid, total_potential: PotentialOnGrid | np.ndarray, kinetic_coefficient: float = 0.5
) -> TridiagonalHamiltonian:
    """Three-point discretization of -c d^2/dr^2 + V with phi(0) = phi(r_max) = 0."""
    v = total_potential.values if isinstance(total_potential, PotentialOnGrid) else total_potential
    v = grid.check(v)
    t = kinetic_coefficient / grid.h**2
    return TridiagonalHamiltonian(2.0 * t + v, np.full(grid.n - 1, -t))


@njit(cache=True)
def _sturm_count(diag, off2, sigma, pivmin):
    # LDL^T pivots of (T - sigma I); negative pivots count eigenvalues below sigma.
    count = 0
    q = diag[0] - sigma
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, diag.size):
        q = diag[i] - sigma - off2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


@njit(cache=True)
def _bisect(diag, off2, k, lower, upper, pivmin):
    eps = 2.220446049250313e-16
    out = np.empty(k)
    for i in range(k):
        a = lower if i == 0 else out[i - 1]
        b = upper
        # invariant: count(a) <= i < count(b)
        for _ in range(2200):
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if b - a <= 2.0 * eps * max(abs(a), abs(b)):
                break
            if _sturm_count(diag, off2, mid, pivmin) <= i:
                a = mid
            else:
                b = mid
        out[i] = 0.5 * (a + b)
    return out


def _pivmin(H: TridiagonalHamiltonian) -> float:
    off2max = float(np.max(H.offdiag**2)) if H.n > 1 else 0.0
    return np.finfo(float).tiny * max(1.0, off2max)


def sturm_count(H: TridiagonalHamiltonian, sigma: float) -> int:
    """Number of eigenvalues of ``H`` strictly below ``sigma``."""
    return int(_sturm_count(H.diag, H.offdiag**2, float(sigma), _pivmin(H)))


def bisect_eigenvalues(H: TridiagonalHamiltonian, k: int) -> np.ndarray:
    """The ``k`` algebraically smallest eigenvalues, ascending, by bisection."""
    if not 1 <= k <= H.n:
        raise ContractError(f"k must satisfy 1 <= k <= {H.n}, got {k}")
    lo, hi = H.gershgorin_bounds()
    pad = EPS * max(abs(lo), abs(hi), 1.0) * 4
    return _bisect(H.diag, H.offdiag**2, int(k), lo - pad, hi + pad, _pivmin(H))


def residual_norm(H: TridiagonalHamiltonian, pair_or_energy, phi=None) -> float:
    """||H phi - E phi||_2 / ||phi||_2."""
    if isinstance(pair_or_energy, EigenPair):
        energy, x = pair_or_energy.energy, pair_or_energy.phi.values
    else:
        energy = pair_or_energy
        x = phi.values if isinstance(phi, WaveFunction) else np.asarray(phi, dtype=float)
    r = H.matvec(x) - energy * x
    return float(np.linalg.norm(r) / np.linalg.norm(x))


def residual_bound(H: TridiagonalHamiltonian, energy: float) -> float:
    """Residual accepted for a computed eigenpair.

    The nominal target is 1e-10 |E| + 1e-12, widened by the backward-error
    floor of a few ulps of ||H||, which on stiff grids (large 1/h^2) exceeds
    the nominal target for shallow levels.
    """
    return 1e-10 * abs(energy) + 1e-12 + 32.0 * EPS * H.inf_norm()


@njit(cache=True)
def _twisted_vector(diag, off, shift, pivmin):
    # Solve (T - shift) z = gamma_k e_k through a twisted factorization: top-down
    # LDL^T pivots meet bottom-up UDU^T pivots at the index k minimizing |gamma_k|.
    # The two recurrences run outward from k, so decaying tails are computed by
    # stable backward substitution and keep componentwise accuracy.
    n = diag.size
    dp = np.empty(n)
    dm = np.empty(n)
    dp[0] = diag[0] - shift
    if abs(dp[0]) < pivmin:
        dp[0] = -pivmin
    for i in range(1, n):
        dp[i] = diag[i] - shift - off[i - 1] * off[i - 1] / dp[i - 1]
        if abs(dp[i]) < pivmin:
            dp[i] = -pivmin
    dm[n - 1] = diag[n - 1] - shift
    if abs(dm[n - 1]) < pivmin:
        dm[n - 1] = -pivmin
    for i in range(n - 2, -1, -1):
        dm[i] = diag[i] - shift - off[i] * off[i] / dm[i + 1]
        if abs(dm[i]) < pivmin:
            dm[i] = -pivmin
    k = 0
    best = np.inf
    for i in range(n):
        gamma = abs(dp[i] + dm[i] - (diag[i] - shift))
        if gamma < best:
            best = gamma
            k = i
    z = np.zeros(n)
    z[k] = 1.0
    for i in range(k - 1, -1, -1):
        z[i] = -(off[i] / dp[i]) * z[i + 1]
        if abs(z[i]) > 1e150:
            z[i:] *= 1e-150
    for i in range(k + 1, n):
        z[i] = -(off[i - 1] / dm[i]) * z[i - 1]
    return z


def _eigenvector(H: TridiagonalHamiltonian, shift: float, index: int) -> tuple[float, np.ndarray, float]:
    """Eigenvector at a bisection shift; Rayleigh-quotient energy and residual.

    The twisted-factorization vector is one inverse-iteration step from the
    best unit start vector.  If its residual is not acceptable, further
    inverse-iteration sweeps with a pivoted banded solve follow.
    """
    x = _twisted_vector(H.diag, H.offdiag, shift, _pivmin(H))
    x /= np.linalg.norm(x)
    energy = float(x @ H.matvec(x))
    res = residual_norm(H, energy, x)
    if res <= residual_bound(H, energy):
        return energy, x, res

    bands = np.zeros((3, H.n))
    bands[0, 1:] = H.offdiag
    bands[2, :-1] = H.offdiag
    sigma = shift
    for _ in range(MAX_INVERSE_ITERATIONS):
        bands[1] = H.diag - sigma
        try:
            y = solve_banded((1, 1), bands, x, check_finite=False)
        except LinAlgError:
            # shift hit an eigenvalue exactly; nudge it off
            sigma = shift + 4 * EPS * H.inf_norm()
            continue
        ynorm = np.linalg.norm(y)
        if not np.isfinite(ynorm) or ynorm == 0.0:
            sigma = shift + 4 * EPS * H.inf_norm()
            continue
        x = y / ynorm
        energy = float(x @ H.matvec(x))
        res = residual_norm(H, energy, x)
        if res <= residual_bound(H, energy):
            return energy, x, res
    raise NumericalFailure(
        f"inverse iteration stagnated for eigenvalue index {index} "
        f"(shift {shift:.17g}, residual {res:.3e})"
    )


def count_nodes(phi) -> int:
    """Sign changes of ``phi`` ignoring entries below 1e-12 * max|phi|."""
    values = phi.values if isinstance(phi, WaveFunction) else np.asarray(phi, dtype=float)
    scale = np.max(np.abs(values))
    if scale == 0.0:
        raise ContractError("cannot count nodes of a zero function")
    signs = np.sign(values[np.abs(values) > NODE_DEADBAND * scale])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def _fix_sign(x: np.ndarray) -> np.ndarray:
    scale = np.max(np.abs(x))
    first = x[np.abs(x) > NODE_DEADBAND * scale][0]
    return -x if first < 0 else x


def lowest_eigenpairs(H: TridiagonalHamiltonian, k: int, grid: RadialGrid) -> list[EigenPair]:
    """The ``k`` lowest eigenpairs of ``H``, normalized on ``grid``.

    Each eigenvector is scaled so that 4 pi * integral |phi|^2 dr = 1 and its
    first significant lobe is positive.  Raises NumericalFailure for
    clustered eigenvalues or when inverse iteration does not converge.
    """
    if H.n != grid.n:
        raise ContractError(f"Hamiltonian size {H.n} does not match grid n = {grid.n}")
    shifts = bisect_eigenvalues(H, k)
    gaps = np.diff(shifts)
    if np.any(gaps < CLUSTER_GAP):
        i = int(np.argmin(gaps))
        raise NumericalFailure(
            f"eigenvalues {i} and {i + 1} are separated by {gaps[i]:.3e} Hartree; "
            "cannot resolve eigenvectors"
        )
    pairs = []
    for i, shift in enumerate(shifts):
        energy, x, res = _eigenvector(H, float(shift), i)
        phi = WaveFunction(_fix_sign(x), grid).normalize()
        pairs.append(EigenPair(energy, phi, count_nodes(phi), res))
    energies = [p.energy for p in pairs]
    if any(b <= a for a, b in zip(energies, energies[1:])):
        raise NumericalFailure(f"eigenvalues not strictly increasing: {energies}")
    return pairs
