"""The semigroup e^{w*Laplacian} on grids, two independent ways.

apply_fourier is the production path (diagonal in the discrete Fourier
basis).  apply_direct is the quadrature oracle: the plain sum

    (e^{w*Laplacian} phi)(x) ~ h^n sum_y G_w(x - y) phi(y)

with the kernel evaluated exactly, no periodic extension.  The kernel
factorizes per axis, so the oracle is applied as one Toeplitz matrix per
axis; that reorders no terms across axes and keeps the cost at
O(n N^{n+1}) instead of O(N^{2n}).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import GridFunction
from .hermite import gaussian_kernel_point
from .multiindex import MultiIndex, zero

# Work guard for the quadrature oracle: it exists for cross-validation, not
# production.  points <= 512 per axis and at most 2^22 samples total.
_ORACLE_MAX_POINTS = 512
_ORACLE_MAX_SAMPLES = 1 << 22


@dataclass(frozen=True)
class ComplexParam:
    """Semigroup time w with re w > 0; theta = arg w lies in (-pi/2, pi/2)."""

    omega: complex

    def __post_init__(self):
        w = complex(self.omega)
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            raise ValueError("omega must be finite")
        if w.real <= 0.0:
            raise ValueError(f"re omega must be positive, got {w}")
        object.__setattr__(self, "omega", w)

    @property
    def modulus(self) -> float:
        return abs(self.omega)

    @property
    def theta(self) -> float:
        return math.atan2(self.omega.imag, self.omega.real)

    @property
    def direction(self) -> complex:
        """e^{i theta} = omega / |omega|."""
        return self.omega / abs(self.omega)


def as_omega(value) -> complex:
    return value.omega if isinstance(value, ComplexParam) else complex(value)


def kernel(omega, x) -> complex:
    """G_w(x) = (4 pi w)^{-n/2} exp(-|x|^2/(4w)), principal branch."""
    return gaussian_kernel_point(as_omega(omega), x)


def _axis_gaussian(omega: complex, t: np.ndarray) -> np.ndarray:
    """One Cartesian factor of G_w: (4 pi w)^{-1/2} exp(-t^2/(4w)).

    The prefactor angle is -theta/2 with theta in (-pi/2, pi/2), so taking
    the n-fold product reproduces the principal (4 pi w)^{-n/2} exactly.
    """
    theta = math.atan2(omega.imag, omega.real)
    pref = np.exp(-0.5 * (math.log(4.0 * math.pi * abs(omega)) + 1j * theta))
    return pref * np.exp(-np.square(t) / (4.0 * omega))


def kernel_grid(omega, dim: int, points: int, half_width: float) -> GridFunction:
    """Samples of G_w on the standard grid."""
    w = as_omega(omega)
    if w == 0:
        raise ValueError("omega must be nonzero")
    template = GridFunction(dim, points, half_width, np.zeros((points,) * dim))
    axis_factor = _axis_gaussian(w, template.axis())
    samples = axis_factor
    for _ in range(dim - 1):
        samples = np.multiply.outer(samples, axis_factor)
    return template.with_samples(samples)


def weighted_kernel_grid(beta: MultiIndex, omega, points: int,
                         half_width: float) -> GridFunction:
    """Samples of x^beta G_w (kernel of one convolution term)."""
    w = as_omega(omega)
    template = GridFunction(beta.dim, points, half_width,
                            np.zeros((points,) * beta.dim))
    x = template.axis()
    base = _axis_gaussian(w, x)
    samples = None
    for b in beta:
        factor = base * x**b if b else base
        samples = factor if samples is None else np.multiply.outer(samples, factor)
    return template.with_samples(samples)


def frequencies(points: int, half_width: float) -> np.ndarray:
    """Discrete frequencies xi_k = pi k / L, k in {-N/2, ..., N/2 - 1}, FFT order."""
    spacing = 2.0 * half_width / points
    return 2.0 * math.pi * np.fft.fftfreq(points, d=spacing)


def _xi_squared(phi: GridFunction) -> np.ndarray:
    xi = frequencies(phi.points, phi.half_width)
    total = np.zeros((phi.points,) * phi.dim)
    for axis in range(phi.dim):
        shape = [1] * phi.dim
        shape[axis] = phi.points
        total = total + np.square(xi).reshape(shape)
    return total


def apply_fourier(phi: GridFunction, omega) -> GridFunction:
    """e^{w*Laplacian} phi as the Fourier multiplier exp(-w |xi|^2).

    Accepts any re w >= 0 (w = 0 is the identity); linear in phi.
    """
    w = as_omega(omega)
    if w.real < 0.0:
        raise ValueError(f"re omega must be >= 0, got {w}")
    if w == 0:
        return phi
    spectrum = np.fft.fftn(phi.samples)
    spectrum *= np.exp(-w * _xi_squared(phi))
    return phi.with_samples(np.fft.ifftn(spectrum))


def spectral_derivative(phi: GridFunction, delta: MultiIndex) -> GridFunction:
    """d^delta phi via the multiplier prod_j (i xi_j)^{delta_j}."""
    if delta.dim != phi.dim:
        raise ValueError(f"derivative index dim {delta.dim} != grid dim {phi.dim}")
    if delta.order == 0:
        return phi
    xi = frequencies(phi.points, phi.half_width)
    spectrum = np.fft.fftn(phi.samples)
    for axis, d in enumerate(delta):
        if d:
            shape = [1] * phi.dim
            shape[axis] = phi.points
            spectrum = spectrum * (1j * xi).reshape(shape) ** d
    return phi.with_samples(np.fft.ifftn(spectrum))


def _oracle_guard(phi: GridFunction) -> None:
    if phi.points > _ORACLE_MAX_POINTS or phi.points**phi.dim > _ORACLE_MAX_SAMPLES:
        raise ValueError(
            "quadrature oracle limited to <= 512 points per axis and 2^22 samples"
        )


def convolve_weighted_kernel(beta: MultiIndex, omega, phi: GridFunction) -> GridFunction:
    """Quadrature convolution (x^beta G_w) * phi, kernel exact, no DFT.

    Computes h^n sum_y prod_j [(x_j - y_j)^{beta_j} g_w(x_j - y_j)] phi(y)
    by applying the 1-d Toeplitz matrix of each axis factor in turn.
    """
    w = as_omega(omega)
    if w.real <= 0.0:
        raise ValueError(f"re omega must be positive, got {w}")
    if beta.dim != phi.dim:
        raise ValueError(f"weight dim {beta.dim} != grid dim {phi.dim}")
    _oracle_guard(phi)
    x = phi.axis()
    diff = x[:, None] - x[None, :]
    base = _axis_gaussian(w, diff)
    out = phi.samples
    for axis, b in enumerate(beta):
        matrix = base * diff**b if b else base
        out = np.moveaxis(np.tensordot(matrix, out, axes=([1], [axis])), 0, axis)
    return phi.with_samples(phi.cell_volume * out)


def apply_direct(phi: GridFunction, omega) -> GridFunction:
    """Quadrature oracle for e^{w*Laplacian} phi (see convolve_weighted_kernel)."""
    return convolve_weighted_kernel(zero(phi.dim), omega, phi)


def apply_direct_naive(phi: GridFunction, omega) -> GridFunction:
    """Literal O(N^{2n}) double loop over grid points; tiny grids only.

    Exists to pin down that the Toeplitz restructuring changes nothing.
    """
    w = as_omega(omega)
    if w.real <= 0.0:
        raise ValueError(f"re omega must be positive, got {w}")
    if phi.points**phi.dim > 4096:
        raise ValueError("naive oracle restricted to <= 4096 samples")
    mesh = phi.meshgrid()
    coords = np.stack([m.ravel() for m in mesh], axis=1)
    values = phi.samples.ravel()
    out = np.empty(values.size, dtype=np.complex128)
    for i, xi_point in enumerate(coords):
        diffs = xi_point[None, :] - coords
        log_like = -np.sum(np.square(diffs), axis=1) / (4.0 * w)
        theta = math.atan2(w.imag, w.real)
        pref = np.exp(-0.5 * phi.dim * (math.log(4.0 * math.pi * abs(w)) + 1j * theta))
        out[i] = phi.cell_volume * np.sum(pref * np.exp(log_like) * values)
    return phi.with_samples(out.reshape(phi.samples.shape))
