"""Linear operators used by the problem zoo: dense matrices and periodic blur.

Operators act on flat vectors (images row-major flattened) and expose an
exact adjoint; ``fingerprint`` feeds the reference-minimum cache key.
"""

from __future__ import annotations

import numpy as np
from scipy import ndimage

from .core import Vector


class LinearOperator:
    """Matrix-free operator with apply/adjoint and (rows, cols) shape."""

    shape: tuple[int, int]

    def apply(self, x: Vector) -> Vector:
        raise NotImplementedError

    def adjoint(self, y: Vector) -> Vector:
        raise NotImplementedError

    def fingerprint(self) -> bytes:
        raise NotImplementedError


class DenseOperator(LinearOperator):
    def __init__(self, matrix: np.ndarray):
        self.matrix = np.asarray(matrix, dtype=np.float64)
        if self.matrix.ndim != 2:
            raise ValueError("dense operator needs a 2-D matrix")
        self.shape = self.matrix.shape

    def apply(self, x: Vector) -> Vector:
        return self.matrix @ x

    def adjoint(self, y: Vector) -> Vector:
        return self.matrix.T @ y

    def fingerprint(self) -> bytes:
        return b"dense" + self.matrix.tobytes()


class BlurOperator(LinearOperator):
    """Periodic (circular) 2-D convolution with a small odd-sized kernel.

    The adjoint is correlation with the same kernel, i.e. convolution with the
    kernel flipped in both axes.
    """

    def __init__(self, kernel: np.ndarray, rows: int, cols: int):
        kernel = np.asarray(kernel, dtype=np.float64)
        if kernel.ndim != 2:
            raise ValueError("blur kernel must be 2-D")
        if kernel.shape[0] % 2 == 0 or kernel.shape[1] % 2 == 0:
            raise ValueError("blur kernel dimensions must be odd")
        if kernel.shape[0] > rows or kernel.shape[1] > cols:
            raise ValueError("blur kernel larger than the image")
        self.kernel = kernel
        self.rows = rows
        self.cols = cols
        n = rows * cols
        self.shape = (n, n)

    def _image(self, x: Vector) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.size != self.rows * self.cols:
            raise ValueError("vector length does not match the image size")
        return x.reshape(self.rows, self.cols)

    def apply(self, x: Vector) -> Vector:
        return ndimage.convolve(self._image(x), self.kernel, mode="wrap").ravel()

    def adjoint(self, y: Vector) -> Vector:
        return ndimage.correlate(self._image(y), self.kernel, mode="wrap").ravel()

    def fingerprint(self) -> bytes:
        head = f"blur:{self.rows}x{self.cols}:".encode()
        return head + self.kernel.tobytes()


def make_blur(kernel: np.ndarray, rows: int, cols: int) -> BlurOperator:
    return BlurOperator(kernel, rows, cols)


def uniform_kernel(size: int) -> np.ndarray:
    """size x size averaging kernel (sums to one)."""
    if size % 2 == 0 or size < 1:
        raise ValueError("kernel size must be odd and positive")
    return np.full((size, size), 1.0 / (size * size))


def gaussian_kernel(size: int, sigma: float) -> np.ndarray:
    """Truncated, normalized Gaussian kernel on a size x size grid."""
    if size % 2 == 0 or size < 1:
        raise ValueError("kernel size must be odd and positive")
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    half = size // 2
    offs = np.arange(-half, half + 1, dtype=np.float64)
    prof = np.exp(-0.5 * (offs / sigma) ** 2)
    k = np.outer(prof, prof)
    return k / k.sum()
