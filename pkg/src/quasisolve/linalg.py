"""Small dense linear solves by Gaussian elimination with partial pivoting."""

from __future__ import annotations

import numpy as np

from .errors import SingularSystem

PIVOT_TOL = 1e-12


def gauss_solve(A, b, pivot_tol: float = PIVOT_TOL, warnings=()) -> np.ndarray:
    """Solve ``A x = b`` for square ``A``.

    Raises :class:`SingularSystem` when a pivot falls below
    ``pivot_tol * max|A|``.
    """
    a = np.array(A, dtype=float)
    x = np.array(b, dtype=float).reshape(-1)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if x.shape[0] != n:
        raise ValueError(f"right-hand side length {x.shape[0]} does not match matrix size {n}")
    if n == 0:
        return x
    scale = np.abs(a).max()
    threshold = pivot_tol * scale if scale > 0 else pivot_tol
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[p, k]) <= threshold:
            raise SingularSystem(f"pivot {abs(a[p, k]):.3g} in column {k} is below "
                                 f"{threshold:.3g}", warnings)
        if p != k:
            a[[k, p]] = a[[p, k]]
            x[[k, p]] = x[[p, k]]
        f = a[k + 1:, k] / a[k, k]
        a[k + 1:, k:] -= np.outer(f, a[k, k:])
        x[k + 1:] -= f * x[k]
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x
