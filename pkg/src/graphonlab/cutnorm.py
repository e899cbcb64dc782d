"""Certified cut-norm brackets.

Convention: ||K||_cut = sup |f^* K g| over functions with sup-norm at most
one; the maximum of a bilinear form over the box is attained at +-1
vertices, so exact computation enumerates sign vectors. For one fixed g the
best f is sign(KDg) entrywise, which reduces the enumeration to one side.
The S,T subset convention is deliberately not implemented.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Kernel, weighted_norm
from .errors import DimensionMismatchError, TooLargeError
from .spectral import decompose, spectral_radius

DEFAULT_EXACT_LIMIT = 22
DEFAULT_RESTARTS = 32
_CHUNK_BITS = 16  # sign vectors are enumerated in chunks of 2^16


@dataclass(frozen=True)
class CutNormEstimate:
    """A bracket lower <= ||K||_cut <= upper with a witness attaining lower."""

    lower: float
    upper: float
    witness_f: np.ndarray
    witness_g: np.ndarray
    method: str  # exact | heuristic+spectral | heuristic+L1

    def __post_init__(self):
        for name in ("witness_f", "witness_g"):
            a = np.asarray(getattr(self, name), dtype=float)
            a.setflags(write=False)
            object.__setattr__(self, name, a)


@dataclass(frozen=True)
class CutNormConfig:
    exact_limit: int = DEFAULT_EXACT_LIMIT
    restarts: int = DEFAULT_RESTARTS
    seed: int = 0


def bilinear_form(f, kernel: Kernel, g) -> float:
    """Weighted bilinear form sum_{x,y} w_x w_y f(x) K(x,y) g(y), signed."""
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape != (kernel.n,) or g.shape != (kernel.n,):
        raise DimensionMismatchError("vector length must match the atom count")
    w = kernel.space.weights
    return float((w * f) @ kernel.values @ (w * g))


def _sign(x: np.ndarray) -> np.ndarray:
    """sign with sign(0) = +1, for deterministic tie-breaking."""
    return np.where(x >= 0.0, 1.0, -1.0)


def _sign_chunk(offset: int, count: int, n: int) -> np.ndarray:
    """Rows offset..offset+count-1 of the +-1 enumeration on n-1 free bits
    (coordinate 0 is pinned to +1 by the g -> -g symmetry)."""
    codes = np.arange(offset, offset + count, dtype=np.int64)
    out = np.empty((count, n))
    out[:, 0] = 1.0
    for bit in range(n - 1):
        out[:, bit + 1] = np.where((codes >> bit) & 1, -1.0, 1.0)
    return out


def cutnorm_exact(kernel: Kernel, max_n: int = DEFAULT_EXACT_LIMIT) -> CutNormEstimate:
    """Exact cut norm by sign-vector enumeration (half the space, by the
    g -> -g symmetry), with the inner vector set to sign(KDg) rowwise."""
    n = kernel.n
    if n > max_n:
        raise TooLargeError(f"n={n} exceeds the exact enumeration limit {max_n}")
    w = kernel.space.weights
    a = kernel.values * np.outer(w, w)  # (Ag)_x = w_x * (KDg)_x
    total = 1 << (n - 1)
    best_val = -1.0
    best_g = None
    chunk = 1 << _CHUNK_BITS
    for offset in range(0, total, chunk):
        count = min(chunk, total - offset)
        gs = _sign_chunk(offset, count, n)
        r = gs @ a.T  # row i holds A @ gs[i]
        vals = np.abs(r).sum(axis=1)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val = float(vals[i])
            best_g = gs[i].copy()
    best_f = _sign(a @ best_g)
    value = float(best_f @ (a @ best_g))
    return CutNormEstimate(
        lower=value, upper=value, witness_f=best_f, witness_g=best_g, method="exact"
    )


def _ascend(a: np.ndarray, g: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Alternating sign ascent from g to a fixed point (value never
    decreases and the domain is finite, so this terminates)."""
    value = -1.0
    f = _sign(a @ g)
    while True:
        f_new = _sign(a @ g)
        g_new = _sign(a @ f_new)
        new_value = float(f_new @ (a @ g_new))
        if new_value <= value + 0.0:
            return f, g, value
        f, g, value = f_new, g_new, new_value


def cutnorm_heuristic(
    kernel: Kernel, restarts: int = DEFAULT_RESTARTS, seed: int = 0
) -> CutNormEstimate:
    """Alternating-ascent lower bound with a spectral/L1 upper bound.

    Restart streams are split from the seed by restart index, so the result
    does not depend on execution order or thread count.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    n = kernel.n
    w = kernel.space.weights
    a = kernel.values * np.outer(w, w)
    best_val, best_f, best_g = -1.0, np.ones(n), np.ones(n)
    children = np.random.SeedSequence(seed).spawn(restarts)
    for child in children:
        rng = np.random.default_rng(child)
        g0 = rng.integers(0, 2, size=n) * 2.0 - 1.0
        f, g, value = _ascend(a, g0)
        if value > best_val:
            best_val, best_f, best_g = value, f, g
    rad = spectral_radius(decompose(kernel))
    l1 = weighted_norm(kernel, "L1")
    method = "heuristic+spectral" if rad <= l1 else "heuristic+L1"
    upper = max(min(rad, l1), best_val)  # float noise must not invert the bracket
    return CutNormEstimate(
        lower=best_val, upper=upper, witness_f=best_f, witness_g=best_g, method=method
    )


def cutnorm_bracket(kernel: Kernel, config: CutNormConfig | None = None) -> CutNormEstimate:
    """Exact when the space is small enough, heuristic bracket otherwise."""
    config = config or CutNormConfig()
    if kernel.n <= config.exact_limit:
        return cutnorm_exact(kernel, max_n=config.exact_limit)
    return cutnorm_heuristic(kernel, restarts=config.restarts, seed=config.seed)
