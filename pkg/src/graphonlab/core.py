"""Foundational data model: weighted probability spaces, symmetric kernels,
step functions, template graphs, permutation actions, and weighted norms.

All objects are immutable after construction (arrays are frozen), every
operation is pure, and everything is safe for concurrent reads.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AsymmetricMatrixError,
    DimensionMismatchError,
    EmptyPartError,
    InvalidSpaceError,
    SymmetrizedWarning,
    WeightMismatchError,
)

WEIGHT_SUM_TOL = 1e-12
MIN_ATOM_WEIGHT = 1e-14
# Skew ladder: below SILENT_SKEW we symmetrize quietly (eigen-solver
# round-trip noise), below HARD_SKEW we symmetrize with a warning, above
# it the input is genuinely asymmetric and rejected.
SILENT_SKEW = 1e-12
HARD_SKEW = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DiscreteSpace:
    """A finite probability space: n atoms with strictly positive weights."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise InvalidSpaceError("weights must be a nonempty vector")
        if np.any(w < MIN_ATOM_WEIGHT):
            raise InvalidSpaceError(
                f"atom weights must be >= {MIN_ATOM_WEIGHT}; got min {w.min()}"
            )
        s = float(w.sum())
        if abs(s - 1.0) > WEIGHT_SUM_TOL:
            raise InvalidSpaceError(f"weights must sum to 1, got {s!r}")
        object.__setattr__(self, "weights", _frozen(w))

    @property
    def n(self) -> int:
        return self.weights.size

    @staticmethod
    def uniform(n: int) -> "DiscreteSpace":
        if n <= 0:
            raise InvalidSpaceError("atom count must be positive")
        return DiscreteSpace(np.full(n, 1.0 / n))

    def same_as(self, other: "DiscreteSpace", tol: float = WEIGHT_SUM_TOL) -> bool:
        return self.n == other.n and bool(
            np.all(np.abs(self.weights - other.weights) <= tol)
        )


@dataclass(frozen=True)
class Kernel:
    """A self-adjoint kernel: a symmetric real matrix over a DiscreteSpace.

    The matrix acts on functions f by (Kf)(x) = sum_y w_y K(x,y) f(y),
    i.e. integration against the second variable.
    """

    space: DiscreteSpace
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.space.n, self.space.n):
            raise DimensionMismatchError(
                f"values shape {v.shape} does not match space size {self.space.n}"
            )
        if not np.array_equal(v, v.T):
            raise AsymmetricMatrixError(
                "Kernel requires an exactly symmetric matrix; "
                "use kernel_from_matrix to symmetrize noisy input"
            )
        object.__setattr__(self, "values", _frozen(v))

    @property
    def n(self) -> int:
        return self.space.n


def kernel_from_matrix(values, weights=None) -> Kernel:
    """Build a Kernel from a square matrix, validating symmetry.

    Skew up to 1e-12 is absorbed silently, up to 1e-9 symmetrized with a
    warning, anything larger is rejected. Weights default to uniform.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {v.shape}")
    space = (
        DiscreteSpace.uniform(v.shape[0])
        if weights is None
        else DiscreteSpace(np.asarray(weights, dtype=float))
    )
    skew = float(np.max(np.abs(v - v.T))) if v.size else 0.0
    if skew > HARD_SKEW:
        raise AsymmetricMatrixError(
            f"matrix skew {skew:.3e} exceeds hard tolerance {HARD_SKEW}"
        )
    if skew > SILENT_SKEW:
        warnings.warn(
            f"symmetrizing input with skew {skew:.3e}", SymmetrizedWarning
        )
    return Kernel(space, (v + v.T) / 2.0)


def symmetric_kernel(values: np.ndarray, space: DiscreteSpace) -> Kernel:
    """Internal constructor: symmetrize float noise without the warning ladder."""
    return Kernel(space, (values + values.T) / 2.0)


@dataclass(frozen=True)
class StepFunction:
    """A kernel constant on the blocks of a finite partition of the atoms.

    part_of[a] is the 0-based part index of atom a; block is the s-by-s
    symmetric matrix of block values; part_weights[p] is the total weight
    of part p.
    """

    space: DiscreteSpace
    part_of: np.ndarray
    block: np.ndarray
    part_weights: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.part_of, dtype=int)
        block = np.asarray(self.block, dtype=float)
        pw = np.asarray(self.part_weights, dtype=float)
        s = block.shape[0]
        if labels.shape != (self.space.n,):
            raise DimensionMismatchError("part_of must assign a label to every atom")
        if block.shape != (s, s) or pw.shape != (s,):
            raise DimensionMismatchError("block must be s x s and part_weights length s")
        if labels.min() < 0 or labels.max() >= s:
            raise EmptyPartError("part labels must lie in [0, s)")
        if not np.array_equal(block, block.T):
            raise AsymmetricMatrixError("block matrix must be exactly symmetric")
        counted = np.bincount(labels, weights=self.space.weights, minlength=s)
        if np.any(counted == 0.0):
            raise EmptyPartError("every part must contain at least one atom")
        if np.max(np.abs(counted - pw)) > WEIGHT_SUM_TOL:
            raise InvalidSpaceError("part_weights must equal summed atom weights")
        object.__setattr__(self, "part_of", _frozen_int(labels))
        object.__setattr__(self, "block", _frozen(block))
        object.__setattr__(self, "part_weights", _frozen(pw))

    @property
    def parts(self) -> int:
        return self.block.shape[0]


def _frozen_int(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=int)
    a.setflags(write=False)
    return a


def step_function(space: DiscreteSpace, part_of, block) -> StepFunction:
    """StepFunction with part_weights derived from the atom weights."""
    labels = np.asarray(part_of, dtype=int)
    block = np.asarray(block, dtype=float)
    pw = np.bincount(labels, weights=space.weights, minlength=block.shape[0])
    return StepFunction(space, labels, block, pw)


def expand_step(sf: StepFunction) -> Kernel:
    """Evaluate a step function on the atom grid: K[a,b] = block[p(a), p(b)]."""
    return Kernel(sf.space, sf.block[np.ix_(sf.part_of, sf.part_of)])


def quotient_average(kernel: Kernel, part_of) -> StepFunction:
    """Average a kernel over the block pairs of a partition.

    block[p][q] = sum_{a in p, b in q} w_a w_b K[a,b] / (W_p W_q).
    Labels are canonicalized to 0..s-1 in sorted order. Blocks on which the
    kernel is exactly constant short-circuit to that constant, so composing
    with expand_step is the identity on step-function kernels.
    """
    labels_raw = np.asarray(part_of, dtype=int)
    if labels_raw.shape != (kernel.n,):
        raise DimensionMismatchError("part_of must label every atom")
    uniq, labels = np.unique(labels_raw, return_inverse=True)
    s = uniq.size
    w = kernel.space.weights
    pw = np.bincount(labels, weights=w, minlength=s)
    if np.any(pw == 0.0):
        raise EmptyPartError("every part must contain at least one atom")
    groups = [np.flatnonzero(labels == p) for p in range(s)]
    block = np.empty((s, s))
    for p in range(s):
        for q in range(p + 1):
            sub = kernel.values[np.ix_(groups[p], groups[q])]
            first = sub.flat[0]
            if np.all(sub == first):
                block[p, q] = block[q, p] = first
            else:
                num = w[groups[p]] @ sub @ w[groups[q]]
                block[p, q] = block[q, p] = num / (pw[p] * pw[q])
    return StepFunction(kernel.space, labels, block, pw)


def apply_permutation(kernel: Kernel, perm) -> Kernel:
    """Relabel atoms: result[x,y] = K[g(x), g(y)] for a weight-preserving g."""
    g = np.asarray(perm, dtype=int)
    if g.shape != (kernel.n,) or not np.array_equal(np.sort(g), np.arange(kernel.n)):
        raise WeightMismatchError("perm must be a permutation of 0..n-1")
    w = kernel.space.weights
    if np.max(np.abs(w[g] - w)) > WEIGHT_SUM_TOL:
        raise WeightMismatchError("permutation does not preserve atom weights")
    return Kernel(kernel.space, kernel.values[np.ix_(g, g)])


def weighted_norm(kernel: Kernel, which: str) -> float:
    """Weighted L1, L2 or Linf norm of the kernel seen as a function on V x V."""
    w = kernel.space.weights
    v = kernel.values
    if which == "L1":
        return float(w @ np.abs(v) @ w)
    if which == "L2":
        return float(math.sqrt(max(0.0, w @ (v * v) @ w)))
    if which == "Linf":
        return float(np.max(np.abs(v)))
    raise ValueError(f"unknown norm {which!r}; expected 'L1', 'L2' or 'Linf'")


def weighted_mean(kernel: Kernel) -> float:
    """Edge density: the weighted average of all kernel entries."""
    w = kernel.space.weights
    return float(w @ kernel.values @ w)


def shift_kernel(kernel: Kernel, c: float) -> Kernel:
    """Subtract a constant from every entry (used for quasirandomness checks)."""
    return Kernel(kernel.space, kernel.values - c)


@dataclass(frozen=True)
class SimpleGraph:
    """A finite simple graph on vertices 1..k given by its edge set."""

    k: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError("vertex count must be positive")
        canon = set()
        for e in self.edges:
            u, v = e
            if not (1 <= u <= self.k and 1 <= v <= self.k):
                raise ValueError(f"edge {e} references a vertex outside 1..{self.k}")
            if u == v:
                raise ValueError(f"loop at vertex {u} is not allowed")
            canon.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(canon))

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def cycle_graph(k: int) -> SimpleGraph:
    if k < 3:
        raise ValueError("cycles need at least 3 vertices")
    return SimpleGraph(k, frozenset((i, i % k + 1) for i in range(1, k + 1)))


def path_graph(k: int) -> SimpleGraph:
    return SimpleGraph(k, frozenset((i, i + 1) for i in range(1, k)))


def complete_graph(k: int) -> SimpleGraph:
    return SimpleGraph(
        k, frozenset((i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1))
    )


def edge_graph() -> SimpleGraph:
    return SimpleGraph(2, frozenset({(1, 2)}))


def triangle_graph() -> SimpleGraph:
    return cycle_graph(3)


def disjoint_union(g1: SimpleGraph, g2: SimpleGraph) -> SimpleGraph:
    shifted = frozenset((u + g1.k, v + g1.k) for (u, v) in g2.edges)
    return SimpleGraph(g1.k + g2.k, g1.edges | shifted)


@dataclass(frozen=True)
class PermutationAction:
    """A group of weight-preserving atom permutations given by generators."""

    space: DiscreteSpace
    generators: tuple

    def __post_init__(self):
        gens = []
        w = self.space.weights
        ident = np.arange(self.space.n)
        for g in self.generators:
            g = np.asarray(g, dtype=int)
            if g.shape != (self.space.n,) or not np.array_equal(np.sort(g), ident):
                raise WeightMismatchError("generator is not a bijection on the atoms")
            if np.max(np.abs(w[g] - w)) > WEIGHT_SUM_TOL:
                raise WeightMismatchError("generator does not preserve the weights")
            gens.append(_frozen_int(g))
        object.__setattr__(self, "generators", tuple(gens))
