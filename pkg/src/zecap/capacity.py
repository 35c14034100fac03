"""Analytic capacity values: roots of characteristic equations
sum_l x^l = 1 for ministring length multisets (with optional geometric
tails), Perron growth rates of walk digraphs, and empirical rate series
from exact counts.

All rates are in bits (base-2 logarithms).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .model import Digraph, SpecError

DEFAULT_TOL = 1e-12
MAX_BISECT_ITERS = 200
_TAIL_GUARD = 1 - 1e-12


class NoRootError(ValueError):
    """The characteristic equation has no root in (0,1)."""


class ConvergenceError(RuntimeError):
    """Iteration cap reached before the requested tolerance."""


@dataclass(frozen=True)
class CharacteristicEquation:
    """E(x) = sum of x^l over `head` lengths plus, if present, the closed
    geometric tail x^start + x^(start+step) + ... = x^start / (1 - x^step).
    E is strictly increasing on (0,1) with E(0)=0, so E(x)=1 has at most one
    root there."""

    head: tuple[int, ...]
    tail: Optional[tuple[int, int]] = None  # (start, step)

    def __post_init__(self):
        if any(l < 1 for l in self.head):
            raise SpecError("all head lengths must be >= 1")
        if self.tail is not None:
            start, step = self.tail
            if start < 1 or step < 1:
                raise SpecError("tail start and step must be >= 1")
        if not self.head and self.tail is None:
            raise SpecError("equation needs at least one term")

    def value(self, x: float) -> float:
        total = sum(x**l for l in self.head)
        if self.tail is not None:
            start, step = self.tail
            x = min(x, _TAIL_GUARD)
            total += x**start / (1.0 - x**step)
        return total

    def has_root(self) -> bool:
        """E(1-) > 1 guarantees a root; a tail always diverges at 1."""
        return self.tail is not None or len(self.head) >= 2


@dataclass
class CapacityValue:
    root: float
    rate_bits: float
    residual: float
    iterations: int

    def to_record(self) -> dict:
        return {
            "root": self.root,
            "rate_bits": self.rate_bits,
            "residual": self.residual,
            "iterations": self.iterations,
        }


def solve_characteristic(eq: CharacteristicEquation,
                         tol: float = DEFAULT_TOL) -> CapacityValue:
    """Unique root of E(x) = 1 in (0,1) by bracketed bisection; the rate is
    log2(1/root)."""
    if tol <= 0:
        raise SpecError("tolerance must be positive")
    if not eq.has_root():
        raise NoRootError(f"E(1-) <= 1 for head {eq.head}; no root in (0,1)")
    lo, hi = 0.0, 1.0
    x = 0.5
    iters = 0
    while iters < MAX_BISECT_ITERS:
        iters += 1
        x = 0.5 * (lo + hi)
        v = eq.value(x)
        if abs(v - 1.0) <= tol:
            break
        if v < 1.0:
            lo = x
        else:
            hi = x
    else:
        raise ConvergenceError(f"no convergence to tol={tol} within "
                               f"{MAX_BISECT_ITERS} bisections")
    return CapacityValue(root=x, rate_bits=math.log2(1.0 / x),
                         residual=abs(eq.value(x) - 1.0), iterations=iters)


def beta_sequence(k_max: int, tol: float = DEFAULT_TOL
                  ) -> list[CapacityValue]:
    """Rates for the truncated odd-run equations with head lengths
    {1, 2, 4, ..., 2k+2}, k = 0..k_max; strictly increasing in k and bounded
    by the full geometric-tail rate."""
    if k_max < 0:
        raise SpecError("k_max must be >= 0")
    out = []
    for k in range(k_max + 1):
        head = (1,) + tuple(range(2, 2 * k + 3, 2))
        out.append(solve_characteristic(CharacteristicEquation(head), tol))
    return out


def _adjacency_matrix(P: Digraph) -> np.ndarray:
    mat = np.zeros((P.k, P.k))
    for a, b in P.arcs:
        mat[a, b] = 1.0
    return mat


def _has_cycle(P: Digraph) -> bool:
    """A acyclic iff A^k = 0."""
    mat = _adjacency_matrix(P)
    power = mat.copy()
    for _ in range(P.k):
        if not power.any():
            return False
        power = power @ mat
    return True


def perron_growth(P: Digraph, tol: float = 1e-12,
                  max_iters: int = 100000) -> CapacityValue:
    """log2 of the spectral radius of P's adjacency matrix by power
    iteration; this is the exponential growth rate of |V^n(P)|.

    Acyclic digraphs return rate 0 with root 1.  If the iteration does not
    settle (reducible or periodic structure), falls back to the geometric
    mean of walk-count ratios over n <= 64."""
    if not _has_cycle(P):
        return CapacityValue(root=1.0, rate_bits=0.0, residual=0.0,
                             iterations=0)
    mat = _adjacency_matrix(P)
    v = np.ones(P.k) / math.sqrt(P.k)
    lam = 0.0
    for it in range(1, max_iters + 1):
        w = mat @ v
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            break
        new_lam = norm
        v = w / norm
        if abs(new_lam - lam) <= tol * max(new_lam, 1.0):
            lam = new_lam
            return CapacityValue(root=1.0 / lam, rate_bits=math.log2(lam),
                                 residual=abs(new_lam - lam), iterations=it)
        lam = new_lam
    # counting-ratio fallback: lam ~ (|V^(n+m)| / |V^n|)^(1/m)
    from .model import count_walks
    lo_n, hi_n = 32, 64
    lo, hi = count_walks(P, lo_n), count_walks(P, hi_n)
    lam = (hi / lo) ** (1.0 / (hi_n - lo_n))
    return CapacityValue(root=1.0 / lam, rate_bits=math.log2(lam),
                         residual=float("nan"), iterations=max_iters)


def empirical_rates(counts: Sequence[int]
                    ) -> tuple[list[float], list[float]]:
    """(naive, ratio) rate series for exact counts a_1, a_2, ...: naive is
    (1/n) log2 a_n, ratio is log2(a_{n+1}/a_n).  Ratio rates converge
    geometrically to the dominant growth rate."""
    if len(counts) < 2:
        raise SpecError("need at least two counts")
    if any(c <= 0 for c in counts):
        raise SpecError("counts must be strictly positive")
    naive = [math.log2(c) / (i + 1) for i, c in enumerate(counts)]
    ratio = [math.log2(b) - math.log2(a)
             for a, b in zip(counts, counts[1:])]
    return naive, ratio


# Equations of the four named channels, in the family vocabulary of
# `construct`: ministring lengths determine the equation.
NAMED_EQUATIONS = {
    "ministring-tribonacci": CharacteristicEquation((1, 2, 3)),
    "oddrun": CharacteristicEquation((1,), tail=(2, 2)),
    "no-isolated-ones": CharacteristicEquation((1,), tail=(3, 1)),
    "fibonacci": CharacteristicEquation((1, 2)),
}
