"""Deterministic numerics for standard and alternating-path (zebra) percolation.

Closed forms, fixed-point solves, exact finite-depth recursions, critical
values, and the order-k^2 relation between the two percolation functions on
rooted trees of branching order k. All functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import (
    FIXED_POINT_CONFIG,
    LIMIT_CONFIG,
    RootMode,
    SolverConfig,
    TreeParams,
    check_probability,
)
from .tree import level_size


class NonConvergenceError(RuntimeError):
    """Iteration failed to reach the requested tolerance; carries the last value."""

    def __init__(self, message: str, last_value: float) -> None:
        super().__init__(message)
        self.last_value = last_value


class UnsupportedOrderError(ValueError):
    """No closed form is available for this branching order."""


@dataclass(frozen=True)
class ZebraDPState:
    """Exact depth-n probabilities of parity-conditioned alternating paths.

    a: a descending alternating path of length `depth` whose first edge is
    open exists below a vertex with k children; b: the same with the first
    edge closed; z: the same from the root with either first-edge state.
    """

    depth: int
    a: float
    b: float
    z: float


@dataclass(frozen=True)
class CriticalPair:
    """The two zebra-percolation thresholds, symmetric about 1/2."""

    p_low: float
    p_high: float

    def __post_init__(self) -> None:
        check_probability(self.p_low, "p_low")
        check_probability(self.p_high, "p_high")
        if self.p_low > self.p_high:
            raise ValueError(f"p_low={self.p_low} exceeds p_high={self.p_high}")


def path_probability(p: float, n: int) -> float:
    """Probability that one fixed descending length-n path alternates open/closed.

    Either starting state is admissible: 2*(p(1-p))**(n/2) for even n and
    (p(1-p))**((n-1)/2) for odd n.
    """
    check_probability(p)
    if n < 1:
        raise ValueError(f"path length must be >= 1, got {n}")
    pq = p * (1.0 - p)
    if n % 2 == 0:
        return 2.0 * pq ** (n // 2)
    return pq ** ((n - 1) // 2)


def standard_critical(params: TreeParams) -> float:
    """Critical bond probability of standard percolation: 1/k in either root mode."""
    return 1.0 / params.k


def zebra_critical_pair(params: TreeParams) -> CriticalPair:
    """The two roots of k^2 p (1-p) = 1; they coincide at 1/2 for k = 2."""
    k = params.k
    low = (k - math.sqrt(k * k - 4.0)) / (2.0 * k)
    return CriticalPair(p_low=low, p_high=1.0 - low)


def theta_branch_fixed_point(
    k: int, p: float, cfg: SolverConfig = FIXED_POINT_CONFIG
) -> float:
    """Largest fixed point of x -> 1 - (1 - p x)^k by plain iteration from 1.

    Returns exactly 0 for p <= 1/k without iterating. The map is increasing
    and concave, so the iterates decrease monotonically onto the positive
    fixed point when one exists.
    """
    check_probability(p)
    if k < 2:
        raise ValueError(f"branching order k must be >= 2, got {k}")
    if p * k <= 1.0:
        return 0.0
    x = 1.0
    for _ in range(cfg.max_iter):
        x_next = 1.0 - (1.0 - p * x) ** k
        if abs(x_next - x) <= cfg.tol:
            return x_next
        x = x_next
    raise NonConvergenceError(
        f"fixed point not within tol={cfg.tol} after {cfg.max_iter} iterations", x
    )


def theta_fixed_point(
    params: TreeParams, p: float, cfg: SolverConfig = FIXED_POINT_CONFIG
) -> float:
    """Standard percolation function: P(the root joins an infinite open cluster).

    Solves the branch equation with exponent k, then applies the root-degree
    correction: the rooted-k mode reproduces the branch value, the full-Cayley
    mode uses exponent k+1 at the root.
    """
    branch = theta_branch_fixed_point(params.k, p, cfg)
    if branch == 0.0:
        return 0.0
    return 1.0 - (1.0 - p * branch) ** params.root_degree


def theta_closed_form(k: int, p: float) -> float:
    """Closed forms of the percolation function, known for k = 2 and k = 3."""
    check_probability(p)
    if k == 2:
        if p <= 0.5:
            return 0.0
        return (2.0 * p - 1.0) / (p * p)
    if k == 3:
        if 3.0 * p <= 1.0:
            return 0.0
        return 2.0 * (3.0 * p - 1.0) / (p * (3.0 * p + math.sqrt(p * (4.0 - 3.0 * p))))
    raise UnsupportedOrderError(f"closed form known only for k in {{2, 3}}, got k={k}")


def theta_inverse(k: int, x: float) -> float:
    """Inverse of the supercritical percolation branch: the p with theta_k(p) = x.

    Evaluates (1 - (1-x)^(1/k)) / x, with the continuous limit 1/k at x = 0.
    """
    check_probability(x, "x")
    if k < 2:
        raise ValueError(f"branching order k must be >= 2, got {k}")
    if x == 0.0:
        return 1.0 / k
    return (1.0 - (1.0 - x) ** (1.0 / k)) / x


def zebra_dp(params: TreeParams, p: float, n: int) -> list[ZebraDPState]:
    """Exact alternating-path probabilities for depths 0..n.

    a_m = 1 - (1 - p b_{m-1})^k and b_m = 1 - (1 - (1-p) a_{m-1})^k; the root
    value combines both parities over the root degree d:
    z_m = 1 - (1 - p b_{m-1} - (1-p) a_{m-1})^d.
    """
    check_probability(p)
    if n < 0:
        raise ValueError(f"depth must be >= 0, got {n}")
    k = params.k
    d = params.root_degree
    q = 1.0 - p
    states = [ZebraDPState(depth=0, a=1.0, b=1.0, z=1.0)]
    a = b = 1.0
    for m in range(1, n + 1):
        z = 1.0 - (1.0 - (p * b + q * a)) ** d
        a, b = 1.0 - (1.0 - p * b) ** k, 1.0 - (1.0 - q * a) ** k
        states.append(ZebraDPState(depth=m, a=a, b=b, z=z))
    return states


def zebra_limit(params: TreeParams, p: float, cfg: SolverConfig = LIMIT_CONFIG) -> float:
    """Depth limit of the alternating-path probability from the root.

    Returns exactly 0 when k^2 p (1-p) <= 1 without iterating; otherwise
    iterates the depth recursion until successive root values differ by less
    than cfg.tol.
    """
    check_probability(p)
    k = params.k
    q = 1.0 - p
    if k * k * p * q <= 1.0:
        return 0.0
    d = params.root_degree
    a = b = 1.0
    z_prev = math.inf
    for _ in range(cfg.max_iter):
        z = 1.0 - (1.0 - (p * b + q * a)) ** d
        if abs(z - z_prev) < cfg.tol:
            return z
        z_prev = z
        a, b = 1.0 - (1.0 - p * b) ** k, 1.0 - (1.0 - q * a) ** k
    raise NonConvergenceError(
        f"zebra limit not within tol={cfg.tol} after {cfg.max_iter} depths", z_prev
    )


def zebra_via_relation(
    params: TreeParams, p: float, cfg: SolverConfig = FIXED_POINT_CONFIG
) -> float:
    """Zebra function via the even-level construction: theta_{k^2} at p(1-p).

    Always evaluated in rooted-k mode on the order-k^2 tree. The depth
    recursion and this value agree on where they vanish but need not agree
    pointwise; `cli verify --suite relation` reports the measured gap.
    """
    check_probability(p)
    hat = TreeParams(k=params.k * params.k, root_mode=RootMode.ROOTED_K)
    return theta_fixed_point(hat, p * (1.0 - p), cfg)


def expected_zebra_count(params: TreeParams, p: float, n: int) -> float:
    """First moment of the number of depth-n vertices zebra-connected to the root."""
    if n < 1:
        raise ValueError(f"depth must be >= 1, got {n}")
    return level_size(params, n) * path_probability(p, n)


def open_ray_probability(params: TreeParams, p: float, n: int) -> float:
    """Exact probability of a descending all-open path of length n from the root."""
    check_probability(p)
    if n < 1:
        raise ValueError(f"depth must be >= 1, got {n}")
    k = params.k
    s = 1.0
    for _ in range(n - 1):
        s = 1.0 - (1.0 - p * s) ** k
    return 1.0 - (1.0 - p * s) ** params.root_degree
