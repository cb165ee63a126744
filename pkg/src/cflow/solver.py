"""Numerical upper bounds on the complex flow number.

Every candidate flow is a circulation ``v = B c`` where ``B`` is a cycle-basis
matrix and ``c`` a complex coefficient vector, so conservation holds by
construction.  We minimise ``max_e |v_e| / min_e |v_e|`` over ``c``.

Each start runs the same pipeline:

1. epigraph polish: SLSQP on ``min t  s.t.  1 <= |v_e|^2 <= t``;
2. basin hopping: rotate one coefficient about another by a random angle
   (the generic form of rotating ``p_h`` about ``p_k`` on a wheel), re-polish,
   keep the result if it is no worse;
3. pattern search on the exact ratio with step halving.

The landscape has one basin per pattern of edge-value orientations, and
optima of symmetric graphs are often equivariant under an automorphism.  So
up to half of the start budget is seeded from the eigenspaces of a few
automorphisms acting on the cycle space; the rest are the all-ones vector
and random annulus samples.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from .errors import InvalidParameter, NoFlowExists, SolverFailure
from .flow import FlowAssignment, PointSequence
from .graph import Graph, is_bridgeless
from .wheel import radial_scale, rho, sigma

log = logging.getLogger(__name__)

DEGENERATE = 1e-9


@dataclass(frozen=True)
class SolverConfig:
    starts: int = 32
    max_iters: int = 500
    step_init: float = 0.25
    ratio_tol: float = 1e-3
    seed: int = 0
    kicks: int = 30
    symmetry_starts: bool = True

    def __post_init__(self):
        if self.starts < 1:
            raise InvalidParameter("starts must be >= 1")
        if self.max_iters < 1 or self.kicks < 0:
            raise InvalidParameter("max_iters must be >= 1 and kicks >= 0")
        if not (self.step_init > 0 and self.ratio_tol > 0):
            raise InvalidParameter("step_init and ratio_tol must be positive")


@dataclass(frozen=True)
class CycleBasis:
    """Fundamental cycles of a spanning forest, as signed edge lists."""

    graph: Graph
    cycles: Tuple[Tuple[Tuple[int, int], ...], ...]

    def __len__(self):
        return len(self.cycles)

    def matrix(self) -> np.ndarray:
        B = np.zeros((self.graph.edge_count, len(self.cycles)))
        for j, cyc in enumerate(self.cycles):
            for k, s in cyc:
                B[k, j] += s
        return B


@dataclass(frozen=True, eq=False)
class SolveResult:
    upper_bound: float
    witness: FlowAssignment
    iterations_used: int
    starts_improved: int
    best_start: int
    start_ratios: Tuple[float, ...] = field(default=())


def cycle_basis(G: Graph) -> CycleBasis:
    """One generator per non-tree edge of a BFS forest.

    Each component is rooted at its highest-degree vertex; on a wheel that is
    the hub and the generator of rim edge ``j`` is the triangle through it.
    """
    n = G.vertex_count
    deg = G.degrees()
    parent_edge = [-1] * n
    parent = [-1] * n
    depth = [-1] * n
    tree = set()
    for root in sorted(range(n), key=lambda v: (-deg[v], v)):
        if depth[root] != -1:
            continue
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, k in G.incident(u):
                if depth[w] == -1:
                    depth[w] = depth[u] + 1
                    parent[w], parent_edge[w] = u, k
                    tree.add(k)
                    queue.append(w)

    def step_sign(k, frm, to):
        return 1 if G.edges[k] == (frm, to) else -1

    cycles = []
    for k, (a, b) in enumerate(G.edges):
        if k in tree:
            continue
        # traverse a -> b along the chord, then back from b to a through the tree
        cyc = {k: 1}
        x, y = b, a
        up_x, up_y = [], []
        while depth[x] > depth[y]:
            up_x.append(x)
            x = parent[x]
        while depth[y] > depth[x]:
            up_y.append(y)
            y = parent[y]
        while x != y:
            up_x.append(x)
            up_y.append(y)
            x, y = parent[x], parent[y]
        for v in up_x:  # b -> lca, upward
            e = parent_edge[v]
            cyc[e] = cyc.get(e, 0) + step_sign(e, v, parent[v])
        for v in up_y:  # lca -> a, downward
            e = parent_edge[v]
            cyc[e] = cyc.get(e, 0) + step_sign(e, parent[v], v)
        cycles.append(tuple(sorted((e, s) for e, s in cyc.items() if s)))
    return CycleBasis(G, tuple(cycles))


def circulation(basis: CycleBasis, coeffs: Sequence[complex]) -> FlowAssignment:
    coeffs = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
    if len(coeffs) != len(basis):
        raise InvalidParameter(f"{len(coeffs)} coefficients for a basis of size {len(basis)}")
    if len(basis) == 0:
        return FlowAssignment(basis.graph, np.zeros(basis.graph.edge_count, dtype=complex))
    return FlowAssignment(basis.graph, basis.matrix() @ coeffs)


def norm_ratio(values: np.ndarray) -> float:
    a = np.abs(values)
    hi = a.max()
    lo = a.min()
    if hi == 0 or lo < DEGENERATE * hi:
        return math.inf
    return float(hi / lo)


class _RatioProblem:
    """``max|A c| / min|A c|`` for a real matrix ``A`` and complex ``c``."""

    def __init__(self, A: np.ndarray, cfg: SolverConfig):
        self.A = np.asarray(A, dtype=float)
        self.m, self.d = self.A.shape
        self.cfg = cfg
        self.iterations = 0

    def ratio(self, c: np.ndarray) -> float:
        return norm_ratio(self.A @ c)

    def _normalize(self, c):
        a = np.abs(self.A @ c)
        lo = a.min()
        scale = lo if lo > DEGENERATE * max(a.max(), 1e-300) else a.mean()
        return c / scale if scale > 0 else c

    def epigraph_polish(self, c: np.ndarray) -> np.ndarray:
        A, d = self.A, self.d
        c = self._normalize(c)
        t0 = float((np.abs(A @ c) ** 2).max())
        x0 = np.concatenate([c.real, c.imag, [t0]])

        def sq(x):
            re, im = A @ x[:d], A @ x[d : 2 * d]
            return re, im, re * re + im * im

        def cons(x):
            _, _, s = sq(x)
            return np.concatenate([x[-1] - s, s - 1.0])

        def cons_jac(x):
            re, im, _ = sq(x)
            g = np.hstack([2 * re[:, None] * A, 2 * im[:, None] * A])
            upper = np.hstack([-g, np.ones((self.m, 1))])
            lower = np.hstack([g, np.zeros((self.m, 1))])
            return np.vstack([upper, lower])

        grad = np.zeros(2 * d + 1)
        grad[-1] = 1.0
        res = minimize(
            lambda x: x[-1],
            x0,
            jac=lambda x: grad,
            constraints=[{"type": "ineq", "fun": cons, "jac": cons_jac}],
            method="SLSQP",
            options={"maxiter": self.cfg.max_iters, "ftol": 1e-15},
        )
        self.iterations += int(res.nit)
        out = res.x[:d] + 1j * res.x[d : 2 * d]
        return out if self.ratio(out) <= self.ratio(c) else c

    def pattern_polish(self, c: np.ndarray) -> np.ndarray:
        """Coordinate pattern search on real/imaginary parts, halving the step on failure."""
        c = self._normalize(c)
        f = self.ratio(c)
        step = self.cfg.step_init * float(np.abs(c).mean() or 1.0)
        budget = self.cfg.max_iters
        directions = (1.0, -1.0, 1j, -1j)
        while step >= 1e-10 and budget > 0:
            budget -= 1
            improved = False
            for j in range(self.d):
                for u in directions:
                    trial = c.copy()
                    trial[j] += step * u
                    ft = self.ratio(trial)
                    if ft < f:
                        c, f, improved = trial, ft, True
            if not improved:
                step /= 2
        return c

    def kick(self, c: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """Rotate coefficient ``j`` about coefficient ``k`` by a random angle."""
        out = c.copy()
        j, k = rng.choice(self.d, size=2, replace=False)
        out[j] = (out[j] - out[k]) * np.exp(1j * rng.uniform(-math.pi, math.pi)) + out[k]
        return out

    def search(self, start: np.ndarray, rng: np.random.Generator):
        c = self.epigraph_polish(start)
        best = self.ratio(c)
        if self.d >= 2:
            for _ in range(self.cfg.kicks):
                trial = self.epigraph_polish(self.kick(c, rng))
                ft = self.ratio(trial)
                if ft <= best:
                    c, best = trial, ft
        c = self.pattern_polish(c)
        return self.ratio(c), c


def annulus_sample(rng: np.random.Generator, size: int, r_in=0.5, r_out=1.5) -> np.ndarray:
    """Area-uniform samples of the annulus ``r_in <= |z| <= r_out``."""
    r = np.sqrt(rng.uniform(r_in**2, r_out**2, size))
    return r * np.exp(1j * rng.uniform(0.0, 2 * math.pi, size))


def _automorphisms(G: Graph, limit: int = 5000):
    import networkx as nx

    H = nx.Graph()
    H.add_nodes_from(range(G.vertex_count))
    H.add_edges_from(G.edges)
    matcher = nx.algorithms.isomorphism.GraphMatcher(H, H)
    for perm in itertools.islice(matcher.isomorphisms_iter(), limit):
        yield tuple(perm[v] for v in range(G.vertex_count))


def _perm_order(perm) -> int:
    order = 1
    seen = set()
    for v in range(len(perm)):
        if v in seen:
            continue
        length, w = 0, v
        while w not in seen:
            seen.add(w)
            w = perm[w]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


def _edge_action(G: Graph, perm) -> Optional[np.ndarray]:
    """Signed permutation matrix of ``perm`` on edge values (parallel edges matched in order)."""
    slots = {}
    for k, (u, v) in enumerate(G.edges):
        slots.setdefault(frozenset((u, v)), []).append(k)
    P = np.zeros((G.edge_count, G.edge_count))
    used = {key: 0 for key in slots}
    for k, (u, v) in enumerate(G.edges):
        key = frozenset((perm[u], perm[v]))
        if key not in slots:
            return None
        target = slots[key][used[key]]
        used[key] += 1
        P[target, k] = 1.0 if G.edges[target] == (perm[u], perm[v]) else -1.0
    return P


def symmetric_starts(G: Graph, B: np.ndarray, rng: np.random.Generator, max_groups: int = 3) -> List[np.ndarray]:
    """Starts lying in eigenspaces of high-order automorphisms on the cycle space."""
    if B.shape[1] == 0:
        return []
    Q, _ = np.linalg.qr(B)
    pinv = np.linalg.pinv(B)
    candidates = sorted(
        ((_perm_order(p), p) for p in _automorphisms(G)),
        key=lambda t: (-t[0], t[1]),
    )
    chosen, groups = [], []
    for order, perm in candidates:
        if order < 2 or len(chosen) >= max_groups:
            continue
        cyc = {perm}
        power = perm
        for _ in range(order - 1):
            power = tuple(perm[v] for v in power)
            cyc.add(power)
        if any(cyc == g for g in groups):
            continue
        groups.append(cyc)
        chosen.append((order, perm))
    starts = []
    for order, perm in chosen:
        P = _edge_action(G, perm)
        if P is None:
            continue
        M = Q.T @ P @ Q
        evals, evecs = np.linalg.eig(M)
        angles = np.round(np.angle(evals) / (2 * math.pi) * order).astype(int) % order
        for a in range(order):
            V = evecs[:, angles == a]
            if V.shape[1] == 0:
                continue
            V, _ = np.linalg.qr(V)
            w = rng.normal(size=V.shape[1]) + 1j * rng.normal(size=V.shape[1])
            starts.append(pinv @ (Q @ (V @ w)))
    return starts


def _merge(results):
    """Deterministic pick: smallest ratio, lowest start index on ties."""
    best = None
    improved = 0
    for idx, (ratio, c) in enumerate(results):
        if best is None or ratio < best[0]:
            best = (ratio, c, idx)
            improved += 1
    return best, improved


def solve_upper(G: Graph, cfg: SolverConfig = SolverConfig()) -> SolveResult:
    """Best ``1 + max/min`` over circulations found by multi-start local search."""
    if not is_bridgeless(G):
        raise NoFlowExists("graph is disconnected or has a bridge; every circulation vanishes somewhere")
    if G.edge_count == 0:
        raise InvalidParameter("graph has no edges")
    basis = cycle_basis(G)
    B = basis.matrix()
    d = B.shape[1]
    problem = _RatioProblem(B, cfg)

    sym = symmetric_starts(G, B, np.random.default_rng([cfg.seed, 1 << 20])) if cfg.symmetry_starts else []
    sym = sym[: (cfg.starts - 1) // 2]
    starts = [np.ones(d, dtype=complex)]
    for i in range(1, cfg.starts - len(sym)):
        starts.append(annulus_sample(np.random.default_rng([cfg.seed, i]), d))
    starts += sym

    results = []
    for i, start in enumerate(starts):
        rng = np.random.default_rng([cfg.seed, i, 1])
        results.append(problem.search(start, rng))
        log.debug("start %d: ratio %.12f", i, results[-1][0])
    (ratio, c, idx), improved = _merge(results)
    if not math.isfinite(ratio):
        raise SolverFailure(
            "every start ended on a degenerate circulation",
            {"starts": len(starts), "iterations": problem.iterations},
        )
    witness = circulation(basis, c).normalized()
    return SolveResult(
        upper_bound=1.0 + ratio,
        witness=witness,
        iterations_used=problem.iterations,
        starts_improved=improved,
        best_start=idx,
        start_ratios=tuple(r for r, _ in results),
    )


def _wheel_matrix(n: int) -> np.ndarray:
    """Maps points to the norms we care about: chords ``p_j - p_{j-1}`` then points."""
    D = np.eye(n) - np.roll(np.eye(n), 1, axis=1)
    return np.vstack([D, np.eye(n)])


def _random_sequence(rng: np.random.Generator, n: int, lam: float = 1.5) -> np.ndarray:
    return annulus_sample(rng, n, 1.0, lam)


def _star_sequence(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    jitter = 1e-3 * (rng.normal(size=n) + 1j * rng.normal(size=n))
    return np.exp(2j * math.pi * k * np.arange(n) / n) + jitter


def wheel_moves(seq: PointSequence, step: float):
    """Every move of the local search at one step size.

    Rotations of a block about the origin, rotations of one point about
    another, and radial scaling of one point.
    """
    n = len(seq)
    for h in range(n):
        for k in range(n):
            if h == k:
                continue
            for s in (step, -step):
                yield ("rho", h, k, s), rho(seq, h, k, s)
                yield ("sigma", h, k, s), sigma(seq, h, k, s)
        for s in (step, -step):
            yield ("scale", h, h, s), radial_scale(seq, h, 1.0 + s)


def probe_moves(seq: PointSequence, steps=(1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8)) -> float:
    """Largest decrease of the ratio achieved by any single move (0 if none helps)."""
    base = seq.ratio()
    gain = 0.0
    for step in steps:
        for _, moved in wheel_moves(seq, step):
            gain = max(gain, base - moved.ratio())
    return gain


def _move_descent(seq: PointSequence, cfg: SolverConfig) -> PointSequence:
    """First-improvement descent over the move set with step halving."""
    f = seq.ratio()
    step = cfg.step_init
    budget = cfg.max_iters
    while step >= 1e-10 and budget > 0:
        budget -= 1
        for _, moved in wheel_moves(seq, step):
            fm = moved.ratio()
            if fm < f:
                seq, f = moved, fm
                break
        else:
            step /= 2
    return seq


def optimize_wheel_points(n: int, cfg: SolverConfig = SolverConfig()) -> Tuple[PointSequence, float]:
    """Minimise ``max/min`` over all ``|p_j|`` and ``|p_j - p_{j-1}|`` of a point sequence.

    Large random rotations of one point about its neighbour serve as basin
    hops, SLSQP polishes each candidate, and the move-set descent finishes.
    """
    if n < 3:
        raise InvalidParameter(f"wheels need n >= 3, got {n}")
    problem = _RatioProblem(_wheel_matrix(n), cfg)
    stars = []
    if cfg.symmetry_starts:
        rng = np.random.default_rng([cfg.seed, 1 << 20])
        stars = [_star_sequence(n, k, rng) for k in range(1, (n - 1) // 2 + 1)][: cfg.starts // 2]
    starts = [
        _random_sequence(np.random.default_rng([cfg.seed, i]), n) for i in range(cfg.starts - len(stars))
    ]
    starts += stars
    results = []
    for i, start in enumerate(starts):
        rng = np.random.default_rng([cfg.seed, i, 1])
        ratio, pts = problem.search(start, rng)
        results.append((ratio, pts))
    (ratio, pts, _), _ = _merge(results)
    if not math.isfinite(ratio):
        raise SolverFailure("every start ended degenerate", {"starts": len(starts)})
    seq = _move_descent(PointSequence(pts), SolverConfig(**{**cfg.__dict__, "step_init": 1e-4, "max_iters": 50}))
    return seq, seq.ratio()
