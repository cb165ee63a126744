"""Complex flows on graphs: conservation, verification and the wheel point picture."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from .errors import InvalidParameter, NotAFlow, NowhereZeroViolation
from .graph import Graph, surviving_edges, wheel_graph

DEFAULT_TOL = 1e-9


def _frozen_complex(values) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FlowAssignment:
    """One complex value per edge, read along the edge's reference orientation.

    Reversing an edge is the same as negating its value.  Zero values are
    allowed here; :func:`verify_nzf` is what rejects them.
    """

    graph: Graph
    values: np.ndarray

    def __post_init__(self):
        values = _frozen_complex(self.values)
        if len(values) != self.graph.edge_count:
            raise InvalidParameter(
                f"{len(values)} values for a graph with {self.graph.edge_count} edges"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidParameter("flow values must be finite")
        object.__setattr__(self, "values", values)

    @property
    def norms(self) -> np.ndarray:
        return np.abs(self.values)

    def scaled(self, t: complex) -> "FlowAssignment":
        return FlowAssignment(self.graph, self.values * t)

    def normalized(self) -> "FlowAssignment":
        """Scale so the smallest edge norm is exactly 1."""
        m = self.norms.min()
        if m == 0:
            raise NowhereZeroViolation("cannot normalize a flow with a zero value")
        return FlowAssignment(self.graph, self.values / m)


@dataclass(frozen=True, eq=False)
class PointSequence:
    """Cyclic sequence ``p_0..p_{n-1}`` encoding a flow on the wheel ``W_n``.

    Rim edge ``j`` carries ``p_j``; spoke ``j`` carries ``z_j = p_j - p_{j-1}``.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = _frozen_complex(self.points)
        if len(pts) < 3:
            raise InvalidParameter("a point sequence needs at least 3 points")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, j: int) -> complex:
        return complex(self.points[j % len(self.points)])

    def chords(self) -> np.ndarray:
        """``z_j = p_j - p_{j-1}`` for every ``j`` (cyclically)."""
        return self.points - np.roll(self.points, 1)

    def norms(self) -> np.ndarray:
        return np.concatenate([np.abs(self.points), np.abs(self.chords())])

    def ratio(self) -> float:
        """max/min over all ``|p_j|`` and ``|z_j|``."""
        n = self.norms()
        lo = n.min()
        return float("inf") if lo == 0 else float(n.max() / lo)


@dataclass(frozen=True)
class VerifyReport:
    max_conservation_residual: float
    min_norm: float
    max_norm: float
    valid_for_r: bool
    r: float
    tol: float
    offending_vertices: List[int] = field(default_factory=list)
    offending_edges: List[int] = field(default_factory=list)


def vertex_residuals(flow: FlowAssignment) -> np.ndarray:
    """Inflow minus outflow at each vertex, as complex numbers."""
    G = flow.graph
    net = np.zeros(G.vertex_count, dtype=np.complex128)
    if G.edge_count:
        tails = np.array([u for u, _ in G.edges])
        heads = np.array([v for _, v in G.edges])
        np.add.at(net, heads, flow.values)
        np.subtract.at(net, tails, flow.values)
    return net


def conservation_residual(flow: FlowAssignment) -> float:
    net = vertex_residuals(flow)
    return float(np.abs(net).max()) if len(net) else 0.0


def flow_number_estimate(flow: FlowAssignment, tol: float = DEFAULT_TOL) -> float:
    """``1 + max|value| / min|value|``: the ``r`` certified by this flow once normalized.

    The conservation check is relative to the largest norm so that the
    estimate stays scale invariant.
    """
    norms = flow.norms
    if len(norms) == 0:
        raise InvalidParameter("flow has no edges")
    lo, hi = norms.min(), norms.max()
    if lo == 0:
        raise NowhereZeroViolation(f"edge {int(norms.argmin())} carries zero")
    res = conservation_residual(flow)
    if res > tol * max(1.0, hi):
        raise NotAFlow(f"conservation residual {res:.3e} exceeds tolerance")
    return float(1.0 + hi / lo)


def verify_nzf(flow: FlowAssignment, r: float, tol: float = DEFAULT_TOL) -> VerifyReport:
    """Check that ``flow`` is a complex nowhere-zero ``r``-flow as it stands (no rescaling)."""
    if r < 2:
        raise InvalidParameter(f"r must be >= 2, got {r}")
    if tol < 0:
        raise InvalidParameter("tol must be non-negative")
    net = np.abs(vertex_residuals(flow))
    norms = flow.norms
    bad_v = [int(v) for v in np.flatnonzero(net > tol)]
    bad_e = [int(k) for k in np.flatnonzero((norms < 1 - tol) | (norms > r - 1 + tol))]
    return VerifyReport(
        max_conservation_residual=float(net.max()) if len(net) else 0.0,
        min_norm=float(norms.min()) if len(norms) else 0.0,
        max_norm=float(norms.max()) if len(norms) else 0.0,
        valid_for_r=not bad_v and not bad_e,
        r=float(r),
        tol=float(tol),
        offending_vertices=bad_v,
        offending_edges=bad_e,
    )


def transform(flow: FlowAssignment, c: complex = 1, negate: bool = False) -> FlowAssignment:
    """Multiply every value by the unit complex number ``c`` (and by -1 if ``negate``)."""
    c = complex(c)
    if abs(abs(c) - 1) > 1e-12:
        raise InvalidParameter(f"|c| must be 1, got {abs(c)}")
    if negate:
        c = -c
    return FlowAssignment(flow.graph, flow.values * c)


def rotation(theta: float) -> complex:
    return cmath.exp(1j * theta)


def points_to_flow(seq: PointSequence) -> FlowAssignment:
    n = len(seq)
    return FlowAssignment(wheel_graph(n), np.concatenate([seq.chords(), seq.points]))


def _wheel_size(G: Graph) -> int:
    n = G.vertex_count - 1
    if n < 3 or G != wheel_graph(n):
        raise InvalidParameter("flow is not defined on a wheel_graph(n) layout")
    return n


def flow_to_points(flow: FlowAssignment) -> PointSequence:
    n = _wheel_size(flow.graph)
    return PointSequence(flow.values[n:])


def project_contraction(flow: FlowAssignment, mapping: Dict[int, int], H: Graph) -> FlowAssignment:
    """Carry ``flow`` onto the contracted graph ``H``.

    Surviving edges keep their values; edges that became loops are dropped.
    Summing the residuals of the merged vertices shows conservation holds on ``H``.
    """
    G = flow.graph
    if set(mapping) != set(range(G.vertex_count)):
        raise InvalidParameter("vertex map does not cover the flow's graph")
    if len(set(mapping.values())) >= G.vertex_count:
        raise InvalidParameter("vertex map contracts nothing")
    keep = surviving_edges(G, mapping)
    expected = tuple((mapping[G.edges[k][0]], mapping[G.edges[k][1]]) for k in keep)
    if H.edges != expected or H.vertex_count != len(set(mapping.values())):
        raise InvalidParameter("contracted graph is inconsistent with the vertex map")
    return FlowAssignment(H, flow.values[keep])


def flow_from_pairs(graph: Graph, pairs: Sequence[Sequence[float]]) -> FlowAssignment:
    return FlowAssignment(graph, [complex(re, im) for re, im in pairs])
