"""Lower and upper bounds on the complex flow number of a graph."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

from .errors import InvalidParameter, NoFlowExists
from .graph import Graph, is_bridgeless, is_cubic, odd_girth, prism_graph, wheel_hub
from .wheel import theorem1_value


def odd_girth_bound(g: int) -> float:
    """Lower bound for cubic graphs whose shortest odd cycle has length ``g``."""
    if g < 3 or g % 2 == 0:
        raise InvalidParameter(f"odd girth must be odd and >= 3, got {g}")
    if g % 6 == 5:
        return 1.0 + 2.0 * math.sin(math.pi / 6 * (g + 1) / g)
    return 1.0 + 2.0 * math.sin(math.pi / 6 * g / (g - 1))


@dataclass(frozen=True)
class BoundReport:
    lower: float
    lower_source: str  # "odd-girth" | "trivial"
    upper: Optional[float]
    upper_source: str  # "closed-form" | "solver" | "none"
    odd_girth: Optional[int]  # None when bipartite
    family: Optional[str] = None

    @property
    def bipartite(self) -> bool:
        return self.odd_girth is None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["odd_girth"] = "bipartite" if self.odd_girth is None else self.odd_girth
        return d


def recognize_family(G: Graph):
    """``("wheel", n)`` for any wheel, ``("prism", n)`` for the :func:`prism_graph` labelling."""
    if wheel_hub(G) is not None:
        return "wheel", G.vertex_count - 1
    if G.vertex_count % 2 == 0 and G.vertex_count >= 6:
        n = G.vertex_count // 2
        canon = {frozenset(e) for e in prism_graph(n).edges}
        if G.edge_count == 3 * n and {frozenset(e) for e in G.edges} == canon:
            return "prism", n
    return None


def bound_report(G: Graph, solve: bool = False, config=None) -> BoundReport:
    """Combine the odd-girth lower bound with closed-form or numerical upper bounds.

    The odd-girth bound is only claimed for cubic, non-bipartite graphs; every
    other graph gets the definitional floor of 2.
    """
    if not is_bridgeless(G):
        raise NoFlowExists("graph is disconnected or has a bridge")
    og = odd_girth(G)
    if is_cubic(G) and not og.bipartite:
        lower, lower_source = odd_girth_bound(og.girth), "odd-girth"
    else:
        lower, lower_source = 2.0, "trivial"

    upper, upper_source = None, "none"
    family = recognize_family(G)
    if family is not None:
        upper, upper_source = theorem1_value(family[1]), "closed-form"
    elif solve:
        from .solver import SolverConfig, solve_upper

        result = solve_upper(G, config or SolverConfig())
        upper, upper_source = result.upper_bound, "solver"
    return BoundReport(
        lower=lower,
        lower_source=lower_source,
        upper=upper,
        upper_source=upper_source,
        odd_girth=og.girth,
        family=None if family is None else f"{family[0]}({family[1]})",
    )
