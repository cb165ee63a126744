"""Static SVG drawings of wheel point sequences.

The origin sits at the centre of the canvas and the y axis points up, so an
anticlockwise rotation in the complex plane is anticlockwise on screen.  All
coordinates are printed with fixed precision, which makes the output
byte-identical for identical inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameter
from .flow import PointSequence

MARGIN = 40.0


@dataclass(frozen=True)
class RenderSpec:
    scale: float = 150.0  # pixels per unit
    show_labels: bool = True
    show_circles: bool = True
    arrowheads: bool = True

    def __post_init__(self):
        if not self.scale > 0:
            raise InvalidParameter(f"scale must be positive, got {self.scale}")


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def render_sequence(seq: PointSequence, lam: float, spec: RenderSpec = RenderSpec()) -> str:
    """SVG text with the circles of radius 1 and ``lam``, the points, and the chords between them."""
    radius = max(lam, float(abs(seq.points).max()), 1.0) * spec.scale
    half = radius + MARGIN
    size = 2 * half

    def xy(z: complex):
        return half + z.real * spec.scale, half - z.imag * spec.scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(size)}" height="{_f(size)}" '
        f'viewBox="0 0 {_f(size)} {_f(size)}">'
    ]
    if spec.arrowheads:
        out.append(
            '<defs><marker id="head" markerWidth="8" markerHeight="8" refX="7" refY="4" '
            'orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="black"/></marker></defs>'
        )
    if spec.show_circles:
        for r, cls in ((1.0, "inner"), (lam, "outer")):
            out.append(
                f'<circle class="{cls}" cx="{_f(half)}" cy="{_f(half)}" r="{_f(r * spec.scale)}" '
                'fill="none" stroke="gray" stroke-dasharray="4 3"/>'
            )
    marker = ' marker-end="url(#head)"' if spec.arrowheads else ""
    n = len(seq)
    for j in range(n):
        (x1, y1), (x2, y2) = xy(seq[j - 1]), xy(seq[j])
        out.append(
            f'<line class="chord" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
            f'stroke="black"{marker}/>'
        )
    for j in range(n):
        x, y = xy(seq[j])
        out.append(f'<circle class="point" cx="{_f(x)}" cy="{_f(y)}" r="3" fill="black"/>')
        if spec.show_labels:
            out.append(
                f'<text x="{_f(x + 6)}" y="{_f(y - 6)}" font-size="12">p<tspan '
                f'baseline-shift="sub" font-size="9">{j}</tspan></text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
