"""Static SVG pictures of scenes and push plans."""

from __future__ import annotations

import colorsys
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .geometry import Point2, rotate
from .path_region import Configuration, path_region
from .persistence import components_at

__all__ = ["PX_PER_M", "component_colors", "render_svg"]

PX_PER_M = 1000.0
MARGIN_PX = 40.0

_PALETTE = [
    "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2",
    "#7f7f7f", "#bcbd22", "#17becf", "#d62728", "#393b79",
]
TARGET_COLOR = "#ff7f0e"


def component_colors(count: int) -> list[str]:
    colors = _PALETTE[:count]
    for k in range(len(colors), count):
        # golden-ratio hue walk keeps extra colors distinct and deterministic
        r, g, b = colorsys.hls_to_rgb((k * 0.618033988749895) % 1.0, 0.45, 0.65)
        colors.append(f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}")
    return colors


def _f(v: float) -> str:
    return f"{v:.2f}"


class _Canvas:
    def __init__(self, depth: float, width: float):
        self.w_px = depth * PX_PER_M + 2 * MARGIN_PX
        self.h_px = width * PX_PER_M + 2 * MARGIN_PX
        self.width_m = width
        self.items: list[str] = []

    def xy(self, p: Sequence[float]) -> tuple[str, str]:
        # y grows upward on the shelf, downward in SVG
        return _f(MARGIN_PX + p[0] * PX_PER_M), _f(MARGIN_PX + (self.width_m - p[1]) * PX_PER_M)

    def add(self, item: str) -> None:
        self.items.append(item)

    def text(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(self.w_px)}" '
            f'height="{_f(self.h_px)}" viewBox="0 0 {_f(self.w_px)} {_f(self.h_px)}">'
        )
        defs = (
            '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" '
            'markerWidth="6" markerHeight="6" orient="auto-start-reverse">'
            '<path d="M0,0 L10,5 L0,10 z" fill="#000"/></marker></defs>'
        )
        return "\n".join([head, defs, *self.items, "</svg>"]) + "\n"


def render_svg(
    config: Configuration,
    radius: float = 0.0,
    steps: Sequence[dict] = (),
    final: Optional[Configuration] = None,
    title: str = "",
) -> str:
    """Draw walls, corridor, discs colored by component at ``radius`` and sweeps.

    ``steps`` are per-action trace dicts as produced by ``PushStep.to_dict``;
    ``final`` adds dashed outlines where the obstacles ended up.
    """
    ws = config.ws
    rho_px = _f(ws.object_radius * PX_PER_M)
    cv = _Canvas(ws.depth, ws.width)
    if title:
        cv.add(f'<title>{escape(title)}</title>')

    # shelf floor, walls S and N, back wall
    x0, yN = cv.xy((0.0, ws.width))
    cv.add(f'<rect class="shelf" x="{x0}" y="{yN}" width="{_f(ws.depth * PX_PER_M)}" '
           f'height="{_f(ws.width * PX_PER_M)}" fill="#fafafa" stroke="none"/>')
    for cls, (a, b) in (("wall-S", ((0, 0), (ws.depth, 0))),
                        ("wall-N", ((0, ws.width), (ws.depth, ws.width))),
                        ("wall-back", ((ws.depth, 0), (ws.depth, ws.width)))):
        (ax, ay), (bx, by) = cv.xy(a), cv.xy(b)
        cv.add(f'<line class="{cls}" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
               f'stroke="#333" stroke-width="6"/>')

    region = path_region(config)
    if config.obstacles:
        c = region.corridor
        corners = [region.to_world(q) for q in ((c.lo.x, c.lo.y), (c.hi.x, c.lo.y),
                                                (c.hi.x, c.hi.y), (c.lo.x, c.hi.y))]
        pts = " ".join(",".join(cv.xy(p)) for p in corners)
        cv.add(f'<polygon class="corridor" points="{pts}" fill="#ffe9a8" fill-opacity="0.5" '
               f'stroke="#c9a227" stroke-dasharray="6,4" data-angle="{region.angle!r}"/>')

    partition = components_at(list(config.obstacles), radius)
    colors = component_colors(len(partition.components))
    color_of = {}
    for k, comp in enumerate(partition.components):
        for i in comp:
            color_of[i] = colors[k]
    for i, p in enumerate(config.obstacles):
        cx, cy = cv.xy(p)
        member = " member" if i in region.members else ""
        cv.add(f'<circle class="obstacle{member}" data-index="{i}" cx="{cx}" cy="{cy}" '
               f'r="{rho_px}" fill="{color_of[i]}" stroke="#000" stroke-width="1"/>')

    if final is not None:
        for i, (p, q) in enumerate(zip(config.obstacles, final.obstacles)):
            if p == q:
                continue
            cx, cy = cv.xy(q)
            cv.add(f'<circle class="obstacle-final" data-index="{i}" cx="{cx}" cy="{cy}" '
                   f'r="{rho_px}" fill="none" stroke="{color_of[i]}" stroke-dasharray="4,3"/>')

    tx, ty = cv.xy(config.target)
    cv.add(f'<circle class="target" cx="{tx}" cy="{ty}" r="{rho_px}" '
           f'fill="{TARGET_COLOR}" stroke="#000" stroke-width="1.5"/>')
    gx, gy = cv.xy(config.gripper.position)
    cv.add(f'<rect class="gripper" x="{_f(float(gx) - 8)}" y="{_f(float(gy) - 8)}" '
           f'width="16" height="16" fill="#444"/>')

    for k, step in enumerate(steps):
        angle = step["angle"]
        pivot = Point2(*step["pivot"])
        mid = 0.5 * (step["swath"][0] + step["swath"][1])
        a = _to_world((mid, step["front_start"]), angle, pivot)
        b = _to_world((mid, step.get("front_stop", step["front_end"])), angle, pivot)
        (ax, ay), (bx, by) = cv.xy(a), cv.xy(b)
        cv.add(f'<line class="sweep" data-step="{k}" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
               f'stroke="#000" stroke-width="2" marker-end="url(#arrow)"/>')
        cv.add(f'<text class="sweep-label" x="{ax}" y="{ay}" font-size="14">{k + 1}</text>')
    return cv.text()


def _to_world(q: Sequence[float], angle: float, pivot: Point2) -> Point2:
    if angle == 0.0:
        return Point2(q[0], q[1])
    p = rotate(q, angle)
    return Point2(p.x + pivot.x, p.y + pivot.y)
