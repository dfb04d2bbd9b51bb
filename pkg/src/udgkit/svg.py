"""Minimal SVG drawings of embeddings: points, edges, strips, optional disks."""

from __future__ import annotations

from typing import Any, List, Optional, Tuple
from xml.sax.saxutils import escape

from .graph import W

VIEWPORT = 1000
PAD = 40

_UPPER = "#c0392b"
_LOWER = "#2471a3"
_PLAIN = "#222222"


class _Frame:
    """Affine map from the data box onto the fixed viewport (y points up)."""

    def __init__(self, xs: List[float], ys: List[float], equal: bool) -> None:
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        w = (x1 - x0) or 1.0
        h = (y1 - y0) or 1.0
        span = VIEWPORT - 2 * PAD
        self.sx, self.sy = span / w, span / h
        if equal:
            self.sx = self.sy = min(self.sx, self.sy)
        self.x0, self.y0 = x0, y0
        self.oy = PAD + span

    def __call__(self, x: float, y: float) -> Tuple[float, float]:
        return PAD + (x - self.x0) * self.sx, self.oy - (y - self.y0) * self.sy


def embedding_svg(emb: Any, title: str = "", circles: bool = False, equal_aspect: Optional[bool] = None,
                  labels: bool = True) -> str:
    """Render ``emb`` into a 1000x1000 SVG document.

    When the parameters carry both ``delta`` and ``sigma`` the two strips
    ``[0, delta] x [-sigma, sigma]`` and ``[0, delta] x [1 - sigma, 1 + sigma]``
    are shaded.  ``circles`` adds the radius-1/2 disks of the intersection
    model.  Aspect ratio is kept unless the data box is very elongated (strip
    embeddings), in which case each axis is stretched to fill the viewport.
    """
    pts = emb.as_float()
    xs = [p[0] for p in pts] or [0.0]
    ys = [p[1] for p in pts] or [0.0]
    params = emb.params
    strips = params.delta is not None and params.sigma is not None
    if strips:
        d, s = float(params.delta), float(params.sigma)
        xs += [0.0, d]
        ys += [-s, 1 + s]
    if circles:
        xs += [min(xs) - 0.5, max(xs) + 0.5]
        ys += [min(ys) - 0.5, max(ys) + 0.5]
    if equal_aspect is None:
        w = (max(xs) - min(xs)) or 1.0
        h = (max(ys) - min(ys)) or 1.0
        equal_aspect = 1 / 20 <= w / h <= 20
    fr = _Frame(xs, ys, equal_aspect)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEWPORT}" height="{VIEWPORT}" '
        f'viewBox="0 0 {VIEWPORT} {VIEWPORT}">',
        f'<rect x="0" y="0" width="{VIEWPORT}" height="{VIEWPORT}" fill="white"/>',
    ]
    if title:
        out.append(f'<title>{escape(title)}</title>')
        out.append(f'<text x="{PAD}" y="{PAD / 2:.1f}" font-size="16" font-family="sans-serif">{escape(title)}</text>')
    if strips:
        for lo, hi, name in ((-s, s, "D1"), (1 - s, 1 + s, "D2")):
            ax, ay = fr(0.0, hi)
            bx, by = fr(d, lo)
            out.append(f'<rect class="strip" data-name="{name}" x="{ax:.2f}" y="{ay:.2f}" '
                       f'width="{max(bx - ax, 1):.2f}" height="{max(by - ay, 1):.2f}" '
                       f'fill="#f4d03f" fill-opacity="0.35" stroke="#b7950b"/>')
    if circles:
        for x, y in pts:
            cx, cy = fr(x, y)
            out.append(f'<ellipse class="disk" cx="{cx:.2f}" cy="{cy:.2f}" rx="{0.5 * fr.sx:.2f}" '
                       f'ry="{0.5 * fr.sy:.2f}" fill="none" stroke="#aaaaaa" stroke-width="0.8"/>')
    for u, v in emb.target.edges():
        ax, ay = fr(*pts[u])
        bx, by = fr(*pts[v])
        out.append(f'<line class="edge" x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
                   f'stroke="#555555" stroke-width="0.7"/>')
    for v, (x, y) in enumerate(pts):
        cx, cy = fr(x, y)
        colour = _PLAIN if emb.part is None else (_UPPER if emb.part[v] == W else _LOWER)
        out.append(f'<circle class="vertex" cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="{colour}"/>')
        if labels:
            out.append(f'<text x="{cx + 5:.2f}" y="{cy - 5:.2f}" font-size="11" font-family="sans-serif">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
