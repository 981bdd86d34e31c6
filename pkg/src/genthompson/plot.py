"""SVG rendering of a PL map over a window."""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction

from .plmap import PLMap

WIDTH = HEIGHT = 400
MARGIN = 20


def decimal12(q: Fraction) -> str:
    """Display-only decimal with 12 significant digits."""
    with localcontext() as ctx:
        ctx.prec = 12
        d = Decimal(q.numerator) / Decimal(q.denominator)
    s = format(d.normalize(), "f")
    return "0" if s in ("-0", "") else s


def graph_points(f: PLMap, a, b) -> list:
    a, b = Fraction(a), Fraction(b)
    pts = [(a, f.eval(a))]
    pts += [p for p in f.points if a < p[0] < b]
    pts.append((b, f.eval(b)))
    return pts


def emit_plot(f: PLMap, window=(0, 1)) -> str:
    a, b = (Fraction(w) for w in window)
    if b <= a:
        raise ValueError("window must have a < b")
    pts = graph_points(f, a, b)
    ylo = min(a, pts[0][1])
    yhi = max(b, pts[-1][1])
    sx = Fraction(WIDTH - 2 * MARGIN) / (b - a)
    sy = Fraction(HEIGHT - 2 * MARGIN) / (yhi - ylo)

    def px(x, y):
        return (decimal12(MARGIN + (x - a) * sx), decimal12(HEIGHT - MARGIN - (y - ylo) * sy))

    poly = " ".join(",".join(px(x, y)) for x, y in pts)
    diag = " ".join(",".join(px(t, t)) for t in (max(a, ylo), min(b, yhi)))
    labels = "\n".join(
        f'  <circle cx="{cx}" cy="{cy}" r="2"><title>({x}, {y})</title></circle>'
        for (x, y), (cx, cy) in ((p, px(*p)) for p in pts[1:-1])
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
        f'  <polyline points="{diag}" fill="none" stroke="#bbb" stroke-dasharray="4 3"/>\n'
        f'  <polyline points="{poly}" fill="none" stroke="black" stroke-width="1.5"/>\n'
        + (labels + "\n" if labels else "")
        + "</svg>\n"
    )
