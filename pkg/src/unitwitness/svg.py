"""Deterministic SVG rendering of planar witness sets.

Points are circles, unit edges solid lines, claim pairs dashed lines;
edge color encodes the witness's derivation depth.  Identical witnesses
render to byte-identical SVG.
"""

from __future__ import annotations


class SvgError(ValueError):
    pass


_PALETTE = ("#1b6ca8", "#2a9d8f", "#e07a1f", "#b5435a",
            "#6d4fa0", "#4a6b2a", "#8c5b30", "#555555")

_WIDTH = 800.0


def _fmt(v):
    return "%.4f" % v


def render_svg(w):
    if w.dim != 2:
        raise SvgError("SVG rendering requires dimension 2")
    pts = [(float(p.coords[0]), float(p.coords[1])) for p in w.points]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    span_x = xmax - xmin or 1.0
    span_y = ymax - ymin or 1.0
    margin = 0.05 * max(span_x, span_y)
    xmin -= margin
    ymin -= margin
    span_x += 2 * margin
    span_y += 2 * margin
    scale = _WIDTH / span_x
    height = span_y * scale

    def tx(p):
        return (p[0] - xmin) * scale, height - (p[1] - ymin) * scale

    depth = w.derivation.depth() if w.derivation else 0
    color = _PALETTE[depth % len(_PALETTE)]
    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append('<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
               'width="%s" height="%s" viewBox="0 0 %s %s">'
               % (_fmt(_WIDTH), _fmt(height), _fmt(_WIDTH), _fmt(height)))
    out.append('<rect width="100%" height="100%" fill="white"/>')
    for (i, j) in w.unit_edges:
        (x1, y1), (x2, y2) = tx(pts[i]), tx(pts[j])
        out.append('<line x1="%s" y1="%s" x2="%s" y2="%s" '
                   'stroke="%s" stroke-width="1"/>'
                   % (_fmt(x1), _fmt(y1), _fmt(x2), _fmt(y2), color))
    for c in w.claims:
        if len(c.indices) < 2:
            continue
        pairs = [(c.indices[k], c.indices[k + 1])
                 for k in range(0, len(c.indices) - 1, 2)]
        for (i, j) in pairs:
            (x1, y1), (x2, y2) = tx(pts[i]), tx(pts[j])
            out.append('<line x1="%s" y1="%s" x2="%s" y2="%s" '
                       'stroke="#c0392b" stroke-width="1.5" '
                       'stroke-dasharray="6,4"/>'
                       % (_fmt(x1), _fmt(y1), _fmt(x2), _fmt(y2)))
    for p in pts:
        x, y = tx(p)
        out.append('<circle cx="%s" cy="%s" r="2.5" fill="#222222"/>'
                   % (_fmt(x), _fmt(y)))
    out.append('</svg>')
    return "\n".join(out) + "\n"
