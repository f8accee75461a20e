"""SVG pictures of planar toric diagrams and their Reeb subdivisions.

One lattice unit is ``SCALE`` pixels, y points up, and the picture has a
``MARGIN`` pixel border. Geometry is written with at most four decimals; every
number shown as text is an exact ``p/q`` string.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from fractions import Fraction
from typing import Optional, Sequence

from .formatting import rational_str
from .polytope import barycenter, polygon_vertices_ccw
from .reeb import mean_indices
from .toric import ToricDiagram

SCALE = 40
MARGIN = 20
POINT_RADIUS = 4

_STYLE = """
.grid { stroke: #ddd; stroke-width: 1 }
.outline { fill: none; stroke: #000; stroke-width: 2 }
.pyramid { fill: #9cf; fill-opacity: 0.35; stroke: #369; stroke-width: 1 }
.vertex { fill: #000 }
.boundary { fill: #fff; stroke: #000 }
.interior { fill: #c00 }
.reeb { fill: #063 }
.delta { font: 11px sans-serif; text-anchor: middle }
"""


def _num(x) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{float(f):.4f}".rstrip("0").rstrip(".")


class _Canvas:
    def __init__(self, lo, hi):
        self.lo, self.hi = lo, hi
        self.width = (hi[0] - lo[0]) * SCALE + 2 * MARGIN
        self.height = (hi[1] - lo[1]) * SCALE + 2 * MARGIN

    def x(self, v) -> str:
        return _num((Fraction(v) - self.lo[0]) * SCALE + MARGIN)

    def y(self, v) -> str:
        return _num((self.hi[1] - Fraction(v)) * SCALE + MARGIN)

    def points(self, pts) -> str:
        return " ".join(f"{self.x(p[0])},{self.y(p[1])}" for p in pts)


def render_svg(D: ToricDiagram, reeb: Optional[Sequence] = None) -> str:
    """SVG text for a 2-D diagram; with ``reeb`` also its pyramids and their mean indices."""
    if D.dim != 2:
        raise ValueError("only 2-dimensional diagrams can be rendered")
    xs = [v[0] for v in D.vertices]
    ys = [v[1] for v in D.vertices]
    cv = _Canvas((min(xs), min(ys)), (max(xs), max(ys)))
    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "width": str(cv.width),
        "height": str(cv.height),
        "viewBox": f"0 0 {cv.width} {cv.height}",
    })
    ET.SubElement(svg, "style").text = _STYLE

    grid = ET.SubElement(svg, "g", {"class": "grid"})
    for gx in range(cv.lo[0], cv.hi[0] + 1):
        ET.SubElement(grid, "line", {"x1": cv.x(gx), "y1": cv.y(cv.lo[1]), "x2": cv.x(gx), "y2": cv.y(cv.hi[1])})
    for gy in range(cv.lo[1], cv.hi[1] + 1):
        ET.SubElement(grid, "line", {"x1": cv.x(cv.lo[0]), "y1": cv.y(gy), "x2": cv.x(cv.hi[0]), "y2": cv.y(gy)})

    if reeb is not None:
        reports = mean_indices(D, reeb)
        v = tuple(Fraction(c) for c in reeb)
        pyr = ET.SubElement(svg, "g", {"class": "pyramids"})
        for rep in reports:
            tri = [v] + [tuple(map(Fraction, p)) for p in rep.facet_vertices]
            ET.SubElement(pyr, "polygon", {
                "class": "pyramid",
                "data-facet": str(rep.facet_index),
                "points": cv.points(tri),
            })
            c = barycenter(tri)
            label = ET.SubElement(pyr, "text", {
                "class": "delta",
                "data-facet": str(rep.facet_index),
                "x": cv.x(c[0]),
                "y": cv.y(c[1]),
            })
            label.text = f"Δ={rational_str(rep.mean_index)}"

    ET.SubElement(svg, "polygon", {"class": "outline", "points": cv.points(polygon_vertices_ccw(D.polytope))})

    lp = D.lattice_points
    pts = ET.SubElement(svg, "g", {"class": "lattice-points"})
    for kind, group in (("vertex", lp.vertices), ("boundary", lp.boundary), ("interior", lp.interior)):
        for p in sorted(group):
            ET.SubElement(pts, "circle", {
                "class": kind,
                "cx": cv.x(p[0]),
                "cy": cv.y(p[1]),
                "r": str(POINT_RADIUS),
                "data-point": f"{p[0]},{p[1]}",
            })
    if reeb is not None:
        ET.SubElement(svg, "circle", {
            "class": "reeb",
            "cx": cv.x(v[0]),
            "cy": cv.y(v[1]),
            "r": str(POINT_RADIUS),
            "data-point": ",".join(rational_str(c) for c in v),
        })
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode") + "\n"
