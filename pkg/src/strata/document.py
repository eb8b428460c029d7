"""Result documents: one JSON schema shared by every subcommand.

A document always carries the input checksum and the verbatim coordinate
text of the points; sections (depths, layers, contours, medians) are present
when the producing subcommand computed them.  Emission is canonical (fixed
key order, two-space indent, shortest-round-trip floats, angles clipped to 12
significant digits), so re-emitting a parsed document reproduces the exact
bytes.
"""

from __future__ import annotations

import hashlib
import json
import math
from typing import Dict, List, Optional, Sequence, Tuple

from .contours import DepthContour, LevelSet
from .depth import Layer

__all__ = [
    "FORMAT_TAG",
    "sig12",
    "checksum_of",
    "build_document",
    "contours_section",
    "layers_section",
    "emit_document",
    "parse_document",
]

FORMAT_TAG = "strata-result/1"


def sig12(x: float) -> float:
    """Clip to 12 significant digits (angle serialization precision)."""
    if x == 0.0 or not math.isfinite(x):
        return x
    return float(f"{x:.12g}")


def checksum_of(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def build_document(
    raw_points: Sequence[Tuple[str, str]],
    checksum: str,
    *,
    method: Optional[str] = None,
    depths: Optional[Sequence[int]] = None,
    set_depth: Optional[int] = None,
    layers: Optional[List[dict]] = None,
    contours: Optional[List[dict]] = None,
    medians: Optional[Sequence[Tuple[float, float]]] = None,
) -> Dict:
    doc: Dict = {
        "format": FORMAT_TAG,
        "input_sha256": checksum,
        "points": [[x, y] for x, y in raw_points],
    }
    if method is not None:
        doc["method"] = method
    if depths is not None:
        doc["depths"] = [int(v) for v in depths]
    if set_depth is not None:
        doc["set_depth"] = int(set_depth)
    if layers is not None:
        doc["layers"] = layers
    if contours is not None:
        doc["contours"] = contours
    if medians is not None:
        doc["medians"] = [[float(x), float(y)] for x, y in medians]
    return doc


def layers_section(layer_seq: Sequence[Layer]) -> List[dict]:
    return [
        {
            "index": layer.index,
            "vertices": [int(v) for v in layer.vertices],
            "edges": [[int(a), int(b)] for a, b in layer.edges],
            "components": [[int(v) for v in comp] for comp in layer.components],
            "cycles": [[int(v) for v in cyc] for cyc in layer.cycles],
        }
        for layer in layer_seq
    ]


def contours_section(ls: LevelSet) -> List[dict]:
    out = []
    for contour in ls.contours:
        if contour.level == 1:
            out.append({"level": 1, "hull": [int(v) for v in contour.polygon_indices]})
        else:
            curves = []
            for curve in contour.curves:
                curves.append(
                    [
                        {
                            "center": [arc.circle.center.x, arc.circle.center.y],
                            "radius": arc.circle.radius,
                            "start": sig12(arc.start_angle),
                            "end": sig12(arc.end_angle),
                            "ccw": arc.ccw,
                        }
                        for arc in curve
                    ]
                )
            out.append({"level": contour.level, "curves": curves})
    return out


def emit_document(doc: Dict) -> str:
    """Canonical text for a document; stable under parse -> emit."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def parse_document(text: str) -> Dict:
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_TAG:
        raise ValueError(f"not a {FORMAT_TAG} document")
    return doc
