"""Wire formats: JSON documents, DOT, CSV, and the hand-rolled tiling SVG.

Every emitter is deterministic byte-for-byte for a fixed input: collections
are serialized in canonical order and ties everywhere break on the canonical
mask order.
"""

from __future__ import annotations

import json

from .cyclic import InvalidInputError, KSet, bits_of, format_labels
from .necklace import GrassmannNecklace, Permutation, necklace_from_permutation
from .collection import Tiling, WSCollection
from .graphs import LabeledGraph

FORMAT_VERSION = 1

CSV_HEADER = "Interior Size,Equivalence Class,Exchange Graph Order,Exchange Graph"


def collection_document(coll: WSCollection) -> dict:
    return {
        "n": coll.n,
        "k": coll.k,
        "necklace": [list(s.elements()) for s in coll.necklace.sets],
        "sets": [list(bits_of(m)) for m in coll.sets],
    }


def collection_from_document(doc: dict) -> WSCollection:
    n = doc["n"]
    necklace = GrassmannNecklace.of(doc["necklace"], n)
    masks = sorted(KSet.of(fam, n).bits for fam in doc["sets"])
    return WSCollection(necklace, tuple(masks))


def necklace_document(necklace: GrassmannNecklace) -> dict:
    return {
        "n": necklace.n,
        "k": necklace.k,
        "permutation": str(necklace.permutation),
        "sets": [list(s.elements()) for s in necklace.sets],
    }


def necklace_from_document(doc: dict) -> GrassmannNecklace:
    return GrassmannNecklace.of(doc["sets"], doc["n"])


def graph_document(graph: LabeledGraph) -> dict:
    """Graph as 1-indexed adjacency lists plus the vertex payloads."""
    doc = {
        "order": graph.order,
        "size": graph.size,
        "adjacency": {str(v): ns for v, ns in graph.adjacency_lists().items()},
    }
    if graph.necklace is not None:
        doc["n"] = graph.necklace.n
        doc["k"] = graph.necklace.k
        doc["permutation"] = str(graph.necklace.permutation)
        doc["vertices"] = [[list(bits_of(m)) for m in v] for v in graph.vertices]
    return doc


def emit_json(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def parse_json(text: str) -> dict:
    return json.loads(text)


def emit_dot(graph: LabeledGraph) -> str:
    """DOT text; vertex label is the index, tooltip lists the member sets."""
    lines = ["graph exchange {"]
    for idx, payload in enumerate(graph.vertices):
        if graph.necklace is not None:
            tip = ",".join("{" + format_labels(bits_of(m)) + "}" for m in payload)
            lines.append(f'  {idx} [label="{idx}", tooltip="{tip}"];')
        else:
            lines.append(f'  {idx} [label="{idx}"];')
    for i, j in sorted(graph.edges):
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_csv(rows) -> str:
    """Classification rows in the four reference columns."""
    lines = [CSV_HEADER]
    for row in rows:
        name = row.catalog_name or row.certificate.hex()[:12]
        lines.append(f"{row.interior},{row.canonical},{row.graph_order},{name}")
    return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def emit_svg(tiling: Tiling, scale: float = 120.0, pad: float = 40.0) -> str:
    """Tiling picture: filled face polygons plus labeled vertices.

    Face polygons sort their corners by angle around the face centroid; the
    output is presentation-only and byte-stable for a fixed format version.
    """
    pos = tiling.positions
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    width = (maxx - minx) * scale + 2 * pad
    height = (maxy - miny) * scale + 2 * pad

    def at(mask):
        x, y = pos[mask]
        return (pad + (x - minx) * scale, pad + (maxy - y) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" data-format-version="{FORMAT_VERSION}">'
    ]
    import math

    for label, fill, faces in (
        ("white", "#ffffff", tiling.white_faces),
        ("black", "#b0b0b0", tiling.black_faces),
    ):
        for face_label, clique in sorted(faces.items()):
            pts = [at(m) for m in clique]
            cx = sum(p[0] for p in pts) / len(pts)
            cy = sum(p[1] for p in pts) / len(pts)
            ordered = sorted(
                zip(clique, pts),
                key=lambda mp: math.atan2(mp[1][1] - cy, mp[1][0] - cx),
            )
            path = " ".join(f"{_fmt(px)},{_fmt(py)}" for _, (px, py) in ordered)
            title = format_labels(bits_of(face_label))
            out.append(
                f'<polygon class="{label}-face" points="{path}" fill="{fill}" '
                f'stroke="#202020" stroke-width="1"><title>{title}</title></polygon>'
            )
    for mask in tiling.collection.sets:
        x, y = at(mask)
        out.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="#202020"/>'
        )
        out.append(
            f'<text x="{_fmt(x + 5)}" y="{_fmt(y - 5)}" font-size="11" '
            f'font-family="sans-serif">{format_labels(bits_of(mask))}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def svg_structure(svg_text: str) -> dict:
    """Counts of faces and labeled vertices parsed back out of the SVG text."""
    return {
        "whiteFaces": svg_text.count('class="white-face"'),
        "blackFaces": svg_text.count('class="black-face"'),
        "vertices": svg_text.count("<circle"),
    }


def parse_necklace_argument(text: str) -> GrassmannNecklace:
    """Necklace from a JSON document string or a bare permutation string."""
    text = text.strip()
    if text.startswith("{"):
        try:
            doc = parse_json(text)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"malformed necklace document: {exc}") from exc
        return necklace_from_document(doc)
    return necklace_from_permutation(Permutation.from_string(text))


def parse_set_list(text: str, n: int) -> list[int]:
    """Comma-separated sets, each in the space-separated label syntax."""
    masks = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise InvalidInputError("empty set in list")
        try:
            labels = [int(t.strip("()")) for t in chunk.split()]
        except ValueError as exc:
            raise InvalidInputError(f"bad set {chunk!r}") from exc
        masks.append(KSet.of(labels, n).bits)
    return masks
