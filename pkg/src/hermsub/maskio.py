"""Mask documents: exact-text serialization, builtin catalog, CSV rendering.

A mask document is a JSON text with fields rows, cols, offset and coeffs,
where coeffs is a list (over positions) of rows x cols nested arrays whose
scalars are exact-rational strings "p/q" or "p/q+r/s i".  Parsing and
serialization round-trip bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .errors import MaskFormatError
from .rational import CRat, format_crat, parse_crat
from .seq import MatSeq, matseq
from .subdivision import DyadicSamples

__all__ = [
    "MaskDocument",
    "parse_mask_document",
    "serialize_mask_document",
    "builtin_mask_names",
    "load_builtin_mask",
    "load_mask_argument",
    "samples_to_csv",
]

BUILTIN_PACKAGE = "hermsub.masks"


@dataclass(frozen=True)
class MaskDocument:
    mask: MatSeq
    name: str | None = None
    metadata: dict = field(default_factory=dict)


def parse_mask_document(text: str) -> MaskDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MaskFormatError(f"not valid JSON: {exc}") from exc
    try:
        rows = int(raw["rows"])
        cols = int(raw["cols"])
        offset = int(raw["offset"])
        grid = raw["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MaskFormatError(f"missing or malformed field: {exc}") from exc
    coeffs = []
    try:
        for entry in grid:
            coeffs.append(
                tuple(tuple(parse_crat(s) for s in row) for row in entry)
            )
    except (TypeError, ValueError) as exc:
        raise MaskFormatError(f"bad coefficient entry: {exc}") from exc
    try:
        mask = matseq(rows, cols, offset, coeffs)
    except Exception as exc:
        raise MaskFormatError(str(exc)) from exc
    meta = raw.get("metadata", {})
    if not isinstance(meta, dict):
        raise MaskFormatError("metadata must be an object")
    name = raw.get("name")
    return MaskDocument(mask=mask, name=name, metadata=dict(meta))


def serialize_mask_document(doc: MaskDocument) -> str:
    mask = doc.mask
    payload = {
        "name": doc.name,
        "rows": mask.rows,
        "cols": mask.cols,
        "offset": mask.offset,
        "coeffs": [
            [[format_crat(x) for x in row] for row in m] for m in mask.coeffs
        ],
        "metadata": dict(sorted(doc.metadata.items())),
    }
    if doc.name is None:
        del payload["name"]
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def builtin_mask_names() -> list[str]:
    files = resources.files(BUILTIN_PACKAGE)
    return sorted(
        p.name[: -len(".json")] for p in files.iterdir() if p.name.endswith(".json")
    )


def load_builtin_mask(name: str) -> MaskDocument:
    files = resources.files(BUILTIN_PACKAGE)
    path = files / f"{name}.json"
    try:
        text = path.read_text()
    except (FileNotFoundError, OSError) as exc:
        raise MaskFormatError(
            f"unknown builtin mask {name!r}; available: {', '.join(builtin_mask_names())}"
        ) from exc
    return parse_mask_document(text)


def load_mask_argument(ref: str) -> MaskDocument:
    """Resolve a CLI mask argument: a file path, or a builtin catalog name."""
    import os

    if os.path.exists(ref):
        with open(ref, "r", encoding="utf-8") as fh:
            return parse_mask_document(fh.read())
    try:
        return load_builtin_mask(ref)
    except MaskFormatError:
        raise MaskFormatError(
            f"{ref!r} is neither a readable file nor a builtin mask name "
            f"(builtins: {', '.join(builtin_mask_names())})"
        )


def _render_float(x: CRat) -> str:
    if x.is_real():
        return f"{float(x.re):.17g}"
    return f"{float(x.re):.17g}{float(x.im):+.17g}i"


def samples_to_csv(samples: DyadicSamples, as_float: bool = False) -> str:
    """CSV with columns x, then the matrix entries row-major.

    Values render as exact rational strings by default, or as decimals with
    17 significant digits when `as_float` is set.
    """
    header = ["x"] + [
        f"v{i}{j}" for i in range(samples.rows) for j in range(samples.cols)
    ]
    lines = [",".join(header)]
    for x, m in zip(samples.abscissae(), samples.values):
        cells = [f"{x.numerator}/{x.denominator}" if not as_float else f"{float(x):.17g}"]
        for row in m:
            for entry in row:
                cells.append(_render_float(entry) if as_float else format_crat(entry))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
