#!/usr/bin/env python3
"""Regenerate the builtin mask catalog from the construction solver.

Writes bspline-1..6, dirac and hermite-cubic into src/hermsub/masks/.
The checked-in files must match the output byte for byte; run this after
touching the constructor and commit the result.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hermsub.maskio import MaskDocument, serialize_mask_document
from hermsub.seq import dirac
from hermsub.sum_rules import construct_hermite_mask

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "hermsub", "masks")


def catalog():
    for m in range(1, 7):
        mask = construct_hermite_mask(1, m - 1, (0, m))
        yield MaskDocument(
            mask=mask,
            name=f"bspline-{m}",
            metadata={
                "accuracy": str(m),
                "source": "construct",
                "notes": f"B-spline mask of order {m}: 2^{{-{m}}} (1+z)^{m}",
            },
        )
    yield MaskDocument(
        mask=dirac(1),
        name="dirac",
        metadata={"source": "builtin", "notes": "unit pulse; no sum rules"},
    )
    hc = construct_hermite_mask(2, 3, (-1, 1), interpolatory=True)
    yield MaskDocument(
        mask=hc,
        name="hermite-cubic",
        metadata={
            "accuracy": "4",
            "interpolatory": "true",
            "source": "construct",
            "notes": "two-point cubic Hermite interpolatory scheme (r=2)",
        },
    )


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    for doc in catalog():
        path = os.path.join(OUT_DIR, f"{doc.name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(serialize_mask_document(doc))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
