import json
import os
from fractions import Fraction

import pytest

from hermsub.errors import MaskFormatError
from hermsub.maskio import (
    MaskDocument,
    builtin_mask_names,
    load_builtin_mask,
    parse_mask_document,
    samples_to_csv,
    serialize_mask_document,
)
from hermsub.rational import CRat
from hermsub.seq import matseq
from hermsub.subdivision import basis_samples

from conftest import bspline_mask, hermite_cubic_mask


def test_round_trip_bit_exact(hermite_cubic):
    doc = MaskDocument(mask=hermite_cubic, name="hc", metadata={"accuracy": "4"})
    text = serialize_mask_document(doc)
    back = parse_mask_document(text)
    assert back == doc
    assert serialize_mask_document(back) == text


def test_complex_entries_round_trip():
    m = matseq(1, 1, -2, [((CRat(Fraction(1, 2), Fraction(-3, 7)),),), ((CRat(2),),)])
    doc = MaskDocument(mask=m)
    assert parse_mask_document(serialize_mask_document(doc)).mask == m


def test_builtin_catalog_contents():
    names = builtin_mask_names()
    for want in [f"bspline-{m}" for m in range(1, 7)] + ["dirac", "hermite-cubic"]:
        assert want in names
    for m in range(1, 7):
        assert load_builtin_mask(f"bspline-{m}").mask == bspline_mask(m)
    assert load_builtin_mask("hermite-cubic").mask == hermite_cubic_mask()


def test_catalog_files_match_regeneration():
    # the checked-in files are exactly what the constructor re-emits
    import sys

    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "scripts"))
    import regenerate_masks

    from importlib import resources

    for doc in regenerate_masks.catalog():
        text = serialize_mask_document(doc)
        stored = (resources.files("hermsub.masks") / f"{doc.name}.json").read_text()
        assert stored == text


def test_unknown_builtin():
    with pytest.raises(MaskFormatError):
        load_builtin_mask("nope")


def test_parse_errors():
    with pytest.raises(MaskFormatError):
        parse_mask_document("{not json")
    with pytest.raises(MaskFormatError):
        parse_mask_document(json.dumps({"rows": 1, "cols": 1}))
    with pytest.raises(MaskFormatError):
        parse_mask_document(
            json.dumps({"rows": 1, "cols": 1, "offset": 0, "coeffs": [[["x"]]]})
        )


def test_csv_exact_and_float(b2):
    s = basis_samples(b2, 1)
    exact = samples_to_csv(s)
    lines = exact.strip().splitlines()
    assert lines[0] == "x,v00"
    assert lines[1].split(",") == ["0/1", "1/2"]
    flt = samples_to_csv(s, as_float=True)
    assert flt.splitlines()[1].split(",")[1] == "0.5"


def test_csv_matrix_layout(hermite_cubic):
    s = basis_samples(hermite_cubic, 1, window=(0, 0))
    lines = samples_to_csv(s).strip().splitlines()
    assert lines[0] == "x,v00,v01,v10,v11"
