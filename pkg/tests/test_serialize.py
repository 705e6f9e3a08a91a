"""
Tests for the SSX and BSSX interchange formats.
"""

import json

import pytest

from kqlab.bisimplicial import diag_extend, external_product
from kqlab.core import boundary, empty, horn, horn_inclusion, standard_simplex, standard_sphere
from kqlab.errors import CodecError
from kqlab.serialize import (BSSXDecoder, BSSXEncoder, SSXDecoder, SSXEncoder, dumps, load_complex,
                             load_map, loads, read_document, write_document)


@pytest.mark.parametrize("complex_", [standard_simplex(2), horn(3, 1), standard_sphere(2), empty()],
                         ids=["simplex", "horn", "sphere", "empty"])
def test_ssx_canonical_form(complex_):
    doc = SSXEncoder.encode(complex_)
    decoded = SSXDecoder.decode(doc)
    assert decoded.counts() == complex_.counts()
    assert decoded.audit() == []
    assert dumps(SSXEncoder.encode(decoded)) == dumps(doc)


def test_ssx_document_shape():
    doc = SSXEncoder.encode(standard_simplex(1))
    assert doc["schema"] == "SSX v1"
    assert doc["top_dim"] == 1
    assert doc["cells"] == [["d0.0", "d0.1"], ["d1.0"]]
    assert doc["faces"]["d1.0"] == [{"dim": 0, "id": "d0.1", "epi": []},
                                    {"dim": 0, "id": "d0.0", "epi": []}]


def test_ssx_rejects_bad_documents():
    with pytest.raises(CodecError):
        SSXDecoder.decode({"schema": "SSX v2"})
    with pytest.raises(CodecError):
        SSXDecoder.decode([1, 2])
    with pytest.raises(CodecError):
        SSXDecoder.decode({"schema": "SSX v1", "cells": [["a"], ["e"]],
                           "faces": {"e": [{"dim": 0, "id": "a"}, {"dim": 0, "id": "b"}]}})
    with pytest.raises(CodecError):
        SSXDecoder.decode({"schema": "SSX v1", "top_dim": 3, "cells": [["a"]], "faces": {}})


def test_ssx_map_round_trip():
    doc = SSXEncoder.encode_map(horn_inclusion(2, 1))
    assert doc["schema"] == "SSX-map v1"
    f = SSXDecoder.decode_map(doc)
    assert f.is_mono()
    assert f.violations() == []
    assert dumps(SSXEncoder.encode_map(f)) == dumps(doc)


def test_ssx_map_must_be_simplicial():
    doc = SSXEncoder.encode_map(horn_inclusion(2, 1))
    doc["assignment"]["d0.0"] = {"dim": 0, "id": "d0.2", "epi": []}
    with pytest.raises(CodecError):
        SSXDecoder.decode_map(doc)


def test_bssx_round_trip():
    complex_ = diag_extend(horn(2, 1))
    doc = BSSXEncoder.encode(complex_)
    assert doc["schema"] == "BSSX v1"
    decoded = BSSXDecoder.decode(doc)
    assert decoded.counts() == complex_.counts()
    assert decoded.audit() == []
    assert dumps(BSSXEncoder.encode(decoded)) == dumps(doc)


def test_bssx_rejects_wrong_schema():
    doc = BSSXEncoder.encode(external_product(standard_simplex(1), boundary(2)))
    doc["schema"] = "SSX v1"
    with pytest.raises(CodecError):
        BSSXDecoder.decode(doc)


def test_loads_rejects_garbage():
    with pytest.raises(CodecError):
        loads("{not json")


def test_files_round_trip(tmp_path):
    path = tmp_path / "nested" / "horn.json"
    write_document(str(path), SSXEncoder.encode(horn(2, 0)))
    assert not (tmp_path / "nested" / "horn.json.tmp").exists()
    assert json.loads(path.read_text(encoding="utf-8"))["schema"] == "SSX v1"
    assert load_complex(str(path)).counts() == (3, 2)

    map_path = tmp_path / "inclusion.json"
    write_document(str(map_path), SSXEncoder.encode_map(horn_inclusion(2, 0)))
    assert load_map(str(map_path)).is_mono()


def test_missing_file(tmp_path):
    with pytest.raises(CodecError):
        read_document(str(tmp_path / "absent.json"))
