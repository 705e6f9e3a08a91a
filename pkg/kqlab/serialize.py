"""
JSON interchange for simplicial sets, maps and bisimplicial sets.

Schemas:
- "SSX v1":     {"schema", "name", "top_dim", "cells": [[id, ...], ...],
                 "faces": {id: [{"dim", "id", "epi"}, ...]}}
- "SSX-map v1": {"schema", "source": SSX, "target": SSX,
                 "assignment": {id: {"dim", "id", "epi"}}}
- "BSSX v1":    {"schema", "name", "cells": [{"bidegree": [p, q], "ids": [...]}],
                 "hfaces": {id: [...]}, "vfaces": {id: [...]}}

Ids are written as strings: string ids are kept, any other id becomes a
positional label. Output order is canonical, so decoding and re-encoding a
document reproduces it byte for byte.
"""

import json
import logging
import os
from typing import Any, Callable, Dict, Hashable, List

from .bisimplicial.bisset import BiSimplexRef, BiSimplicialSet
from .core.sset import DEFAULT_TOP_DIM_CAP, SimplexRef, SimplicialMap, SimplicialSet
from .errors import CodecError, KQError

logger = logging.getLogger("kqlab")

SSX_SCHEMA = "SSX v1"
SSX_MAP_SCHEMA = "SSX-map v1"
BSSX_SCHEMA = "BSSX v1"


def _labels(ids: List[Hashable], positional: Callable[[Hashable, int], str]) -> Dict[Hashable, str]:
    labels = {}
    for index, sid in enumerate(ids):
        labels[sid] = sid if isinstance(sid, str) else positional(sid, index)
    if len(set(labels.values())) != len(labels):
        raise CodecError("id labels collide; rename the string ids")
    return labels


def _expect(doc: Any, schema: str) -> Dict[str, Any]:
    if not isinstance(doc, dict):
        raise CodecError(f"expected a {schema} object")
    if doc.get("schema") != schema:
        raise CodecError(f"expected schema '{schema}', got {doc.get('schema')!r}")
    return doc


class SSXEncoder:
    """Encoder for simplicial sets and maps."""

    @staticmethod
    def labels(complex_: SimplicialSet) -> Dict[Hashable, str]:
        ids, positional = [], {}
        for d, level in enumerate(complex_.cells):
            for index, sid in enumerate(level):
                ids.append(sid)
                positional[sid] = f"d{d}.{index}"
        return _labels(ids, lambda sid, _: positional[sid])

    @staticmethod
    def encode(complex_: SimplicialSet) -> Dict[str, Any]:
        labels = SSXEncoder.labels(complex_)

        def ref(r: SimplexRef) -> Dict[str, Any]:
            return {"dim": r.dim, "id": labels[r.nondeg_id], "epi": list(r.epi)}

        return {
            "schema": SSX_SCHEMA,
            "name": complex_.name,
            "top_dim": complex_.top_dim,
            "cells": [[labels[sid] for sid in level] for level in complex_.cells],
            "faces": {labels[sid]: [ref(f) for f in complex_.faces[sid]]
                      for sid in complex_.all_cells() if complex_.faces[sid]},
        }

    @staticmethod
    def encode_map(f: SimplicialMap) -> Dict[str, Any]:
        source_labels = SSXEncoder.labels(f.source)
        target_labels = SSXEncoder.labels(f.target)
        return {
            "schema": SSX_MAP_SCHEMA,
            "source": SSXEncoder.encode(f.source),
            "target": SSXEncoder.encode(f.target),
            "assignment": {source_labels[sid]: {"dim": v.dim, "id": target_labels[v.nondeg_id],
                                                "epi": list(v.epi)}
                           for sid, v in f.assignment.items()},
        }


class SSXDecoder:
    """Decoder for simplicial sets and maps."""

    @staticmethod
    def _ref(raw: Dict[str, Any]) -> SimplexRef:
        return SimplexRef(int(raw["dim"]), str(raw["id"]), tuple(int(e) for e in raw.get("epi", [])))

    @staticmethod
    def decode(doc: Any) -> SimplicialSet:
        doc = _expect(doc, SSX_SCHEMA)
        try:
            cells = [[str(sid) for sid in level] for level in doc["cells"]]
            faces = {str(sid): [SSXDecoder._ref(r) for r in refs] for sid, refs in doc["faces"].items()}
            top_dim = int(doc.get("top_dim", len(cells) - 1))
            complex_ = SimplicialSet(cells, faces, name=doc.get("name", ""),
                                     top_dim_cap=max(DEFAULT_TOP_DIM_CAP, top_dim))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise CodecError(f"malformed {SSX_SCHEMA} document: {exc}") from exc
        except KQError as exc:
            raise CodecError(f"invalid complex: {exc}") from exc
        if complex_.top_dim != top_dim:
            raise CodecError(f"top_dim {top_dim} does not match the cells ({complex_.top_dim})")
        return complex_

    @staticmethod
    def decode_map(doc: Any) -> SimplicialMap:
        doc = _expect(doc, SSX_MAP_SCHEMA)
        source = SSXDecoder.decode(doc.get("source"))
        target = SSXDecoder.decode(doc.get("target"))
        try:
            assignment = {str(sid): SSXDecoder._ref(r) for sid, r in doc["assignment"].items()}
            return SimplicialMap(source, target, assignment)
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise CodecError(f"malformed {SSX_MAP_SCHEMA} document: {exc}") from exc
        except KQError as exc:
            raise CodecError(f"invalid map: {exc}") from exc


class BSSXEncoder:
    """Encoder for bisimplicial sets."""

    @staticmethod
    def labels(complex_: BiSimplicialSet) -> Dict[Hashable, str]:
        ids, positional = [], {}
        for (p, q), level in complex_.cells.items():
            for index, bid in enumerate(level):
                ids.append(bid)
                positional[bid] = f"b{p}.{q}.{index}"
        return _labels(ids, lambda bid, _: positional[bid])

    @staticmethod
    def encode(complex_: BiSimplicialSet) -> Dict[str, Any]:
        labels = BSSXEncoder.labels(complex_)

        def ref(r: BiSimplexRef) -> Dict[str, Any]:
            return {"hdim": r.hdim, "vdim": r.vdim, "id": labels[r.nondeg_id],
                    "epi_h": list(r.epi_h), "epi_v": list(r.epi_v)}

        return {
            "schema": BSSX_SCHEMA,
            "name": complex_.name,
            "cells": [{"bidegree": [p, q], "ids": [labels[bid] for bid in level]}
                      for (p, q), level in complex_.cells.items()],
            "hfaces": {labels[bid]: [ref(f) for f in complex_.hfaces[bid]]
                       for bid in complex_.all_cells() if complex_.hfaces[bid]},
            "vfaces": {labels[bid]: [ref(f) for f in complex_.vfaces[bid]]
                       for bid in complex_.all_cells() if complex_.vfaces[bid]},
        }


class BSSXDecoder:
    """Decoder for bisimplicial sets."""

    @staticmethod
    def _ref(raw: Dict[str, Any]) -> BiSimplexRef:
        return BiSimplexRef(int(raw["hdim"]), int(raw["vdim"]), str(raw["id"]),
                            tuple(int(e) for e in raw.get("epi_h", [])),
                            tuple(int(e) for e in raw.get("epi_v", [])))

    @staticmethod
    def decode(doc: Any) -> BiSimplicialSet:
        doc = _expect(doc, BSSX_SCHEMA)
        try:
            cells = {}
            for entry in doc["cells"]:
                p, q = (int(v) for v in entry["bidegree"])
                cells[(p, q)] = [str(bid) for bid in entry["ids"]]
            hfaces = {str(b): [BSSXDecoder._ref(r) for r in refs] for b, refs in doc["hfaces"].items()}
            vfaces = {str(b): [BSSXDecoder._ref(r) for r in refs] for b, refs in doc["vfaces"].items()}
            return BiSimplicialSet(cells, hfaces, vfaces, name=doc.get("name", ""))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise CodecError(f"malformed {BSSX_SCHEMA} document: {exc}") from exc
        except KQError as exc:
            raise CodecError(f"invalid bisimplicial set: {exc}") from exc


# ==================== Files ====================

def dumps(doc: Dict[str, Any], indent: int = 2) -> str:
    return json.dumps(doc, indent=indent, ensure_ascii=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodecError(f"not JSON: {exc}") from exc


def write_document(path: str, doc: Dict[str, Any]) -> None:
    """Write to a temporary file first, then rename into place."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    temp_path = path + ".tmp"
    with open(temp_path, "w", encoding="utf-8") as f:
        f.write(dumps(doc))
        f.write("\n")
    os.replace(temp_path, path)
    logger.debug(f"wrote {doc.get('schema', 'document')} to {path}")


def read_document(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return loads(f.read())
    except OSError as exc:
        raise CodecError(f"cannot read {path}: {exc}") from exc


def load_complex(path: str) -> SimplicialSet:
    return SSXDecoder.decode(read_document(path))


def load_map(path: str) -> SimplicialMap:
    return SSXDecoder.decode_map(read_document(path))
