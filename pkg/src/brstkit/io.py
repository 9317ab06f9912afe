"""JSON documents for presentations (.alg), tensors (.tensor) and basis changes (.map)."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .coeff import ParameterSet
from .ncpoly import GeneratorInfo, Alphabet, Presentation
from .ybtensor import StructureData, TensorSquareOp


class SpecError(ValueError):
    """Malformed input document."""


@dataclass
class AlgebraSpec:
    presentation: Presentation
    structure: Optional[StructureData] = None
    names: object = None  # GhostNames, when the document declares one
    chi0: object = None  # scalar text for chi0 when it is not a generator
    metadata: dict = field(default_factory=dict)

    def substitute(self, bindings: Mapping[str, object]) -> "AlgebraSpec":
        if not bindings:
            return self
        p = self.presentation.substitute(bindings)
        s = self.structure.substitute(bindings) if self.structure is not None else None
        chi0 = self.chi0
        if isinstance(chi0, str) and chi0 in bindings:
            chi0 = str(bindings[chi0])
        return AlgebraSpec(p, s, self.names, chi0, dict(self.metadata))


def _names_from(doc):
    from .brst.omega import GhostNames

    if not doc:
        return None
    return GhostNames(tuple(doc["constraints"]), tuple(doc["ghosts"]), tuple(doc["antighosts"]), doc.get("chi0"))


def spec_from_doc(doc: Mapping) -> AlgebraSpec:
    try:
        params = ParameterSet(doc.get("parameters", []))
        gens = [
            GeneratorInfo(g["name"], g.get("parity", "even"), int(g.get("ghost_number", 0)), int(g.get("precedence", i)))
            for i, g in enumerate(doc["generators"])
        ]
        alphabet = Alphabet(gens)
        meta = dict(doc.get("metadata", {}))
        names = _names_from(meta.pop("names", None))
        shell = Presentation(alphabet, params, [], meta.get("label", ""))
        polys = [shell.parse(str(r["lhs"])) - shell.parse(str(r["rhs"])) for r in doc.get("relations", [])]
    except (KeyError, TypeError) as exc:
        raise SpecError(f"malformed algebra document: {exc}") from None
    pmeta = {"names": names} if names is not None else {}
    pres = Presentation.from_polys(alphabet, params, polys, meta.get("label", ""), pmeta)
    pres.validate()
    structure, chi0 = None, None
    sdoc = doc.get("structure")
    if sdoc:
        structure = StructureData.from_json(sdoc, params)
        chi0 = sdoc.get("chi0")
    return AlgebraSpec(pres, structure, names, chi0, meta)


def spec_to_doc(spec: AlgebraSpec) -> dict:
    p = spec.presentation
    meta = dict(spec.metadata)
    meta.setdefault("label", p.label)
    if spec.names is not None:
        meta["names"] = spec.names.to_json()
    doc = {
        "parameters": list(p.params.names),
        "generators": [
            {"name": g.name, "parity": g.parity, "ghost_number": g.ghost_number, "precedence": g.precedence}
            for g in p.alphabet.gens
        ],
        "relations": [{"lhs": p.alphabet.render_word(r.lhs), "rhs": str(r.rhs)} for r in p.relations],
        "metadata": meta,
    }
    if spec.structure is not None:
        sdoc = spec.structure.to_json()
        sdoc.pop("parameters", None)
        if spec.chi0 is not None:
            sdoc["chi0"] = spec.chi0
        doc["structure"] = sdoc
    return doc


def spec_from_presentation(p: Presentation, structure=None, chi0=None, **metadata) -> AlgebraSpec:
    return AlgebraSpec(p, structure, p.metadata.get("names"), chi0, metadata)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from None


def load_alg(path) -> AlgebraSpec:
    return spec_from_doc(_read_json(path))


def dumps_alg(spec: AlgebraSpec) -> str:
    return json.dumps(spec_to_doc(spec), indent=1) + "\n"


def save_alg(spec: AlgebraSpec, path):
    with open(path, "w") as fh:
        fh.write(dumps_alg(spec))


def load_tensor(path) -> TensorSquareOp:
    try:
        return TensorSquareOp.from_json(_read_json(path))
    except (KeyError, TypeError) as exc:
        raise SpecError(f"{path}: malformed tensor document: {exc}") from None


def save_tensor(op: TensorSquareOp, path):
    with open(path, "w") as fh:
        fh.write(op.dumps() + "\n")


def load_map(path, source: Presentation, target: Presentation = None):
    """A basis change document: {"map": {gen: expr}, "inverse": {gen: expr}}."""
    from .brst.basis import BasisChange

    doc = _read_json(path)
    if "map" not in doc:
        raise SpecError(f"{path}: a basis change needs a 'map' object")
    inverse = doc.get("inverse")
    if inverse is not None and target is None:
        target = source
    return BasisChange.from_text(source, doc["map"], None, inverse, target, doc.get("label", ""))


def save_map(bc, path):
    with open(path, "w") as fh:
        json.dump(bc.to_json(), fh, indent=1)
        fh.write("\n")


def read_text_or_file(arg: str) -> str:
    """An expression given inline or as the path of a file holding it."""
    if os.path.isfile(arg):
        with open(arg) as fh:
            return " ".join(line.split("#", 1)[0].strip() for line in fh if line.strip())
    return arg
