"""Reading and writing structure files.

A structure file is a JSON document validated against
``data/structure.schema.json``.  Tensors are stored as sparse entry lists
``[[label, ...], "scalar"]``, inputs first.  :func:`dumps` produces the
canonical text: fixed key order, entries in basis order, zero entries dropped,
one entry per line.  ``dumps(loads(text)) == text`` for canonical text.
"""

from __future__ import annotations

import bisect
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from json.decoder import scanstring
from pathlib import Path

import jsonschema

from .constructions.common import PhiMap
from .fields import Field, FieldError, field_from_descriptor
from .hopf_compat import ComodulePoissonTriLieAlgebra, PoissonTriLieHopfModule, as_hopf_module
from .linalg import LinAlgError, LinearMap, VectorSpace
from .structures import AlgebraStructure, Coaction, HopfStructure, StructureError
from .tensor import SparseTensor
from .trilie import PoissonTriLieAlgebra, PoissonTriLieModule, TriBracket, TriLieModuleAction

FORMAT = "poisson3lie/1"


class StructureFileError(ValueError):
    """A document that does not describe valid structures; carries where it went wrong."""

    def __init__(self, message: str, path=(), line: int | None = None, source: str = "<string>"):
        self.message, self.path, self.line, self.source = message, tuple(path), line, source
        super().__init__(str(self))

    @property
    def pointer(self) -> str:
        return "/" + "/".join(str(p) for p in self.path)

    def __str__(self):
        where = self.source if self.line is None else f"{self.source}:{self.line}"
        return f"{where}: {self.pointer}: {self.message}"


@lru_cache(maxsize=1)
def schema() -> dict:
    text = resources.files("poisson3lie").joinpath("data/structure.schema.json").read_text("utf-8")
    return json.loads(text)


@dataclass(eq=False)
class StructureBundle:
    """Everything one file can hold.  Only ``hopf`` is mandatory."""

    hopf: HopfStructure
    algebra: ComodulePoissonTriLieAlgebra | None = None
    module: PoissonTriLieHopfModule | None = None
    phi: PhiMap | None = None
    name: str = ""
    description: str = ""

    @property
    def field(self) -> Field:
        return self.hopf.field

    @property
    def hopf_module(self) -> PoissonTriLieHopfModule | None:
        """The module section, or ``A`` over itself when there is none."""
        if self.module is not None:
            return self.module
        return as_hopf_module(self.algebra) if self.algebra is not None else None


# -- locating errors ---------------------------------------------------------

_WS = re.compile(r"[ \t\n\r]*")
_DECODER = json.JSONDecoder()


def _line_table(text: str) -> dict:
    """Map each JSON path (tuple of keys/indices) to the line its value starts on."""
    starts = [i for i, ch in enumerate(text) if ch == "\n"]
    table = {}

    def skip(i):
        return _WS.match(text, i).end()

    def value(i, path):
        i = skip(i)
        table[path] = bisect.bisect_right(starts, i - 1) + 1
        ch = text[i]
        if ch == "{":
            i = skip(i + 1)
            if text[i] == "}":
                return i + 1
            while True:
                key, i = scanstring(text, skip(i) + 1)
                i = value(skip(i) + 1, path + (key,))
                i = skip(i)
                if text[i] == "}":
                    return i + 1
                i += 1
        if ch == "[":
            i = skip(i + 1)
            if text[i] == "]":
                return i + 1
            k = 0
            while True:
                i = skip(value(i, path + (k,)))
                k += 1
                if text[i] == "]":
                    return i + 1
                i += 1
        return _DECODER.raw_decode(text, i)[1]

    value(0, ())
    return table


def _line_of(text: str, path) -> int | None:
    table = _line_table(text)
    path = tuple(path)
    while path not in table and path:
        path = path[:-1]
    return table.get(path)


# -- parsing -----------------------------------------------------------------

def _no_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise StructureFileError(f"duplicate key {k!r}")
        out[k] = v
    return out


class _Reader:
    def __init__(self, doc: dict, field: Field):
        self.doc, self.F = doc, field
        self.spaces = {name: VectorSpace(field, tuple(labels)) for name, labels in doc["spaces"].items()}
        self.index = {name: {lab: i for i, lab in enumerate(sp.labels)} for name, sp in self.spaces.items()}

    def space(self, section: str) -> tuple:
        name = self.doc[section]["space"]
        if name not in self.spaces:
            raise StructureFileError(f"unknown space {name!r}", (section, "space"))
        return name, self.spaces[name]

    def tensor(self, path, names, arity=None) -> SparseTensor:
        entries = self.doc
        for p in path:
            entries = entries[p]
        F = self.F
        seen = {}
        for k, (labels, coeff) in enumerate(entries):
            if len(labels) != len(names):
                raise StructureFileError(
                    f"expected {len(names)} labels ({', '.join(names)}), got {len(labels)}", path + (k, 0))
            idx = []
            for j, (lab, name) in enumerate(zip(labels, names)):
                pos = self.index[name].get(lab)
                if pos is None:
                    raise StructureFileError(f"unknown basis label {lab!r} of space {name!r}",
                                             path + (k, 0, j))
                idx.append(pos)
            try:
                val = F.parse(coeff)
            except FieldError as exc:
                raise StructureFileError(str(exc), path + (k, 1)) from None
            idx = tuple(idx)
            if idx in seen:
                raise StructureFileError(f"repeated entry for {tuple(labels)}", path + (k, 0))
            seen[idx] = val
        shape = tuple(self.spaces[n].dim for n in names)
        return SparseTensor.from_entries(F, shape, list(seen.items()), arity)

    def hopf(self) -> HopfStructure:
        h, H = self.space("hopf")
        F = self.F
        mul = self.tensor(("hopf", "mul"), [h, h, h], 2)
        unit = self.tensor(("hopf", "unit"), [h]).to_dense()
        comul = self.tensor(("hopf", "comul"), [h, h, h], 1)
        eps = self.tensor(("hopf", "counit"), [h]).to_dense()
        S = self.tensor(("hopf", "antipode"), [h, h], 1).to_dense()
        alg = AlgebraStructure(H, mul, unit)
        return HopfStructure(alg, comul, LinearMap(H, VectorSpace.scalars(F), eps.reshape(1, -1)),
                             LinearMap(H, H, S.T.copy()))

    def algebra(self, hopf: HopfStructure) -> ComodulePoissonTriLieAlgebra:
        h = self.doc["hopf"]["space"]
        a, A = self.space("algebra")
        mul = self.tensor(("algebra", "mul"), [a, a, a], 2)
        unit = self.tensor(("algebra", "unit"), [a]).to_dense()
        br = self.tensor(("algebra", "bracket"), [a, a, a, a], 3)
        rho = self.tensor(("algebra", "coaction"), [a, a, h], 1)
        base = PoissonTriLieAlgebra(AlgebraStructure(A, mul, unit), TriBracket(A, br))
        return ComodulePoissonTriLieAlgebra(base, hopf, Coaction.from_tensor(A, hopf, rho))

    def module(self, alg: ComodulePoissonTriLieAlgebra) -> PoissonTriLieHopfModule:
        h = self.doc["hopf"]["space"]
        a = self.doc["algebra"]["space"]
        m, M = self.space("module")
        act = self.tensor(("module", "action"), [a, m, m], 2)
        tri = self.tensor(("module", "tri_action"), [a, a, m, m], 3)
        rho = self.tensor(("module", "coaction"), [m, m, h], 1)
        base = PoissonTriLieModule(alg.base, M, act, TriLieModuleAction(alg.space, M, tri))
        return PoissonTriLieHopfModule(alg, base, Coaction.from_tensor(M, alg.hopf, rho))

    def phi(self, alg: ComodulePoissonTriLieAlgebra):
        t = self.tensor(("phi",), [self.doc["hopf"]["space"], self.doc["algebra"]["space"]], 1)
        return PhiMap(alg.hopf, alg, LinearMap(alg.hopf.space, alg.space, t.to_dense().T.copy()))


def _build(doc: dict) -> StructureBundle:
    try:
        field = field_from_descriptor(doc["field"])
    except FieldError as exc:
        raise StructureFileError(str(exc), ("field", "p")) from None
    r = _Reader(doc, field)
    section = "hopf"
    try:
        hopf = r.hopf()
        alg = mod = phi = None
        if "algebra" in doc:
            section = "algebra"
            alg = r.algebra(hopf)
        if "module" in doc:
            section = "module"
            mod = r.module(alg)
        if "phi" in doc:
            section = "phi"
            phi = r.phi(alg)
    except (StructureError, LinAlgError) as exc:
        raise StructureFileError(str(exc), (section,)) from None
    return StructureBundle(hopf, alg, mod, phi, doc.get("name", ""), doc.get("description", ""))


def loads(text: str, source: str = "<string>") -> StructureBundle:
    """Parse and validate a structure document; raises :class:`StructureFileError`."""
    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise StructureFileError(exc.msg, (), exc.lineno, source) from None
    except StructureFileError as exc:
        raise StructureFileError(exc.message, (), None, source) from None
    errors = sorted(jsonschema.Draft202012Validator(schema()).iter_errors(doc),
                    key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        err = errors[0]
        path = tuple(err.absolute_path)
        raise StructureFileError(err.message, path, _line_of(text, path), source)
    try:
        return _build(doc)
    except StructureFileError as exc:
        raise StructureFileError(exc.message, exc.path, _line_of(text, exc.path), source) from None


def load(path) -> StructureBundle:
    path = Path(path)
    try:
        text = path.read_text("utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise StructureFileError(f"cannot read file: {exc}", (), None, str(path)) from None
    return loads(text, str(path))


# -- writing -----------------------------------------------------------------

def _entries(t, spaces) -> list:
    F = spaces[0].field
    if not isinstance(t, SparseTensor):
        t = SparseTensor.from_dense(F, t)
    return [[[sp.labels[i] for i, sp in zip(idx, spaces)], F.format(v)] for idx, v in t.entries()]


def _space_names(bundle: StructureBundle) -> dict:
    """One named space per role present in the bundle."""
    roles = [("H", bundle.hopf.space)]
    if bundle.algebra is not None:
        roles.append(("A", bundle.algebra.space))
    if bundle.module is not None:
        roles.append(("M", bundle.module.space))
    return dict(roles)


def to_document(bundle: StructureBundle) -> dict:
    h = bundle.hopf
    spaces = _space_names(bundle)
    H = h.space
    doc = {"format": FORMAT}
    if bundle.name:
        doc["name"] = bundle.name
    if bundle.description:
        doc["description"] = bundle.description
    doc["field"] = h.field.descriptor()
    doc["spaces"] = {name: list(sp.labels) for name, sp in spaces.items()}
    doc["hopf"] = {
        "space": "H",
        "mul": _entries(h.mul, [H] * 3),
        "unit": _entries(h.unit, [H]),
        "comul": _entries(h.comul, [H] * 3),
        "counit": _entries(h.eps, [H]),
        "antipode": _entries(h.S, [H, H]),
    }
    a = bundle.algebra
    if a is not None:
        A = a.space
        doc["algebra"] = {
            "space": "A",
            "mul": _entries(a.mul, [A] * 3),
            "unit": _entries(a.unit, [A]),
            "bracket": _entries(a.bracket, [A] * 4),
            "coaction": _entries(a.rho, [A, A, H]),
        }
    m = bundle.module
    if m is not None:
        M, A = m.space, a.space
        doc["module"] = {
            "space": "M",
            "action": _entries(m.act, [A, M, M]),
            "tri_action": _entries(m.tri, [A, A, M, M]),
            "coaction": _entries(m.rho, [M, M, H]),
        }
    if bundle.phi is not None:
        doc["phi"] = _entries(bundle.phi.tensor, [H, a.space])
    return doc


def _compact(x) -> str:
    return json.dumps(x, ensure_ascii=False, separators=(", ", ": "))


def _format(obj, depth=0) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict) and any(isinstance(v, (dict, list)) for v in obj.values()):
        body = ",\n".join(f"{inner}{_compact(k)}: {_format(v, depth + 1)}" for k, v in obj.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(obj, list) and obj and all(isinstance(x, list) for x in obj):
        return "[\n" + ",\n".join(inner + _compact(x) for x in obj) + "\n" + pad + "]"
    return _compact(obj)


def dumps(bundle: StructureBundle) -> str:
    """Canonical text of ``bundle``."""
    return _format(to_document(bundle)) + "\n"


def dump(bundle: StructureBundle, path) -> None:
    Path(path).write_text(dumps(bundle), "utf-8")


def canonicalize(text: str) -> str:
    return dumps(loads(text))


__all__ = [
    "FORMAT",
    "StructureBundle",
    "StructureFileError",
    "canonicalize",
    "dump",
    "dumps",
    "load",
    "loads",
    "schema",
    "to_document",
]
