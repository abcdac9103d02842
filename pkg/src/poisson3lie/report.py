"""Structured verdicts with re-evaluable witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .linalg import VectorSpace
from .tensor import SparseTensor

PASS, FAIL, WARN = "pass", "fail", "warn"


@dataclass
class Witness:
    """A basis tuple where an identity fails, with both sides evaluated there.

    ``index`` holds the integer basis indices, ``inputs`` the matching labels;
    ``lhs``/``rhs`` map output basis labels to scalars (as strings).
    """

    index: tuple
    inputs: tuple
    lhs: dict = field(default_factory=dict)
    rhs: dict = field(default_factory=dict)
    note: str = ""

    def to_dict(self) -> dict:
        d = {"inputs": list(self.inputs), "index": list(self.index), "lhs": self.lhs, "rhs": self.rhs}
        if self.note:
            d["note"] = self.note
        return d

    def __str__(self):
        s = "(" + ", ".join(self.inputs) + ")"
        if self.lhs or self.rhs:
            s += f": lhs={_fmt_vec(self.lhs)} rhs={_fmt_vec(self.rhs)}"
        if self.note:
            s += f" [{self.note}]"
        return s


def _fmt_vec(d: dict) -> str:
    if not d:
        return "0"
    return " + ".join(f"{c}*{k}" if c != "1" else k for k, c in d.items())


@dataclass
class CheckResult:
    name: str
    status: str
    anchor: str = ""
    witnesses: list = field(default_factory=list)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None

    def to_dict(self) -> dict:
        d = {"name": self.name, "verdict": self.status}
        if self.anchor:
            d["anchor"] = self.anchor
        if self.detail:
            d["detail"] = self.detail
        if self.witnesses:
            d["witnesses"] = [w.to_dict() for w in self.witnesses]
        return d


@dataclass
class CheckReport:
    title: str
    results: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def extend(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        for r in other.results:
            if prefix:
                r = CheckResult(prefix + r.name, r.status, r.anchor, r.witnesses, r.detail)
            self.results.append(r)
        for k, v in other.info.items():
            self.info.setdefault(k, v)
        return self

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(r.name == name for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if r.status == FAIL]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "results": [r.to_dict() for r in self.results],
            "info": self.info,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def render(self) -> str:
        lines = [f"== {self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.results:
            line = f"  [{r.status.upper():4}] {r.name}"
            if r.anchor:
                line += f"  ({r.anchor})"
            lines.append(line)
            if r.detail:
                lines.append(f"         {r.detail}")
            for w in r.witnesses[:5]:
                lines.append(f"         witness {w}")
            if len(r.witnesses) > 5:
                lines.append(f"         ... {len(r.witnesses) - 5} more witnesses")
        for k, v in self.info.items():
            lines.append(f"  {k}: {v}")
        return "\n".join(lines)


def _output_vector(t: SparseTensor, n_in: int, index: tuple, out_spaces) -> dict:
    if t.nnz == 0:
        return {}
    sel = np.all(t.coords[:, :n_in] == np.asarray(index, dtype=np.int64), axis=1)
    out = {}
    for c, v in zip(t.coords[sel], t.values[sel]):
        label = "⊗".join(sp.labels[int(i)] for sp, i in zip(out_spaces, c[n_in:]))
        out[label] = t.field.format(v)
    return out


def identity_failures(
    lhs: SparseTensor,
    rhs: SparseTensor,
    in_spaces,
    out_spaces,
    prefix: tuple = (),
    prefix_spaces=(),
    limit: int | None = 1,
) -> list:
    """Witnesses for input tuples where ``lhs`` and ``rhs`` differ, in lexicographic order."""
    n_in = len(in_spaces)
    if lhs.shape != rhs.shape:
        raise ValueError(f"identity sides have shapes {lhs.shape} and {rhs.shape}")
    diff = lhs - rhs
    if diff.nnz == 0:
        return []
    bad = diff.coords[:, :n_in]
    first = np.r_[True, np.any(bad[1:] != bad[:-1], axis=1)] if len(bad) else np.zeros(0, bool)
    tuples = bad[first]
    if limit is not None:
        tuples = tuples[:limit]
    out = []
    spaces = list(prefix_spaces) + list(in_spaces)
    for tup in tuples:
        idx = tuple(int(i) for i in tup)
        full = tuple(prefix) + idx
        out.append(
            Witness(
                index=full,
                inputs=tuple(sp.labels[i] for sp, i in zip(spaces, full)),
                lhs=_output_vector(lhs, n_in, idx, out_spaces),
                rhs=_output_vector(rhs, n_in, idx, out_spaces),
            )
        )
    return out


def check_identity(
    name: str,
    anchor: str,
    lhs: SparseTensor,
    rhs: SparseTensor,
    in_spaces,
    out_spaces,
    all_witnesses: bool = False,
) -> CheckResult:
    ws = identity_failures(lhs, rhs, in_spaces, out_spaces, limit=None if all_witnesses else 1)
    return CheckResult(name, FAIL if ws else PASS, anchor, ws)


def check_identity_chunked(
    name: str,
    anchor: str,
    chunks: Iterable,
    first_space: VectorSpace,
    in_spaces,
    out_spaces,
    all_witnesses: bool = False,
) -> CheckResult:
    """Like :func:`check_identity` with the first input slot fixed per chunk.

    ``chunks`` yields ``(i, lhs_i, rhs_i)`` in increasing ``i``; the scan stops
    at the first failing chunk unless ``all_witnesses`` is set.
    """
    ws = []
    for i, lhs, rhs in chunks:
        found = identity_failures(
            lhs, rhs, in_spaces, out_spaces, prefix=(i,), prefix_spaces=(first_space,),
            limit=None if all_witnesses else 1,
        )
        ws.extend(found)
        if found and not all_witnesses:
            break
    return CheckResult(name, FAIL if ws else PASS, anchor, ws)
