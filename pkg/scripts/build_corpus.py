"""Regenerate the structure files bundled in ``src/poisson3lie/data``.

Run from the repository root:  python3 scripts/build_corpus.py [--out-dir DIR]
The test suite writes the corpus to a temporary directory and compares it with
the committed files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from poisson3lie import HopfStructure, LinearMap
from poisson3lie.cli import main as cli
from poisson3lie.constructions import group_algebra_example
from poisson3lie.io import StructureBundle, dumps, load

DATA = Path(__file__).resolve().parents[1] / "src" / "poisson3lie" / "data"

GENERATED = {
    "qc2_regular.json": ["gen", "group-algebra", "--n", "2"],
    "qc2_trivial.json": ["gen", "group-algebra", "--n", "2", "--coaction", "trivial"],
    "qc2_hopf_module.json": ["gen", "group-algebra", "--n", "2", "--module", "tensor-h"],
    "f3c3_regular.json": ["gen", "group-algebra", "--n", "3", "--p", "3"],
    "nambu27.json": ["gen", "nambu", "--p", "3"],
}


def bad_antipode() -> str:
    a, _ = group_algebra_example(2)
    h = a.hopf
    zero = LinearMap(h.space, h.space, h.field.zeros((h.dim, h.dim)))
    bad = HopfStructure(h.algebra, h.comul, h.counit, zero)
    return dumps(StructureBundle(bad, name="Q[C2] with antipode 0"))


def malformed(text: str) -> dict:
    """Broken variants of a good file; each must be rejected with exit code 2."""
    return {
        "malformed_zero_denominator.json": text.replace('[["g", "g", "1"], "1"]', '[["g", "g", "1"], "1/0"]', 1),
        "malformed_unknown_key.json": text.replace('"space": "A",', '"space": "A",\n    "grading": [],', 1),
        "malformed_bad_prime.json": text.replace('{"kind": "Q"}', '{"kind": "Fp", "p": 4}', 1),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=Path, default=DATA)
    out = ap.parse_args(argv).out_dir
    out.mkdir(parents=True, exist_ok=True)
    for name, args in GENERATED.items():
        if cli(args + ["--out", str(out / name)]) != 0:
            return 1
    (out / "qc2_bad_antipode.json").write_text(bad_antipode(), "utf-8")
    for name, text in malformed((out / "qc2_regular.json").read_text("utf-8")).items():
        (out / name).write_text(text, "utf-8")
    load(out / "nambu27.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
