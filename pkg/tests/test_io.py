import importlib.util
import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from conftest import DATA
from poisson3lie.constructions import graded_nambu, group_algebra_example, regular_hopf_module
from poisson3lie.fields import GF, QQ
from poisson3lie.io import StructureBundle, StructureFileError, canonicalize, dumps, load, loads

GOOD = ["qc2_regular", "qc2_trivial", "qc2_hopf_module", "f3c3_regular", "nambu27", "qc2_bad_antipode"]
MALFORMED = {
    "malformed_zero_denominator": ("/hopf/mul/3/1", 15, "zero denominator"),
    "malformed_unknown_key": ("/algebra", 33, "'grading' was unexpected"),
    "malformed_bad_prime": ("/field/p", 4, "not a prime"),
}


@pytest.mark.parametrize("name", GOOD)
def test_corpus_is_canonical(name):
    text = (DATA / f"{name}.json").read_text("utf-8")
    assert canonicalize(text) == text


def test_corpus_matches_generator(tmp_path):
    spec = importlib.util.spec_from_file_location(
        "build_corpus", Path(__file__).resolve().parents[1] / "scripts" / "build_corpus.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    assert mod.main(["--out-dir", str(tmp_path)]) == 0
    made = sorted(p.name for p in tmp_path.iterdir())
    assert made == sorted(f"{n}.json" for n in GOOD + list(MALFORMED))
    for name in made:
        assert (tmp_path / name).read_bytes() == (DATA / name).read_bytes(), name


@pytest.mark.parametrize("name", sorted(MALFORMED))
def test_malformed_files_report_location(name):
    pointer, line, fragment = MALFORMED[name]
    with pytest.raises(StructureFileError) as exc:
        load(DATA / f"{name}.json")
    e = exc.value
    assert e.pointer == pointer and e.line == line and fragment in e.message
    assert str(e).startswith(f"{DATA / name}.json:{line}: {pointer}: ")


def test_round_trip_preserves_structures():
    a, phi = group_algebra_example(2)
    m = regular_hopf_module(a)
    text = dumps(StructureBundle(a.hopf, a, m, phi, name="x"))
    b = loads(text)
    assert b.name == "x"
    assert (b.module.act.to_dense() == m.act.to_dense()).all()
    assert (b.phi.map.matrix == phi.map.matrix).all()
    assert dumps(b) == text


def test_nambu_round_trip():
    a = graded_nambu(3)
    text = dumps(StructureBundle(a.hopf, a))
    b = loads(text)
    assert b.field == GF(3)
    assert (b.algebra.bracket.to_dense() == a.bracket.to_dense()).all()
    assert b.hopf_module.dim == 27


def _doc(**changes):
    doc = json.loads((DATA / "qc2_regular.json").read_text("utf-8"))
    for path, value in changes.items():
        node = doc
        keys = path.split(".")
        for k in keys[:-1]:
            node = node[k]
        if value is None:
            del node[keys[-1]]
        else:
            node[keys[-1]] = value
    return json.dumps(doc)


@pytest.mark.parametrize("changes,fragment", [
    ({"format": "poisson3lie/9"}, "'poisson3lie/1' was expected"),
    ({"hopf.mul": [[["1", "h", "1"], "1"]]}, "unknown basis label 'h'"),
    ({"hopf.mul": [[["1", "1"], "1"]]}, "expected 3 labels"),
    ({"hopf.mul": [[["1", "1", "1"], "1"], [["1", "1", "1"], "2"]]}, "repeated entry"),
    ({"hopf.unit": [[["1"], "0.5"]]}, "0.5"),
    ({"spaces.A": ["1", "1"]}, "non-unique"),
    ({"algebra": None}, "'algebra' is a dependency of 'phi'"),
    ({"hopf.space": "K"}, "K"),
])
def test_rejections(changes, fragment):
    with pytest.raises(StructureFileError) as exc:
        loads(_doc(**changes), "t.json")
    assert fragment in str(exc.value)


def test_duplicate_json_key_rejected():
    text = (DATA / "qc2_trivial.json").read_text("utf-8").replace('"format"', '"name": "a",\n  "format"', 1)
    with pytest.raises(StructureFileError, match="duplicate key"):
        loads(text)


def test_invalid_json_reports_line():
    with pytest.raises(StructureFileError) as exc:
        loads('{\n  "format": "poisson3lie/1",\n  oops\n}', "f.json")
    assert exc.value.line == 3


scalars = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), scalars), max_size=12),
       st.sampled_from([QQ, GF(7)]))
def test_round_trip_is_identity_on_canonical_forms(entries, field):
    """Arbitrary (not necessarily associative) product data survives a write/read cycle."""
    labels = ["1", "g", "g^2"]
    seen, rows = set(), []
    for i, j, k, c in entries:
        if (i, j, k) in seen:
            continue
        seen.add((i, j, k))
        # prime fields take integer literals only
        text = str(c) if field is QQ else str(c.numerator)
        rows.append([[labels[i], labels[j], labels[k]], text])
    base = json.loads((DATA / "f3c3_regular.json").read_text("utf-8"))
    base["field"] = field.descriptor()
    for key in ("algebra", "phi"):
        base.pop(key)
    base["spaces"] = {"H": labels}
    base["hopf"]["mul"] = rows
    first = canonicalize(json.dumps(base))
    assert canonicalize(first) == first
    back = loads(first).hopf.mul.to_dense()
    want = field.zeros((3, 3, 3))
    for (lab, c) in rows:
        idx = tuple(labels.index(x) for x in lab)
        want[idx] = field.scalar(Fraction(c))
    assert all(t[1] != "0" for t in json.loads(first)["hopf"]["mul"])
    assert (back == want).all()
