from __future__ import annotations

import json

import pytest

from semiring_lab.corpus import SpecError, from_spec, load_manifest, parse_group
from semiring_lab.semiring import boolean, is_isomorphic, matrix_b, opposite, save_semiring, zmod
from semiring_lab.verify import SUITES, run_suite


@pytest.mark.parametrize(
    "spec, size",
    [
        ("boolean", 2),
        ("zmod:6", 6),
        ("chain:4", 4),
        ("zero-mul:3", 3),
        ("matrix-b:2", 16),
        ("group-semiring-b:z2", 4),
        ("group-semiring-b:v4", 16),
        ("opposite:matrix-b:2", 16),
        ("product:boolean:zmod:4", 8),
        ("product:product:boolean:boolean:chain:3", 12),
    ],
)
def test_spec_sizes(spec, size):
    assert from_spec(spec).n == size


def test_opposite_spec():
    assert from_spec("opposite:matrix-b:2").mul == opposite(matrix_b(2)).mul


@pytest.mark.parametrize("spec", ["", "zmod", "zmod:x", "nonsense", "boolean:extra", "group-semiring-b:q8"])
def test_bad_specs(spec):
    with pytest.raises(SpecError):
        from_spec(spec)


def test_spec_with_files(tmp_path):
    save_semiring(boolean(), tmp_path / "a.json")
    save_semiring(zmod(3), tmp_path / "b.json")
    P = from_spec("product:a.json:b.json", tmp_path)
    assert P.n == 6
    group = {"elements": ["e", "g"], "identity": 0, "op": [[0, 1], [1, 0]]}
    (tmp_path / "g.json").write_text(json.dumps(group))
    assert parse_group("g.json", tmp_path).n == 2
    assert from_spec("group-semiring-b:g.json", tmp_path).n == 4


def test_default_corpus(corpus):
    names = [e.name for e in corpus.base_entries()]
    assert names[0] == "boolean" and "opposite:matrix-b:2" in names
    assert all(f"zmod:{n}" in names for n in range(2, 13))
    products = [e for e in corpus.entries if not e.base]
    assert products and all(e.semiring.n <= 16 for e in products)
    assert len(products) == len(corpus.product_pairs())


def test_manifest_file(tmp_path):
    save_semiring(zmod(4), tmp_path / "z4.json")
    manifest = {
        "entries": ["boolean", {"path": "z4.json", "name": "ring", "module_size": 2}],
        "limits": {"product": 8},
        "pairwise_products": True,
    }
    (tmp_path / "corpus.json").write_text(json.dumps(manifest))
    m = load_manifest(tmp_path / "corpus.json")
    assert [e.name for e in m.entries] == ["boolean", "ring", "product:boolean:boolean", "product:boolean:ring"]
    assert m.module_size_for(m.entries[1]) == 2 and m.module_size_for(m.entries[0]) == 4
    assert is_isomorphic(m.entries[1].semiring, zmod(4))


def test_suites_on_small_manifest(tmp_path):
    (tmp_path / "c.json").write_text(json.dumps({"entries": ["boolean", "zmod:4", "zero-mul:2"], "pairwise_products": True}))
    m = load_manifest(tmp_path / "c.json")
    for suite in SUITES:
        outcome = run_suite(suite, m)
        assert outcome.passed, (suite, [c.to_json() for c in outcome.failures])
        assert all(c.status != "fail" or c.witness is not None for c in outcome.checks)


def test_parallel_run_keeps_order(tmp_path):
    (tmp_path / "c.json").write_text(json.dumps({"entries": ["boolean", "zmod:4", "zmod:6", "chain:3"]}))
    m = load_manifest(tmp_path / "c.json")
    serial = run_suite("equivalence", m).to_json()
    parallel = run_suite("equivalence", m, jobs=2).to_json()
    assert serial == parallel


def test_unknown_suite(corpus):
    with pytest.raises(KeyError):
        run_suite("nope", corpus)
