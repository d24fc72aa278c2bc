"""Generator specs and corpus manifests.

A generator spec is a colon-separated prefix expression::

    boolean | zmod:N | chain:N | zero-mul:N | matrix-b:K
    group-semiring-b:G          (G = zN, v4 or a group JSON file)
    opposite:<spec> | product:<spec>:<spec> | path/to/semiring.json
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .semiring import (
    FiniteGroup,
    FiniteSemiring,
    boolean,
    chain,
    cyclic_group,
    group_from_json,
    group_semiring_b,
    klein_group,
    load_semiring,
    matrix_b,
    opposite,
    product,
    zero_mul,
    zmod,
)


class SpecError(ValueError):
    pass


def _int(tokens: list[str], what: str) -> int:
    if not tokens:
        raise SpecError(f"{what} needs a size")
    try:
        return int(tokens.pop(0))
    except ValueError as exc:
        raise SpecError(f"{what}: not an integer") from exc


def parse_group(token: str, base_dir: Path | None = None) -> FiniteGroup:
    t = token.lower()
    if t == "v4":
        return klein_group()
    if t.startswith("z") and t[1:].isdigit():
        return cyclic_group(int(t[1:]))
    path = Path(token) if base_dir is None else base_dir / token
    if path.suffix == ".json" and path.exists():
        return group_from_json(json.loads(path.read_text()))
    raise SpecError(f"unknown group {token!r}")


def _parse(tokens: list[str], base_dir: Path | None) -> FiniteSemiring:
    if not tokens:
        raise SpecError("incomplete spec")
    head = tokens.pop(0)
    key = head.lower().replace("_", "-")
    if key in ("boolean", "b"):
        return boolean()
    if key == "zmod":
        return zmod(_int(tokens, "zmod"))
    if key == "chain":
        return chain(_int(tokens, "chain"))
    if key == "zero-mul":
        return zero_mul(_int(tokens, "zero-mul"))
    if key == "matrix-b":
        return matrix_b(_int(tokens, "matrix-b"))
    if key == "group-semiring-b":
        if not tokens:
            raise SpecError("group-semiring-b needs a group")
        return group_semiring_b(parse_group(tokens.pop(0), base_dir))
    if key == "opposite":
        return opposite(_parse(tokens, base_dir))
    if key == "product":
        left = _parse(tokens, base_dir)
        right = _parse(tokens, base_dir)
        return product(left, right)
    if head.endswith(".json"):
        path = Path(head) if base_dir is None else base_dir / head
        return load_semiring(path)
    raise SpecError(f"unknown generator {head!r}")


def from_spec(spec: str, base_dir: str | Path | None = None) -> FiniteSemiring:
    tokens = spec.split(":")
    S = _parse(tokens, Path(base_dir) if base_dir is not None else None)
    if tokens:
        raise SpecError(f"trailing tokens in spec: {':'.join(tokens)}")
    return S


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    semiring: FiniteSemiring
    base: bool = True  # False for generated pairwise products
    module_size: int | None = None  # overrides the manifest-wide limit


@dataclass
class CorpusManifest:
    entries: list[CorpusEntry]
    product_limit: int = 16
    module_semiring_limit: int = 4
    module_size_limit: int = 4
    oracle_limit: int = 5
    sources: list[str] = field(default_factory=list)

    def module_size_for(self, entry: CorpusEntry) -> int:
        return self.module_size_limit if entry.module_size is None else entry.module_size

    def base_entries(self) -> list[CorpusEntry]:
        return [e for e in self.entries if e.base]

    def product_pairs(self) -> list[tuple[CorpusEntry, CorpusEntry]]:
        base = self.base_entries()
        return [
            (a, b)
            for i, a in enumerate(base)
            for b in base[i:]
            if a.semiring.n * b.semiring.n <= self.product_limit
        ]


def manifest_from_json(obj: dict, base_dir: str | Path | None = None) -> CorpusManifest:
    entries = []
    sources = []
    for item in obj["entries"]:
        if isinstance(item, str):
            item = {"spec": item}
        spec = item.get("spec") or item.get("path")
        if spec is None:
            raise SpecError("manifest entry needs 'spec' or 'path'")
        S = from_spec(spec, base_dir)
        entries.append(CorpusEntry(item.get("name", spec), S, module_size=item.get("module_size")))
        sources.append(spec)
    limits = obj.get("limits", {})
    manifest = CorpusManifest(
        entries,
        product_limit=limits.get("product", 16),
        module_semiring_limit=limits.get("module_semiring", 4),
        module_size_limit=limits.get("module_size", 4),
        oracle_limit=limits.get("oracle", 5),
        sources=sources,
    )
    if obj.get("pairwise_products", False):
        for a, b in manifest.product_pairs():
            manifest.entries.append(
                CorpusEntry(f"product:{a.name}:{b.name}", product(a.semiring, b.semiring), base=False)
            )
    return manifest


def load_manifest(path: str | Path) -> CorpusManifest:
    path = Path(path)
    return manifest_from_json(json.loads(path.read_text()), path.parent)


def default_manifest(pairwise_products: bool = True) -> CorpusManifest:
    text = resources.files("semiring_lab").joinpath("data/default_corpus.json").read_text()
    obj = json.loads(text)
    obj["pairwise_products"] = pairwise_products and obj.get("pairwise_products", True)
    return manifest_from_json(obj)
