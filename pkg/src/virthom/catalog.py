"""Loading and saving quotient catalogs.

A catalog is a JSON file::

    {"quotients": [
        {"name": "mod2", "kind": "free", "rank": 2,
         "images": [[1, 0, 3, 2], [2, 3, 0, 1]],
         "flags": {"p_group": 2, "solvable": true}},
        {"name": "surf2.mod2", "kind": "surface", "rank": 4, "genus": 2,
         "images": [[1, 0], [0, 1], [0, 1], [0, 1]]}
    ]}

Images are 0-based point permutations, one per generator.  Loading runs
every entry through the regular-action verifier, so a corrupted file
fails loudly rather than producing a quietly wrong group.

The package ships a default catalog (14 entries, orders 2 through 972)
under ``virthom/data/``; ``default_catalog()`` loads it once and caches.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence, Union

from .quotients import FiniteQuotient, build_from_images
from .words import Presentation

__all__ = ["load_catalog", "loads_catalog", "save_catalog", "default_catalog"]

_default: Optional[list[FiniteQuotient]] = None


class CatalogError(ValueError):
    """The catalog file is malformed or describes an invalid quotient."""


def loads_catalog(text: str) -> list[FiniteQuotient]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "quotients" not in doc:
        raise CatalogError('catalog must be an object with a "quotients" list')
    entries = doc["quotients"]
    if not isinstance(entries, list):
        raise CatalogError('"quotients" must be a list')
    out = []
    for pos, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise CatalogError(f"entry {pos} is not an object")
        try:
            name = entry["name"]
            kind = entry["kind"]
            rank = entry["rank"]
            images = entry["images"]
        except KeyError as exc:
            raise CatalogError(f"entry {pos} is missing key {exc}") from exc
        if kind not in ("free", "surface"):
            raise CatalogError(f"entry {pos} ({name!r}): unknown kind {kind!r}")
        genus = entry.get("genus")
        if kind == "surface":
            if genus is None:
                raise CatalogError(f"entry {pos} ({name!r}): surface needs a genus")
            pres = Presentation(kind="surface", rank=rank, genus=genus)
        else:
            pres = Presentation(kind="free", rank=rank)
        flags = entry.get("flags", {})
        if not isinstance(flags, dict):
            raise CatalogError(f"entry {pos} ({name!r}): flags must be an object")
        try:
            q = build_from_images(pres, images, name=name, flags=flags)
        except (ValueError, TypeError, IndexError) as exc:
            raise CatalogError(f"entry {pos} ({name!r}): {exc}") from exc
        out.append(q)
    return out


def load_catalog(path: Union[str, Path]) -> list[FiniteQuotient]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    return loads_catalog(text)


def save_catalog(entries: Sequence[FiniteQuotient], path: Union[str, Path]) -> None:
    doc = {"quotients": []}
    for q in entries:
        item = {
            "name": q.name,
            "kind": q.presentation.kind,
            "rank": q.presentation.rank,
            "images": [a.tolist() for a in q.gen_act],
        }
        if q.presentation.kind == "surface":
            item["genus"] = q.presentation.genus
        if q.flags:
            item["flags"] = q.flags
        doc["quotients"].append(item)
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def default_catalog() -> list[FiniteQuotient]:
    """The shipped catalog (loaded once per process)."""
    global _default
    if _default is None:
        text = (
            resources.files("virthom").joinpath("data/default_catalog.json").read_text()
        )
        _default = loads_catalog(text)
    return list(_default)
