#!/usr/bin/env python3
"""Regenerate the shipped default catalog.

Builds the fourteen quotients (orders 2 through 972) from scratch and
writes them to src/virthom/data/default_catalog.json.  Every entry goes
back through the regular-action verifier on load, so this script is the
authority on *which* quotients ship, not on their validity.

Usage: python3 tools/gen_catalog.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from virthom.catalog import save_catalog  # noqa: E402
from virthom.quotients import (  # noqa: E402
    build_from_images,
    build_heisenberg_mod_p,
    build_mod_m_abelian,
    compose_tower,
)
from virthom.words import Presentation  # noqa: E402


def main() -> None:
    entries = []

    free2 = Presentation(kind="free", rank=2)
    entries.append(
        build_from_images(
            free2,
            [[1, 0], [1, 0]],
            name="parity",
            flags={"p_group": 2, "solvable": True},
        )
    )
    entries.append(
        build_mod_m_abelian(2, 2, name="mod2", flags={"p_group": 2, "solvable": True})
    )
    entries.append(
        build_heisenberg_mod_p(2, name="heis2", flags={"p_group": 2, "solvable": True})
    )
    entries.append(
        build_mod_m_abelian(2, 3, name="mod3", flags={"p_group": 3, "solvable": True})
    )
    entries.append(
        build_mod_m_abelian(2, 4, name="mod4", flags={"p_group": 2, "solvable": True})
    )
    entries.append(
        build_mod_m_abelian(2, 5, name="mod5", flags={"p_group": 5, "solvable": True})
    )
    entries.append(
        build_heisenberg_mod_p(3, name="heis3", flags={"p_group": 3, "solvable": True})
    )

    base = build_mod_m_abelian(2, 2)
    t2 = compose_tower(base, 2, name="tower2.128")
    t2.flags.update({"p_group": 2, "solvable": True})
    entries.append(t2)
    t3 = compose_tower(base, 3, name="tower3.972")
    t3.flags.update({"solvable": True})
    entries.append(t3)

    entries.append(
        build_mod_m_abelian(3, 2, name="mod2.r3", flags={"p_group": 2, "solvable": True})
    )
    entries.append(
        build_mod_m_abelian(3, 3, name="mod3.r3", flags={"p_group": 3, "solvable": True})
    )
    entries.append(
        build_mod_m_abelian(3, 4, name="mod4.r3", flags={"p_group": 2, "solvable": True})
    )
    entries.append(
        build_heisenberg_mod_p(
            2, rank=3, name="heis2.r3", flags={"p_group": 2, "solvable": True}
        )
    )

    surf = Presentation(kind="surface", rank=4, genus=2)
    entries.append(
        build_from_images(
            surf,
            [[1, 0], [0, 1], [0, 1], [0, 1]],
            name="surf2.mod2",
            flags={"p_group": 2, "solvable": True},
        )
    )

    out = Path(__file__).resolve().parent.parent / "src/virthom/data/default_catalog.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    save_catalog(entries, out)
    print(f"wrote {len(entries)} quotients to {out}")
    for q in entries:
        print(f"  {q.name:12s} order {q.order}")


if __name__ == "__main__":
    main()
