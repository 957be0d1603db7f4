"""Command-line front end.

Subcommands::

    virthom cover-act QUOTIENT (--map ... | --conjugate-by ... | --braid ...)
    virthom witness faithful|noninner (--map ... --inverse ... | ...)
    virthom witness separate WORD1 WORD2
    virthom witness classify WORD [WORD ...] (--map ... | ...)
    virthom burau BRAID [--reduced|--unreduced|--lk] [--mesh N] ...
    virthom chevalley [--format json|text|tsv]
    virthom expand WORD [WORD2] [--tower NAME,NAME,...]

Data goes to stdout, diagnostics to stderr.  JSON output has a fixed
field order starting with ``"schema": 1`` and floats normalised to 12
significant digits, so repeated runs are byte-identical.  Exit codes:
0 success / witness found, 1 catalog or tower exhausted (no witness),
2 bad input, 3 kernel not preserved by the supplied map.

Braid words are whitespace- or comma-separated signed integers; start
the argument with ``--`` if the first letter is negative (shell option
parsing).  Group words use compact letter syntax (``aB`` or ``ab'``),
and map specs look like ``"a->ab, b->b"``.
"""

from __future__ import annotations

import argparse
import hashlib
import importlib.resources
import json
import os
import sys
import time
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import __version__, covers, detectors, rep_theory
from .burau import (
    SpectralSupremum,
    burau_reduced,
    burau_unreduced,
    circle_supremum,
    dilatation_root,
    lk_matrix,
    torus_supremum,
)
from .catalog import CatalogError, loads_catalog
from .quotients import FiniteQuotient
from .words import (
    Endo,
    Word,
    braid_to_endo,
    conjugation_endo,
    endo_from_strings,
    format_word,
    parse_word,
)

EXIT_OK = 0
EXIT_EXHAUSTED = 1
EXIT_BAD_INPUT = 2
EXIT_KERNEL = 3

_SUP_SLACK = 1e-6  # sampled supremum may exceed a true dilatation by at most this


class CliError(Exception):
    """User-facing failure with a chosen exit code."""

    def __init__(self, message: str, code: int = EXIT_BAD_INPUT):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# output helpers


def _round_floats(obj):
    """Normalise floats to 12 significant digits for stable JSON bytes."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, np.floating):
        return float(f"{float(obj):.12g}")
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_round_floats(v) for v in obj.tolist()]
    return obj


def _dumps(doc: dict) -> str:
    return json.dumps(_round_floats(doc), indent=2) + "\n"


def _word_doc(w: Word) -> dict:
    return {"letters": list(w), "text": format_word(w, style="letters")}


# ---------------------------------------------------------------------------
# catalog + cache plumbing


def _catalog_bytes(args) -> tuple[bytes, str]:
    path = getattr(args, "catalog", None) or os.environ.get("VH_CATALOG")
    if path:
        p = Path(path)
        if not p.is_file():
            raise CliError(f"catalog file not found: {path}")
        return p.read_bytes(), str(p)
    data = (
        importlib.resources.files("virthom")
        .joinpath("data/default_catalog.json")
        .read_bytes()
    )
    return data, "<packaged default>"


def _load_catalog(args) -> tuple[list[FiniteQuotient], bytes]:
    raw, origin = _catalog_bytes(args)
    try:
        entries = loads_catalog(raw.decode("utf-8"))
    except (CatalogError, UnicodeDecodeError, ValueError) as exc:
        raise CliError(f"bad catalog ({origin}): {exc}") from exc
    max_order = getattr(args, "max_order", None)
    if max_order is not None:
        entries = [q for q in entries if q.order <= max_order]
    return entries, raw


def _cache_path(args, raw_catalog: bytes, key_parts: Sequence) -> Optional[Path]:
    cache_dir = getattr(args, "cache_dir", None)
    if not cache_dir:
        return None
    digest = hashlib.sha256()
    digest.update(raw_catalog)
    for part in key_parts:
        digest.update(b"\x00")
        digest.update(repr(part).encode("utf-8"))
    return Path(cache_dir) / f"{digest.hexdigest()}.json"


def _run_cached(
    args,
    raw_catalog: bytes,
    key_parts: Sequence,
    compute: Callable[[], tuple[str, int]],
    use_cache: bool = True,
) -> int:
    """Replay ``compute``'s stdout+exit from the cache when possible.

    The key is the SHA-256 of the catalog bytes plus the normalised
    arguments, so a cached replay is byte-identical to a cold run of the
    same inputs against the same catalog.
    """
    cpath = _cache_path(args, raw_catalog, key_parts) if use_cache else None
    if cpath is not None and cpath.is_file():
        envelope = json.loads(cpath.read_text())
        sys.stdout.write(envelope["stdout"])
        return int(envelope["exit"])
    text, code = compute()
    sys.stdout.write(text)
    if cpath is not None:
        cpath.parent.mkdir(parents=True, exist_ok=True)
        cpath.write_text(json.dumps({"exit": code, "stdout": text}))
    return code


# ---------------------------------------------------------------------------
# argument parsing helpers


def _parse_word_arg(text: str) -> Word:
    try:
        return parse_word(text)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _parse_int_list(text: str, what: str, allow_zero: bool = False) -> list[int]:
    out = []
    for pos, token in enumerate(text.replace(",", " ").split()):
        try:
            value = int(token)
        except ValueError:
            raise CliError(
                f"cannot parse {what} token {token!r} at position {pos}"
            ) from None
        if value == 0 and not allow_zero:
            raise CliError(f"{what} letter at position {pos} is zero")
        out.append(value)
    return out


def _braid_strands(letters: Sequence[int], strands: Optional[int]) -> int:
    needed = max((abs(x) for x in letters), default=1) + 1
    if strands is None:
        return max(needed, 2)
    if strands < needed:
        raise CliError(f"braid uses generator {needed - 1} but --strands is {strands}")
    return strands


def _build_endo(args, need_inverse: bool) -> Endo:
    given = [
        name
        for name in ("map", "conjugate_by", "braid")
        if getattr(args, name, None) is not None
    ]
    if len(given) != 1:
        raise CliError("give exactly one of --map, --conjugate-by, --braid")
    try:
        if args.map is not None:
            f = endo_from_strings(args.map, rank=args.rank, inverse=args.inverse)
        elif args.conjugate_by is not None:
            w = _parse_word_arg(args.conjugate_by)
            rank = args.rank or max([abs(x) for x in w] + [2])
            f = conjugation_endo(rank, w)
        else:
            letters = _parse_int_list(args.braid, "braid")
            f = braid_to_endo(letters, _braid_strands(letters, args.strands))
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if need_inverse and f.inverse_images is None:
        raise CliError(
            "this scan needs an automorphism: also give --inverse with the "
            "inverse images"
        )
    return f


def _endo_doc(f: Endo) -> dict:
    return {
        "rank": f.rank,
        "images": [_word_doc(w) for w in f.images],
        "automorphism": f.inverse_images is not None,
    }


def _find_entry(entries: Sequence[FiniteQuotient], name: str) -> FiniteQuotient:
    for q in entries:
        if q.name == name:
            return q
    known = ", ".join(q.name for q in entries)
    raise CliError(f"no catalog entry named {name!r} (have: {known})")


# ---------------------------------------------------------------------------
# cover-act


def cmd_cover_act(args) -> int:
    entries, raw = _load_catalog(args)
    f = _build_endo(args, need_inverse=False)
    q = _find_entry(entries, args.quotient)
    if f.rank != q.rank:
        raise CliError(
            f"map has rank {f.rank} but quotient {q.name!r} has rank {q.rank}"
        )

    def compute() -> tuple[str, int]:
        hom = covers.homology(covers.build_schreier(q))
        matrix = covers.induced_automorphism(hom, f)
        dim = int(matrix.shape[0])
        nontrivial = bool((matrix != np.eye(dim, dtype=matrix.dtype)).any())
        doc = {
            "schema": 1,
            "command": "cover-act",
            "quotient": q.name,
            "kind": q.presentation.kind,
            "group_order": q.order,
            "map": _endo_doc(f),
            "matrix_dim": dim,
            "flag": "nontrivial action" if nontrivial else "trivial action",
            "matrix": matrix.tolist(),
        }
        if args.format == "text":
            lines = [
                f"quotient {q.name} ({q.presentation.kind}, order {q.order})",
                f"homology dim {dim}: {doc['flag']}",
            ]
            lines += ["  " + " ".join(f"{v:4d}" for v in row) for row in doc["matrix"]]
            return "\n".join(lines) + "\n", EXIT_OK
        return _dumps(doc), EXIT_OK

    try:
        return _run_cached(
            args, raw, ["cover-act", q.name, f.key(), args.format], compute
        )
    except covers.KernelNotPreserved as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_KERNEL
    except ArithmeticError as exc:
        print(f"error: induced action undefined: {exc}", file=sys.stderr)
        return EXIT_KERNEL


# ---------------------------------------------------------------------------
# witness


def _witness_doc(command: str, witness: detectors.Witness, extra: dict) -> dict:
    doc = {"schema": 1, "command": command}
    doc.update(extra)
    doc.update(
        {
            "kind": witness.kind,
            "quotient": witness.quotient,
            "detail": witness.detail,
        }
    )
    return doc


def _witness_text(doc: dict) -> str:
    lines = [f"{doc['command']}: {doc['kind']}"]
    if doc["quotient"] is not None:
        lines.append(f"quotient: {doc['quotient']}")
    for key in ("scanned", "skipped"):
        if key in doc["detail"]:
            lines.append(f"{key}: {doc['detail'][key]}")
    return "\n".join(lines) + "\n"


def _emit_witness(args, raw, key_parts, command, extra, scan) -> int:
    def compute() -> tuple[str, int]:
        witness = scan()
        doc = _witness_doc(command, witness, extra)
        code = EXIT_OK if witness.kind != "none" else EXIT_EXHAUSTED
        if code == EXIT_EXHAUSTED:
            print("catalog exhausted: no witness found", file=sys.stderr)
        text = _witness_text(doc) if args.format == "text" else _dumps(doc)
        return text, code

    return _run_cached(args, raw, key_parts, compute)


def cmd_witness_faithful(args) -> int:
    entries, raw = _load_catalog(args)
    f = _build_endo(args, need_inverse=True)
    return _emit_witness(
        args,
        raw,
        ["witness-faithful", f.key(), args.format],
        "witness faithful",
        {"map": _endo_doc(f)},
        lambda: detectors.faithfulness_witness(f, entries),
    )


def cmd_witness_noninner(args) -> int:
    entries, raw = _load_catalog(args)
    f = _build_endo(args, need_inverse=True)
    return _emit_witness(
        args,
        raw,
        ["witness-noninner", f.key(), args.format],
        "witness noninner",
        {"map": _endo_doc(f)},
        lambda: detectors.non_inner_witness(f, entries),
    )


def cmd_witness_separate(args) -> int:
    entries, raw = _load_catalog(args)
    w1 = _parse_word_arg(args.word1)
    w2 = _parse_word_arg(args.word2)
    return _emit_witness(
        args,
        raw,
        ["witness-separate", tuple(w1), tuple(w2), args.format],
        "witness separate",
        {"words": [_word_doc(w1), _word_doc(w2)]},
        lambda: detectors.conjugacy_separation(w1, w2, entries),
    )


def cmd_witness_classify(args) -> int:
    entries, raw = _load_catalog(args)
    f = _build_endo(args, need_inverse=True)
    candidates = [_parse_word_arg(w) for w in args.words]
    peripheral = [_parse_word_arg(w) for w in (args.peripheral or [])]
    if args.max_power < 1:
        raise CliError("--max-power must be at least 1")

    def compute() -> tuple[str, int]:
        try:
            report = detectors.classify_witnesses(
                f, candidates, entries, peripheral=peripheral, max_power=args.max_power
            )
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        cand_docs = []
        all_obstructed = True
        for cand in report.candidates:
            steps = [
                {"power": k, "kind": w.kind, "quotient": w.quotient}
                for k, w in cand.results
            ]
            cand_docs.append(
                {
                    "word": _word_doc(cand.word),
                    "peripheral": cand.peripheral,
                    "verdict": cand.verdict,
                    "steps": steps,
                }
            )
            all_obstructed &= cand.verdict == detectors.OBSTRUCTION_FOUND
        doc = {
            "schema": 1,
            "command": "witness classify",
            "map": _endo_doc(f),
            "max_power": args.max_power,
            "candidates": cand_docs,
        }
        code = EXIT_OK if all_obstructed else EXIT_EXHAUSTED
        if code == EXIT_EXHAUSTED:
            print(
                "catalog exhausted: some candidate has no obstruction",
                file=sys.stderr,
            )
        if args.format == "text":
            lines = []
            for cand in cand_docs:
                flag = " (peripheral)" if cand["peripheral"] else ""
                lines.append(f"{cand['word']['text']}{flag}: {cand['verdict']}")
                for step in cand["steps"]:
                    lines.append(
                        f"  power {step['power']}: {step['kind']}"
                        + (f" via {step['quotient']}" if step["quotient"] else "")
                    )
            return "\n".join(lines) + "\n", code
        return _dumps(doc), code

    key = [
        "witness-classify",
        f.key(),
        tuple(tuple(w) for w in candidates),
        tuple(tuple(w) for w in peripheral),
        args.max_power,
        args.format,
    ]
    return _run_cached(args, raw, key, compute)


# ---------------------------------------------------------------------------
# burau


def _write_tsv(result: SpectralSupremum, path: str) -> None:
    torus = bool(result.samples) and len(result.samples[0]) == 3
    with open(path, "w", encoding="utf-8") as fh:
        if torus:
            fh.write("q_angle\tt_angle\tsqrt_radius\n")
            for q_angle, t_angle, value in result.samples:
                fh.write(f"{q_angle:.12g}\t{t_angle:.12g}\t{value:.12g}\n")
        else:
            fh.write("t_angle\tradius\n")
            for angle, value in result.samples:
                fh.write(f"{angle:.12g}\t{value:.12g}\n")


def cmd_burau(args) -> int:
    letters = _parse_int_list(args.braid, "braid")
    if not letters:
        raise CliError("empty braid word")
    strands = _braid_strands(letters, args.strands)
    if args.lk:
        representation = "lawrence-krammer"
    elif args.unreduced:
        representation = "unreduced-burau"
    else:
        representation = "reduced-burau"
    if args.jobs < 1:
        raise CliError("--jobs must be at least 1")

    def compute() -> tuple[str, int]:
        try:
            if representation == "lawrence-krammer":
                matrix = lk_matrix(letters, strands)
                started = time.monotonic()
                result = torus_supremum(matrix, args.mesh, jobs=args.jobs)
            else:
                builder = (
                    burau_unreduced
                    if representation == "unreduced-burau"
                    else burau_reduced
                )
                matrix = builder(letters, strands)
                started = time.monotonic()
                result = circle_supremum(matrix, args.mesh, jobs=args.jobs)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        elapsed = time.monotonic() - started
        print(
            f"sampled {len(result.samples)} points on a mesh of "
            f"{result.mesh} in {elapsed:.2f}s",
            file=sys.stderr,
        )
        doc = {
            "schema": 1,
            "command": "burau",
            "braid": letters,
            "strands": strands,
            "representation": representation,
            "mesh": result.mesh,
            "matrix_dim": result.matrix_dim,
            "sup": result.sup,
            "argmax": list(result.argmax),
        }
        code = EXIT_OK
        if args.dilatation_poly is not None:
            coeffs = _parse_int_list(
                args.dilatation_poly, "polynomial coefficient", allow_zero=True
            )
            try:
                root = dilatation_root(coeffs)
            except ValueError as exc:
                raise CliError(str(exc)) from exc
            gap = root - result.sup
            doc["dilatation"] = root
            doc["gap"] = gap
            if result.sup > root + _SUP_SLACK:
                print(
                    f"error: sampled supremum {result.sup:.9g} exceeds the "
                    f"dilatation root {root:.9g}",
                    file=sys.stderr,
                )
                code = EXIT_EXHAUSTED
        if args.tsv:
            _write_tsv(result, args.tsv)
            doc["tsv"] = args.tsv
            if args.plot:
                from .plots import render_supremum_figure

                figure_path = str(Path(args.tsv).with_suffix(".png"))
                doc["figure"] = render_supremum_figure(result, figure_path)
        if args.format == "text":
            lines = [
                f"{representation} of braid {format_braid(letters)} on "
                f"{strands} strands (dim {result.matrix_dim})",
                f"mesh {result.mesh}: sup {result.sup:.12g} at "
                + ", ".join(f"{a:.12g}" for a in result.argmax),
            ]
            if "dilatation" in doc:
                lines.append(
                    f"dilatation {doc['dilatation']:.12g}, gap {doc['gap']:.12g}"
                )
            return "\n".join(lines) + "\n", code
        return _dumps(doc), code

    key = [
        "burau",
        tuple(letters),
        strands,
        representation,
        args.mesh,
        args.dilatation_poly,
        args.format,
    ]
    use_cache = not (args.tsv or args.plot)
    if args.plot and not args.tsv:
        raise CliError("--plot needs --tsv PATH (the figure lands beside it)")
    return _run_cached(args, b"", key, compute, use_cache=use_cache)


def format_braid(letters: Sequence[int]) -> str:
    return " ".join(str(x) for x in letters)


# ---------------------------------------------------------------------------
# chevalley


def cmd_chevalley(args) -> int:
    entries, raw = _load_catalog(args)

    def compute() -> tuple[str, int]:
        rows = []
        all_ok = True
        for q in entries:
            hom = covers.homology(covers.build_schreier(q))
            report = rep_theory.verify_chevalley_weil(hom)
            fixed_dim = int(rep_theory.fixed_subspace(hom).shape[1])
            expected_fixed = (
                q.rank if q.presentation.kind == "free" else 2 * q.presentation.genus
            )
            ok = report.ok and fixed_dim == expected_fixed
            all_ok &= ok
            rows.append(
                {
                    "name": q.name,
                    "kind": q.presentation.kind,
                    "order": q.order,
                    "homology_dim": report.expected_identity,
                    "character_identity": int(report.character[0]),
                    "character_elsewhere": report.expected_nonidentity,
                    "trivial_multiplicity": report.trivial_multiplicity,
                    "regular_multiplicity": report.regular_multiplicity,
                    "fixed_dim": fixed_dim,
                    "expected_fixed_dim": expected_fixed,
                    "mismatches": [list(m) for m in report.mismatches],
                    "ok": ok,
                }
            )
        if not entries:
            print("warning: empty catalog, nothing to verify", file=sys.stderr)
        doc = {
            "schema": 1,
            "command": "chevalley",
            "entries": rows,
            "all_ok": all_ok,
        }
        code = EXIT_OK if all_ok else EXIT_EXHAUSTED
        if not all_ok:
            bad = ", ".join(r["name"] for r in rows if not r["ok"])
            print(f"character verification failed for: {bad}", file=sys.stderr)
        if args.format == "tsv":
            header = (
                "name\tkind\torder\thomology_dim\ttrivial_mult\t"
                "regular_mult\tfixed_dim\tok\n"
            )
            body = "".join(
                f"{r['name']}\t{r['kind']}\t{r['order']}\t{r['homology_dim']}\t"
                f"{r['trivial_multiplicity']}\t{r['regular_multiplicity']}\t"
                f"{r['fixed_dim']}\t{str(r['ok']).lower()}\n"
                for r in rows
            )
            return header + body, code
        if args.format == "text":
            lines = [
                f"{r['name']:<14} {r['kind']:<8} order {r['order']:>4} "
                f"dim {r['homology_dim']:>4} triv*{r['trivial_multiplicity']} "
                f"reg*{r['regular_multiplicity']} fixed {r['fixed_dim']} "
                f"[{'ok' if r['ok'] else 'FAIL'}]"
                for r in rows
            ]
            lines.append("all ok" if all_ok else "FAILURES above")
            return "\n".join(lines) + "\n", code
        return _dumps(doc), code

    return _run_cached(args, raw, ["chevalley", args.format], compute)


# ---------------------------------------------------------------------------
# expand


def _expansion_doc(expansion: detectors.FiniteTypeExpansion) -> dict:
    return {
        "word": _word_doc(expansion.word),
        "abelianization": list(expansion.abelianization),
        "levels": [
            {
                "quotient": level.quotient,
                "point": level.point,
                "transversal": _word_doc(level.transversal),
                "entry": list(level.entry),
            }
            for level in expansion.levels
        ],
    }


def cmd_expand(args) -> int:
    entries, raw = _load_catalog(args)
    names = [n.strip() for n in (args.tower or "mod2,tower2.128").split(",") if n.strip()]
    if not names:
        raise CliError("empty tower")
    tower = [_find_entry(entries, name) for name in names]
    w1 = _parse_word_arg(args.word)
    w2 = _parse_word_arg(args.word2) if args.word2 is not None else None

    def compute() -> tuple[str, int]:
        try:
            first = detectors.finite_type_expansion(w1, tower)
            second = (
                detectors.finite_type_expansion(w2, tower) if w2 is not None else None
            )
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        doc = {
            "schema": 1,
            "command": "expand",
            "tower": names,
            "expansions": [_expansion_doc(first)]
            + ([_expansion_doc(second)] if second is not None else []),
        }
        code = EXIT_OK
        if second is not None:
            separated = detectors.expansion_separates(w1, w2, tower)
            doc["separated"] = separated
            if not separated:
                code = EXIT_EXHAUSTED
                print("tower exhausted: expansions agree", file=sys.stderr)
        if args.format == "text":
            lines = []
            for exp in doc["expansions"]:
                lines.append(f"word {exp['word']['text']}")
                lines.append(f"  abelianization {exp['abelianization']}")
                for level in exp["levels"]:
                    lines.append(
                        f"  {level['quotient']}: point {level['point']}, "
                        f"transversal {level['transversal']['text'] or '1'}, "
                        f"entry {level['entry']}"
                    )
            if "separated" in doc:
                lines.append(f"separated: {doc['separated']}")
            return "\n".join(lines) + "\n", code
        return _dumps(doc), code

    key = [
        "expand",
        tuple(names),
        tuple(w1),
        tuple(w2) if w2 is not None else None,
        args.format,
    ]
    return _run_cached(args, raw, key, compute)


# ---------------------------------------------------------------------------
# parser wiring


def _add_shared(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--catalog",
        metavar="PATH",
        help="catalog JSON file (default: $VH_CATALOG, then the packaged one)",
    )
    parser.add_argument(
        "--max-order",
        type=int,
        metavar="N",
        help="ignore catalog entries with group order above N",
    )
    parser.add_argument(
        "--cache-dir",
        metavar="DIR",
        help="replay identical runs from DIR instead of recomputing",
    )
    parser.add_argument(
        "--format",
        choices=("json", "text", "tsv"),
        default="json",
        help="output format (tsv only for chevalley)",
    )


def _add_endo_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("map specification (exactly one)")
    group.add_argument(
        "--map", metavar="SPEC", help='assignments like "a->ab, b->b"'
    )
    group.add_argument(
        "--inverse",
        metavar="SPEC",
        help="inverse assignments; marks --map as an automorphism",
    )
    group.add_argument(
        "--conjugate-by", metavar="WORD", help="inner automorphism by WORD"
    )
    group.add_argument(
        "--braid",
        metavar="LETTERS",
        help='braid-induced automorphism, e.g. "1 2 -1"',
    )
    group.add_argument(
        "--strands", type=int, metavar="N", help="strand count for --braid"
    )
    group.add_argument(
        "--rank", type=int, metavar="R", help="free-group rank when not inferrable"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="virthom",
        description="finite-cover homology witnesses and braid spectral reports",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cover = sub.add_parser(
        "cover-act", help="matrix of a map on the homology of a finite cover"
    )
    _add_shared(cover)
    _add_endo_options(cover)
    cover.add_argument("quotient", help="catalog entry name, e.g. mod2")
    cover.set_defaults(func=cmd_cover_act)

    witness = sub.add_parser("witness", help="scan the catalog for certificates")
    wsub = witness.add_subparsers(dest="witness_command", required=True)

    faithful = wsub.add_parser(
        "faithful", help="quotient where the automorphism acts nontrivially"
    )
    _add_shared(faithful)
    _add_endo_options(faithful)
    faithful.set_defaults(func=cmd_witness_faithful)

    noninner = wsub.add_parser(
        "noninner", help="quotient where the action matches no deck matrix"
    )
    _add_shared(noninner)
    _add_endo_options(noninner)
    noninner.set_defaults(func=cmd_witness_noninner)

    separate = wsub.add_parser(
        "separate", help="quotient whose conjugacy classes split two words"
    )
    _add_shared(separate)
    separate.add_argument("word1")
    separate.add_argument("word2")
    separate.set_defaults(func=cmd_witness_separate)

    classify = wsub.add_parser(
        "classify", help="probe candidate invariant classes under iteration"
    )
    _add_shared(classify)
    _add_endo_options(classify)
    classify.add_argument("words", nargs="+", help="candidate words")
    classify.add_argument(
        "--peripheral",
        action="append",
        metavar="WORD",
        help="flag candidates conjugate into powers of WORD (repeatable)",
    )
    classify.add_argument(
        "--max-power", type=int, default=12, metavar="K", help="iteration bound"
    )
    classify.set_defaults(func=cmd_witness_classify)

    burau = sub.add_parser(
        "burau", help="spectral-radius report for a braid representation"
    )
    _add_shared(burau)
    burau.add_argument(
        "braid", help='signed generator letters, e.g. "1 2 -3" (use -- before a leading -)'
    )
    burau.add_argument("--strands", type=int, metavar="N")
    burau.add_argument(
        "--mesh", type=int, default=256, metavar="N", help="unit-circle sample count"
    )
    which = burau.add_mutually_exclusive_group()
    which.add_argument("--reduced", action="store_true", help="reduced Burau (default)")
    which.add_argument("--unreduced", action="store_true", help="unreduced Burau")
    which.add_argument("--lk", action="store_true", help="Lawrence-Krammer")
    burau.add_argument(
        "--dilatation-poly",
        metavar="COEFFS",
        help='ascending integer coefficients, e.g. "1 -1 -2 -2 -1 1"',
    )
    burau.add_argument("--tsv", metavar="PATH", help="write the samples as TSV")
    burau.add_argument(
        "--plot",
        action="store_true",
        help="render a figure next to the TSV (requires --tsv)",
    )
    burau.add_argument(
        "--jobs", type=int, default=1, metavar="N", help="parallel sampling processes"
    )
    burau.set_defaults(func=cmd_burau)

    chevalley = sub.add_parser(
        "chevalley", help="verify cover-homology characters across the catalog"
    )
    _add_shared(chevalley)
    chevalley.set_defaults(func=cmd_chevalley)

    expand = sub.add_parser(
        "expand", help="levelwise coset/homology expansion along a tower"
    )
    _add_shared(expand)
    expand.add_argument("word")
    expand.add_argument("word2", nargs="?", help="second word to separate")
    expand.add_argument(
        "--tower",
        metavar="NAMES",
        help="comma-separated nested catalog entries (default mod2,tower2.128)",
    )
    expand.set_defaults(func=cmd_expand)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
