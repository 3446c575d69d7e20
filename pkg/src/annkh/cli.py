"""Command-line front end.

Commands
  validate    parse a diagram and print its basic invariants
  resolve     circle census of one chosen state
  adequacy    all-1's state report (the certificate ingredients)
  complex     graded generator counts of the chain complex
  akh         annular homology dimension table (i, j, k, dim)
  bracket     annular skein bracket coefficients (A-exp, z-deg, coeff)
  check-wrap  wrapping certificate: VERIFIED/UNDECIDED plus its four fields
  bs-ss       link-splitting spectral sequence pages and limit comparison
  rank-check  per-(l,k) rank inequality against the split union
  family      construct a built-in family instance and emit its .adt text
  sweep       batch check-wrap/akh over family parameter ranges (TSV)

Exit codes: 0 ok, 1 expectation failure (sweep row or rank/limit check),
2 parse/config error, 3 state cap exceeded, 4 internal assertion,
5 non-invertible weight request.

Inputs are .adt files ("-" for stdin) or --family specs.  Weights are
comma-separated rationals in component order ("0,1,1/2").  Braid words use
tokens s1, -s2, ... (";" separates per-component words).  --config names a
JSON file holding the same keys as the long flags; explicit flags win.
Report commands accept --plot FILE to render a figure next to the tables.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .bracket import max_annular_degree, state_sum, wrap_report
from .chain import WeightError, build_complex
from .cube import STATE_CAP, CapExceeded, all_ones_report, census_counts, smooth
from .diagram import AdtError, AnnularDiagram, analyze, parse
from .families import FamilySpec, build_family, split_union
from .homology import (
    SHIFT_CONVENTION,
    collapse_lk,
    homology_dims,
    match_up_to_l_shift,
    max_nonzero_k_scan,
    rank_inequality_check,
    split_shift,
    ss_pages,
    weight_groups,
)

SCHEMA = "akh/1"

EXIT_EXPECT = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_INTERNAL = 4
EXIT_WEIGHT = 5


class ConfigError(AdtError):
    pass


# -- configuration -------------------------------------------------------------

_CONFIG_KEYS = (
    "in", "family", "n", "m", "braid", "clasp", "base", "field", "weights",
    "format", "cap", "workers", "cache_dir", "state", "split_in", "sign_mode",
    "use_homology", "plot", "out",
)


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset flags from the optional JSON config; flags always win."""
    path = getattr(args, "config", None)
    if not path:
        return args
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}")
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    for key, val in data.items():
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        attr = "input" if key == "in" else key
        if getattr(args, attr, None) is None:
            setattr(args, attr, val)
    return args


def _parse_weights(text: Optional[str]):
    if text is None:
        return None
    try:
        return [Fraction(tok.strip()) for tok in str(text).split(",")]
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"bad weights {text!r}: {e}")


def _parse_braids(text: Optional[str]) -> Tuple[Tuple[int, ...], ...]:
    if not text:
        return ()
    words = []
    for part in str(text).split(";"):
        word = []
        for tok in part.split():
            sign = 1
            if tok.startswith("-"):
                sign, tok = -1, tok[1:]
            if tok.startswith("s"):
                tok = tok[1:]
            try:
                word.append(sign * int(tok))
            except ValueError:
                raise ConfigError(f"bad braid token {tok!r}")
        words.append(tuple(word))
    return tuple(words)


def _parse_range(text, name: str) -> List[int]:
    if text is None:
        return [1]
    text = str(text)
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ConfigError(f"bad range for --{name}: {text!r}")


def _load_diagram(args: argparse.Namespace) -> AnnularDiagram:
    if getattr(args, "input", None):
        if args.family:
            raise ConfigError("give either --in or --family, not both")
        text = sys.stdin.read() if args.input == "-" else _read_file(args.input)
        return parse(text)
    if getattr(args, "family", None):
        spec = FamilySpec(
            family=_resolve_family(args),
            n=int(args.n or 1),
            m=int(args.m or 1),
            braids=_parse_braids(args.braid),
            clasp=1 if args.clasp == "+" else -1,
        )
        return build_family(spec)
    raise ConfigError("no input: pass --in FILE or --family NAME")


def _resolve_family(args: argparse.Namespace) -> str:
    fam = args.family
    base = getattr(args, "base", None) or "necklace"
    if fam == "cable" and base == "whitehead":
        return "whitehead"
    if base not in ("necklace", "whitehead"):
        raise ConfigError(f"unknown cable base {base!r}")
    return fam


def _check_weight_count(d: AnnularDiagram, weights) -> None:
    nc = analyze(d).n_components
    if len(weights) != nc:
        raise ConfigError(f"{len(weights)} weights for {nc} components")


def _read_file(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise ConfigError(str(e))


# -- output --------------------------------------------------------------------


def _render_tsv(record: dict) -> str:
    lines = [f"# schema: {record['schema']}", f"# command: {record['command']}"]
    for key in sorted(record["meta"]):
        lines.append(f"# {key}: {record['meta'][key]}")
    table = record["table"]
    lines.append("\t".join(table["columns"]))
    for row in table["rows"]:
        lines.append("\t".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def _render_json(record: dict, wall_ms: int) -> str:
    out = dict(record)
    out["wall_ms"] = wall_ms
    return json.dumps(out, sort_keys=True, indent=1) + "\n"


def _emit(args: argparse.Namespace, record: dict, wall_ms: int) -> None:
    fmt = args.format or "tsv"
    text = _render_json(record, wall_ms) if fmt == "json" else _render_tsv(record)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _record(command: str, d: Optional[AnnularDiagram], columns, rows, meta,
            **extra) -> dict:
    rec = {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "table": {"columns": list(columns), "rows": [list(r) for r in rows]},
        "meta": dict(meta),
    }
    if d is not None:
        rec["hash"] = d.canonical_hash()
    rec.update(extra)
    return rec


# -- cache ---------------------------------------------------------------------


def _cache_dir(args: argparse.Namespace) -> Optional[str]:
    return getattr(args, "cache_dir", None) or os.environ.get("AKH_CACHE_DIR")


def _cache_key(d: AnnularDiagram, command: str, field, weights) -> str:
    blob = json.dumps(
        [d.canonical_hash(), command, field,
         [str(w) for w in weights] if weights else None, __version__]
    )
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_get(args, d, command: str, field, weights) -> Optional[dict]:
    root = _cache_dir(args)
    if not root:
        return None
    path = os.path.join(root, _cache_key(d, command, field, weights) + ".json")
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None


def _cache_put(args, d, command: str, field, weights, record: dict) -> None:
    root = _cache_dir(args)
    if not root:
        return
    os.makedirs(root, exist_ok=True)
    path = os.path.join(root, _cache_key(d, command, field, weights) + ".json")
    with open(path, "w") as fh:
        json.dump(record, fh, sort_keys=True)


# -- commands ------------------------------------------------------------------


def cmd_validate(args) -> Tuple[dict, int]:
    d = _load_diagram(args)
    a = analyze(d)
    rows = [
        ("crossings", d.n_crossings),
        ("components", a.n_components),
        ("windings", ",".join(str(w) for w in a.windings)),
        ("writhe", a.writhe()),
        ("positive_crossings", a.n_plus()),
        ("negative_crossings", a.n_minus()),
        ("free_circles", len(d.free_circles)),
        ("wrap_upper_bound", d.wrap_upper_bound()),
        ("hash", d.canonical_hash()),
    ]
    return _record("validate", d, ("key", "value"), rows, {}), 0


def _parse_state(text: str, n: int) -> int:
    if text == "all0":
        return 0
    if text == "all1":
        return (1 << n) - 1
    try:
        s = int(text, 0)
    except ValueError:
        raise ConfigError(f"bad state {text!r}")
    if not 0 <= s < (1 << n):
        raise ConfigError(f"state {text} out of range for {n} crossings")
    return s


def cmd_resolve(args) -> Tuple[dict, int]:
    d = _load_diagram(args)
    s = _parse_state(args.state or "all1", d.n_crossings)
    res = smooth(d, s)
    rows = []
    for z, circle in enumerate(res.circles):
        cls = "essential" if res.essential[z] else "trivial"
        rows.append((z, cls, len(circle)))
    trivial, ess = census_counts(d, s)
    meta = {"state": s, "trivial": trivial, "essential": ess}
    return _record("resolve", d, ("circle", "class", "edges"), rows, meta), 0


def cmd_adequacy(args) -> Tuple[dict, int]:
    d = _load_diagram(args)
    rep = all_ones_report(d)
    rows = sorted(dataclasses.asdict(rep).items())
    return _record("adequacy", d, ("key", "value"), rows, {}), 0


def cmd_complex(args) -> Tuple[dict, int]:
    d = _load_diagram(args)
    field = args.field or "gf2"
    weights = _parse_weights(args.weights)
    cx = build_complex(d, field, weights, cap=_cap(args),
                       sign_mode=int(args.sign_mode or 0))
    counts: Dict[Tuple[int, int, int], int] = {}
    for ijk in cx.grading:
        counts[ijk] = counts.get(ijk, 0) + 1
    rows = [(i, j, k, v) for (i, j, k), v in sorted(counts.items())]
    meta = {"generators": len(cx.grading), "field": field,
            "perturbed": weights is not None}
    return _record("complex", d, ("i", "j", "k", "generators"), rows, meta), 0


def cmd_akh(args) -> Tuple[dict, int]:
    d = _load_diagram(args)
    field = args.field or "gf2"
    variant = "akh-scan" if args.scan else "akh"
    cached = _cache_get(args, d, variant, field, None)
    if cached is not None:
        return cached, 0
    if args.scan:
        kmax = max_nonzero_k_scan(d, field=field, cap=_cap(args),
                                  workers=_workers(args))
        rec = _record("akh", d, ("i", "j", "k", "dim"), [],
                      {"field": field, "max_nonzero_k": kmax, "scan_only": True})
    else:
        dims = homology_dims(d, field=field, cap=_cap(args),
                             sign_mode=int(args.sign_mode or 0))
        rows = [(i, j, k, v) for (i, j, k), v in sorted(dims.items())]
        kmax = max((k for (_, _, k), v in dims.items() if v), default=0)
        rec = _record("akh", d, ("i", "j", "k", "dim"), rows,
                      {"field": field, "max_nonzero_k": kmax,
                       "total_dim": sum(dims.values())})
    _cache_put(args, d, variant, field, None, rec)
    return rec, 0


def cmd_bracket(args) -> Tuple[dict, int]:
    d = _load_diagram(args)
    cached = _cache_get(args, d, "bracket", None, None)
    if cached is not None:
        return cached, 0
    poly = state_sum(d, cap=_cap(args), workers=_workers(args))
    rows = [(a, z, c) for (a, z), c in sorted(poly.items())]
    meta = {"max_annular_degree": max_annular_degree(poly) if poly else 0,
            "wrap_upper_bound": d.wrap_upper_bound()}
    rec = _record("bracket", d, ("A_exp", "z_deg", "coeff"), rows, meta)
    _cache_put(args, d, "bracket", None, None, rec)
    return rec, 0


def cmd_check_wrap(args) -> Tuple[dict, int]:
    d = _load_diagram(args)
    field = args.field or "gf2"
    cached = _cache_get(args, d, "check-wrap", field, None)
    if cached is not None:
        return cached, 0
    rep = wrap_report(d, use_homology=bool(args.use_homology), field=field,
                      cap=_cap(args), workers=_workers(args))
    rows = sorted(rep.as_dict().items(), key=lambda kv: kv[0])
    meta = {"verdict": f"{rep.status} {rep.wrap_upper_bound}"}
    rec = _record("check-wrap", d, ("key", "value"), rows, meta)
    _cache_put(args, d, "check-wrap", field, None, rec)
    return rec, 0


def cmd_bs_ss(args) -> Tuple[dict, int]:
    d = _load_diagram(args)
    field = args.field or "rat"
    weights = _parse_weights(args.weights)
    if weights is None:
        raise ConfigError("bs-ss needs --weights, one rational per component")
    _check_weight_count(d, weights)
    cached = _cache_get(args, d, "bs-ss", field, weights)
    if cached is not None:
        return cached, 0 if cached["meta"]["limit_match"] != "MISMATCH" else 1
    rep = ss_pages(d, weights, field=field, cap=_cap(args),
                   sign_mode=int(args.sign_mode or 0))
    rows = []
    for r in sorted(rep.pages):
        for (l, g2, k), v in sorted(rep.pages[r].items()):
            rows.append((r, l, g2, k, v))
    for (l, g2, k), v in sorted(rep.einf.items()):
        rows.append(("inf", l, g2, k, v))

    groups = weight_groups(d, weights)
    t = split_shift(d, groups)
    if args.split_in:
        target = parse(_read_file(args.split_in))
    else:
        target = split_union(d, groups)
    target_lk = collapse_lk(homology_dims(target, field=field, cap=_cap(args)))
    shift = match_up_to_l_shift(rep.einf_lk(), target_lk)
    match = "MISMATCH" if shift is None else f"shift {shift}"
    meta = {
        "b_value": rep.b_value,
        "stabilized_at": rep.stabilized_at,
        "groups": ";".join(",".join(map(str, g)) for g in groups),
        "expected_shift_t": t,
        "limit_match": match,
        "convention": SHIFT_CONVENTION,
    }
    rec = _record("bs-ss", d, ("page", "l", "g2", "k", "dim"), rows, meta,
                  weights=[str(w) for w in weights])
    _cache_put(args, d, "bs-ss", field, weights, rec)
    return rec, 0 if shift is not None else EXIT_EXPECT


def cmd_rank_check(args) -> Tuple[dict, int]:
    d = _load_diagram(args)
    field = args.field or "rat"
    weights = _parse_weights(args.weights)
    if weights is not None:
        _check_weight_count(d, weights)
    cached = _cache_get(args, d, "rank-check", field, weights)
    if cached is not None:
        return cached, 0 if cached["meta"]["passed"] else EXIT_EXPECT
    rep = rank_inequality_check(d, weights, field=field, cap=_cap(args))
    rows = [(l, k, lhs, rhs, "ok" if ok else "FAIL")
            for (l, k, lhs, rhs, ok) in rep.rows]
    meta = {
        "t": rep.t,
        "passed": rep.passed,
        "groups": ";".join(",".join(map(str, g)) for g in rep.groups),
        "convention": rep.convention,
    }
    rec = _record("rank-check", d, ("l", "k", "rank_link", "rank_split", "ok"),
                  rows, meta,
                  weights=[str(w) for w in weights] if weights else None)
    _cache_put(args, d, "rank-check", field, weights, rec)
    return rec, 0 if rep.passed else EXIT_EXPECT


def cmd_family(args) -> Tuple[dict, int]:
    if not args.family:
        raise ConfigError("family command needs --family NAME")
    d = _load_diagram(args)
    text = d.serialize()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return {}, 0


def cmd_sweep(args) -> Tuple[dict, int]:
    if not args.family:
        raise ConfigError("sweep needs --family NAME")
    ns = _parse_range(args.n, "n")
    ms = _parse_range(args.m, "m")
    braids = _parse_braids(args.braid)
    rows = []
    failures = 0
    for n in ns:
        for m in ms:
            spec = FamilySpec(family=_resolve_family(args), n=n, m=m,
                              braids=braids,
                              clasp=1 if args.clasp == "+" else -1)
            d = build_family(spec)
            rep = wrap_report(d, use_homology=not args.no_akh,
                              field=args.field or "gf2", cap=_cap(args),
                              workers=_workers(args))
            ok = rep.status == "VERIFIED"
            if not args.no_akh:
                ok = ok and rep.akh_max_k == rep.bracket_max_degree
            failures += 0 if ok else 1
            rows.append((
                args.family, n, m, args.braid or "-",
                rep.wrap_upper_bound, rep.bracket_max_degree,
                rep.akh_max_k if rep.akh_max_k is not None else "-",
                rep.minus_adequately_wrapped, rep.status,
            ))
    meta = {"instances": len(rows), "failures": failures}
    rec = _record("sweep", None,
                  ("family", "n", "m", "braid", "wrap_bound", "bracket_max",
                   "akh_max_k", "adequate", "status"),
                  rows, meta)
    return rec, 0 if failures == 0 else EXIT_EXPECT


# -- plotting ------------------------------------------------------------------


def _maybe_plot(args, record: dict) -> None:
    path = getattr(args, "plot", None)
    if not path or not record:
        return
    from . import plots

    cmd = record["command"]
    rows = record["table"]["rows"]
    title = record.get("hash", "")[:12]
    if cmd == "akh":
        dims = {(i, j, k): v for i, j, k, v in rows}
        plots.plot_akh(dims, path, title)
    elif cmd == "bracket":
        poly = {(a, z): c for a, z, c in rows}
        plots.plot_bracket(poly, path, title)
    elif cmd == "check-wrap":
        fields = {k: v for k, v in rows}
        d = _load_diagram(args)
        poly = state_sum(d, cap=_cap(args), workers=_workers(args))
        plots.plot_wrap(fields, poly, path, title)
    elif cmd == "bs-ss":
        totals: Dict[int, int] = {}
        einf: Dict[Tuple[int, int], int] = {}
        for page, l, _g2, k, v in rows:
            if page == "inf":
                einf[(l, k)] = einf.get((l, k), 0) + v
            else:
                totals[page] = totals.get(page, 0) + v
        plots.plot_ss([totals[r] for r in sorted(totals)], einf, path, title)
    elif cmd == "rank-check":
        plots.plot_rank([(l, k, a, b) for l, k, a, b, _ in rows], path, title)
    elif cmd == "sweep":
        swept = [
            {"instance": f"n{n}m{m}", "wrap_bound": wb, "bracket_max": bm,
             "akh_max_k": None if ak == "-" else ak}
            for _f, n, m, _b, wb, bm, ak, _a, _s in rows
        ]
        plots.plot_sweep(swept, path, title)


# -- driver --------------------------------------------------------------------


def _cap(args) -> int:
    return int(args.cap) if getattr(args, "cap", None) else STATE_CAP


def _workers(args) -> int:
    w = getattr(args, "workers", None)
    return int(w) if w else (os.cpu_count() or 1)


_COMMANDS = {
    "validate": cmd_validate,
    "resolve": cmd_resolve,
    "adequacy": cmd_adequacy,
    "complex": cmd_complex,
    "akh": cmd_akh,
    "bracket": cmd_bracket,
    "check-wrap": cmd_check_wrap,
    "bs-ss": cmd_bs_ss,
    "rank-check": cmd_rank_check,
    "family": cmd_family,
    "sweep": cmd_sweep,
}

_PLOTTABLE = ("akh", "bracket", "check-wrap", "bs-ss", "rank-check", "sweep")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="annkh",
        description="annular link homology, skein brackets and splitting "
                    "spectral sequences",
    )
    top.add_argument("--version", action="version", version=__version__)
    subs = top.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = subs.add_parser(name, help=f"{name} command")
        p.add_argument("--in", dest="input", help=".adt file, - for stdin")
        p.add_argument("--family",
                       choices=("necklace", "cable", "whitehead", "disjoint",
                                "consum"))
        p.add_argument("--n", help="family size (sweep: range a..b or list)")
        p.add_argument("--m", help="cable multiplicity (sweep: range)")
        p.add_argument("--braid", help="insert words, e.g. 's1 s1; -s2'")
        p.add_argument("--clasp", choices=("+", "-"))
        p.add_argument("--base", choices=("necklace", "whitehead"))
        p.add_argument("--field", choices=("gf2", "rat"))
        p.add_argument("--weights", help="comma-separated rationals")
        p.add_argument("--format", choices=("tsv", "json"))
        p.add_argument("--cap", help=f"state cap (default {STATE_CAP})")
        p.add_argument("--workers", help="worker count; 1 = serial baseline")
        p.add_argument("--cache-dir", dest="cache_dir",
                       help="result cache (or env AKH_CACHE_DIR)")
        p.add_argument("--config", help="JSON config file; flags win")
        p.add_argument("--out", help="write output to file instead of stdout")
        p.add_argument("--sign-mode", dest="sign_mode", choices=("0", "1"),
                       help="edge sign assignment variant")
        if name == "resolve":
            p.add_argument("--state", help="all0 | all1 | integer literal")
        if name == "akh":
            p.add_argument("--scan", action="store_true",
                           help="top k-sector scan only (prints max k)")
        if name == "check-wrap":
            p.add_argument("--use-homology", action="store_true",
                           help="also compute AKh max k")
        if name == "bs-ss":
            p.add_argument("--split-in", dest="split_in",
                           help="explicit split-target .adt for the limit")
        if name == "sweep":
            p.add_argument("--no-akh", action="store_true",
                           help="skip the homology column")
        if name in _PLOTTABLE:
            p.add_argument("--plot", help="render a figure to this file")
    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    t0 = time.monotonic()
    try:
        args = _merge_config(args)
        record, code = _COMMANDS[args.command](args)
        if record:
            _emit(args, record, int((time.monotonic() - t0) * 1000))
            _maybe_plot(args, record)
        return code
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except WeightError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_WEIGHT
    except AdtError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except AssertionError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
