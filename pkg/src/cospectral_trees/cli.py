"""Command-line entry point: ``cospectral-trees <command> [options]``.

Exit status is 0 on success, 1 when a scan or check reports a consistency
violation or a failed fixture, and 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .fixtures import run_fixtures
from .numerics import ModeUnsupported, spectrum_from_charfn
from .polynomials import DivisionInexact
from .search import (
    SearchReport,
    cospectral_pairs_csv,
    find_cospectral_pairs,
    find_equal_m_vertex_pairs,
    find_remark35_witnesses,
    parse_shard,
    verify_theorems,
)
from .spectral import (
    CharFn,
    PendantMode,
    ProblemSpec,
    RootCondition,
    attach_char_fn,
    char_fn,
    char_pair,
    cospectral,
    tree_char_fn,
)
from .trees import RootedTree, Tree, TreeError, attach, canon_code, enumerate_trees, to_dot, tree_from_json, tree_to_dict, tree_to_json

log = logging.getLogger("cospectral_trees")

DEFAULT_SEED = 12345


class InputError(ValueError):
    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


def _compact(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _config(args: argparse.Namespace) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "out", "verbose")}
    cfg["version"] = __version__
    return cfg


def _read_json(path: str, field: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}", field) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}", field) from None


def _load_tree(path: str, field: str) -> Tree | RootedTree:
    try:
        return tree_from_json(json.dumps(_read_json(path, field)))
    except TreeError as exc:
        raise InputError(f"{path}: {exc}", field) from None


def _rooted(obj: Tree | RootedTree, root: int | None, field: str) -> RootedTree:
    tree = obj.tree if isinstance(obj, RootedTree) else obj
    if root is None:
        if isinstance(obj, RootedTree):
            return obj
        raise InputError("a root is required (--root or a 'root' field in the tree JSON)", field)
    try:
        return RootedTree(tree, root)
    except TreeError as exc:
        raise InputError(str(exc), "root") from None


def _spec(args: argparse.Namespace) -> ProblemSpec:
    return ProblemSpec(RootCondition(args.root_cond), PendantMode(args.pendants))


# --- commands -------------------------------------------------------------


def cmd_enumerate(args) -> int:
    trees = list(enumerate_trees(args.n))
    if args.format == "text":
        lines = [f"{i}\t{','.join(map(str, canon_code(t)))}\t{_compact(tree_to_dict(t)['edges'])}"
                 for i, t in enumerate(trees)]
        _emit(args, "\n".join(lines) + "\n")
    elif args.format == "csv":
        rows = ["index,code,edges"] + [f"{i},\"{','.join(map(str, canon_code(t)))}\",\"{_compact(tree_to_dict(t)['edges'])}\""
                                      for i, t in enumerate(trees)]
        _emit(args, "\n".join(rows) + "\n")
    else:
        payload = {"config": _config(args), "trees": [tree_to_dict(t) for t in trees]}
        _emit(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_charfn(args) -> int:
    obj = _load_tree(args.tree, "tree")
    if args.root is None and not isinstance(obj, RootedTree):
        f = tree_char_fn(obj, PendantMode(args.pendants))
    else:
        rt = _rooted(obj, args.root, "tree")
        f = char_fn(rt, _spec(args))
    _emit(args, json.dumps(f.to_dict(), separators=(",", ":")) + "\n")
    return 0


def cmd_attach(args) -> int:
    base = _load_tree(args.base, "base")
    base_tree = base.tree if isinstance(base, RootedTree) else base
    attached = _rooted(_load_tree(args.attached, "attached"), args.attached_root, "attached")
    if attached.tree.n < 2:
        raise InputError("the attached tree must have at least one edge", "attached")
    try:
        merged = attach(base_tree, args.vertex, attached)
    except TreeError as exc:
        raise InputError(str(exc), "vertex") from None
    mode = PendantMode(args.pendants)
    direct = char_fn(RootedTree(merged, args.vertex), ProblemSpec(RootCondition.NEUMANN, mode))
    via = attach_char_fn(char_pair(RootedTree(base_tree, args.vertex), mode), char_pair(attached, mode))
    payload = {
        "tree": tree_to_dict(RootedTree(merged, args.vertex)),
        "charfn": direct.to_dict(),
        "charfn_from_pairs": via.to_dict(),
        "consistent": direct == via,
    }
    _emit(args, json.dumps(payload, sort_keys=True) + "\n")
    return 0 if direct == via else 1


def _charfn_input(path: str, field: str, args) -> CharFn:
    data = _read_json(path, field)
    if isinstance(data, dict) and "s_exp" in data:
        try:
            return CharFn.from_dict(data)
        except ValueError as exc:
            raise InputError(f"{path}: {exc}", field) from None
    try:
        obj = tree_from_json(json.dumps(data))
    except TreeError as exc:
        raise InputError(f"{path}: {exc}", field) from None
    if isinstance(obj, RootedTree):
        return char_fn(obj, ProblemSpec(RootCondition.NEUMANN, PendantMode(args.pendants)))
    return tree_char_fn(obj, PendantMode(args.pendants))


def cmd_cospectral(args) -> int:
    f = _charfn_input(args.a, "a", args)
    g = _charfn_input(args.b, "b", args)
    payload = {"a": f.to_dict(), "b": g.to_dict(), "cospectral": cospectral(f, g), "identical": f == g}
    _emit(args, json.dumps(payload, sort_keys=True) + "\n")
    return 0


def _write_report(args, report: SearchReport, csv_text: str | None = None) -> int:
    if args.format == "csv":
        _emit(args, csv_text if csv_text is not None else report.to_csv(header=not args.no_header))
    else:
        _emit(args, report.to_json())
    if not report.complete:
        return 1
    return 1 if report.violations else 0


def _shard(args):
    try:
        return parse_shard(args.shard)
    except ValueError as exc:
        raise InputError(str(exc), "shard") from None


def cmd_search_pairs(args) -> int:
    report = find_cospectral_pairs(args.n, PendantMode(args.pendants), _shard(args), args.jobs, _config(args))
    csv_text = cospectral_pairs_csv(report) if args.format == "csv" else None
    return _write_report(args, report, csv_text)


def cmd_search_equal_m(args) -> int:
    report = find_equal_m_vertex_pairs(args.n, PendantMode(args.pendants), args.include_pendants,
                                       _shard(args), args.jobs, _config(args))
    return _write_report(args, report)


def cmd_verify(args) -> int:
    report = verify_theorems(args.n_max, pendant_mode=PendantMode(args.pendants), shard=_shard(args),
                             jobs=args.jobs, config=_config(args))
    return _write_report(args, report)


def cmd_remark35(args) -> int:
    report = find_remark35_witnesses(args.n_max, PendantMode(args.pendants), shard=_shard(args),
                                     jobs=args.jobs, config=_config(args))
    return _write_report(args, report)


def cmd_spectrum(args) -> int:
    rt = _rooted(_load_tree(args.tree, "tree"), args.root, "tree")
    f = char_fn(rt, _spec(args))
    try:
        spec = spectrum_from_charfn(f, args.K)
    except ModeUnsupported as exc:
        raise InputError(str(exc), "pendants") from None
    lines = ["index,lambda,multiplicity,source"]
    lines += [f"{i},{ev.lam:.15g},{ev.multiplicity},{ev.source}" for i, ev in enumerate(spec.eigenvalues)]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_export_dot(args) -> int:
    obj = _load_tree(args.tree, "tree")
    if args.root is not None:
        obj = _rooted(obj, args.root, "root")
    dot = to_dot(obj)
    if args.out:
        out = Path(args.out)
        out.write_text(dot, encoding="utf-8")
        out.with_suffix(".json").write_text(tree_to_json(obj) + "\n", encoding="utf-8")
    else:
        sys.stdout.write(dot)
    return 0


def cmd_fixtures(args) -> int:
    results = run_fixtures()
    width = max(len(name) for name, _ in results)
    lines = [f"{name:<{width}}  {'PASS' if ok else 'FAIL'}" for name, ok in results]
    failed = sum(not ok for _, ok in results)
    lines.append(f"{len(results) - failed}/{len(results)} passed")
    _emit(args, "\n".join(lines) + "\n")
    return 1 if failed else 0


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cospectral-trees", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write output here instead of stdout")
        return sp

    def pendants(sp, default="dirichlet"):
        sp.add_argument("--pendants", choices=["dirichlet", "neumann"], default=default,
                        help="condition at non-root pendant vertices")

    def scan(sp):
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--shard", default="0/1", help="i/k: run the i-th of k slices")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--no-header", action="store_true", help="omit the CSV header row")

    sp = add("enumerate", cmd_enumerate, "list non-isomorphic trees")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--format", choices=["json", "csv", "text"], default="json")

    sp = add("charfn", cmd_charfn, "characteristic function of a (rooted) tree")
    sp.add_argument("--tree", required=True)
    sp.add_argument("--root", type=int)
    sp.add_argument("--root-cond", choices=["neumann", "dirichlet"], default="neumann")
    pendants(sp)

    sp = add("attach", cmd_attach, "glue a rooted tree onto a vertex")
    sp.add_argument("--base", required=True)
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--attached", required=True)
    sp.add_argument("--attached-root", type=int)
    pendants(sp)

    sp = add("cospectral", cmd_cospectral, "compare two CharFn or tree files")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    pendants(sp)

    sp = add("search-pairs", cmd_search_pairs, "cospectral non-isomorphic trees on n vertices")
    sp.add_argument("--n", type=int, required=True)
    pendants(sp, default="neumann")
    scan(sp)

    sp = add("search-equal-m", cmd_search_equal_m, "vertex pairs with equal M-function")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--include-pendants", action="store_true")
    pendants(sp)
    scan(sp)

    sp = add("verify", cmd_verify, "exhaustive check of the attachment theorems")
    sp.add_argument("--n-max", type=int, required=True)
    pendants(sp)
    scan(sp)

    sp = add("remark35", cmd_remark35, "unequal-degree cospectral witnesses")
    sp.add_argument("--n-max", type=int, required=True)
    pendants(sp)
    scan(sp)

    sp = add("spectrum", cmd_spectrum, "explicit eigenvalues for q = 0, l = 1")
    sp.add_argument("--tree", required=True)
    sp.add_argument("--root", type=int)
    sp.add_argument("--root-cond", choices=["neumann", "dirichlet"], default="neumann")
    sp.add_argument("--K", type=int, default=10)
    pendants(sp)

    sp = add("export-dot", cmd_export_dot, "Graphviz export with a JSON sidecar")
    sp.add_argument("--tree", required=True)
    sp.add_argument("--root", type=int)

    add("fixtures", cmd_fixtures, "run the built-in reference checks")
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(_compact({"error": str(exc), "field": exc.field}) + "\n")
        return 2
    except (TreeError, DivisionInexact, ValueError) as exc:
        sys.stderr.write(_compact({"error": str(exc), "field": None}) + "\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
