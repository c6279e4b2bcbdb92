"""Exhaustive scans over enumerated trees.

Every scan is split into tasks ``(n, start, stop)`` over the enumeration
index, so runs can be sharded or spread over worker processes and still
produce byte-identical reports once the records are put back in order.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .polynomials import to_text
from .spectral import (
    DEFAULT_FAMILY,
    P2_LEAF,
    CharFn,
    PendantMode,
    ProblemSpec,
    RootCondition,
    char_fn,
    cospectral,
    lemma32_check,
    merged_char_fn,
    tree_char_fn,
)
from .trees import MAX_ENUM_N, RootedTree, Tree, TreeError, canon_code, count_trees, enumerate_trees, orbit_index, tree_to_dict

log = logging.getLogger(__name__)

Task = tuple[int, int, int]


class ConsistencyError(RuntimeError):
    """The fast and the direct criterion disagreed on some instance."""


@dataclass
class SearchReport:
    mode: str
    n_range: tuple[int, int]
    pendant_mode: str
    records: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    complete: bool = True

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "complete": self.complete,
            "config": self.config,
            "n_range": list(self.n_range),
            "pendant_mode": self.pendant_mode,
            "stats": dict(sorted(self.stats.items())),
            "violations": self.violations,
            "records": self.records,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self, header: bool = True) -> str:
        rows = [_flatten(r) for r in self.records]
        cols = _CSV_COLUMNS[self.mode]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(cols)
        for r in rows:
            w.writerow([r.get(c, "") for c in cols])
        return buf.getvalue()


_CSV_COLUMNS = {
    "CospectralPairs": ["n", "group", "index", "code", "edges", "s_exp", "poly"],
    "EqualM": ["n", "index", "code", "v1", "v2", "degree", "neumann", "dirichlet", "attach_P2"],
    "TheoremVerify": ["n", "index", "code", "v1", "v2", "degree", "neumann", "dirichlet", "orbit_equal"],
    "Remark35": ["n", "index", "code", "v1", "v2", "d1", "d2", "C", "phi1", "phi2", "lemma32_holds"],
}


def _flatten(rec: dict) -> dict:
    out = {}
    for k, v in rec.items():
        if isinstance(v, dict) and "s_exp" in v:
            out[k] = f"s^{v['s_exp']}*({v['text']})"
        elif isinstance(v, (list, tuple)):
            out[k] = json.dumps(v, separators=(",", ":"))
        else:
            out[k] = v
    return out


def _charfn_record(f: CharFn) -> dict:
    d = f.to_dict()
    d["text"] = to_text(f.P)
    return d


def _tree_ref(t: Tree, index: int) -> dict:
    return {
        "index": index,
        "code": list(canon_code(t)),
        "edges": tree_to_dict(t)["edges"],
    }


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# --- task plumbing --------------------------------------------------------


def parse_shard(text: str) -> tuple[int, int]:
    try:
        i, k = (int(x) for x in text.split("/"))
    except ValueError:
        raise ValueError(f"shard must look like i/k, got {text!r}") from None
    if k < 1 or not 0 <= i < k:
        raise ValueError(f"shard index {i} is not in 0..{k - 1}")
    return i, k


def make_tasks(ns: Iterable[int], shard: tuple[int, int] = (0, 1), chunk: int = 64) -> list[Task]:
    """Contiguous index blocks; shard ``i/k`` owns the ``i``-th of ``k``
    equal slices of each size's enumeration."""
    i, k = shard
    tasks = []
    for n in ns:
        total = count_trees(n)
        lo = total * i // k
        hi = total * (i + 1) // k
        for a in range(lo, hi, chunk):
            tasks.append((n, a, min(a + chunk, hi)))
    return tasks


def _run_tasks(worker: Callable, tasks: Sequence[Task], args: tuple, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        for t in tasks:
            yield worker(t, *args)
        return
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        futures = [ex.submit(worker, t, *args) for t in tasks]
        for f in futures:
            yield f.result()


def _collect(report: SearchReport, worker: Callable, tasks: Sequence[Task], args: tuple, jobs: int) -> SearchReport:
    stats: Counter = Counter()
    try:
        for recs, st, viol in _run_tasks(worker, tasks, args, jobs):
            report.records.extend(recs)
            report.violations.extend(viol)
            stats.update(st)
    except KeyboardInterrupt:
        log.warning("interrupted; report marked incomplete")
        report.complete = False
    report.stats.update(stats)
    report.stats["violations"] = len(report.violations)
    return report


def _check_n(n: int, lo: int, max_n: int = MAX_ENUM_N) -> None:
    if not isinstance(n, int) or not lo <= n <= max_n:
        raise TreeError(f"n must be in {lo}..{max_n}, got {n!r}")


# --- cospectral pairs -----------------------------------------------------


def _cospectral_worker(task: Task, pendant_mode: PendantMode):
    n, a, b = task
    out = []
    for idx, t in enumerate(enumerate_trees(n, a, b), start=a):
        key = tree_char_fn(t, pendant_mode).normalized()
        out.append((idx, t, key))
    return out, Counter(trees=len(out)), []


def find_cospectral_pairs(
    n: int,
    pendant_mode: PendantMode = PendantMode.NEUMANN,
    shard: tuple[int, int] = (0, 1),
    jobs: int = 1,
    config: dict | None = None,
) -> SearchReport:
    """Group the trees on ``n`` vertices by the root-free cospectrality key
    and report every group with two or more members."""
    _check_n(n, 2)
    report = SearchReport("CospectralPairs", (n, n), pendant_mode.value, config=dict(config or {}))
    _collect(report, _cospectral_worker, make_tasks([n], shard), (pendant_mode,), jobs)
    groups: dict[CharFn, list[tuple[int, Tree]]] = {}
    for idx, t, key in report.records:
        groups.setdefault(key, []).append((idx, t))
    records = []
    pairs = 0
    for key, members in groups.items():
        if len(members) < 2:
            continue
        members.sort(key=lambda m: m[0])
        pairs += len(members) * (len(members) - 1) // 2
        records.append({
            "n": n,
            "group": len(records),
            "key": _charfn_record(key),
            "trees": [_tree_ref(t, idx) for idx, t in members],
        })
    records.sort(key=lambda r: r["trees"][0]["index"])
    for g, r in enumerate(records):
        r["group"] = g
    report.records = records
    report.stats.update(groups=len(records), pairs=pairs, classes=len(groups))
    return report


def cospectral_pairs_csv(report: SearchReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_CSV_COLUMNS["CospectralPairs"])
    for r in report.records:
        for t in r["trees"]:
            w.writerow([r["n"], r["group"], t["index"], json.dumps(t["code"], separators=(",", ":")),
                        json.dumps(t["edges"], separators=(",", ":")), r["key"]["s_exp"], r["key"]["text"]])
    return buf.getvalue()


# --- per-vertex caches ----------------------------------------------------


class _VertexData:
    """Lazily computed characteristic data of one tree, keyed by vertex."""

    def __init__(self, t: Tree, pendant_mode: PendantMode):
        self.t = t
        self.mode = pendant_mode
        self._d: dict[int, CharFn] = {}
        self._m: dict[tuple[int, int], CharFn] = {}
        self._n: CharFn | None = None

    def dirichlet(self, v: int) -> CharFn:
        if v not in self._d:
            self._d[v] = char_fn(RootedTree(self.t, v), ProblemSpec(RootCondition.DIRICHLET, self.mode))
        return self._d[v]

    def neumann(self, v: int) -> CharFn:
        # the same for every interior root
        if len(self.t.adj[v]) >= 2:
            if self._n is None:
                self._n = char_fn(RootedTree(self.t, v), ProblemSpec(RootCondition.NEUMANN, self.mode))
            return self._n
        return char_fn(RootedTree(self.t, v), ProblemSpec(RootCondition.NEUMANN, self.mode))

    def merged(self, v: int, attached: RootedTree = P2_LEAF, slot: int = 0) -> CharFn:
        key = (v, slot)
        if key not in self._m:
            self._m[key] = merged_char_fn(self.t, v, attached, self.mode)
        return self._m[key]


def _candidates(t: Tree, include_pendants: bool) -> list[int]:
    return [v for v in range(t.n) if include_pendants or len(t.adj[v]) >= 2]


# --- equal-M vertex pairs -------------------------------------------------


def _equal_m_worker(task: Task, pendant_mode: PendantMode, include_pendants: bool):
    n, a, b = task
    recs, viol = [], []
    st: Counter = Counter()
    for idx, t in enumerate(enumerate_trees(n, a, b), start=a):
        st["trees"] += 1
        orb = orbit_index(t)
        vd = _VertexData(t, pendant_mode)
        for v1, v2 in combinations(_candidates(t, include_pendants), 2):
            if t.degree(v1) != t.degree(v2):
                st["pairs_degree_filtered"] += 1
                continue
            if orb[v1] == orb[v2]:
                st["pairs_orbit_skipped"] += 1
                continue
            st["pairs_tested"] += 1
            fast = cospectral(vd.merged(v1), vd.merged(v2))
            direct = vd.dirichlet(v1) == vd.dirichlet(v2) and vd.neumann(v1) == vd.neumann(v2)
            if fast != direct:
                viol.append({"n": n, "index": idx, "v1": v1, "v2": v2, "fast": fast, "direct": direct,
                             "edges": tree_to_dict(t)["edges"]})
                continue
            if fast:
                ref = _tree_ref(t, idx)
                recs.append({
                    "n": n, "index": idx, "code": ref["code"], "edges": ref["edges"],
                    "v1": v1, "v2": v2, "degree": t.degree(v1),
                    "neumann": _charfn_record(vd.neumann(v1)),
                    "dirichlet": _charfn_record(vd.dirichlet(v1)),
                    "attach_P2": _charfn_record(vd.merged(v1)),
                })
    st["hits"] = len(recs)
    return recs, st, viol


def find_equal_m_vertex_pairs(
    n: int,
    pendant_mode: PendantMode = PendantMode.DIRICHLET,
    include_pendants: bool = False,
    shard: tuple[int, int] = (0, 1),
    jobs: int = 1,
    config: dict | None = None,
    raise_on_violation: bool = False,
) -> SearchReport:
    """Vertex pairs in distinct orbits, of equal degree, whose single-edge
    attachments are cospectral; each hit is cross-checked against direct
    equality of the Dirichlet functions."""
    _check_n(n, 4)
    report = SearchReport("EqualM", (n, n), pendant_mode.value, config=dict(config or {}))
    _collect(report, _equal_m_worker, make_tasks([n], shard), (pendant_mode, include_pendants), jobs)
    if report.violations and raise_on_violation:
        raise ConsistencyError(f"{len(report.violations)} fast/direct disagreements")
    return report


# --- theorem verification -------------------------------------------------


def _verify_worker(task: Task, family: tuple[RootedTree, ...], pendant_mode: PendantMode):
    n, a, b = task
    recs, viol = [], []
    st: Counter = Counter()
    for idx, t in enumerate(enumerate_trees(n, a, b), start=a):
        st["trees"] += 1
        orb = orbit_index(t)
        vd = _VertexData(t, pendant_mode)
        for v1, v2 in combinations(_candidates(t, False), 2):
            st["pairs"] += 1
            d1, d2 = t.degree(v1), t.degree(v2)
            m1, m2 = vd.merged(v1), vd.merged(v2)
            cos = cospectral(m1, m2)
            lhs = cos and d1 == d2
            rhs = vd.neumann(v1) == vd.neumann(v2) and vd.dirichlet(v1) == vd.dirichlet(v2)

            def fail(kind: str, **extra) -> None:
                viol.append({"kind": kind, "n": n, "index": idx, "v1": v1, "v2": v2,
                             "edges": tree_to_dict(t)["edges"], **extra})

            if lhs != rhs:
                fail("biconditional", fast=lhs, direct=rhs)
            if cos:
                st["cospectral_P2"] += 1
                chk = lemma32_check(m1, m2, (P2_LEAF.tree.degree(P2_LEAF.root), d1, d2))
                st["lemma32_checked"] += 1
                if not chk["holds"]:
                    fail("lemma32", C=_frac(chk["C"]), C_formula=_frac(chk["C_formula"]))
                if d1 != d2:
                    st["cospectral_unequal_degree"] += 1
            if not rhs:
                continue
            st["equal_pairs"] += 1
            if orb[v1] != orb[v2]:
                st["equal_pairs_nontrivial"] += 1
            for slot, att in enumerate(family, start=1):
                st["family_checks"] += 1
                f1, f2 = vd.merged(v1, att, slot), vd.merged(v2, att, slot)
                if f1 != f2:
                    fail("family", attached=tree_to_dict(att), phi1=_charfn_record(f1), phi2=_charfn_record(f2))
            ref = _tree_ref(t, idx)
            recs.append({
                "n": n, "index": idx, "code": ref["code"], "v1": v1, "v2": v2, "degree": d1,
                "neumann": _charfn_record(vd.neumann(v1)), "dirichlet": _charfn_record(vd.dirichlet(v1)),
                "orbit_equal": orb[v1] == orb[v2],
            })
    return recs, st, viol


def verify_theorems(
    n_max: int,
    attach_family: Sequence[RootedTree] = DEFAULT_FAMILY,
    pendant_mode: PendantMode = PendantMode.DIRICHLET,
    n_min: int = 3,
    shard: tuple[int, int] = (0, 1),
    jobs: int = 1,
    config: dict | None = None,
) -> SearchReport:
    """Scan all interior vertex pairs of all trees up to ``n_max``.

    For each pair: [P_2 attachments cospectral and equal degrees] must
    agree with [equal (Neumann, Dirichlet) pairs]; equal pairs must give
    identical functions for every member of ``attach_family``; every
    cospectral P_2 attachment must satisfy the leading-term constant check.
    """
    _check_n(n_max, 3)
    if not attach_family:
        raise ValueError("attach_family must not be empty")
    for att in attach_family:
        if att.tree.n < 2:
            raise ValueError("single-vertex attachments are not allowed")
    report = SearchReport("TheoremVerify", (n_min, n_max), pendant_mode.value, config=dict(config or {}))
    tasks = make_tasks(range(n_min, n_max + 1), shard)
    return _collect(report, _verify_worker, tasks, (tuple(attach_family), pendant_mode), jobs)


# --- unequal-degree witnesses ---------------------------------------------


def _remark35_worker(task: Task, pendant_mode: PendantMode):
    n, a, b = task
    recs = []
    st: Counter = Counter()
    d0 = P2_LEAF.tree.degree(P2_LEAF.root)
    for idx, t in enumerate(enumerate_trees(n, a, b), start=a):
        st["trees"] += 1
        vd = _VertexData(t, pendant_mode)
        for v1, v2 in combinations(_candidates(t, False), 2):
            d1, d2 = t.degree(v1), t.degree(v2)
            if d1 == d2:
                continue
            st["pairs"] += 1
            m1, m2 = vd.merged(v1), vd.merged(v2)
            if not cospectral(m1, m2) or m1 == m2:
                continue
            chk = lemma32_check(m1, m2, (d0, d1, d2))
            ref = _tree_ref(t, idx)
            recs.append({
                "n": n, "index": idx, "code": ref["code"], "edges": ref["edges"],
                "v1": v1, "v2": v2, "d1": d1, "d2": d2, "C": _frac(chk["C"]),
                "phi1": _charfn_record(m1), "phi2": _charfn_record(m2),
                "dirichlet1": _charfn_record(vd.dirichlet(v1)), "dirichlet2": _charfn_record(vd.dirichlet(v2)),
                "lemma32_holds": chk["holds"],
            })
    st["witnesses"] = len(recs)
    viol = [dict(r, kind="lemma32") for r in recs if not r["lemma32_holds"]]
    return recs, st, viol


def find_remark35_witnesses(
    n_max: int,
    pendant_mode: PendantMode = PendantMode.DIRICHLET,
    n_min: int = 3,
    shard: tuple[int, int] = (0, 1),
    jobs: int = 1,
    config: dict | None = None,
) -> SearchReport:
    """Interior pairs of unequal degree whose P_2 attachments are cospectral
    but not identical, each with its proportionality constant."""
    _check_n(n_max, 3)
    report = SearchReport("Remark35", (n_min, n_max), pendant_mode.value, config=dict(config or {}))
    tasks = make_tasks(range(n_min, n_max + 1), shard)
    return _collect(report, _remark35_worker, tasks, (pendant_mode,), jobs)
