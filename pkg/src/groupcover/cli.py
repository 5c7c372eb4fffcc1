"""Command-line front end.

    groupcover sigma A4
    groupcover mu S3 --k 3
    groupcover verify --suite c2 --max-order 60
    groupcover scan --k 4 --max-order 60 --out report.json
    groupcover conjecture --k 3 --max-order 60
    groupcover probe-star --samples 2000 --seed 1 --max-order 24

Exit codes: 0 success, 1 usage or input error, 2 a verified bound failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .catalog import CatalogEntry, UnknownSpec, make, scan_catalog
from .covering import sigma_classifier, sigma_cross_check, sigma_of
from .group_core import ClosureExceedsLimit, Group, GroupFileError, NotAGroup, load_group
from .subgroups import lattice_of
from .union_max import (
    C2_BOUND,
    C3_BOUND,
    C3_ODD_BOUND,
    conjecture_probe,
    mu_k,
    order_class_maxima,
    star_bound,
    star_exceptions,
    star_holds_all_designations,
    verify_c2,
    verify_c3,
    verify_c3_odd,
)

log = logging.getLogger("groupcover")


def frac(x: Fraction | None) -> str | None:
    return None if x is None else f"{x.numerator}/{x.denominator}"


def sigma_field(sigma: int | None) -> int | str:
    return "uncoverable" if sigma is None else sigma


# result cache ----------------------------------------------------------------


class ResultCache:
    """Append-only JSON-lines store; the latest row for a key wins."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._rows: dict[str, dict] = {}
        if self.path.exists():
            for lineno, line in enumerate(self.path.read_text(encoding="utf-8").splitlines(), 1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    self._rows[rec["key"]] = rec["row"]
                except (json.JSONDecodeError, KeyError, TypeError):
                    log.warning("%s:%d: skipping corrupt cache line", self.path, lineno)

    def get(self, key: str) -> dict | None:
        return self._rows.get(key)

    def put(self, key: str, row: dict) -> None:
        self._rows[key] = row
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps({"key": key, "row": row}) + "\n")


# row builders (module level so worker processes can run them) ------------------


def _subgroup_elements(g: Group, ids) -> list[list[int]]:
    lat = lattice_of(g)
    return [lat[i].elements for i in sorted(ids)]


def sigma_row(g: Group) -> dict:
    lat = lattice_of(g)
    cover = sigma_of(g)
    cls = sigma_classifier(g, lat)
    return {"group": g.name, "order": g.order, "sigma": sigma_field(cover.sigma),
            "certificate": _subgroup_elements(g, cover.certificate),
            "classifier": cls.value.name.lower(), "reason": cls.reason,
            "agreement": sigma_cross_check(g, lat)}


def mu_row(g: Group, k: int) -> dict:
    lat = lattice_of(g)
    w = mu_k(g, lat, k)
    bound = star_bound(w.ratios).value if w.ratios else None
    s = sigma_of(g).sigma
    return {"group": g.name, "order": g.order, "sigma": sigma_field(s), "k": k,
            "mu": w.union_size, "ratio": frac(w.ratio), "bound": frac(bound),
            "witness": _subgroup_elements(g, w.subgroup_ids),
            "flags": {"covers": w.union_size == g.order, "sigma_gt_k": s is None or s > k}}


def _flags_dict(flags) -> dict:
    return {"mu2_equality": flags.mu2_equality, "mu3_equality": flags.mu3_equality,
            "mu3_odd_equality": flags.mu3_odd_equality, "proof_predicate": flags.proof_predicate,
            "headline_predicate": flags.headline_predicate, "indices": list(flags.indices),
            "products_equal_group": list(flags.products_equal_group),
            "intersection_contained": flags.intersection_contained,
            "all_optimal_agree": flags.all_optimal_agree}


def verify_row(g: Group, suite: str, max_subset: int) -> dict:
    lat = lattice_of(g)
    row = {"group": g.name, "order": g.order, "suite": suite}
    if suite == "star":
        checked, violations = star_exceptions(g, lat, max_subset)
        row.update(applicable=True, holds=violations == 0, checked=checked, violations=violations)
        return row
    if suite == "c2":
        holds, flags = verify_c2(g, lat)
        applicable, bound, k = True, C2_BOUND, 2
    else:
        fn, bound = (verify_c3, C3_BOUND) if suite == "c3" else (verify_c3_odd, C3_ODD_BOUND)
        applicable, holds, flags = fn(g, lat)
        k = 3
    w = mu_k(g, lat, k)
    ok = (not applicable) or (bool(holds) and flags.all_optimal_agree)
    row.update(applicable=applicable, holds=ok, mu=w.union_size, ratio=frac(w.ratio),
               bound=frac(bound), witness=_subgroup_elements(g, w.subgroup_ids),
               flags=_flags_dict(flags))
    return row


def conjecture_row(g: Group, k: int) -> dict:
    rep = conjecture_probe(g, lattice_of(g), k)
    lat = lattice_of(g)
    return {"group": g.name, "order": g.order, "sigma": sigma_field(rep.sigma), "k": k,
            "mu": rep.witness.union_size, "ratio": frac(rep.witness.ratio),
            "witness": _subgroup_elements(g, rep.witness.subgroup_ids),
            "cover_completer": None if rep.cover_completer is None else lat[rep.cover_completer].elements,
            "flags": {"sigma_is_k_plus_1": rep.sigma_is_k_plus_1,
                      "conjecture_satisfied": rep.conjecture_satisfied}}


def probe_star_row(g: Group, k: int, samples: int, seed: int) -> dict:
    lat = lattice_of(g)
    ids = lat.proper_ids
    rng = random.Random(f"{seed}:{g.name}")
    violations = 0
    drawn = 0
    for _ in range(samples if ids else 0):
        r = rng.randint(1, min(k, len(ids)))
        combo = rng.sample(ids, r)
        drawn += 1
        violations += not star_holds_all_designations(g, lat, combo)
    return {"group": g.name, "order": g.order, "k": k, "samples": drawn,
            "violations": violations, "holds": violations == 0}


def _run_entry(args):
    fn, g, params = args
    return fn(g, *params)


# driver ------------------------------------------------------------------------


def _resolve(spec: str) -> Group:
    if spec.lower().endswith(".json") or Path(spec).is_file():
        return load_group(spec)
    return make(spec)


def _map_groups(fn, groups: list[Group], params: tuple, jobs: int, cache: ResultCache | None,
                tag: str) -> list[dict]:
    rows: list[dict | None] = []
    todo = []
    for g in groups:
        hit = cache.get(f"{g.name}|{tag}") if cache else None
        rows.append(hit)
        if hit is None:
            todo.append(g)
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            fresh = list(pool.map(_run_entry, [(fn, g, params) for g in todo], chunksize=4))
    else:
        fresh = [fn(g, *params) for g in todo]
    it = iter(fresh)
    out = []
    for g, row in zip(groups, rows):
        if row is None:
            row = next(it)
            if cache:
                cache.put(f"{g.name}|{tag}", row)
        out.append(row)
    return sorted(out, key=lambda r: (r["order"], r["group"]))


def _to_csv(rows: list[dict]) -> str:
    keys = [k for k in rows[0] if not isinstance(rows[0][k], (list, dict))] if rows else []
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=keys, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _emit(doc: dict, fmt: str, out: str | None) -> None:
    text = _to_csv(doc["rows"]) if fmt == "csv" else json.dumps(doc, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--groups-dir", metavar="PATH", help="extra group JSON files for the catalog")
    common.add_argument("--cache", metavar="PATH", help="JSON-lines result cache")
    common.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(prog="groupcover", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sigma", parents=[common], help="covering number of one group")
    p.add_argument("group", help="group spec (e.g. A4, S3xC2) or a group JSON file")

    p = sub.add_parser("mu", parents=[common], help="largest union of k proper subgroups")
    p.add_argument("group")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="check a bound over the catalog")
    p.add_argument("--suite", choices=("c2", "c3", "c3odd", "star"), required=True)
    p.add_argument("--max-order", type=int, default=60)
    p.add_argument("--k", type=int, default=5, help="largest subset size for the star suite")

    p = sub.add_parser("scan", parents=[common], help="largest mu_k ratio over groups with sigma > k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-order", type=int, default=60)

    p = sub.add_parser("conjecture", parents=[common], help="report cover-completing maximal subgroups")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-order", type=int, default=60)

    p = sub.add_parser("probe-star", parents=[common], help="random sampling of the star bound")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--max-order", type=int, default=60)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1

    for flag in ("k", "max_order", "jobs", "samples"):
        val = getattr(args, flag, None)
        if val is not None and val < 1:
            print(f"error: --{flag.replace('_', '-')} must be positive, got {val}", file=sys.stderr)
            return 1

    try:
        cache = ResultCache(args.cache) if args.cache else None
        if args.command in ("sigma", "mu"):
            g = _resolve(args.group)
            row = sigma_row(g) if args.command == "sigma" else mu_row(g, args.k)
            _emit({"command": args.command, "rows": [row]}, args.format, args.out)
            return 0

        entries: list[CatalogEntry] = scan_catalog(args.max_order, args.groups_dir)
        groups = [e.group for e in entries if e.order > 1]
        jobs = args.jobs

        if args.command == "verify":
            rows = _map_groups(verify_row, groups, (args.suite, args.k), jobs, cache,
                               f"verify:{args.suite}:{args.k}")
            doc = {"command": "verify", "suite": args.suite, "max_order": args.max_order,
                   "failures": sum(not r["holds"] for r in rows), "rows": rows}
            _emit(doc, args.format, args.out)
            return 2 if doc["failures"] else 0

        if args.command == "scan":
            rows = _map_groups(mu_row, groups, (args.k,), jobs, cache, f"mu:{args.k}")
            eligible = sorted((r for r in rows if r["flags"]["sigma_gt_k"]), key=lambda r: r["group"])
            best = max(eligible, key=lambda r: Fraction(r["ratio"]), default=None)
            doc = {"command": "scan", "k": args.k, "max_order": args.max_order,
                   "max_ratio": best and best["ratio"], "max_group": best and best["group"],
                   "max_witness": best and best["witness"], "rows": rows}
            _emit(doc, args.format, args.out)
            return 0

        if args.command == "conjecture":
            if args.k < 2:
                print("error: --k must be at least 2", file=sys.stderr)
                return 1
            rows = _map_groups(conjecture_row, groups, (args.k,), jobs, cache, f"conjecture:{args.k}")
            reports = [conjecture_probe(g, lattice_of(g), args.k) for g in groups]
            maxima = [{**m, "max_ratio": frac(m["max_ratio"])} for m in order_class_maxima(reports)]
            doc = {"command": "conjecture", "k": args.k, "max_order": args.max_order,
                   "order_class_maxima": maxima, "rows": rows}
            _emit(doc, args.format, args.out)
            return 0

        if args.command == "probe-star":
            rows = _map_groups(probe_star_row, groups, (args.k, args.samples, args.seed), jobs, cache,
                               f"probe-star:{args.k}:{args.samples}:{args.seed}")
            doc = {"command": "probe-star", "seed": args.seed, "samples": args.samples,
                   "failures": sum(not r["holds"] for r in rows), "rows": rows}
            _emit(doc, args.format, args.out)
            return 2 if doc["failures"] else 0
    except (UnknownSpec, NotAGroup, GroupFileError, ClosureExceedsLimit, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 1


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
