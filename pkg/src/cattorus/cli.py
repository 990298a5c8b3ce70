"""Command line front end: ``cattorus verify | theta | groups``.

Exit codes: 0 all checks pass, 1 a check or domain condition fails, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys

from .cattorus import extraspecial_group, extraspecial_relations
from .exact import matmul, show
from .lattice import GuardExceeded, LatticeError, isometry_group, load_lattice, orthogonal_mod2
from .linebundle import theta_series
from .suites import SUITES, run_suites
from .xmod import thread_count


class UsageError(Exception):
    pass


def parse_suites(text: str) -> list:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if "all" in names:
        return list(SUITES)
    bad = [s for s in names if s not in SUITES]
    if bad or not names:
        raise UsageError(f"unknown suite {', '.join(bad) or '(none)'}; choose from "
                         f"{', '.join(SUITES)}, all")
    return names


def _parse_weight(text: str | None, rank: int):
    if text is None:
        return None
    try:
        w = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"bad weight {text!r}") from None
    if len(w) != rank:
        raise UsageError(f"weight needs {rank} entries")
    return w


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def render_verify(lat, names, trials, seed, reports) -> str:
    head = f"# verify lattice={lat.name} rank={lat.rank} seed={seed} trials={trials} " \
           f"suites={','.join(names)}\n"
    body = "\n".join(r.render() for r in reports)
    summary = ["# summary"] + [f"{r.title}\t{'pass' if r.passed else 'fail'}" for r in reports]
    ok = all(r.passed for r in reports)
    summary.append(f"RESULT\t{'PASS' if ok else 'FAIL'}")
    return head + "\n" + body + "\n" + "\n".join(summary) + "\n"


def cmd_verify(args) -> int:
    lat = load_lattice(args.lattice)
    names = parse_suites(args.suite)
    threads = thread_count()
    try:
        reports = run_suites(lat, names, args.trials, args.seed, threads)
    except LatticeError as exc:
        print(f"cattorus: {exc}", file=sys.stderr)
        return 1
    text = render_verify(lat, names, args.trials, args.seed, reports)
    _emit(text, args.out)
    ok = all(r.passed for r in reports)
    if args.out is not None:
        print(f"{lat.name}: {'PASS' if ok else 'FAIL'} ({len(reports)} reports) -> {args.out}")
    return 0 if ok else 1


def cmd_theta(args) -> int:
    lat = load_lattice(args.lattice)
    shift = _parse_weight(args.weight, lat.rank)
    if not lat.is_positive_definite:
        print(f"cattorus: {lat.name} is not positive definite", file=sys.stderr)
        return 1
    series = theta_series(lat, args.max, shift, args.k)
    _emit(series.lines(), args.out)
    return 0


def generators(elems, mul, one) -> list:
    """A greedy generating set: walk the sorted elements, keep those outside the span so far."""
    span, gens = {one}, []
    for g in sorted(elems):
        if g in span:
            continue
        gens.append(g)
        frontier = list(span)
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    p = mul(a, s)
                    if p not in span:
                        span.add(p)
                        nxt.append(p)
            frontier = nxt
    return gens


GROUPS_MAX_RANK = 6


def render_groups(lat) -> str:
    r = lat.rank
    if r > GROUPS_MAX_RANK:
        raise GuardExceeded(f"rank {r} above the isometry search guard {GROUPS_MAX_RANK}")
    lines = [f"# groups lattice={lat.name} rank={r}"]
    O = isometry_group(lat)
    one = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    lines.append(f"O.order\t{len(O)}")
    for g in generators(O, matmul, one):
        lines.append(f"O.generator\t{show(g)}")
    E = extraspecial_group(lat)
    lines.append(f"extraspecial.order\t{len(E.elements)}")
    lines.append(f"extraspecial.centre\t{len(E.centre())}")
    lines.append(f"extraspecial.commutator\t{len(E.commutator_subgroup())}")
    for rel in extraspecial_relations(lat).splitlines():
        if rel.startswith("  "):
            lines.append(f"extraspecial.relation\t{rel.strip()}")
    if lat.is_unimodular and r <= 4:
        from .autos import unimodular_eprime_check
        O2 = orthogonal_mod2(lat)
        lines.append(f"O2.order\t{len(O2['group'])}")
        lines.append(unimodular_eprime_check(lat).render().rstrip("\n"))
    return "\n".join(lines) + "\n"


def cmd_groups(args) -> int:
    lat = load_lattice(args.lattice)
    try:
        text = render_groups(lat)
    except (GuardExceeded, LatticeError) as exc:
        print(f"cattorus: {exc}", file=sys.stderr)
        return 1
    _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cattorus", description="Categorical tori: exact checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--lattice", required=True,
                        help="builtin name (A1, A2, A1xA1, U, D4, E8, ...) or file:<path.json>")
        sp.add_argument("--out", help="write the report here instead of stdout")

    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suite", default="all", help=f"comma list of {', '.join(SUITES)} or all")
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(fn=cmd_verify)

    t = sub.add_parser("theta", help="theta series coefficients by half-norm")
    common(t)
    t.add_argument("--max", type=int, default=5, help="largest half-norm")
    t.add_argument("--weight", help="shift weight, comma separated, for the refined series")
    t.add_argument("--k", type=int, help="winding number for the refined series")
    t.set_defaults(fn=cmd_theta)

    g = sub.add_parser("groups", help="isometry, extraspecial and E' data")
    common(g)
    g.set_defaults(fn=cmd_groups)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be at least 1")
    if getattr(args, "max", 0) is not None and getattr(args, "max", 0) < 0:
        parser.error("--max must be non-negative")
    try:
        return args.fn(args)
    except (UsageError, LatticeError) as exc:
        print(f"cattorus: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
