"""Command-line entry point: ``equisym <command> ...``.

Exit status: 0 success, 1 failed expectation, 2 usage or input error,
3 request beyond the engine's capability.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .errors import CapabilityError, ConsistencyError, EquisymError
from .genvec import count_vectors, enumerate_vectors, parse_vector
from .group import build_group, load_catalog
from .mcg import load_cached, orbits, store_cached
from .representations import decompose
from .scanner import scan
from .signature import enumerate_signatures, format_signature, parse_signature, rh_genus, teich_dim
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPABILITY = 0, 1, 2, 3


class UsageError(EquisymError):
    pass


def parse_genus_range(text: str) -> list[int]:
    """``"6,8,12"``, ``"2..30"`` or a mix such as ``"2..5,9"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                a, b = part.split("..")
                lo, hi = int(a), int(b)
                if lo > hi:
                    raise UsageError(f"empty genus range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad genus list {text!r} (use 6,8,12 or 2..30)") from None
    if not out or min(out) < 2:
        raise UsageError(f"genera must be >= 2, got {text!r}")
    return sorted(set(out))


def split_top(text: str) -> list[str]:
    """Split on commas outside ``<...>`` and ``{...}``."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "<{":
            depth += 1
        elif ch in ">}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur).strip())
    return [p for p in parts if p]


def parse_pryms(text: str) -> list[tuple[str, str]]:
    out = []
    for item in split_top(text):
        h1, sep, h2 = item.partition("/")
        if not sep:
            raise UsageError(f"Prym pair {item!r} must look like H1/H2")
        out.append((h1.strip(), h2.strip()))
    return out


# -- output ---------------------------------------------------------------------------


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def dump_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands -------------------------------------------------------------------------


def cmd_signatures(args, catalog) -> tuple[int, str]:
    sigs = enumerate_signatures(args.genus, args.order, args.dim)
    names = [format_signature(s) for s in sigs]
    if args.output == "json":
        return EXIT_OK, dump_json({"genus": args.genus, "order": args.order, "dim": args.dim, "signatures": names})
    if args.output == "csv":
        return EXIT_OK, dump_csv(["signature", "dim"], [[n, teich_dim(s)] for n, s in zip(names, sigs)])
    head = f"genus {args.genus}, order {args.order}, dim {args.dim}: {len(sigs)} signature(s)"
    return EXIT_OK, "\n".join([head] + [f"  ({n})" for n in names]) + "\n"


def cmd_vectors(args, catalog) -> tuple[int, str]:
    G = build_group(args.group, catalog)
    sig = parse_signature(args.signature)
    rh_genus(sig, G.order)
    if args.count_only:
        n = count_vectors(G, sig, args.threads)
        if args.output == "json":
            return EXIT_OK, dump_json({"group": G.spec, "signature": format_signature(sig), "count": n})
        if args.output == "csv":
            return EXIT_OK, dump_csv(["group", "signature", "count"], [[G.spec, format_signature(sig), n]])
        return EXIT_OK, f"{n}\n"
    vecs = [str(v) for v in enumerate_vectors(G, sig, args.threads)]
    if args.output == "json":
        return EXIT_OK, dump_json({"group": G.spec, "signature": format_signature(sig), "count": len(vecs), "vectors": vecs})
    if args.output == "csv":
        return EXIT_OK, dump_csv(["vector"], [[v] for v in vecs])
    return EXIT_OK, "".join(v + "\n" for v in vecs)


def cmd_strata(args, catalog) -> tuple[int, str]:
    G = build_group(args.group, catalog)
    sig = parse_signature(args.signature)
    g = rh_genus(sig, G.order)
    data = load_cached(args.cache, G, sig) if args.cache else None
    if data is None:
        report = orbits(G, sig, args.threads)
        data = report.to_json()
        if args.cache:
            store_cached(args.cache, report)
    if args.output == "json":
        return EXIT_OK, dump_json(data)
    if args.output == "csv":
        rows = [[i, o["representative"], o["size"]] for i, o in enumerate(data["orbits"])]
        return EXIT_OK, dump_csv(["orbit", "representative", "size"], rows)
    lines = [
        f"{G.spec} ({data['signature']}), genus {g}: {data['orbit_count']} orbit(s) "
        f"on {data['total_vectors']} vectors"
    ]
    for i, o in enumerate(data["orbits"]):
        lines.append(f"  [{i}] size {o['size']}: ({o['representative']})")
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_jacobian(args, catalog) -> tuple[int, str]:
    G = build_group(args.group, catalog)
    sig = parse_signature(args.signature)
    vec = parse_vector(G, sig, args.vector)
    subs = split_top(args.subgroups) if args.subgroups else []
    pryms = parse_pryms(args.pryms) if args.pryms else []
    report = decompose(vec, subs, pryms)
    if args.output == "json":
        return EXIT_OK, dump_json(report.to_json())
    if args.output == "csv":
        rows = [["factor", f.irrep.label, f.mult, f.dim] for f in report.factors]
        rows += [["quotient", r.key, "", r.dim] for r in report.quotient_rows]
        rows += [["prym", r.key, "", r.dim] for r in report.prym_rows]
        return EXIT_OK, dump_csv(["kind", "label", "mult", "dim"], rows)
    lines = [f"{G.spec} ({format_signature(sig)}) vector ({vec}), genus {report.genus}"]
    for f in report.factors:
        lines.append(f"  {f.irrep.label:8s} mult {f.mult}  dim {f.dim}")
    for r in report.quotient_rows:
        lines.append(f"  JS_{r.key}: dim {r.dim}")
    for r in report.prym_rows:
        lines.append(f"  Prym {r.key}: dim {r.dim}")
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_scan(args, catalog) -> tuple[int, str]:
    genera = parse_genus_range(args.genus)
    report = scan(args.dim, genera, catalog, realize=not args.arithmetic_only, threads=args.threads)
    if args.output == "json":
        return EXIT_OK, report.dumps() + "\n"
    if args.output == "csv":
        return EXIT_OK, report.to_csv()
    lines = [f"dim {args.dim}, genus {genera[0]}..{genera[-1]}"]
    for r in report.rows:
        sigs = " ".join(f"({format_signature(s)})" for s in r.witness_sigs)
        real = r.realizable_max if r.attempted else "not attempted"
        wit = f"  witness {r.witness}" if r.witness else ""
        flag = "  catalog-incomplete" if r.unresolved_orders else ""
        lines.append(f"  g={r.genus}: arithmetic {r.arithmetic_max} {sigs}; realizable {real}{wit}{flag}")
    if report.linear_fit is not None:
        lines.append(f"  fit: {report.linear_fit}")
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_verify(args, catalog) -> tuple[int, str]:
    genera = parse_genus_range(args.genus) if args.genus else None
    res = run_suite(args.suite, genera, catalog)
    status = EXIT_OK if res.passed else EXIT_FAIL
    if args.output == "json":
        return status, dump_json(res.to_json())
    if args.output == "csv":
        rows = [[e.claim, e.provenance, e.relation, e.expected, e.actual, "pass" if e.passed else "fail"]
                for e in res.expectations]
        return status, dump_csv(["claim", "provenance", "relation", "expected", "actual", "result"], rows)
    return status, "\n".join(res.lines()) + "\n"


COMMANDS = {
    "signatures": cmd_signatures,
    "vectors": cmd_vectors,
    "strata": cmd_strata,
    "jacobian": cmd_jacobian,
    "scan": cmd_scan,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--catalog", action="append", default=argparse.SUPPRESS, metavar="FILE")

    p = argparse.ArgumentParser(prog="equisym", description="Finite group actions on compact Riemann surfaces.")
    p.add_argument("--output", choices=("text", "json", "csv"), default="text")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes (default: all cores)")
    p.add_argument("--catalog", action="append", default=[], metavar="FILE", help="JSON group catalog (repeatable)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("signatures", parents=[common], help="signatures with given genus, order and dimension")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--dim", type=int, required=True)

    s = sub.add_parser("vectors", parents=[common], help="surface-kernel generating vectors")
    s.add_argument("--group", required=True, help="C:n, D:n or file:PATH#NAME")
    s.add_argument("--signature", required=True, help='e.g. "0;2,2,2,2,2,2" or "1;2^4"')
    s.add_argument("--count-only", action="store_true")

    s = sub.add_parser("strata", parents=[common], help="equivalence classes of actions")
    s.add_argument("--group", required=True)
    s.add_argument("--signature", required=True)
    s.add_argument("--cache", metavar="DIR")

    s = sub.add_parser("jacobian", parents=[common], help="group algebra decomposition of the Jacobian")
    s.add_argument("--group", required=True)
    s.add_argument("--signature", required=True)
    s.add_argument("--vector", required=True, help='e.g. "s,s,s,s,sr,sr" or "t,1;t^2,t^2,t^2,t^2"')
    s.add_argument("--subgroups", help='comma list, e.g. "<r>,<s>,G"')
    s.add_argument("--pryms", help='comma list of H1/H2, e.g. "<r>/G,<s>/G"')

    s = sub.add_parser("scan", parents=[common], help="maximal orders per genus")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--genus", required=True, help="A..B or a comma list")
    s.add_argument("--arithmetic-only", action="store_true", help="skip the realizability search")

    s = sub.add_parser("verify", parents=[common], help="run a check suite")
    s.add_argument("--suite", required=True, choices=sorted(SUITES))
    s.add_argument("--genus", help="comma list or A..B")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.threads < 1:
        print("equisym: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        catalog = [G for path in args.catalog for G in load_catalog(path)]
        status, text = COMMANDS[args.command](args, catalog)
    except CapabilityError as exc:
        print(f"equisym: capability: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except ConsistencyError as exc:
        print(f"equisym: internal check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (EquisymError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"equisym: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
