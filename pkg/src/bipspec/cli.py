"""Command-line front door.

Every number in the emitted reports comes from a library operation; the CLI
only orchestrates and serializes.  Exit codes separate observation from
misuse: 0 means no claim was violated on this input, 1 means at least one
report flagged a violated claim (data, not a crash), 2 means usage or input
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bigraph, eccode, expansion, spectra, vsplit

USAGE_ERROR = 2


def _load_graph(path: str) -> bigraph.BipartiteGraph:
    return bigraph.read_edge_list(Path(path).read_text(encoding="utf-8"))


def _is_violation(finding: dict) -> bool:
    kind = finding.get("type")
    if kind == "bound":
        return not finding["holds"] and finding["preconditions_met"]
    if kind == "interlacing":
        return not finding["valid_form_holds"] or not finding["claimed_chain_holds"]
    if kind == "connectivity-criterion":
        return finding["criterion_met"] and not finding["conclusion_holds"]
    if kind == "distance":
        return finding["bound_holds"] is False
    if kind == "criterion":
        return not finding["passed"]
    return False


def _emit(command: str, inputs: dict, findings: list[dict], json_path: str | None) -> int:
    violations = [f for f in findings if _is_violation(f)]
    status = 1 if violations else 0
    report = {
        "command": command,
        "inputs": inputs,
        "findings": findings,
        "violations": violations,
        "exit_status": status,
    }
    if json_path:
        Path(json_path).write_text(
            json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    if violations:
        print(f"{len(violations)} violated claim(s) on this input:")
        for v in violations:
            label = v.get("bound_id") or v.get("theorem") or v.get("criterion") or v.get("type")
            print(f"  - {label}")
    else:
        print("no violations")
    return status


def _cmd_gen(args) -> int:
    if args.complete:
        g = bigraph.complete_bipartite(args.complete[0], args.complete[1])
        inputs = {"complete": args.complete}
    elif args.path is not None:
        g = bigraph.path_graph(args.path)
        inputs = {"path": args.path}
    else:
        g = bigraph.random_tree(args.tree, args.mode, args.seed)
        inputs = {"tree": args.tree, "mode": args.mode, "seed": args.seed}
    text = bigraph.write_edge_list(g)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {g.n1}+{g.n2} vertices, {g.m} edges to {args.out}")
    else:
        sys.stdout.write(text)
    if args.json:
        findings = [{"type": "graph", "n1": g.n1, "n2": g.n2, "m": g.m}]
        return _emit("gen", inputs, findings, args.json)
    return 0


def _cmd_spectrum(args) -> int:
    g = _load_graph(args.graph)
    builders = {
        "adjacency": spectra.adjacency_matrix,
        "laplacian": spectra.laplacian_matrix,
        "signless-laplacian": spectra.signless_laplacian_matrix,
    }
    report = spectra.symmetric_eigenvalues(builders[args.matrix](g))
    print(f"{args.matrix} spectrum of {g.n1}+{g.n2} vertices, {g.m} edges:")
    for value, count in spectra.eigenvalue_clusters(report.eigenvalues):
        mult = f" (x{count})" if count > 1 else ""
        print(f"  {value:.8f}{mult}")
    print(f"residual {report.residual:.2e} after {report.iterations} sweeps")
    findings = [{"type": "spectrum", **report.to_json_dict()}]
    return _emit("spectrum", {"graph": args.graph, "matrix": args.matrix}, findings, args.json)


def _cmd_bounds(args) -> int:
    g = _load_graph(args.graph)
    findings: list[dict] = []
    for rep in spectra.bound_suite(g):
        findings.append({"type": "bound", **rep.to_json_dict()})
        mark = "ok " if rep.holds else "VIOLATED"
        pre = "" if rep.preconditions_met else " [preconditions unmet]"
        print(f"{rep.bound_id:18s} bound {rep.bound_value: .6f}  observed {rep.observed_value: .6f}  {mark}{pre}")
    for flavor, matrix in (("adjacency", spectra.adjacency_matrix), ("laplacian", spectra.laplacian_matrix)):
        full = spectra.symmetric_eigenvalues(matrix(g))
        q = spectra.bipartite_quotient(g, flavor)
        inter = spectra.interlacing_check(full, q)
        findings.append({"type": "interlacing", "flavor": flavor, **inter.to_json_dict()})
        print(
            f"interlacing ({flavor}): valid form "
            f"{'holds' if inter.valid_form_holds else 'FAILS'}, chain "
            f"{'holds' if inter.claimed_chain_holds else 'FAILS'}"
        )
    return _emit("bounds", {"graph": args.graph}, findings, args.json)


def _cmd_split(args) -> int:
    g = _load_graph(args.graph)
    result = vsplit.vertex_split(g, args.rule, args.seed)
    split = result.split_graph
    print(f"split: {g.n1}+{g.n2} -> {split.n1}+{split.n2} vertices, {split.m} edges ({args.rule})")
    for w in result.warnings:
        print(f"  warning: {w}")
    findings: list[dict] = [
        {
            "type": "split",
            "n1": split.n1,
            "n2_prime": split.n2,
            "m": split.m,
            **vsplit.split_sidecar(result),
        }
    ]
    if args.out:
        base = Path(args.out)
        base.with_suffix(".bip").write_text(bigraph.write_edge_list(split), encoding="utf-8")
        base.with_suffix(".json").write_text(
            json.dumps(vsplit.split_sidecar(result), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        print(f"wrote {base.with_suffix('.bip')} and {base.with_suffix('.json')}")
    if args.k is not None:
        for rep in (vsplit.theorem_r1_check(result, args.k), vsplit.theorem_r2_check(g, result, args.k)):
            findings.append({"type": "connectivity-criterion", **rep.to_json_dict()})
            print(
                f"{rep.theorem}: lambda2'={rep.lambda2_prime:.6f} vs threshold {rep.threshold:.6f} "
                f"(criterion {'met' if rep.criterion_met else 'not met'}); "
                f"kappa'={rep.measured_kappa} (conclusion {'holds' if rep.conclusion_holds else 'fails'})"
            )
    inputs = {"graph": args.graph, "rule": args.rule, "seed": args.seed, "k": args.k}
    return _emit("split", inputs, findings, args.json)


def _cmd_expansion(args) -> int:
    g = _load_graph(args.graph)
    report = expansion.vertex_expansion(g, args.side, args.cap, gamma=args.gamma, seed=args.seed)
    print(
        f"alpha = {report.alpha:.6f} over {args.side} subsets up to size {report.subset_cap} "
        f"({'exhaustive' if report.exhaustive else 'sampled'}), witness {list(report.witness)}"
    )
    findings: list[dict] = [{"type": "expansion", **report.to_json_dict()}]
    if args.gamma is not None and g.degree_profile().is_left_regular and args.side == "left":
        params = expansion.lossless_parameters(g, args.gamma)
        findings.append({"type": "lossless", **params.to_json_dict()})
        print(f"lossless parameters: D={params.D} alpha={params.alpha:.6f} epsilon={params.epsilon:.6f}")
    inputs = {"graph": args.graph, "side": args.side, "cap": args.cap, "gamma": args.gamma, "seed": args.seed}
    return _emit("expansion", inputs, findings, args.json)


def _cmd_code(args) -> int:
    findings: list[dict] = []
    if args.pipeline is not None:
        pipe = eccode.construct_expander_code(args.pipeline)
        code = pipe.code
        findings.append(
            {
                "type": "code",
                "block_length": code.n,
                "check_count": code.check_count,
                "rank": code.rank,
                "dimension": code.dimension,
                "rate": code.rate,
            }
        )
        findings.append({"type": "lossless", **pipe.params.to_json_dict()})
        findings.append({"type": "distance", **pipe.report.to_json_dict()})
        findings.append({"type": "n2-rule", **pipe.n2_rule.to_json_dict()})
        inputs = {"pipeline": args.pipeline}
        print(
            f"pipeline n1={args.pipeline}: H is {code.check_count}x{code.n}, rank {code.rank}, "
            f"dimension {code.dimension}, rate {code.rate:.4f}"
        )
        print(
            f"bounds: lemma {pipe.report.lemma_bound} / specialized {pipe.report.cor8_bound}; "
            f"true distance {pipe.report.true_distance} "
            f"(premises {'verified' if pipe.report.premises_verified else 'unverified'})"
        )
    else:
        g = _load_graph(args.graph)
        code = eccode.parity_check_from_graph(g)
        entry = {
            "type": "code",
            "block_length": code.n,
            "check_count": code.check_count,
            "rank": code.rank,
            "dimension": code.dimension,
            "rate": code.rate,
        }
        if 1 <= code.dimension <= eccode.MAX_ENUM_DIMENSION:
            entry["true_distance"] = eccode.min_distance(code)
        findings.append(entry)
        inputs = {"graph": args.graph}
        print(
            f"code: H is {code.check_count}x{code.n}, rank {code.rank}, dimension {code.dimension}"
            + (f", distance {entry['true_distance']}" if "true_distance" in entry else "")
        )
    if args.pchk:
        Path(args.pchk).write_text(eccode.write_pchk(code), encoding="utf-8")
        print(f"wrote {args.pchk}")
    if args.alist:
        Path(args.alist).write_text(eccode.write_alist(code), encoding="utf-8")
        print(f"wrote {args.alist}")
    return _emit("code", inputs, findings, args.json)


def _cmd_verify_all(args) -> int:
    from . import acceptance

    findings = []
    for result in acceptance.run_all():
        findings.append({"type": "criterion", **result.to_json_dict()})
        print(f"{result.cid:4s} {result.name}: {'PASS' if result.passed else 'FAIL'}")
    return _emit("verify-all", {}, findings, args.json)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bipspec",
        description="Bipartite spectra, quotient bounds, vertex splits, and expander codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph and write its edge list")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--complete", nargs=2, type=int, metavar=("M", "N"))
    kind.add_argument("--path", type=int, metavar="N")
    kind.add_argument("--tree", type=int, metavar="N")
    p.add_argument("--mode", choices=bigraph.TREE_MODES, default="balanced")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("spectrum", help="eigenvalues of a graph matrix")
    p.add_argument("--graph", required=True, metavar="FILE")
    p.add_argument(
        "--matrix",
        choices=("adjacency", "laplacian", "signless-laplacian"),
        default="adjacency",
    )
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(fn=_cmd_spectrum)

    p = sub.add_parser("bounds", help="evaluate every eigenvalue bound report")
    p.add_argument("--graph", required=True, metavar="FILE")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("split", help="vertex-split a graph")
    p.add_argument("--graph", required=True, metavar="FILE")
    p.add_argument("--rule", choices=vsplit.SPLIT_RULES, default="round-robin")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, help="also run the connectivity criteria at this k")
    p.add_argument("--out", metavar="BASE", help="write BASE.bip and BASE.json")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(fn=_cmd_split)

    p = sub.add_parser("expansion", help="measure vertex expansion")
    p.add_argument("--graph", required=True, metavar="FILE")
    p.add_argument("--side", choices=expansion.SIDES, default="left")
    p.add_argument("--cap", type=int)
    p.add_argument("--gamma", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(fn=_cmd_expansion)

    p = sub.add_parser("code", help="parity-check code from a factor graph")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--pipeline", type=int, metavar="N1")
    source.add_argument("--graph", metavar="FILE")
    p.add_argument("--pchk", metavar="FILE", help="write the dense pchk format")
    p.add_argument("--alist", metavar="FILE", help="write the sparse alist format")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(fn=_cmd_code)

    p = sub.add_parser("verify-all", help="run the full acceptance suite")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(fn=_cmd_verify_all)

    return parser


def run(argv: list[str]) -> int:
    """Parse argv and execute; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
