"""Command-line front end.

Subcommands: test-bip, test-exp (tester runs over seeded trials), gen-pml
(hard-instance generation), verify-lb (exact-identity and Monte Carlo suites),
bench (compiled vs python walk kernels).  JSON is the primary output; CSV is a
flat per-row projection.  All volatile data (clock, wall time, benchmark
timings) lives under the single "timestamp" key so that identical invocations
are byte-identical after dropping it.

Exit codes: 0 success, 1 property-suite failure, 2 input/flag errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict
from datetime import datetime, timezone

import numpy as np

from . import batch, hardinstances, lowerbound, partitions
from .graphs import GraphFormatError, load_graph, save_graph
from .lowerbound import Monomial
from .testers import MODE_KWISE, MODES, BipartiteParams, ExpansionParams, substream
from .walkkernel import available_kernels, get_impl, kernel_name, new_cache, run_endpoints


def seed_arg(text: str) -> int:
    """Seed as decimal or hex ('0x...'); must be a non-negative integer."""
    value = int(text, 0)
    if value < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative")
    return value


def _timestamp(started: float, extra: dict | None = None) -> dict:
    out = {
        "iso": datetime.now(timezone.utc).isoformat(),
        "wall_s": round(time.perf_counter() - started, 6),
    }
    if extra:
        out.update(extra)
    return out


def _emit(record: dict, args, csv_rows=None, csv_header=None) -> None:
    if getattr(args, "format", "json") == "csv" and csv_rows is not None:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(csv_header)
        writer.writerows(csv_rows)
        text = buf.getvalue()
    else:
        text = json.dumps(record, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tester_record(subcommand, args, graph, params, verdicts, started) -> tuple[dict, list, list]:
    totals = {"classical_queries": 0, "modeled_quantum_queries": 0, "wall_work": 0}
    detail = []
    for i, v in enumerate(verdicts):
        snap = v.ledger.snapshot()
        for key in totals:
            totals[key] += snap[key]
        detail.append(
            {
                "trial": i,
                "accept": bool(v.accept),
                "reps_run": int(v.reps_run),
                "collisions_per_rep": [int(c) for c in v.collisions_per_rep],
                "ledger": snap,
            }
        )
    accepts = sum(1 for v in verdicts if v.accept)
    record = {
        "subcommand": subcommand,
        "kernel": kernel_name(),
        "graph": {"path": args.graph, "n": graph.n_vertices, "d": graph.degree_bound},
        "mode": args.mode,
        "seed": int(args.seed),
        "trials": int(args.trials),
        "params": asdict(params),
        "coin_source": coin_source_record(args.mode, params, graph.degree_bound),
        "trials_detail": detail,
        "aggregate": {
            "accepts": accepts,
            "rejects": len(verdicts) - accepts,
            "accept_rate": accepts / len(verdicts) if verdicts else None,
            "ledger_totals": totals,
        },
        "timestamp": _timestamp(started),
    }
    header = [
        "trial",
        "accept",
        "reps_run",
        "classical_queries",
        "modeled_quantum_queries",
        "wall_work",
        "collisions_per_rep",
    ]
    rows = [
        [
            d["trial"],
            int(d["accept"]),
            d["reps_run"],
            d["ledger"]["classical_queries"],
            d["ledger"]["modeled_quantum_queries"],
            d["ledger"]["wall_work"],
            ";".join(str(c) for c in d["collisions_per_rep"]),
        ]
        for d in detail
    ]
    return record, rows, header


def coin_source_record(mode, params, degree_bound: int) -> dict:
    """Reproducibility echo of the per-repetition coin family parameters."""
    if mode != MODE_KWISE:
        return {"mode": mode}
    from .kwise import REJECTION_ROUNDS, _alphabet_width, min_field_exponent

    alphabet = 2 * degree_bound
    w, pow2 = _alphabet_width(alphabet)
    n_syms = params.walks * params.length
    n_bits = n_syms * w * (1 if pow2 else REJECTION_ROUNDS + 1)
    k = max(1, min(params.k_indep, n_bits))
    m = min_field_exponent(n_bits)
    return {
        "mode": mode,
        "alphabet": alphabet,
        "n_bits": n_bits,
        "k": k,
        "field_exponent": m,
        "seed_bits_per_repetition": k * m,
        "rejection_rounds": 1 if pow2 else REJECTION_ROUNDS + 1,
    }


def cmd_test_bip(args) -> int:
    started = time.perf_counter()
    graph = load_graph(args.graph)
    overrides = {}
    if args.reps is not None:
        overrides["repetitions"] = args.reps
    if args.walks is not None:
        overrides["walks"] = args.walks
    if args.length is not None:
        overrides["length"] = args.length
    if args.k_indep is not None:
        overrides["k_indep"] = args.k_indep
    params = BipartiteParams.derive(graph.n_vertices, args.eps, graph.degree_bound, **overrides)
    verdicts = batch.run_bipartiteness_trials(graph, params, args.mode, args.seed, args.trials)
    record, rows, header = _tester_record("test-bip", args, graph, params, verdicts, started)
    _emit(record, args, rows, header)
    return 0


def cmd_test_exp(args) -> int:
    started = time.perf_counter()
    graph = load_graph(args.graph)
    overrides = {}
    if args.reps is not None:
        overrides["repetitions"] = args.reps
    if args.walks is not None:
        overrides["walks"] = args.walks
    if args.length is not None:
        overrides["length"] = args.length
    if args.k_indep is not None:
        overrides["k_indep"] = args.k_indep
    if args.threshold is not None:
        overrides["threshold"] = args.threshold
    if args.t_outer is not None:
        overrides["outer_retries"] = args.t_outer
    params = ExpansionParams.derive(
        graph.n_vertices, args.eps, args.alpha, args.mu, graph.degree_bound, **overrides
    )
    verdicts = batch.run_expansion_trials(graph, params, args.mode, args.seed, args.trials)
    record, rows, header = _tester_record("test-exp", args, graph, params, verdicts, started)
    _emit(record, args, rows, header)
    return 0


def cmd_gen_pml(args) -> int:
    if args.m is not None:
        params = hardinstances.PmlParams(
            n_sample=args.n, host_size=args.m, blocks=args.l, matchings=args.c
        )
    else:
        params = hardinstances.PmlParams.derive(args.n, args.l, args.c)
    rng = substream(args.seed)
    host = hardinstances.sample_matching_union(params, rng)
    sample = hardinstances.sample_induced(host, rng)
    save_graph(host.as_graph(), f"{args.out}_host.txt")
    if not sample.failed:
        save_graph(sample.induced, f"{args.out}_induced.txt")
    sidecar = {
        "params": {
            "n": params.n_sample,
            "m": params.host_size,
            "l": params.blocks,
            "c": params.matchings,
        },
        "seed": int(args.seed),
        "failed": bool(sample.failed),
        "block_counts": list(sample.block_counts),
        "host_file": f"{args.out}_host.txt",
        "induced_file": None if sample.failed else f"{args.out}_induced.txt",
    }
    with open(f"{args.out}_meta.json", "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, indent=2)
        fh.write("\n")
    sys.stdout.write(json.dumps(sidecar) + "\n")
    return 0


GRID_PAIRS = ((10, 1), (10, 2), (12, 3))


def _grid_monomials() -> list[tuple[str, Monomial]]:
    # all vertex indices < 4 so they fit inside one block on every grid pair
    return [
        ("single_edge", Monomial([(0, 1, 0)])),
        ("path_two_matchings", Monomial([(0, 1, 0), (1, 2, 1)])),
        ("disjoint_same_matching", Monomial([(0, 1, 0), (2, 3, 0)])),
        ("disjoint_two_matchings", Monomial([(0, 1, 0), (2, 3, 1)])),
        ("triangle_three_matchings", Monomial([(0, 1, 0), (1, 2, 1), (0, 2, 2)])),
        ("star_two_matchings", Monomial([(0, 1, 0), (0, 2, 1)])),
    ]


def cmd_verify_lb(args) -> int:
    started = time.perf_counter()
    if args.kmax > partitions.ENUMERATION_CAP:
        raise ValueError(f"--kmax must be <= {partitions.ENUMERATION_CAP}")
    rng = substream(args.seed)
    identities = {}

    kpart = min(args.kmax, 6)
    identities["chain_interval_sums"] = {
        "k_max": kpart,
        "pass": all(partitions.verify_prop_part(k) for k in range(2, kpart + 1)),
    }
    identities["mobius_factorial"] = {
        "k_max": kpart,
        "pass": all(
            partitions.chain_coefficient(
                partitions.SetPartition.finest(k), partitions.SetPartition.coarsest(k)
            )
            == partitions.partition_lattice_mobius(k)
            for k in range(1, kpart + 1)
        ),
    }

    div_ok = True
    theta_ok = True
    kgrid = min(args.kmax, 4)
    for k in range(2, kgrid + 1):
        for _ in range(args.grid_samples):
            dmat = rng.integers(0, 4, size=(k, 2))
            profile = _profile_from_dmat(dmat)
            for part in partitions.enumerate_partitions(k):
                div_ok &= lowerbound.divisibility_check(profile, part)
                if part.size < k:
                    for i in range(0, k - part.size):
                        theta_ok &= lowerbound.theta_vanishing_check(profile, part, i)
    identities["divisibility"] = {"k_max": kgrid, "pass": bool(div_ok)}
    identities["theta_vanishing"] = {"k_max": kgrid, "pass": bool(theta_ok)}

    final_ok = True
    for k in range(2, min(args.kmax, 5) + 1):
        for part in partitions.enumerate_partitions(k):
            budget = k - part.size - 1
            if budget < 1:
                continue
            for _ in range(5):
                dmat = rng.integers(0, 4, size=(k, 2)).tolist()
                final_ok &= lowerbound.verify_prop_final(dmat, part, (budget + 1,))
    identities["power_sum_identity"] = {"k_max": min(args.kmax, 5), "pass": bool(final_ok)}

    mult_ok = True
    for degree in (2, 4, 6, 8):
        for _ in range(args.grid_samples):
            mono = _random_monomial(rng, degree)
            mult_ok &= lowerbound.denominator_multiplicity_check(mono, max(1, degree // 2))
    identities["denominator_multiplicities"] = {"pass": bool(mult_ok)}

    grid = []
    grid_ok = True
    for name, mono in _grid_monomials():
        rational = lowerbound.exact_expectation(mono)
        for m_val, l_val in GRID_PAIRS:
            exact = rational.evaluate(m_val, l_val)
            if (m_val // l_val) % 2 == 0:
                params = hardinstances.PmlParams(
                    n_sample=min(m_val, max(mono.vertices) + 1),
                    host_size=m_val,
                    blocks=l_val,
                    matchings=max(2, len(mono.labels)),
                )
                est, _ = lowerbound.monte_carlo_expectation(mono, params, args.samples, rng)
            else:
                # odd block size: whole perfect matchings do not exist, use the
                # sequential-bookkeeping estimator instead
                est, _ = lowerbound.monte_carlo_expectation_sequential(
                    mono, m_val, l_val, args.samples, rng
                )
            # standard error under the known exact probability
            se = math.sqrt(float(exact) * (1 - float(exact)) / args.samples)
            sigmas = abs(float(exact) - est) / se if se > 0 else abs(float(exact) - est)
            ok = sigmas <= 3.0
            grid_ok &= ok
            grid.append(
                {
                    "monomial": name,
                    "M": m_val,
                    "l": l_val,
                    "exact": f"{exact.numerator}/{exact.denominator}",
                    "estimate": est,
                    "stderr": se,
                    "sigmas": round(sigmas, 3),
                    "denominator": rational.render_denominator(),
                    "pass": ok,
                }
            )
    overall = grid_ok and all(v["pass"] for v in identities.values())
    record = {
        "subcommand": "verify-lb",
        "seed": int(args.seed),
        "kmax": args.kmax,
        "samples": args.samples,
        "identities": identities,
        "expectation_grid": grid,
        "pass": bool(overall),
        "timestamp": _timestamp(started),
    }
    header = ["monomial", "M", "l", "exact", "estimate", "stderr", "sigmas", "pass"]
    rows = [[g["monomial"], g["M"], g["l"], g["exact"], g["estimate"], g["stderr"], g["sigmas"], int(g["pass"])] for g in grid]
    _emit(record, args, rows, header)
    return 0 if overall else 1


def _profile_from_dmat(dmat) -> lowerbound.ComponentProfile:
    return lowerbound.profile_from_dmat(dmat)


def _random_monomial(rng: np.random.Generator, degree: int, pool: int = 10, labels: int = 2) -> Monomial:
    return lowerbound.random_feasible_monomial(rng, degree, pool=pool, labels=labels)


def cmd_bench(args) -> int:
    started = time.perf_counter()
    rng = substream(args.seed)
    g = hardinstances.sample_graph(
        hardinstances.PmlParams.derive(args.n, 1, max(3, args.d)), rng
    )
    starts = rng.integers(0, g.n_vertices, size=args.walks).astype(np.int64)
    coins = rng.integers(0, 2 * g.degree_bound, size=(args.walks, args.length), dtype=np.uint8)
    results = []
    outputs = {}
    for name in available_kernels():
        impl = get_impl(name)
        cache = new_cache(1, g)
        t0 = time.perf_counter()
        endpoints, moves = run_endpoints(g, starts, coins, cache=cache, impl=impl)
        dt = time.perf_counter() - t0
        outputs[name] = (endpoints, moves, cache.sum())
        steps = args.walks * args.length
        results.append(
            {
                "name": name,
                "steps": steps,
                "seconds": round(dt, 6),
                "steps_per_sec": round(steps / dt) if dt > 0 else None,
            }
        )
    names = list(outputs)
    agree = all(
        np.array_equal(outputs[names[0]][0], outputs[nm][0])
        and np.array_equal(outputs[names[0]][1], outputs[nm][1])
        and outputs[names[0]][2] == outputs[nm][2]
        for nm in names[1:]
    )
    checksum = int(outputs[names[0]][0].sum()) + int(outputs[names[0]][1].sum())
    record = {
        "subcommand": "bench",
        "kernel_default": kernel_name(),
        "kernels_available": names,
        "workload": {
            "n": g.n_vertices,
            "d": g.degree_bound,
            "walks": args.walks,
            "length": args.length,
            "seed": int(args.seed),
        },
        "agreement": bool(agree),
        "checksum": checksum,
        "timestamp": _timestamp(started, {"timings": results}),
    }
    _emit(record, args)
    return 0 if agree else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walkcheck",
        description="Property testing for bounded-degree graphs via lazy walks and collision statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_format=True):
        p.add_argument(
            "--seed", type=seed_arg, default=0, help="master seed, decimal or hex (0x...)"
        )
        p.add_argument("--out", help="write the record to this path instead of stdout")
        if with_format:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    tb = sub.add_parser("test-bip", help="bipartiteness tester over seeded trials")
    tb.add_argument("--graph", required=True)
    tb.add_argument("--eps", type=float, default=0.1)
    tb.add_argument("--mode", choices=MODES, default=MODE_KWISE)
    tb.add_argument("--trials", type=int, default=1)
    tb.add_argument("--T", dest="reps", type=int, default=None, help="override repetitions")
    tb.add_argument("--K", dest="walks", type=int, default=None, help="override walks per repetition")
    tb.add_argument("--L", dest="length", type=int, default=None, help="override walk length")
    tb.add_argument("--k-indep", dest="k_indep", type=int, default=None)
    add_common(tb)
    tb.set_defaults(func=cmd_test_bip)

    te = sub.add_parser("test-exp", help="expansion tester over seeded trials")
    te.add_argument("--graph", required=True)
    te.add_argument("--eps", type=float, default=0.9)
    te.add_argument("--alpha", type=float, default=0.3)
    te.add_argument("--mu", type=float, default=0.12)
    te.add_argument("--mode", choices=MODES, default=MODE_KWISE)
    te.add_argument("--trials", type=int, default=1)
    te.add_argument("--T", dest="reps", type=int, default=None)
    te.add_argument("--K", dest="walks", type=int, default=None)
    te.add_argument("--L", dest="length", type=int, default=None)
    te.add_argument("--k-indep", dest="k_indep", type=int, default=None)
    te.add_argument("--threshold", type=float, default=None, help="override the collision threshold")
    te.add_argument("--t-outer", dest="t_outer", type=int, default=None, help="override outer retries")
    add_common(te)
    te.set_defaults(func=cmd_test_exp)

    gp = sub.add_parser("gen-pml", help="generate a block-sampled matching-union instance")
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--m", type=int, default=None, help="host size (default: derived)")
    gp.add_argument("--l", type=int, required=True)
    gp.add_argument("--c", type=int, required=True)
    gp.add_argument("--out", required=True, help="output path prefix")
    gp.add_argument("--seed", type=seed_arg, default=0)
    gp.set_defaults(func=cmd_gen_pml)

    vl = sub.add_parser("verify-lb", help="exact-identity suites and the Monte Carlo grid")
    vl.add_argument("--kmax", type=int, default=4)
    vl.add_argument("--samples", type=int, default=100_000)
    vl.add_argument("--grid-samples", dest="grid_samples", type=int, default=20)
    add_common(vl)
    vl.set_defaults(func=cmd_verify_lb)

    bn = sub.add_parser("bench", help="compare the walk kernels on one workload")
    bn.add_argument("--n", type=int, default=4096)
    bn.add_argument("--d", type=int, default=6)
    bn.add_argument("--walks", type=int, default=2048)
    bn.add_argument("--length", type=int, default=512)
    add_common(bn, with_format=False)
    bn.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
