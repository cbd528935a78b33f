"""Command line entry point: ``listupdate {simulate,opt,ratio,analyze,lowerbound}``.

Structured output is JSON on stdout; diagnostics go to stderr.  Exit code 2
signals a usage or guard error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from itertools import product

from . import algorithms as algs
from . import lowerbound as lb
from .core import Alphabet, ListUpdateError, parse_state, serve
from .offline import MAX_EXACT_ITEMS, opt_exact, opt_pairwise_lower, opt_two_items
from .projectivity import build_containers, check_projective

MAX_RATIO_LEN = 14
DECIMALS = 12


def rational(prefix: str, value: Fraction) -> dict:
    value = Fraction(value)
    return {f"{prefix}_num": value.numerator, f"{prefix}_den": value.denominator,
            f"{prefix}_decimal": round(float(value), DECIMALS)}


def make_algorithm(name: str, initial, alphabet: Alphabet, force: bool = False):
    """Resolve a CLI algorithm name to an algorithm over ``initial``."""
    max_bit = 64 if force else algs.MAX_BIT_ITEMS
    simple = {"mtf": algs.make_mtf, "ts": algs.make_ts, "transpose": algs.make_transpose,
              "fc": algs.make_frequency_count, "lmtf": algs.make_lmtf}
    if name in simple:
        return simple[name](initial)
    if name == "bit":
        return algs.make_bit_distribution(initial, max_bit)
    if name == "comb":
        return algs.make_comb(initial, max_bit)
    if name.startswith("bit:"):
        return algs.make_bit([int(c) for c in name[4:]], initial)
    if name.startswith("crf:"):
        F = algs.CriticalRequestFunction.from_csv(name[4:], alphabet)
        return algs.make_crf(F, initial, "crf")
    raise ListUpdateError(f"unknown algorithm {name!r}; choose mtf, ts, transpose, fc, lmtf, "
                          f"bit, bit:<bits>, comb or crf:<file>")


def _emit(payload: dict):
    print(json.dumps(payload, separators=(",", ":")))


def cmd_simulate(args):
    alphabet, initial = parse_state(args.initial)
    alg = make_algorithm(args.alg, initial, alphabet, args.force)
    sigma = alphabet.parse_sequence(args.sigma)
    if isinstance(alg, algs.RandomizedAlgorithm):
        return {"algorithm": alg.name, **rational("cost", algs.expected_cost(alg, sigma))}
    served = serve(alg, sigma)
    out = {"cost": served.cost, "final": alphabet.render_state(served.trace[-1])}
    if args.trace:
        out["states"] = [alphabet.render_state(s) for s in served.trace]
    return out


def cmd_opt(args):
    alphabet, initial = parse_state(args.initial)
    sigma = alphabet.parse_sequence(args.sigma)
    if args.pairwise:
        return {"cost": opt_pairwise_lower(initial, sigma), "method": "pairwise"}
    limit = len(initial) if args.force else MAX_EXACT_ITEMS
    return {"cost": opt_exact(initial, sigma, max_items=limit), "method": "exact"}


def sup_ratio(alg_name: str, maxlen: int, items: int = 2, force: bool = False):
    """Largest E[A(sigma)]/OPT(sigma) over all sigma with ``1 <= |sigma| <= maxlen``
    and every initial state; sequences with OPT = 0 are tracked separately."""
    from itertools import permutations

    alphabet = Alphabet.standard(items)
    best, arg, unbounded = None, None, []
    for initial in permutations(range(items)):
        alg = algs.as_randomized(make_algorithm(alg_name, initial, alphabet, force))
        for length in range(1, maxlen + 1):
            for sigma in product(range(items), repeat=length):
                opt = opt_two_items(initial, sigma) if items == 2 else opt_exact(initial, sigma)
                cost = algs.expected_cost(alg, sigma)
                if opt == 0:
                    if cost > 0:
                        unbounded.append((initial, sigma))
                    continue
                r = cost / opt
                if best is None or r > best:
                    best, arg = r, (initial, sigma)
    return best, arg, unbounded, alphabet


def cmd_ratio(args):
    if args.maxlen > MAX_RATIO_LEN and not args.force:
        raise ListUpdateError(f"--maxlen {args.maxlen} exceeds the guard {MAX_RATIO_LEN} "
                              f"({args.items}^maxlen sequences); pass --force to override")
    best, arg, unbounded, alphabet = sup_ratio(args.alg, args.maxlen, args.items, args.force)
    if best is None:
        out = {**rational("sup_ratio", Fraction(0)), "vacuous": True}
    else:
        out = {**rational("sup_ratio", best), "vacuous": False,
               "argmax_sigma": alphabet.render_sequence(arg[1]),
               "argmax_initial": alphabet.render_state(arg[0])}
    out["positive_cost_at_zero_opt"] = len(unbounded)
    return out


def cmd_analyze(args):
    alphabet, initial = parse_state(args.initial)
    alg = make_algorithm(args.alg, initial, alphabet, args.force)
    atoms = alg.atoms if isinstance(alg, algs.RandomizedAlgorithm) else [(alg, None)]
    reports = []
    for atom, w in atoms:
        proj = check_projective(atom, args.maxlen)
        out = proj.to_json(alphabet)
        if proj.projective:
            out.update(build_containers(atom, args.depth).to_json(alphabet))
        if w is not None:
            out = {"atom": atom.name, **rational("weight", w), **out}
        reports.append(out)
    if len(reports) == 1 and atoms[0][1] is None:
        return reports[0]
    return {"algorithm": alg.name, "atoms": reports}


def cmd_lowerbound(args):
    params = lb.AdversaryParams(args.mhat, args.K, args.T, args.b)
    initial = lb.XY.parse_state(args.initial)
    alg = make_algorithm(args.alg, initial, lb.XY, args.force)
    good = lb.good_states(params)
    out = {**rational("ratio", lb.expected_ratio(alg, params, initial)),
           "good_states": len(good),
           "good_states_lower_bound": lb.good_state_lower_bound(params),
           "lambda_size": params.size}
    if args.emit_table1:
        rows = [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)]
        out["table1"] = [{"f_x": r.f_x, "f_y": r.f_y, "segments": list(r.segments), "total": r.total}
                         for r in (lb.table1_row(fx, fy, args.mhat) for fx, fy in rows)]
    if args.emit_states:
        costs = lb.per_state_costs(alg, params)
        with open(args.emit_states, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["i", "j", "good", "cost_sum"])
            for (i, j) in sorted(costs):
                w.writerow([i, j, int((i, j) in good), str(costs[(i, j)])])
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="listupdate", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="serve a sequence with one algorithm")
    s.add_argument("--alg", required=True)
    s.add_argument("--initial", required=True, help="e.g. [abc]")
    s.add_argument("--sigma", default="", help="e.g. baacbc or x^3(yx)^2")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("opt", help="offline optimum")
    s.add_argument("--initial", required=True)
    s.add_argument("--sigma", default="")
    s.add_argument("--pairwise", action="store_true", help="pairwise lower bound instead of exact DP")
    s.set_defaults(func=cmd_opt)

    s = sub.add_parser("ratio", help="exhaustive sup of E[A]/OPT over short sequences")
    s.add_argument("--alg", required=True)
    s.add_argument("--maxlen", type=int, required=True)
    s.add_argument("--items", type=int, default=2)
    s.set_defaults(func=cmd_ratio)

    s = sub.add_parser("analyze", help="projectivity check and container structure")
    s.add_argument("--alg", required=True)
    s.add_argument("--initial", default="[abc]")
    s.add_argument("--depth", type=int, default=4)
    s.add_argument("--maxlen", type=int, default=6)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("lowerbound", help="expected ratio on the adversarial distribution")
    s.add_argument("--alg", required=True)
    s.add_argument("--mhat", type=int, default=3)
    s.add_argument("--K", type=int, default=40)
    s.add_argument("--T", type=int, default=4)
    s.add_argument("--b", type=int, default=0)
    s.add_argument("--initial", default="[yx]")
    s.add_argument("--emit-table1", action="store_true")
    s.add_argument("--emit-states", metavar="CSV")
    s.set_defaults(func=cmd_lowerbound)

    for name, sp in sub.choices.items():
        sp.add_argument("--force", action="store_true",
                        help="lift size guards (opt: n <= 6 items ~ 720^2 int64 table; "
                             "ratio: maxlen <= 14; bit/comb: n <= 16 items = 65536 atoms)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except (ListUpdateError, OSError) as exc:
        print(f"listupdate {args.command}: {exc}", file=sys.stderr)
        return 2
    _emit(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
