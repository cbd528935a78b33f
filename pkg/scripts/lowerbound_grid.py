"""Good-state counts and minimum per-state cost sums over a small parameter grid."""
import argparse
import itertools

from listupdate.cli import make_algorithm
from listupdate.lowerbound import (INITIAL, XY, AdversaryParams, good_state_lower_bound, good_states,
                                   per_state_costs)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--algs", nargs="+", default=["mtf", "ts", "bit:00", "bit:01", "bit:10", "bit:11"])
    p.add_argument("--mhat", type=int, nargs="+", default=[3])
    p.add_argument("--K", type=int, nargs="+", default=[1, 2])
    p.add_argument("--T", type=int, nargs="+", default=[2])
    args = p.parse_args()
    print("M_hat,K,T,good,bound,alg,min_cost_sum,max_cost_sum")
    for m, K, T in itertools.product(args.mhat, args.K, args.T):
        params = AdversaryParams(m, K, T)
        good = good_states(params)
        for name in args.algs:
            costs = per_state_costs(make_algorithm(name, INITIAL, XY), params)
            values = [costs[s] for s in good]
            print(f"{m},{K},{T},{len(good)},{good_state_lower_bound(params)},{name},"
                  f"{min(values)},{max(values)}")


if __name__ == "__main__":
    main()
