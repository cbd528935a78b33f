"""Expected ratio of an algorithm on the adversarial distribution as K grows."""
import argparse
import csv
import sys

from listupdate.cli import make_algorithm
from listupdate.lowerbound import INITIAL, XY, AdversaryParams, expected_ratio


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--alg", default="mtf")
    p.add_argument("--mhat", type=int, default=3)
    p.add_argument("--T", type=int, default=4)
    p.add_argument("--K", type=int, nargs="+", default=[10, 20, 40, 80])
    args = p.parse_args()
    alg = make_algorithm(args.alg, INITIAL, XY)
    out = csv.writer(sys.stdout)
    out.writerow(["K", "ratio_num", "ratio_den", "ratio"])
    for K in args.K:
        r = expected_ratio(alg, AdversaryParams(args.mhat, K, args.T))
        out.writerow([K, r.numerator, r.denominator, f"{float(r):.6f}"])
        sys.stdout.flush()


if __name__ == "__main__":
    main()
