"""Print per-segment costs of serving phi from a good state for constant offsets."""
import argparse

from listupdate.lowerbound import table1_row

ROWS = [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--mhat", type=int, nargs="+", default=[3, 4, 5])
    args = p.parse_args()
    for m in args.mhat:
        print(f"M_hat = {m}")
        for fx, fy in ROWS:
            row = table1_row(fx, fy, m)
            print(f"  f=({fx},{fy})  {' | '.join(row.segments)}  total={row.total}")


if __name__ == "__main__":
    main()
