"""
Search zero-unions of a nilpotent monogenic semigroup and a right-zero
semigroup for cases where Σ(C(S)) has as many elements as S without being
isomorphic to it. Both zero conventions are tried.
"""
import argparse
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from app.cayley import search_zero_unions


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-k", type=int, default=5)
    parser.add_argument("--max-m", type=int, default=6)
    args = parser.parse_args()

    hits = search_zero_unions(args.max_k, args.max_m)
    if not hits:
        print("No size coincidences found")
        return 1
    for hit in hits:
        print(
            f"N{hit['k']} + R{hit['m']} (merge_zeros={hit['merge_zeros']}): "
            f"|S| = |Σ(C(S))| = {hit['size']}, not isomorphic"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
