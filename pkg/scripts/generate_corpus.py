import argparse
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from app.constructions import (
    adjoin_identity,
    basic_family,
    example_table,
    nilpotent_monogenic,
    rectangular_band,
    right_zero,
    self_dual_nonband,
    tails_construction,
    left_zero,
    zero_union,
)
from app.formats import write_table


def corpus():
    """(file name, semigroup) for every table shipped with the census corpus"""
    for n in range(1, 5):
        yield f"left_zero_{n}.tbl", basic_family("left_zero", n)
        yield f"right_zero_{n}.tbl", basic_family("right_zero", n)
        yield f"chain_semilattice_{n}.tbl", basic_family("chain_semilattice", n)
    for n in range(2, 5):
        yield f"cyclic_group_{n}.tbl", basic_family("cyclic_group", n)
    for k in range(2, 6):
        yield f"nilpotent_monogenic_{k}.tbl", nilpotent_monogenic(k)
    yield "rectangular_band_2_2.tbl", rectangular_band(2, 2)
    yield "rectangular_band_2_3.tbl", rectangular_band(2, 3)
    yield "rectangular_band_2_2_with_identity.tbl", adjoin_identity(rectangular_band(2, 2))
    yield "square_left_zero.tbl", example_table("square_left_zero")
    yield "square_right_zero.tbl", example_table("square_right_zero")
    yield "tails_left_zero_2.tbl", tails_construction([left_zero(2)], [1])
    yield "zero_union_n5_r1.tbl", zero_union(nilpotent_monogenic(5), right_zero(1))
    yield "self_dual_nonband.tbl", self_dual_nonband().s


def main():
    parser = argparse.ArgumentParser(description="Write the census corpus of table files")
    parser.add_argument("--out", default=os.path.join("data", "corpus"))
    args = parser.parse_args()

    os.makedirs(args.out, exist_ok=True)
    count = 0
    for name, semigroup in corpus():
        with open(os.path.join(args.out, name), "w", encoding="utf-8") as f:
            f.write(write_table(semigroup))
        count += 1
    print(f"Wrote {count} tables to {args.out}")


if __name__ == "__main__":
    main()
