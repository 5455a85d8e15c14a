"""Size of the transposed blow-up sentence for n = 1..N.

Usage: python scripts/blowup_table.py [N]
"""
import sys
import time

from sepfol.analysis import prefix_blocks
from sepfol.oracle import oracle_equivalent
from sepfol.syntax import formula_len
from sepfol.transform import gen_blowup, transpose_all


def _existentials(phi) -> int:
    blocks, _ = prefix_blocks(phi)
    return sum(len(vs) for k, vs in blocks if k == "exists")


def main(n_max: int = 4):
    print("n  len(phi)  len(phi')  existentials  transpose_all  equivalent@2  seconds")
    for n in range(1, n_max + 1):
        t0 = time.perf_counter()
        phi, phi_prime = gen_blowup(n)
        n_exists = _existentials(phi_prime)
        again = _existentials(transpose_all(phi))
        equiv = oracle_equivalent(phi, phi_prime, 2) if n <= 2 else "-"
        print(f"{n:<2} {formula_len(phi):<9} {formula_len(phi_prime):<10} {n_exists:<13} "
              f"{again:<14} {equiv!s:<13} {time.perf_counter() - t0:.2f}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 4)
