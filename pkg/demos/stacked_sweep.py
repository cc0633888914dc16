"""Compare the connected-sum prediction for dual stacked polytopes with
Betti numbers computed from the full subcomplexes of stacked 2-spheres.

Run with ``python demos/stacked_sweep.py [count]``.
"""

import sys
import time

from malring.classify import decomposition_to_betti, mcgavran_decomposition, weak_min_non_golod
from malring.corpus import stacked_family
from malring.hochster import decompose


def main(count: int = 12):
    for name, K in stacked_family(count, 8):
        start = time.perf_counter()
        table = decompose(K)
        predicted = mcgavran_decomposition(K.m, 3)
        same = decomposition_to_betti(predicted) == table.betti()
        golod = weak_min_non_golod(K, table)
        elapsed = time.perf_counter() - start
        print(f"{name:<20} m={K.m:<3} {str(predicted):<48} match={same}  "
              f"weak-min-non-Golod={golod.min_non_golod}  {elapsed:.2f}s")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 12)
