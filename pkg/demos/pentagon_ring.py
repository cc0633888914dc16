"""Walk through the cohomology of the moment-angle manifold over a pentagon.

Run with ``python demos/pentagon_ring.py``.
"""

from malring.corpus import polygon
from malring.hochster import decompose
from malring.complex import full_mask, mask_of, vertices_of
from malring.hochster import cup_product


def main():
    K = polygon(5)
    table = decompose(K)
    print("facets:", K.facets)
    print("Betti numbers by total degree:", table.betti())

    print("\nnonzero bidegrees (l, J):")
    for l, J in table.nonzero():
        print(f"  l={l:>2}  J={vertices_of(J)}  rank {table.rank(l, J)}")

    # each missing edge {i, i+2} pairs with the complementary path
    a, = table.classes(0, mask_of([1, 3]))
    b, = table.classes(0, mask_of([2, 4, 5]))
    top = cup_product(a, b)
    print("\nproduct of the classes on {1,3} and {2,4,5} lands in", top.bidegree[0], vertices_of(top.J))
    print("value on the fundamental class:", table.top_value(top))
    assert top.J == full_mask(5)


if __name__ == "__main__":
    main()
