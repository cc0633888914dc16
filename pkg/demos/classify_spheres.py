"""Classify every sphere in the built-in corpus and print a one-line summary each.

Run with ``python demos/classify_spheres.py``.
"""

from malring.classify import classify
from malring.corpus import sphere_corpus
from malring.hochster import decompose


def main():
    for name, K in sphere_corpus():
        report = classify(K, decompose(K))
        shape = report.decomposition if report.decomposition is not None else "-"
        mark = "verified" if report.verified else ""
        print(f"{name:<24} m={K.m:<3} d={K.dim}  {report.case:<16} {shape} {mark}")


if __name__ == "__main__":
    main()
