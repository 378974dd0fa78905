#!/usr/bin/env python3
"""Regenerates models/model-cabello4.json.

18 rays in R^4 grouped into 9 orthogonal bases, every ray shared by exactly
two bases. Each basis becomes the operator sum_k k |v_k><v_k| over its
normalized rays; all entries are exact dyadic rationals.
"""

import json
import os
from fractions import Fraction

RAYS = [
    (0, 0, 0, 1), (0, 0, 1, 0), (1, 1, 0, 0), (1, -1, 0, 0),
    (0, 1, 0, 0), (1, 0, 1, 0), (1, 0, -1, 0), (1, -1, 1, -1),
    (1, -1, -1, 1), (0, 0, 1, 1), (1, 1, 1, 1), (0, 1, 0, -1),
    (1, 0, 0, 1), (1, 0, 0, -1), (0, 1, -1, 0), (1, 1, -1, 1),
    (1, 1, 1, -1), (-1, 1, 1, 1),
]

BASES = [
    (0, 1, 2, 3), (0, 4, 5, 6), (7, 8, 2, 9), (7, 10, 6, 11), (1, 4, 12, 13),
    (8, 10, 13, 14), (15, 16, 3, 9), (15, 17, 5, 11), (16, 17, 12, 14),
]


def check_orthogonal():
    for basis in BASES:
        for i in range(4):
            for j in range(i + 1, 4):
                a, b = RAYS[basis[i]], RAYS[basis[j]]
                assert sum(x * y for x, y in zip(a, b)) == 0, (basis, i, j)
    counts = [0] * len(RAYS)
    for basis in BASES:
        for r in basis:
            counts[r] += 1
    assert all(c == 2 for c in counts), counts


def basis_operator(basis):
    m = [[Fraction(0)] * 4 for _ in range(4)]
    for k, r in enumerate(basis):
        v = RAYS[r]
        norm2 = sum(x * x for x in v)
        for i in range(4):
            for j in range(4):
                m[i][j] += Fraction(k * v[i] * v[j], norm2)
    return m


def main():
    check_orthogonal()
    operators = {}
    contexts = []
    for b, basis in enumerate(BASES):
        name = f"O{b + 1}"
        m = basis_operator(basis)
        operators[name] = [[[float(m[i][j]), 0.0] for j in range(4)] for i in range(4)]
        contexts.append({"label": f"B{b + 1}", "generators": [name]})
    model = {
        "schemaVersion": 1,
        "dim": 4,
        "operators": operators,
        "contexts": contexts,
    }
    out = os.path.join(os.path.dirname(__file__), "..", "models", "model-cabello4.json")
    with open(out, "w") as f:
        json.dump(model, f, indent=1, sort_keys=True)
        f.write("\n")
    print(f"wrote {os.path.normpath(out)}")


if __name__ == "__main__":
    main()
