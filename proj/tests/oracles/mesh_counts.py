"""Brute-force vertex / triangle / boundary-edge counts for the uniform meshes.

Enumerates grid points and cells directly (no closed-form formulas) and counts
boundary edges as cell sides that belong to exactly one cell. The printed
numbers are frozen in test_mesh.cpp.

Run: python3 mesh_counts.py
"""
from collections import Counter
from fractions import Fraction


def inside_square(px, py):
    return 0 <= px <= 1 and 0 <= py <= 1


def inside_lshape(px, py):
    # (0,2)^2 minus the open square (1,2)^2, closed.
    return 0 <= px <= 2 and 0 <= py <= 2 and not (px > 1 and py > 1)


def count(n, extent, cell_in):
    pts = set()
    cells = []
    sides = Counter()
    for i in range(extent * n):
        for j in range(extent * n):
            cx, cy = Fraction(2 * i + 1, 2 * n), Fraction(2 * j + 1, 2 * n)
            if not cell_in(cx, cy):
                continue
            cells.append((i, j))
            corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            pts.update(corners)
            for a, b in zip(corners, corners[1:] + corners[:1]):
                sides[tuple(sorted((a, b)))] += 1
    boundary = sum(1 for c in sides.values() if c == 1)
    return len(pts), 2 * len(cells), boundary


for n in (1, 2, 4, 8):
    print("square", n, count(n, 1, inside_square))
for n in (1, 2, 4, 8):
    print("lshape", n, count(n, 2, inside_lshape))
