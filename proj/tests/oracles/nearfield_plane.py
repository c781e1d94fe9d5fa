#!/usr/bin/env python3
"""Writes the projective plane over the Dickson nearfield of order 9.

GF(9) = GF(3)[i]/(i^2+1); elements are a+b*i encoded as a+3b. The nearfield
product is x*y when y is a square and x^3*y otherwise. Affine lines are
y = x o m + b and x = c; the projective completion adds one point per slope
class and the line at infinity. The script checks the plane axioms and finds
a Desargues configuration that fails before writing anything.
"""
import itertools
import random
import sys

Q = 9


def add(x, y):
    return (x % 3 + y % 3) % 3 + 3 * ((x // 3 + y // 3) % 3)


def mul(x, y):
    a, b = x % 3, x // 3
    c, d = y % 3, y // 3
    return (a * c - b * d) % 3 + 3 * ((a * d + b * c) % 3)


def power(x, n):
    r = 1
    for _ in range(n):
        r = mul(r, x)
    return r


SQUARES = {mul(x, x) for x in range(1, Q)}


def nmul(x, y):
    if y == 0:
        return 0
    return mul(x, y) if y in SQUARES else mul(power(x, 3), y)


def build():
    pts = [(x, y) for x in range(Q) for y in range(Q)]
    pid = {p: i for i, p in enumerate(pts)}
    lines, classes = [], []
    for m in range(Q):
        cls = []
        for b in range(Q):
            cls.append(len(lines))
            lines.append(sorted(pid[(x, add(nmul(x, m), b))] for x in range(Q)))
        classes.append(cls)
    cls = []
    for c in range(Q):
        cls.append(len(lines))
        lines.append(sorted(pid[(c, y)] for y in range(Q)))
    classes.append(cls)
    n_aff = Q * Q
    for ci, cl in enumerate(classes):
        for l in cl:
            lines[l].append(n_aff + ci)
    lines.append(list(range(n_aff, n_aff + Q + 1)))
    return n_aff + Q + 1, [sorted(l) for l in lines]


def check_projective(n, lines):
    assert len(lines) == n
    join = {}
    for li, l in enumerate(lines):
        assert len(l) == Q + 1
        for a, b in itertools.combinations(l, 2):
            assert (a, b) not in join, "two lines share a pair"
            join[(a, b)] = li
    assert len(join) == n * (n - 1) // 2
    return join


def desargues_fails(n, lines, join):
    def line(a, b):
        return join[(min(a, b), max(a, b))]

    def meet(l, m):
        s = set(lines[l]) & set(lines[m])
        return s.pop()

    def collinear(a, b, c):
        return line(a, b) == line(a, c)

    rng = random.Random(1)
    for _ in range(200000):
        o = rng.randrange(n)
        ls = rng.sample([l for l in range(n) if o in lines[l]], 3)
        pts = [rng.choice([p for p in lines[l] if p != o]) for l in ls]
        prime = [rng.choice([p for p in lines[l] if p not in (o, pts[i])]) for i, l in enumerate(ls)]
        a, b, c = pts
        a2, b2, c2 = prime
        if collinear(a, b, c) or collinear(a2, b2, c2):
            continue
        try:
            x = meet(line(a, b), line(a2, b2))
            y = meet(line(b, c), line(b2, c2))
            z = meet(line(a, c), line(a2, c2))
        except KeyError:
            continue
        if len({x, y, z}) == 3 and not collinear(x, y, z):
            return (o, a, b, c, a2, b2, c2)
    return None


def main(path):
    n, lines = build()
    join = check_projective(n, lines)
    witness = desargues_fails(n, lines, join)
    assert witness is not None, "no Desargues failure found"
    with open(path, "w", newline="\n") as f:
        f.write("# Dickson nearfield plane of order 9 (non-Desarguesian)\n")
        f.write("# Desargues fails for centre/triangles %s\n" % (witness,))
        f.write("plane projective order %d points %d lines %d\n" % (Q, n, len(lines)))
        for i, l in enumerate(lines):
            f.write("line %d: %s\n" % (i, " ".join(map(str, l))))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "nearfield9.txt")
