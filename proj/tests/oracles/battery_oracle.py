"""Independent oracle for the builtin battery.

Generates facet lists, closes them under faces, and computes integer
homology with sympy's Smith normal form.  Values printed here are frozen
into the C++ tests.
"""
import itertools
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


def torus7():
    return [sorted(((i) % 7, (i + 1) % 7, (i + 3) % 7)) for i in range(7)] + \
           [sorted(((i) % 7, (i + 2) % 7, (i + 3) % 7)) for i in range(7)]


def rp2_6():
    base = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
            (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]
    return [sorted(v - 1 for v in t) for t in base]


def klein9():
    def vid(i, j):
        i %= 4; j %= 4
        if j == 3:
            j = 0
        if i == 3:
            i, j = 0, (3 - j) % 3
        return 3 * i + j
    tris = []
    for i in range(3):
        for j in range(3):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)
            tris.append(sorted((a, b, d)))
            tris.append(sorted((a, c, d)))
    return tris


def closure(facets):
    cells = set()
    for f in facets:
        for k in range(1, len(f) + 1):
            for s in itertools.combinations(f, k):
                cells.add(tuple(sorted(s)))
    return cells


def homology(facets):
    cells = closure(facets)
    n = max(len(c) for c in cells) - 1
    by = {d: sorted(c for c in cells if len(c) == d + 1) for d in range(n + 1)}
    idx = {d: {c: i for i, c in enumerate(by[d])} for d in by}
    mats = {}
    for d in range(1, n + 1):
        m = [[0] * len(by[d]) for _ in by[d - 1]]
        for j, c in enumerate(by[d]):
            for l in range(len(c)):
                f = c[:l] + c[l + 1:]
                m[idx[d - 1][f]][j] = (-1) ** l
        mats[d] = Matrix(m)
    res = []
    for d in range(n + 1):
        rk_d = mats[d].rank() if d in mats else 0
        rk_up = mats[d + 1].rank() if d + 1 in mats else 0
        betti = len(by[d]) - rk_d - rk_up
        tors = []
        if d + 1 in mats:
            snf = smith_normal_form(mats[d + 1], domain=ZZ)
            tors = [abs(snf[i, i]) for i in range(min(snf.shape)) if abs(snf[i, i]) > 1]
        res.append((betti, tors))
    return [len(by[d]) for d in range(n + 1)], res


def check_manifold(facets):
    edges = {}
    for t in facets:
        for e in itertools.combinations(t, 2):
            edges[e] = edges.get(e, 0) + 1
    return all(v == 2 for v in edges.values()) and len(set(map(tuple, facets))) == len(facets)


if __name__ == "__main__":
    for name, f in [("torus_7", torus7()), ("rp2_6", rp2_6()), ("klein_bottle", klein9())]:
        print(name, sorted(map(tuple, f)))
        print("  manifold:", check_manifold(f), homology(f))
    for d in range(5):
        f = [c for c in itertools.combinations(range(d + 2), d + 1)]
        print("sphere_%d" % d, homology([list(x) for x in f]))
    print("snf [[2,0],[0,3]]", smith_normal_form(Matrix([[2, 0], [0, 3]]), domain=ZZ))
