"""Writes every loopfree matroid on at most N elements, up to isomorphism,
as a list of {"n", "bases"} records with 1-indexed elements.

Each matroid on n elements extends its deletion of the last element, so the
classes on n elements come from single-element extensions of the classes on
n - 1 elements: either a coloop or new bases S + {n} for a family of
independent sets S of size rank - 1.
"""

import itertools
import json
import sys


def is_matroid(bases):
    for b1 in bases:
        for b2 in bases:
            for x in b1 - b2:
                if not any((b1 - {x}) | {y} in bases for y in b2 - b1):
                    return False
    return True


def canonical(n, bases):
    best = None
    for p in itertools.permutations(range(n)):
        key = tuple(sorted(tuple(sorted(p[i] for i in b)) for b in bases))
        if best is None or key < best:
            best = key
    return best


def extensions(n, bases):
    """Loopfree matroids on n + 1 elements whose deletion of n is `bases`."""
    new = n
    yield [b | {new} for b in bases]
    r = len(next(iter(bases)))
    if r == 0:
        return
    indep = sorted({frozenset(s) for b in bases for s in itertools.combinations(sorted(b), r - 1)}, key=sorted)
    for k in range(1, len(indep) + 1):
        for fam in itertools.combinations(indep, k):
            cand = set(bases) | {s | {new} for s in fam}
            if is_matroid(cand):
                yield list(cand)


def main(max_n):
    level = {canonical(1, [frozenset({0})])}
    out = []
    for n in range(1, max_n + 1):
        for key in sorted(level):
            out.append({"n": n, "bases": [[i + 1 for i in b] for b in key]})
        if n == max_n:
            break
        nxt = set()
        for key in level:
            for ext in extensions(n, [frozenset(b) for b in key]):
                nxt.add(canonical(n + 1, ext))
        level = nxt
    json.dump(out, sys.stdout, separators=(",", ":"))
    sys.stdout.write("\n")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 5)
