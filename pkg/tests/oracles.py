"""Slow reference implementations used to freeze expected values."""

from itertools import combinations, product

from greedytheta.qalgebra import QLaurent


def gaussian_binomial(l: int, k: int) -> QLaurent:
    """Sum over 0/1 words with k ones of q^(2 inv - k(l - k))."""
    out = {}
    for ones in combinations(range(l), k):
        word = [1 if i in ones else 0 for i in range(l)]
        inv = sum(1 for i in range(l) for j in range(i + 1, l) if word[i] > word[j])
        e = 2 * inv - k * (l - k)
        out[e] = out.get(e, 0) + 1
    return QLaurent(out)


def maximal_word(ell: int, h: int) -> str:
    """The below-diagonal lattice word that dominates every other one."""
    best = None
    for steps in set(product("EN", repeat=ell + h)):
        if steps.count("E") != ell:
            continue
        x = y = 0
        heights, ok = [], True
        for s in steps:
            if s == "E":
                x += 1
                heights.append(y)
            else:
                y += 1
            if h * x - ell * y < 0:
                ok = False
                break
        if ok and (best is None or heights > best[0]):
            best = (heights, "".join(steps))
    return best[1]


def compatible(word: str, S1, S2, r: int) -> bool:
    """Search every intermediate vertex t on each cyclic subpath from p_e to p_f."""
    N = len(word)
    eta = [p for p, s in enumerate(word) if s == "E"]
    nu = [p for p, s in enumerate(word) if s == "N"]
    s1 = {eta[i - 1] for i in S1}
    s2 = {nu[j - 1] for j in S2}
    for e in s1:
        for f in s2:
            start, stop = e, f + 1
            if stop <= start:
                stop += N
            found = False
            for t in range(start + 1, stop):
                right = [(k % N) for k in range(t, stop)]
                left = [(k % N) for k in range(start, t)]
                horiz = sum(1 for k in right if word[k] == "E")
                if horiz == r * sum(1 for k in right if k in s2):
                    found = True
                    break
                vert = sum(1 for k in left if word[k] == "N")
                if vert == r * sum(1 for k in left if k in s1):
                    found = True
                    break
            if not found:
                return False
    return True


def all_pairs(word: str, r: int):
    ell, h = word.count("E"), word.count("N")
    for a in range(ell + 1):
        for S1 in combinations(range(1, ell + 1), a):
            for b in range(h + 1):
                for S2 in combinations(range(1, h + 1), b):
                    if compatible(word, S1, S2, r):
                        yield frozenset(S1), frozenset(S2)


def classical_x(r: int, n: int):
    """x_n at x1 = x2 = 1 from the classical exchange relation."""
    from fractions import Fraction

    x = [None, Fraction(1), Fraction(1)]
    for k in range(3, n + 1):
        x.append((x[k - 1] ** r + 1) / x[k - 2])
    return x[n]
