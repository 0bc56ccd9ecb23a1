"""Brute-force oracles written without the library's algorithms."""

from itertools import product


def rees_elements(words):
    out = {()}
    for w in words:
        w = tuple(w)
        for i in range(len(w)):
            for j in range(i + 1, len(w) + 1):
                out.add(w[i:j])
    return sorted(out, key=lambda f: (len(f), f)) + [None]


def rees_eval(elements, word, env):
    """Evaluate in M(W): concatenate factors, None is zero."""
    fs = set(e for e in elements if e is not None)
    v = ()
    for a in word:
        x = env[a]
        if x is None:
            return None
        v = v + x
        if v not in fs:
            return None
    return v


def rees_fingerprint(words, w, letters):
    els = rees_elements(words)
    return tuple(rees_eval(els, w, dict(zip(letters, vals)))
                 for vals in product(els, repeat=len(letters)))


def rees_satisfies(words, u, v):
    letters = sorted(set(u) | set(v))
    return rees_fingerprint(words, u, letters) == rees_fingerprint(words, v, letters)


def table_satisfies(M, u, v):
    """Plain itertools loop over all assignments of a FiniteMonoid."""
    letters = sorted(set(u) | set(v))
    T = M.table.tolist()
    for vals in product(range(len(M)), repeat=len(letters)):
        env = dict(zip(letters, vals))
        a = b = M.one
        for ch in u:
            a = T[a][env[ch]]
        for ch in v:
            b = T[b][env[ch]]
        if a != b:
            return False
    return True
