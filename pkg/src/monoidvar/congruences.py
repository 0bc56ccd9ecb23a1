"""Congruences on the free monoid: equivalence tests, canonical forms, class
descriptors, the factor quasi-order and closures, and Rees quotients of
closures.

A kind is a conjunction of components.  Structural components and Rees
monoids M(W) give exact keys.  Variety components are decided by a mix of
exact invariants, certified finite models and bounded proof search, so their
verdicts are three-valued.
"""

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from .errors import (BudgetExceeded, NoCanonicalizer, Nontermination, ParseError)
from .words import (EMPTY, Identity, Word, as_word, decompose, factor_closure,
                    factors, format_word, ini, ini2, parse_identity, parse_word,
                    restrict, runs, simple_letters, skeleton, sort_letters)

EQUIV, NOT_EQUIV, INCONCLUSIVE = "EQUIV", "NOT_EQUIV", "INCONCLUSIVE"

ISLAND_CAP = 3          # exponent cap when enumerating class members
REP_CAP = 2             # exponent cap of canonical representatives
CLOSURE_LIMIT = 10 ** 4
SLACK = 3               # extra length when enumerating members of non-gamma classes


# ---- structural keys ----

def gamma_key(w):
    return (skeleton(w), simple_letters(w))


def _first_two(w):
    seen = {}
    out = {}
    for p, a in enumerate(w):
        seen.setdefault(a, []).append(p)
        if len(seen[a]) == 2:
            out[a] = tuple(seen[a])
    return out


def lambda_flags(w):
    return frozenset((a, p2 == p1 + 1) for a, (p1, p2) in _first_two(w).items())


def beta_flags(w):
    simple = simple_letters(w)
    out = set()
    for a, (p1, p2) in _first_two(w).items():
        out.add((a, not any(b in simple for b in w[p1 + 1:p2])))
    return frozenset(out)


def mu_kappa(w):
    """Island tokens: an island of x preceded by at least two occurrences of x
    is free ('+'); otherwise only 'exponent 1' versus 'exponent >= 2' counts."""
    seen = Counter()
    out = []
    for a, _, e in runs(w):
        c = seen[a]
        out.append((a, "+" if c >= 2 else (1 if e == 1 else 2)))
        seen[a] += e
    return tuple(out)


# ---- exact keys for Rees monoids M(W) ----

class ReesKey:
    """u and v are identified by M(W) iff content and every nonerasing match of
    a restriction of u onto a nonempty factor of W agree."""

    def __init__(self, words):
        self.words = tuple(as_word(w) for w in words)
        self.factors = sorted((f for f in factor_closure(self.words) if f), key=lambda f: f.key())
        self.maxlen = max((len(f) for f in self.factors), default=0)
        self.name = "M(" + ",".join(w.compact() for w in self.words) + ")"

    def __call__(self, u):
        return self.key(u)

    @lru_cache(maxsize=200000)
    def key(self, u):
        u = as_word(u)
        con = sort_letters(set(u))
        occ = Counter(u)
        found = set()
        # subsets S with |u_S| <= maxlen, grown letter by letter
        def grow(start, S, size):
            if S:
                uS = restrict(u, S)
                for f in self.factors:
                    if len(f) >= len(uS):
                        for th in _nonerasing_matches(uS, f):
                            found.add((th, f))
            for i in range(start, len(con)):
                a = con[i]
                if size + occ[a] <= self.maxlen:
                    grow(i + 1, S + (a,), size + occ[a])
        grow(0, (), 0)
        return (frozenset(con), frozenset(found))


def _nonerasing_matches(p, text):
    """All theta with theta(p) == text, every image nonempty; as sorted tuples."""
    out = []
    p, text = tuple(p), tuple(text)

    def rec(i, j, th):
        if i == len(p):
            if j == len(text):
                out.append(tuple(sorted(th.items())))
            return
        a = p[i]
        if a in th:
            img = th[a]
            if text[j:j + len(img)] == img:
                rec(i + 1, j + len(img), th)
            return
        rest = len(p) - i - 1
        for n in range(1, len(text) - j - rest + 1):
            th[a] = text[j:j + n]
            rec(i + 1, j + n, th)
        th.pop(a, None)
    rec(0, 0, {})
    return out


@lru_cache(maxsize=None)
def rees_key(words):
    return ReesKey(words)


XYX = ("xyx",)
XYXTY = ("xyxty", "ytxyx")


# ---- the variety var{xyxz = xyxzx, ytx^2y = ytyx^2} ----

V1_AXIOMS = (parse_identity("x y x z = x y x z x"), parse_identity("y t x x y = y t y x x"))


class RelativelyFree:
    """Relatively free object on k <= 3 generators of a variety in which every
    word equals the word keeping only the first two occurrences of each letter.

    Built as a quotient of those words by the congruence generated by
    `generating` (instances over all element tuples), then certified: the
    quotient must satisfy every identity in `axioms`.  Every merge is a
    consequence of the axioms, so a certified quotient is the free object.
    """

    def __init__(self, generating, axioms, k=3, name=""):
        gens = ["a", "b", "c"][:k]
        elems = []

        def gen(prefix, cnt):
            elems.append(Word(tuple(prefix)))
            for g in gens:
                if cnt[g] < 2:
                    cnt[g] += 1
                    gen(prefix + [g], cnt)
                    cnt[g] -= 1
        gen([], Counter())
        elems.sort(key=lambda w: w.key())
        self.name = name
        self.gens = gens
        self.elems = elems
        self.index = {w: i for i, w in enumerate(elems)}
        n = len(elems)
        T = np.empty((n, n), dtype=np.int32)
        for i, u in enumerate(elems):
            for j, v in enumerate(elems):
                T[i, j] = self.index[ini2(u + v)]
        self.T = T
        label = np.arange(n)
        for ident in generating:
            lhs, rhs = self._instances(T, n, ident)
            diff = lhs != rhs
            codes = np.unique(lhs[diff].astype(np.int64) * n + rhs[diff])
            label = self._merge(label, np.stack([codes // n, codes % n], 1))
        # congruence closure under multiplication by generators on both sides
        gidx = [self.index[Word((g,))] for g in gens]
        while True:
            before = label.copy()
            rep = self._reps(label)
            for g in gidx:
                left = np.stack([T[g, np.arange(n)], T[g, rep]], 1)
                right = np.stack([T[np.arange(n), g], T[rep, g]], 1)
                label = self._merge(label, np.concatenate([left, right]))
            if np.array_equal(self._canon(label), self._canon(before)):
                break
        self.label = self._canon(label)
        self._certify(axioms)

    @staticmethod
    def _instances(T, n, ident):
        letters = sort_letters(set(ident.lhs) | set(ident.rhs))
        grid = dict(zip(letters, np.indices((n,) * len(letters), dtype=np.int32)
                        .reshape(len(letters), -1)))
        size = n ** len(letters)
        out = []
        for w in (ident.lhs, ident.rhs):
            v = np.zeros(size, dtype=np.int32)      # index 0 is the empty word
            for a in w:
                v = T[v, grid[a]]
            out.append(v)
        return out

    @staticmethod
    def _reps(label):
        first = {}
        rep = np.empty_like(label)
        for i, l in enumerate(label):
            rep[i] = first.setdefault(int(l), i)
        return rep

    @staticmethod
    def _canon(label):
        _, inv = np.unique(label, return_inverse=True)
        return inv

    @staticmethod
    def _merge(label, pairs):
        parent = list(range(len(label)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i
        rep = RelativelyFree._reps(label)
        for i, r in enumerate(rep):
            parent[find(i)] = find(int(r))
        for i, j in pairs:
            parent[find(int(i))] = find(int(j))
        return np.array([find(i) for i in range(len(label))])

    def _certify(self, axioms):
        from .monoids import FiniteMonoid, satisfies_all
        lab = self.label
        m = lab.max() + 1
        rep = self._reps(lab)
        reps = sorted(set(int(r) for r in rep))
        self.size = m
        Q = np.empty((m, m), dtype=np.int32)
        for i in reps:
            for j in reps:
                Q[lab[i], lab[j]] = lab[self.T[i, j]]
        # well-defined: every representative pair multiplies into the same class
        if not np.array_equal(lab[self.T], Q[lab][:, lab]):
            raise AssertionError("quotient is not a congruence")
        self.Q = Q
        names = [""] * m
        for i in reps:
            names[lab[i]] = _word_name(self.elems[i])
        self.monoid = FiniteMonoid(names, Q, int(lab[0]), provenance=self.name or "F")
        ok, bad, _ = satisfies_all(self.monoid, axioms)
        if not ok:
            raise AssertionError(f"{bad} fails in the quotient")

    def value(self, w, letters):
        """Class of w with `letters` sent to the generators in order."""
        m = dict(zip(letters, self.gens))
        return int(self.label[self.index[ini2(Word(tuple(m[a] for a in w)))]])


def _word_name(w):
    return "".join(w) if w else "1"


@lru_cache(maxsize=None)
def free_v1():
    return RelativelyFree(V1_AXIOMS[1:], V1_AXIOMS, 3, "F_V1(3)")


H_GENERATING = (parse_identity("x^2 y^2 = y^2 x^2"), parse_identity("x y x t y = y x^2 t y"))


@lru_cache(maxsize=None)
def free_h(k=3):
    """Free object of var{Phi, xyx = xyx^2, x^2y = x^2yx, xyxty = yx^2ty} on k generators."""
    from .families import named_axioms
    return RelativelyFree(H_GENERATING, named_axioms("H").identities, k, f"F_H({k})")


def _capped_occ(w):
    return frozenset((a, min(k, 2)) for a, k in Counter(w).items())


def v1_equiv(u, v, max_nodes=20000):
    u2, v2 = ini2(u), ini2(v)
    if u2 == v2:
        return EQUIV
    if ini(u) != ini(v) or _capped_occ(u) != _capped_occ(v):
        return NOT_EQUIV
    F = free_v1()
    con = sort_letters(set(u) | set(v))
    for r in range(1, min(3, len(con)) + 1):
        for S in combinations(con, r):
            if F.value(restrict(u2, S), S) != F.value(restrict(v2, S), S):
                return NOT_EQUIV
    if len(con) <= 3:
        return EQUIV
    return EQUIV if _v1_search(u2, v2, max_nodes) else INCONCLUSIVE


def _v1_search(u, v, max_nodes):
    from .equational import rewrites
    ax = V1_AXIOMS[1]
    seen = {u}
    frontier = [u]
    while frontier and len(seen) < max_nodes:
        nxt = []
        for w in frontier:
            for w2 in _v1_expansions(w):
                for r in rewrites(w2, ax, len(w2) + 2):
                    n = ini2(r)
                    if n == v:
                        return True
                    if n not in seen:
                        seen.add(n)
                        nxt.append(n)
        frontier = sorted(nxt, key=lambda w: w.key())
    return False


def _v1_expansions(w):
    """w and the words obtained by inserting one extra occurrence of a letter
    after its second occurrence (all equal to w in the variety)."""
    yield w
    occ = Counter()
    for p, a in enumerate(w):
        occ[a] += 1
        if occ[a] == 2:
            for q in range(p + 1, len(w) + 1):
                yield w[:q] + Word((a,)) + w[q:]


# ---- components ----

@dataclass(frozen=True)
class Component:
    """One conjunct of a congruence.  `exact` means key equality decides it."""
    type: str            # STRUCTURAL | FINITE_MODEL | EQUATIONAL
    name: str
    keyfn: object = field(compare=False, default=None)
    decide: object = field(compare=False, default=None)
    exact: bool = True

    def key(self, w):
        return self.keyfn(w) if self.keyfn else None

    def equiv(self, u, v):
        if self.decide is not None:
            return self.decide(u, v)
        return EQUIV if self.keyfn(u) == self.keyfn(v) else NOT_EQUIV


def structural(name, fn):
    return Component("STRUCTURAL", name, fn)


def finite_model(words):
    k = rees_key(tuple(words))
    return Component("FINITE_MODEL", k.name, k.key)


# ---- kinds ----

class Kind:
    """A congruence given as a meet of components.

    `gamma_refined` kinds have classes made of words sharing a skeleton; their
    members are enumerated by varying island exponents.  `canonical` kinds
    have an exact key on which canonical representatives are built.
    """

    def __init__(self, name, components, gamma_refined=False, canonical=True,
                 key=None, axioms=None, display=None):
        self.name = name
        self.components = list(components)
        self.gamma_refined = gamma_refined
        self.canonical = canonical
        self._key = key
        self.axioms = axioms
        self.display = display or name

    def __repr__(self):
        return f"Kind({self.name})"

    def __eq__(self, other):
        return isinstance(other, Kind) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def key(self, w):
        """Exact class key, or None when the kind has none."""
        if self._key is not None:
            return self._key(as_word(w))
        if all(c.exact and c.keyfn for c in self.components):
            w = as_word(w)
            return tuple(c.key(w) for c in self.components)
        return None

    def partial_key(self, w):
        """Invariant of the class built from the exact components only."""
        w = as_word(w)
        return tuple(c.key(w) for c in self.components if c.keyfn)

    def equiv(self, u, v):
        u, v = as_word(u), as_word(v)
        if u == v:
            return EQUIV
        if self._key is not None:
            if self._key(u) == self._key(v):
                return EQUIV
        verdicts = []
        # exact components first: they are cheap and decisive
        for c in sorted(self.components, key=lambda c: not c.exact):
            r = c.equiv(u, v)
            if r == NOT_EQUIV:
                return NOT_EQUIV
            verdicts.append(r)
        if all(r == EQUIV for r in verdicts):
            return EQUIV
        return self._refute(u, v)

    def _refute(self, u, v):
        return INCONCLUSIVE


class MuKind(Kind):
    """var{x^2 = x^3, xyxzx = xyxzx^2}: equal island tokens prove equivalence;
    distinct tokens are refuted by a Rees quotient of token classes that is
    checked to satisfy both axioms."""

    def __init__(self):
        ax = [parse_identity("x^2 = x^3"), parse_identity("x y x z x = x y x z x^2")]
        super().__init__("mu", [Component("EQUATIONAL", "x^2=x^3, xyxzx=xyxzx^2",
                                          decide=self._decide, exact=False)],
                         gamma_refined=True, canonical=True, key=mu_kappa, axioms=ax)

    def _decide(self, u, v):
        return EQUIV if mu_kappa(u) == mu_kappa(v) else INCONCLUSIVE

    def _refute(self, u, v):
        try:
            M = build_rees_alpha(self, [u, v])
        except (NoCanonicalizer, Nontermination, BudgetExceeded):
            return INCONCLUSIVE
        a = M.class_index.get(mu_kappa(u))
        b = M.class_index.get(mu_kappa(v))
        return NOT_EQUIV if a != b else INCONCLUSIVE


class EquationalKind(Kind):
    """Fully invariant congruence of a finitely based variety; decided by the
    bounded prover, with finite countermodels for refutation."""

    def __init__(self, name, axioms, models=()):
        self._models = list(models)
        super().__init__(name, [Component("EQUATIONAL", ", ".join(map(str, axioms)),
                                          decide=self._decide, exact=False)],
                         canonical=False, axioms=list(axioms))
        self._checked = None

    def countermodels(self):
        if self._checked is None:
            from .monoids import satisfies_all
            self._checked = [M for M in self._models if satisfies_all(M, self.axioms)[0]]
        return self._checked

    def _decide(self, u, v):
        from .monoids import satisfies
        for M in self.countermodels():
            if not satisfies(M, Identity(u, v)).holds:
                return NOT_EQUIV
        from .equational import ProverConfig, prove
        r = prove(self.axioms, Identity(u, v), ProverConfig(max_nodes=20000))
        return EQUIV if r.status == "PROVED" else INCONCLUSIVE


def _default_models():
    from .monoids import build_rees
    out = [build_rees([w]) for w in ("x", "xy", "xyx", "xx", "xyxy", "xxy", "xyy")]
    from .monoids import FiniteMonoid
    out.append(FiniteMonoid(["1", "0"], [[0, 1], [1, 1]], 0, 1, "SL"))
    return out


def _gamma_kind(name, extra, display=None):
    comps = [structural("gamma", gamma_key)] + extra
    return Kind(name, comps, gamma_refined=True, display=display)


def _make_kinds():
    lam = structural("lambda", lambda_flags)
    kinds = {
        "gamma": _gamma_kind("gamma", []),
        "lambda": _gamma_kind("lambda", [lam]),
        "beta": _gamma_kind("beta", [structural("beta", beta_flags)]),
        "gamma'": _gamma_kind("gamma'", [finite_model(XYX)]),
        "lambda'": _gamma_kind("lambda'", [lam, finite_model(XYX)]),
        "gamma''": _gamma_kind("gamma''", [finite_model(XYXTY)]),
        "nu": Kind("nu", [Component("EQUATIONAL", "xy=xyx", ini), finite_model(XYX)]),
        "eta": Kind("eta", [Component("EQUATIONAL", "xyxz=xyxzx, ytx^2y=ytyx^2",
                                      lambda w: (ini(w), _capped_occ(w)), v1_equiv, exact=False),
                            finite_model(XYX)], canonical=True),
        "mu": MuKind(),
        "alpha1": EquationalKind("alpha1", [parse_identity("x y x^2 = x^2 y x"),
                                            parse_identity("x^2 y^2 = y^2 x^2"),
                                            parse_identity("x z x y t y = x z y x t y")],
                                 _default_models()),
    }
    return kinds


_KINDS = None
_ALIASES = {
    "γ": "gamma", "λ": "lambda", "β": "beta", "ν": "nu", "η": "eta", "μ": "mu",
    "gamma_prime": "gamma'", "lambda_prime": "lambda'", "gamma_pp": "gamma''",
    "gamma_double_prime": "gamma''", "γ′": "gamma'", "λ′": "lambda'", "γ″": "gamma''",
    "α1": "alpha1", "alpha_1": "alpha1",
}


def get_kind(name):
    global _KINDS
    if isinstance(name, Kind):
        return name
    if _KINDS is None:
        _KINDS = _make_kinds()
    key = _ALIASES.get(name, name)
    if key in _KINDS:
        return _KINDS[key]
    m = re.fullmatch(r"(?:mu_?|μ_?)(\d+)", key)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ValueError("mu_n needs n >= 1")
        from .families import gamma
        kname = f"mu{n}"
        if kname not in _KINDS:
            _KINDS[kname] = EquationalKind(kname, [parse_identity("x^2 = x^3"), gamma(n)],
                                           _default_models())
        return _KINDS[kname]
    raise ValueError(f"unknown congruence {name!r}")


KIND_NAMES = ("gamma", "lambda", "beta", "gamma'", "lambda'", "gamma''", "nu", "eta",
              "mu", "mu_n", "alpha1")


def equiv(kind, u, v):
    return get_kind(kind).equiv(as_word(u), as_word(v))


# ---- class members and canonical forms ----

def _islands(w):
    """(letter, exponent) per island, and which islands belong to multiple letters."""
    rs = [(a, e) for a, _, e in runs(w)]
    simple = simple_letters(w)
    return rs, [a not in simple for a, _ in rs]


def _with_exps(rs, exps):
    out = []
    for (a, _), e in zip(rs, exps):
        out.extend([a] * e)
    return Word(tuple(out))


def _capped(w, cap=REP_CAP):
    rs, _ = _islands(w)
    return _with_exps(rs, [min(e, cap) for _, e in rs])


def _need_canonical(kind):
    if not kind.canonical:
        raise NoCanonicalizer(f"{kind.name} has no validated canonical form")


def _gamma_members(kind, w, cap):
    """Members of the class of w whose island exponents are at most cap."""
    key = kind.key(w)
    rs, mult = _islands(w)
    ranges = [range(1, cap + 1) if m else (1,) for m in mult]
    out = []
    for exps in product(*ranges):
        c = _with_exps(rs, exps)
        if kind.key(c) == key:
            out.append(c)
    return out


def _word_candidates(w, extra):
    """Words with the same ini, the same simple letters and each multiple letter
    occurring at least twice, of length up to len(w)+extra."""
    order = list(ini(w))
    simple = simple_letters(w)
    mult = [a for a in order if a not in simple]
    base = len(order) + len(mult)
    out = []
    for L in range(base, len(w) + extra + 1):
        _fill(order, simple, L, [], Counter(), 0, out)
    return out


def _fill(order, simple, L, cur, cnt, nxt, out):
    # letters still owed: unseen first occurrences plus second occurrences
    need = len(order) - nxt + sum(1 for a in order if a not in simple and cnt[a] < 2)
    if len(cur) + need > L:
        return
    if len(cur) == L:
        out.append(Word(tuple(cur)))
        return
    if nxt < len(order):
        a = order[nxt]
        cnt[a] += 1
        cur.append(a)
        _fill(order, simple, L, cur, cnt, nxt + 1, out)
        cur.pop()
        cnt[a] -= 1
    for a in order[:nxt]:
        if a in simple:
            continue
        cnt[a] += 1
        cur.append(a)
        _fill(order, simple, L, cur, cnt, nxt, out)
        cur.pop()
        cnt[a] -= 1


def members(kind, w, cap=ISLAND_CAP, slack=SLACK):
    """Finite sample of the class of w: all members up to the island cap
    (gamma-refined kinds) or up to length len(w)+slack (others)."""
    kind = get_kind(kind)
    w = as_word(w)
    if kind.gamma_refined:
        return _gamma_members(kind, w, cap)
    return [c for c in _word_candidates(w, slack) if kind.equiv(c, w) == EQUIV]


@lru_cache(maxsize=100000)
def _canonical_cached(kind, w):
    if kind.gamma_refined:
        key = kind.key(w)
        rs, mult = _islands(w)
        cands = [_with_exps(rs, exps) for exps in
                 product(*[(1, 2) if m else (1,) for m in mult])]
        cands.sort(key=lambda c: c.key())
        for c in cands:
            if kind.key(c) == key:
                return c
        raise AssertionError("no canonical member found")
    best = None
    undecided = []
    for c in sorted(_word_candidates(w, 0), key=lambda c: c.key()):
        if c.key() > w.key():
            break
        r = kind.equiv(c, w)
        if r == EQUIV:
            best = c
            break
        if r == INCONCLUSIVE:
            undecided.append(c)
    if undecided:
        raise NoCanonicalizer(f"{kind.name}: could not decide {format_word(undecided[0])} "
                              f"against {format_word(w)}")
    return best if best is not None else w


def canonical_rep(kind, w):
    kind = get_kind(kind)
    _need_canonical(kind)
    return _canonical_cached(kind, as_word(w))


# ---- descriptors ----

@dataclass(frozen=True)
class ClassDescriptor:
    kind_name: str
    rep: Word
    signature: object = field(default=None, compare=False, hash=False, repr=False)

    @property
    def kind(self):
        return get_kind(self.kind_name)

    def __str__(self):
        return render_class(self)


def class_of(kind, w):
    kind = get_kind(kind)
    w = as_word(w)
    if kind.canonical:
        rep = canonical_rep(kind, w)
        return ClassDescriptor(kind.name, rep, kind.key(rep))
    return ClassDescriptor(kind.name, w, None)


def in_class(c, w):
    return c.kind.equiv(c.rep, as_word(w)) == EQUIV


def same_class(c1, c2):
    if c1.kind_name != c2.kind_name:
        return False
    return c1 == c2 if c1.kind.canonical else c1.kind.equiv(c1.rep, c2.rep) == EQUIV


def class_product(kind, c1, c2):
    kind = get_kind(kind)
    _need_canonical(kind)
    return class_of(kind, c1.rep + c2.rep)


def _factor_classes(kind, c, cap=ISLAND_CAP):
    out = set()
    for m in members(kind, c.rep, cap):
        for f in factors(m):
            out.add(class_of(kind, f))
    return out


def class_leq(kind, v, u, cap=ISLAND_CAP):
    """v <= u: some member of v is a factor of some member of u."""
    kind = get_kind(kind)
    _need_canonical(kind)
    return v in _factor_classes(kind, u, cap)


def closure(kind, seeds, cap=ISLAND_CAP, limit=CLOSURE_LIMIT):
    kind = get_kind(kind)
    _need_canonical(kind)
    out = set()
    for s in seeds:
        c = s if isinstance(s, ClassDescriptor) else class_of(kind, s)
        out |= _factor_classes(kind, c, cap)
        if len(out) > limit:
            raise Nontermination(f"closure exceeds {limit} classes")
    return sorted(out, key=lambda c: c.rep.key())


# ---- rendering and parsing ----

def _allowed(kind, rep):
    """Per island, the exponents in {1,2} that keep the class; None if the
    allowed exponent vectors are not a product set."""
    key = kind.key(rep)
    rs, mult = _islands(rep)
    base = [e for _, e in rs]
    allowed = []
    for i, (a, e) in enumerate(rs):
        opts = []
        for f in ((1, 2) if mult[i] else (1,)):
            exps = list(base)
            exps[i] = f
            if kind.key(_with_exps(rs, exps)) == key:
                opts.append(f)
        allowed.append(tuple(opts))
    free = [i for i, m in enumerate(mult) if m]
    if len(free) <= 14:
        count = sum(1 for exps in product(*[(1, 2) if m else (1,) for m in mult])
                    if kind.key(_with_exps(rs, exps)) == key)
        size = 1
        for o in allowed:
            size *= len(o)
        if count != size:
            return None
    return allowed


def _is_singleton(kind, rep):
    rest = [c for c in _word_candidates(rep, 2) if c != rep]
    return not any(kind.equiv(c, rep) == EQUIV for c in rest)


def render_class(c):
    kind = c.kind
    rep = c.rep
    if not rep:
        return "1"
    if kind.gamma_refined and kind.key(rep) is not None:
        allowed = _allowed(kind, rep)
        if allowed is not None:
            toks = []
            rs, _ = _islands(rep)
            for (a, _), opts in zip(rs, allowed):
                if opts == (1,):
                    toks.append(a)
                elif opts == (2,):
                    toks.append(f"{a} {a}+")
                else:
                    toks.append(f"{a}+")
            return " ".join(toks)
    if kind.canonical and _is_singleton(kind, rep):
        return format_word(rep)
    return "[" + format_word(rep, exponents=True) + "]"


_CLASS_TOKEN = re.compile(r"([A-Za-z](?:\d+p*|'*))(\^\d+)?([+*]?)")


def parse_class(s, kind):
    """Accepts letters with optional ^k and a trailing + or * (x+ is read as x,
    x* as nothing), or a bracketed word [w]; returns the class of the least
    word described."""
    kind = get_kind(kind)
    text = s.strip()
    if text in ("1", ""):
        return class_of(kind, EMPTY)
    if text.startswith("["):
        m = re.fullmatch(r"\[(.*)\](?:\^\S+)?", text)
        if not m:
            raise ParseError("unbalanced bracket", len(text))
        return class_of(kind, parse_word(m.group(1)))
    letters = []
    pos = 0
    for tok in text.split():
        pos = text.index(tok, pos)
        i = 0
        while i < len(tok):
            m = _CLASS_TOKEN.match(tok, i)
            if not m or m.end() == i:
                raise ParseError(f"unexpected {tok[i:]!r}", pos + i)
            a, exp, mark = m.groups()
            k = int(exp[1:]) if exp else 1
            if mark == "*":
                k = 0
            letters.extend([a] * k)
            i = m.end()
        pos += len(tok)
    return class_of(kind, Word(tuple(letters)))


def is_singleton_class(c):
    text = render_class(c)
    return "+" not in text and "[" not in text


@dataclass
class ListingReport:
    ok: bool
    listed: int
    found: int
    missing: list = field(default_factory=list)
    extra: list = field(default_factory=list)
    merged: list = field(default_factory=list)
    not_singleton: list = field(default_factory=list)


def compare_listing(kind, seeds, entries, project=None, rendered=False):
    """Compare closure(kind, seeds) with a hand-written listing of classes.

    Plain entries claim a singleton class; bracketed or + entries do not.
    With `project`, both sides are mapped to classes of that coarser kind
    first.  With `rendered`, the listing must equal the rendered strings.
    """
    kind = get_kind(kind)
    seeds = [s if isinstance(s, ClassDescriptor) else parse_class(s, kind) for s in seeds]
    found = closure(kind, seeds)
    if rendered:
        mine = {render_class(c) for c in found}
        want = [" ".join(e.split()) for e in entries]
        return ListingReport(mine == set(want) and len(want) == len(set(want)),
                             len(want), len(mine),
                             missing=sorted(set(want) - mine),
                             extra=sorted(mine - set(want)))
    target = get_kind(project) if project else kind
    mine = {}
    for c in found:
        d = class_of(target, c.rep) if project else c
        mine.setdefault(d.rep, d)
    listed = {}
    bad = []
    for e in entries:
        d = parse_class(e, target)
        listed.setdefault(d.rep, []).append(e)
        plain = not any(ch in e for ch in "+*[")
        if plain and not is_singleton_class(parse_class(e, kind)):
            bad.append(e)
    rep = ListingReport(False, len(entries), len(mine))
    rep.missing = [v[0] for r, v in listed.items() if r not in mine]
    rep.extra = sorted((render_class(d) for r, d in mine.items() if r not in listed))
    rep.merged = [v for v in listed.values() if len(v) > 1]
    rep.not_singleton = bad
    rep.ok = not (rep.missing or rep.extra or rep.merged or rep.not_singleton)
    return rep


# ---- Rees quotients of closures ----

def build_rees_alpha(kind, seeds, limit=CLOSURE_LIMIT):
    """M_alpha(W): the classes of the closure plus a zero, multiplied by
    concatenating representatives."""
    from .monoids import FiniteMonoid, satisfies_all
    kind = get_kind(kind)
    _need_canonical(kind)
    seeds = [s if isinstance(s, ClassDescriptor) else
             parse_class(s, kind) if isinstance(s, str) else class_of(kind, s) for s in seeds]
    classes = closure(kind, seeds, limit=limit)
    n = len(classes) + 1
    zero = n - 1
    exact = kind.key(EMPTY) is not None
    index = {}
    for i, c in enumerate(classes):
        index[kind.key(c.rep) if exact else c] = i
    T = np.full((n, n), zero, dtype=np.int32)
    for i, a in enumerate(classes):
        for j, b in enumerate(classes):
            w = a.rep + b.rep
            if exact:
                T[i, j] = index.get(kind.key(w), zero)
            else:
                T[i, j] = _locate(kind, classes, w, zero)
    labels = [render_class(c) for c in classes] + ["0"]
    one = index[kind.key(EMPTY)] if exact else classes.index(class_of(kind, EMPTY))
    prov = f"M_{kind.name}(" + ", ".join(render_class(c) for c in seeds) + ")"
    M = FiniteMonoid(labels, T, one, zero, prov)
    M.kind = kind
    M.seeds = list(seeds)
    M.classes = classes
    M.class_index = index
    if isinstance(kind, MuKind):
        ok, bad, _ = satisfies_all(M, kind.axioms)
        if not ok:
            raise NoCanonicalizer(f"island tokens are not validated on this closure ({bad} fails)")
    return M


def _locate(kind, classes, w, zero):
    pk = kind.partial_key(w)
    for i, c in enumerate(classes):
        if kind.partial_key(c.rep) == pk:
            r = kind.equiv(c.rep, w)
            if r == EQUIV:
                return i
            if r == INCONCLUSIVE:
                raise NoCanonicalizer(f"{kind.name}: undecided product {format_word(w)}")
    return zero


def load_listing(text):
    """Parse a .closure fixture: `key: value` headers, then one entry per line."""
    spec = {"seeds": [], "entries": [], "mode": "classes", "project": None}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"(kind|seed|mode|project):\s*(.+)", line)
        if m and not spec["entries"]:
            key, val = m.groups()
            if key == "seed":
                spec["seeds"].append(val)
            else:
                spec[key] = val
        else:
            spec["entries"].append(line)
    if "kind" not in spec:
        raise ParseError("listing has no kind header", 0)
    return spec


def check_listing(spec):
    return compare_listing(spec["kind"], spec["seeds"], spec["entries"],
                           project=spec["project"], rendered=spec["mode"] == "rendered")
