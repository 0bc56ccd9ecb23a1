"""Finite monoids given by tables, Rees quotients M(W), and identity checking.

Evaluation is vectorised with numpy: a word over k letters induces a map
M^k -> M, stored as a flat array indexed in mixed radix (first letter most
significant).  Satisfaction, isoterm and variety comparisons all reduce to
comparing such arrays, split into a depth-first part over the leading letters
when the full grid would be too large.
"""

import hashlib
from collections import deque
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import BudgetExceeded, KindMismatch, ParseError
from .words import (EMPTY, Identity, Substitution, Word, as_identity, as_word,
                    factor_closure, format_word, reverse, sort_letters)

EVAL_CAP = 2 * 10 ** 8
GRID_CAP = 1 << 21


class FiniteMonoid:
    """Table monoid with labels; associativity and neutrality are checked on construction."""

    def __init__(self, labels, table, one, zero=None, provenance="", check=True):
        self.labels = list(labels)
        self.table = np.asarray(table, dtype=np.int32)
        self.one = int(one)
        self.zero = None if zero is None else int(zero)
        self.provenance = provenance
        self.kind = None
        self.seeds = None
        n = len(self.labels)
        if self.table.shape != (n, n):
            raise ValueError("table shape does not match element count")
        if check:
            self.check_axioms()

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"FiniteMonoid({self.provenance or '?'}, {len(self)} elements)"

    def check_axioms(self):
        T, n = self.table, len(self.labels)
        if T.min() < 0 or T.max() >= n:
            raise ValueError("table entries out of range")
        idx = np.arange(n)
        if not (np.array_equal(T[self.one], idx) and np.array_equal(T[:, self.one], idx)):
            raise ValueError("identity element is not neutral")
        if self.zero is not None:
            z = self.zero
            if not ((T[z] == z).all() and (T[:, z] == z).all()):
                raise ValueError("zero is not absorbing")
        # (ab)c == a(bc), one row of a at a time to bound memory
        for a in range(n):
            left = T[T[a]]            # left[b, c] = (ab)c
            right = T[a][T]           # right[b, c] = a(bc)
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                raise ValueError(f"not associative at ({a},{b},{c})")

    def index(self, label):
        return self.labels.index(label)

    def mul(self, a, b):
        return int(self.table[a, b])

    def eval(self, w, assignment):
        """Evaluate word w with letters mapped to element indices."""
        v = self.one
        for a in as_word(w):
            v = int(self.table[v, assignment[a]])
        return v

    def same_table(self, other):
        return self.labels == other.labels and np.array_equal(self.table, other.table) \
            and self.one == other.one and self.zero == other.zero


# ---- construction ----

def _word_label(w):
    return w.compact() if w else "1"


def build_rees(words, provenance=None):
    """M(W): nonzero elements are the factors of W, products outside collapse to 0."""
    W = [as_word(w) for w in words]
    elems = sorted(factor_closure(W), key=lambda w: w.key())
    pos = {w: i for i, w in enumerate(elems)}
    n = len(elems) + 1
    zero = n - 1
    T = np.full((n, n), zero, dtype=np.int32)
    for i, u in enumerate(elems):
        for j, v in enumerate(elems):
            T[i, j] = pos.get(u + v, zero)
    labels = [_word_label(w) for w in elems] + ["0"]
    if provenance is None:
        provenance = "M(" + ",".join(_word_label(w) for w in W) + ")"
    M = FiniteMonoid(labels, T, pos[EMPTY], zero, provenance)
    M.words = elems
    return M


def trivial_monoid():
    return FiniteMonoid(["1"], [[0]], 0, 0, "T")


def product_monoid(M1, M2):
    n1, n2 = len(M1), len(M2)
    labels = [f"({a},{b})" for a in M1.labels for b in M2.labels]
    T = np.empty((n1 * n2, n1 * n2), dtype=np.int32)
    A = M1.table[:, None, :, None] * n2 + M2.table[None, :, None, :]
    T[:] = A.reshape(n1 * n2, n1 * n2)
    zero = None
    if M1.zero is not None and M2.zero is not None:
        zero = M1.zero * n2 + M2.zero
    return FiniteMonoid(labels, T, M1.one * n2 + M2.one, zero,
                        f"{M1.provenance} x {M2.provenance}")


def dual_monoid(M):
    D = FiniteMonoid(M.labels, M.table.T.copy(), M.one, M.zero,
                     _dual_name(M.provenance), check=False)
    return D


def _dual_name(p):
    if p.startswith("dual(") and p.endswith(")"):
        return p[5:-1]
    return f"dual({p})"


def combine(M1, M2=None, mode="product"):
    if mode == "product":
        return product_monoid(M1, M2)
    if mode == "dual":
        return dual_monoid(M1)
    if mode == "alpha_join":
        if M1.kind is None or M2.kind is None or M1.kind.name != M2.kind.name:
            raise KindMismatch("alpha_join needs two monoids built from the same congruence")
        from .congruences import build_rees_alpha
        return build_rees_alpha(M1.kind, list(M1.seeds) + list(M2.seeds))
    raise ValueError(f"unknown combine mode {mode!r}")


# ---- evaluation ----

def _grid(n, k):
    """Coordinate arrays for the full grid M^k, C order."""
    if k == 0:
        return []
    g = np.indices((n,) * k, dtype=np.int32).reshape(k, -1)
    return list(g)


def _eval_grid(T, one, w, env, size):
    """Evaluate w where env maps each letter to a scalar or a coordinate array."""
    v = np.full(size, one, dtype=np.int32)
    for a in w:
        v = T[v, env[a]]
    return v


def _side_zero(M, w, fixed):
    """True if some factor of w made of fixed letters evaluates to zero."""
    if M.zero is None:
        return False
    cur = M.one
    for a in w:
        if a in fixed:
            cur = int(M.table[cur, fixed[a]])
            if cur == M.zero:
                return True
        else:
            cur = M.one
    return False


@dataclass
class SatisfactionReport:
    holds: bool
    witness: Substitution = None
    values: tuple = None
    evaluations: int = 0

    def __bool__(self):
        return self.holds


def satisfies(M, ident, cap=EVAL_CAP):
    """Exhaustive check of an identity in M; the witness is the least failing
    assignment in mixed-radix order over the sorted letters."""
    ident = as_identity(ident)
    u, v = ident.lhs, ident.rhs
    letters = ident.letters()
    n, k = len(M), len(letters)
    if n ** k > cap:
        raise BudgetExceeded(f"{n}^{k} substitutions exceed cap {cap}")
    # vectorise the trailing letters, recurse over the leading ones
    inner = 0
    while inner < k and n ** (inner + 1) <= GRID_CAP:
        inner += 1
    outer = k - inner
    inner_letters = letters[outer:]
    grid = _grid(n, inner)
    size = n ** inner
    T = M.table
    count = 0

    def rec(i, fixed):
        nonlocal count
        if _side_zero(M, u, fixed) and _side_zero(M, v, fixed):
            return None
        if i == outer:
            env = dict(fixed)
            env.update(zip(inner_letters, grid))
            a = _eval_grid(T, M.one, u, env, size)
            b = _eval_grid(T, M.one, v, env, size)
            count += size
            bad = np.flatnonzero(a != b)
            if len(bad):
                j = int(bad[0])
                inner_vals = [int(g[j]) for g in grid]
                asg = dict(fixed)
                asg.update(zip(inner_letters, inner_vals))
                return asg, (int(a[j]), int(b[j]))
            return None
        for e in range(n):
            fixed[letters[i]] = e
            r = rec(i + 1, fixed)
            if r:
                return r
        del fixed[letters[i]]
        return None

    r = rec(0, {})
    if r is None:
        return SatisfactionReport(True, evaluations=count)
    asg, vals = r
    wit = Substitution({a: _label_word(M, e) for a, e in asg.items()})
    rep = SatisfactionReport(False, wit, vals, count)
    rep.assignment = asg
    return rep


def _label_word(M, e):
    # labels of Rees monoids are words; other monoids just carry the label text
    lab = M.labels[e]
    try:
        return as_word(lab.replace("^", "^")) if lab != "0" else Word(("0",))
    except ParseError:
        return Word((lab,))


def satisfies_all(M, idents, cap=EVAL_CAP):
    for s in idents:
        r = satisfies(M, s, cap)
        if not r.holds:
            return False, s, r
    return True, None, None


# ---- fingerprints ----

def fingerprint(M, w, letters):
    """The map M^k -> M induced by w, as a flat int array."""
    n, k = len(M), len(letters)
    if n ** k > GRID_CAP * 8:
        raise BudgetExceeded(f"fingerprint grid {n}^{k} too large")
    grid = _grid(n, k)
    env = dict(zip(letters, grid))
    return _eval_grid(M.table, M.one, as_word(w), env, n ** k)


def _digest(arr):
    return hashlib.blake2b(arr.tobytes(), digest_size=16).digest()


def model_key(M, w):
    """Hashable invariant: two words with equal content are M-equivalent iff keys agree."""
    w = as_word(w)
    letters = sort_letters(set(w))
    return (frozenset(letters), _digest(fingerprint(M, w, letters)))


def _fp_bfs(monoids, letters, max_len):
    """Shortlex BFS over words, deduplicating on joint fingerprint state.
    Yields (word, [fp per monoid], is_new_state)."""
    k = len(letters)
    grids = [_grid(len(M), k) for M in monoids]
    start = [np.full(len(M) ** k, M.one, dtype=np.int32) for M in monoids]
    seen = {}
    key0 = tuple(_digest(a) for a in start)
    seen[key0] = EMPTY
    yield EMPTY, start, True
    frontier = [(EMPTY, start)]
    for _ in range(max_len):
        nxt = []
        for w, fps in frontier:
            for li, a in enumerate(letters):
                nf = [M.table[fp, g[li]] for M, fp, g in zip(monoids, fps, grids)]
                wa = w + (a,)
                key = tuple(_digest(x) for x in nf)
                if key in seen:
                    yield wa, nf, False
                    continue
                seen[key] = wa
                yield wa, nf, True
                nxt.append((wa, nf))
        frontier = nxt


def _letters(k):
    base = ["x", "y", "z", "t", "s", "r", "q", "p"]
    return base[:k] if k <= len(base) else [f"x{i}" for i in range(1, k + 1)]


@dataclass
class LeqVerdict:
    holds: bool
    k: int
    length: int
    identity: Identity = None

    def __bool__(self):
        return self.holds

    def __str__(self):
        if self.holds:
            return f"HOLDS_UP_TO_BOUND(k={self.k}, L={self.length})"
        return f"SEPARATED({self.identity}; k={self.k}, L={self.length})"


def variety_leq(M1, M2, k=3, length=7, cap=GRID_CAP * 4):
    """Bounded test of V(M1) <= V(M2): look for words over k letters of length
    <= L that M2 identifies and M1 separates."""
    for M in (M1, M2):
        if len(M) ** k > cap:
            raise BudgetExceeded(f"{len(M)}^{k} grid exceeds cap")
    letters = _letters(k)
    by_fp2 = {}
    for w, (f1, f2), _new in _fp_bfs([M1, M2], letters, length):
        d1, d2 = _digest(f1), _digest(f2)
        if d2 in by_fp2:
            w0, e1 = by_fp2[d2]
            if e1 != d1:
                return LeqVerdict(False, k, length, Identity(w0, w))
        else:
            by_fp2[d2] = (w, d1)
    return LeqVerdict(True, k, length)


# ---- isoterms and stability ----

@dataclass
class IsotermVerdict:
    status: str
    witness: Word = None

    def __str__(self):
        if self.witness is not None:
            return f"{self.status}({format_word(self.witness)})"
        return self.status


def is_isoterm(M, w, bound, cap=GRID_CAP * 8):
    w = as_word(w)
    if bound < len(w):
        raise ValueError("bound must be at least len(w)")
    letters = sort_letters(set(w))
    if not letters:
        # identity 1 = v forces v = 1 when 1 != 0 (substitute each letter by 0)
        return IsotermVerdict("ISOTERM_UP_TO_BOUND")
    if len(M) ** len(letters) > cap:
        return IsotermVerdict("BUDGET_EXCEEDED")
    target = _digest(fingerprint(M, w, letters))
    first = {}
    for v, (f,), new in _fp_bfs([M], letters, bound):
        d = _digest(f)
        if d == target and v != w:
            return IsotermVerdict("NOT_ISOTERM", v)
        if new:
            first[d] = v
        else:
            p = first[d]
            if w[:len(p)] == p and p != v:
                cand = v + w[len(p):]
                if len(cand) <= bound and cand != w:
                    return IsotermVerdict("NOT_ISOTERM", cand)
    return IsotermVerdict("ISOTERM_UP_TO_BOUND")


@dataclass
class StabilityVerdict:
    status: str
    witness: Identity = None

    def __str__(self):
        return f"{self.status}({self.witness})" if self.witness else self.status


def class_stable(M, kind, c, bound, cap=GRID_CAP * 8):
    """Search words up to `bound` over the class's letters for u in c and v
    outside c that M identifies."""
    from .congruences import class_of, in_class
    c = class_of(kind, c) if not hasattr(c, "rep") else c
    letters = sort_letters(set(c.rep))
    if not letters:
        return StabilityVerdict("STABLE_UP_TO_BOUND")
    if len(M) ** len(letters) > cap:
        return StabilityVerdict("BUDGET_EXCEEDED")
    # collect every word (no dedup: members and non-members may share a state)
    n, k = len(M), len(letters)
    grid = _grid(n, k)
    groups = {}
    frontier = [(EMPTY, np.full(n ** k, M.one, dtype=np.int32))]
    for _ in range(bound):
        nxt = []
        for w, fp in frontier:
            for li, a in enumerate(letters):
                f = M.table[fp, grid[li]]
                wa = w + (a,)
                nxt.append((wa, f))
                groups.setdefault(_digest(f), []).append(wa)
        frontier = nxt
    for ws in groups.values():
        inside = [w for w in ws if set(w) == set(letters) and in_class(c, w)]
        if not inside:
            continue
        for v in ws:
            if not in_class(c, v):
                return StabilityVerdict("UNSTABLE", Identity(inside[0], v))
    return StabilityVerdict("STABLE_UP_TO_BOUND")


# ---- serialization ----

def dump_monoid(M):
    lines = [f"monoid {M.provenance}", f"elements {len(M)}"]
    lines += [f"  {lab}" for lab in M.labels]
    lines.append(f"one {M.one}")
    lines.append(f"zero {'none' if M.zero is None else M.zero}")
    lines.append("table")
    lines += [" ".join(str(int(x)) for x in row) for row in M.table]
    return "\n".join(lines) + "\n"


def load_monoid(text):
    lines = text.splitlines()
    try:
        if not lines[0].startswith("monoid"):
            raise ParseError("expected 'monoid' header", 0)
        prov = lines[0][len("monoid "):] if len(lines[0]) > 6 else ""
        n = int(lines[1].split()[1])
        labels = [lines[2 + i].strip() for i in range(n)]
        i = 2 + n
        one = int(lines[i].split()[1])
        z = lines[i + 1].split()[1]
        zero = None if z == "none" else int(z)
        if lines[i + 2].strip() != "table":
            raise ParseError("expected 'table'", i + 2)
        rows = [[int(x) for x in lines[i + 3 + r].split()] for r in range(n)]
    except (IndexError, ValueError) as e:
        raise ParseError(f"malformed monoid file: {e}", None)
    return FiniteMonoid(labels, rows, one, zero, prov)


# ---- fact files ----

@dataclass
class FactResult:
    identity: str
    expected: bool
    holds: bool

    @property
    def ok(self):
        return self.expected == self.holds


def load_facts(text):
    """`build: KIND seed | seed`, `rees: w | w` or `file: NAME`, then
    `holds:`/`fails:` lines naming identities, labels or `system NAME`."""
    spec = {"source": None, "facts": []}
    for no, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, val = line.partition(":")
        key, val = key.strip(), val.strip()
        if key in ("build", "rees", "file"):
            spec["source"] = (key, val)
        elif key in ("holds", "fails"):
            spec["facts"].append((val, key == "holds"))
        else:
            raise ParseError(f"unknown fact line {line!r}", no)
    if spec["source"] is None:
        raise ParseError("fact file names no monoid", None)
    return spec


def facts_monoid(spec, base="."):
    import os
    kind, val = spec["source"]
    if kind == "file":
        with open(os.path.join(base, val), encoding="utf-8") as fh:
            return load_monoid(fh.read())
    if kind == "rees":
        return build_rees([s.strip() for s in val.split("|")])
    from .congruences import build_rees_alpha
    name, _, seeds = val.partition(" ")
    return build_rees_alpha(name, [s.strip() for s in seeds.split("|")])


def _fact_identities(val):
    from .families import named_axioms, resolve_label
    if val.startswith("system "):
        return list(named_axioms(val.split(None, 1)[1]).identities)
    return [resolve_label(val)]


def check_facts(spec, base="."):
    M = facts_monoid(spec, base)
    out = []
    for val, expected in spec["facts"]:
        ids = _fact_identities(val)
        holds = all(satisfies(M, i).holds for i in ids)
        out.append(FactResult(val, expected, holds))
    return M, out
