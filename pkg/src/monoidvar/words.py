"""Words over a countable alphabet and the basic operations on them.

A word is an immutable tuple of letter names.  Letters are short identifiers
such as ``x``, ``z1`` or ``z1p`` (a primed ``z1``); they are ordered by head
character, then numeric suffix, then number of primes.
"""

import re
from collections import Counter
from dataclasses import dataclass, field
from itertools import groupby

from .errors import OutOfRange, ParseError

LAST = "last"

_LETTER = r"[A-Za-z](?:\d+p*|'*)"
_PIECE_RE = re.compile(rf"({_LETTER})(?:\^(\d+))?")


def letter_key(a):
    m = re.fullmatch(r"([A-Za-z])(\d*)(p*|'*)", a)
    if not m:
        return (a, -1, 0)
    head, num, primes = m.groups()
    return (head, int(num) if num else -1, len(primes))


def sort_letters(letters):
    return sorted(letters, key=letter_key)


class Word(tuple):
    """Immutable word; ``Word()`` is the empty word 1."""

    __slots__ = ()

    def __new__(cls, letters=()):
        if isinstance(letters, str):
            return parse_word(letters)
        return super().__new__(cls, letters)

    def __add__(self, other):
        return Word(tuple.__add__(self, tuple(other)))

    def __radd__(self, other):
        return Word(tuple(other) + tuple(self))

    def __mul__(self, k):
        return Word(tuple.__mul__(self, k))

    def __getitem__(self, i):
        r = tuple.__getitem__(self, i)
        return Word(r) if isinstance(i, slice) else r

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def key(self):
        """Shortlex sort key using the letter order."""
        return (len(self), tuple(letter_key(a) for a in self))

    def compact(self):
        """Compact rendering with exponents, e.g. ``xyx^2``."""
        return format_word(self, exponents=True, sep="")


EMPTY = Word()


def parse_word(s):
    s = s.strip()
    if s in ("", "1"):
        return EMPTY
    letters = []
    pos = 0
    for tok in s.split():
        pos = s.index(tok, pos)
        if tok == "1":
            pos += 1
            continue
        i = 0
        while i < len(tok):
            m = _PIECE_RE.match(tok, i)
            if not m:
                raise ParseError(f"bad token {tok!r}", pos + i)
            letters.extend([m.group(1)] * (int(m.group(2)) if m.group(2) else 1))
            i = m.end()
        pos += len(tok)
    return Word(tuple(letters))


def as_word(w):
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return parse_word(w)
    return Word(tuple(w))


def format_word(w, exponents=False, sep=" "):
    if not w:
        return "1"
    if not exponents:
        return sep.join(w)
    parts = []
    for a, run in groupby(w):
        k = len(list(run))
        parts.append(a if k == 1 else f"{a}^{k}")
    return sep.join(parts)


@dataclass(frozen=True)
class Identity:
    lhs: Word
    rhs: Word
    name: str = field(default=None, compare=False)

    def __str__(self):
        return f"{format_word(self.lhs)} = {format_word(self.rhs)}"

    def nontrivial(self):
        return self.lhs != self.rhs

    def swapped(self):
        return Identity(self.rhs, self.lhs, self.name)

    def reversed(self):
        return Identity(reverse(self.lhs), reverse(self.rhs), self.name)

    def letters(self):
        return sort_letters(set(self.lhs) | set(self.rhs))

    def compact(self):
        return f"{self.lhs.compact() or '1'} ≈ {self.rhs.compact() or '1'}"


def parse_identity(s, name=None):
    if "#" in s:
        s, tag = s.split("#", 1)
        name = name or tag.strip() or None
    parts = re.split(r"≈|=", s)
    if len(parts) != 2:
        raise ParseError(f"identity needs exactly one '=': {s!r}", 0)
    return Identity(parse_word(parts[0]), parse_word(parts[1]), name)


def as_identity(x):
    if isinstance(x, Identity):
        return x
    return parse_identity(x)


# ---- structure queries ----

@dataclass(frozen=True)
class WordStats:
    content: frozenset
    simple: frozenset
    multiple: frozenset
    occ: dict


def word_stats(w):
    c = Counter(w)
    return WordStats(frozenset(c), frozenset(a for a, k in c.items() if k == 1),
                     frozenset(a for a, k in c.items() if k > 1), dict(c))


def content(w):
    return frozenset(w)


def simple_letters(w):
    c = Counter(w)
    return frozenset(a for a, k in c.items() if k == 1)


def occurrence_position(w, x, i):
    """0-based position of the i-th (1-based) occurrence of x, or the last one."""
    pos = [p for p, a in enumerate(w) if a == x]
    if i == LAST:
        if not pos:
            raise OutOfRange(f"{x} does not occur")
        return pos[-1]
    if not 1 <= i <= len(pos):
        raise OutOfRange(f"{x} occurs {len(pos)} times, asked for occurrence {i}")
    return pos[i - 1]


def precedes(w, x, i, y, j):
    return occurrence_position(w, x, i) < occurrence_position(w, y, j)


# ---- transforms ----

def restrict(w, letters):
    keep = set(letters)
    return Word(tuple(a for a in w if a in keep))


def delete(w, letters):
    drop = set(letters)
    return Word(tuple(a for a in w if a not in drop))


def ini_k(w, k):
    seen = Counter()
    out = []
    for a in w:
        if seen[a] < k:
            out.append(a)
        seen[a] += 1
    return Word(tuple(out))


def ini(w):
    return ini_k(w, 1)


def ini2(w):
    return ini_k(w, 2)


def reverse(w):
    return Word(tuple(reversed(w)))


def chi(w, x):
    out = []
    for i, a in enumerate(w):
        if i:
            out.append(x)
        out.append(a)
    return Word(tuple(out))


def slice_word(w, k, m):
    if not (0 <= k <= len(w) and 0 <= m <= len(w) - k):
        raise OutOfRange(f"slice [{k};{m}] outside word of length {len(w)}")
    return w[k:k + m]


def transform(w, op, *args):
    """Dispatch by name: restrict, delete, ini, ini2, reverse, chi, slice."""
    w = as_word(w)
    table = {
        "restrict": restrict, "delete": delete, "ini": ini, "ini2": ini2,
        "reverse": reverse, "chi": chi, "slice": slice_word,
    }
    if op not in table:
        raise ValueError(f"unknown transform {op!r}")
    return table[op](w, *args)


# ---- decompositions and islands ----

@dataclass(frozen=True)
class Decomposition:
    blocks: tuple
    separators: tuple

    def reassemble(self):
        out = list(self.blocks[0])
        for t, b in zip(self.separators, self.blocks[1:]):
            out.append(t)
            out.extend(b)
        return Word(tuple(out))


def decompose(w):
    simple = simple_letters(w)
    blocks, seps, cur = [], [], []
    for a in w:
        if a in simple:
            blocks.append(Word(tuple(cur)))
            seps.append(a)
            cur = []
        else:
            cur.append(a)
    blocks.append(Word(tuple(cur)))
    return Decomposition(tuple(blocks), tuple(seps))


def block_index(w):
    """For each position, the index of the block it lies in (simple letters get -1)."""
    simple = simple_letters(w)
    out, b = [], 0
    for a in w:
        if a in simple:
            out.append(-1)
            b += 1
        else:
            out.append(b)
    return out


def runs(w):
    """Maximal runs as (letter, start, length)."""
    out, p = [], 0
    for a, grp in groupby(w):
        k = len(list(grp))
        out.append((a, p, k))
        p += k
    return out


def islands(w, x):
    return [(s, k) for a, s, k in runs(w) if a == x]


def island_counts(w):
    return Counter(a for a, _, _ in runs(w))


def two_island_limited(w):
    return all(k <= 2 for k in island_counts(w).values())


def two_island_rigid(w):
    # 2-island-limited, and a letter forming two islands occurs exactly twice
    if not two_island_limited(w):
        return False
    occ = Counter(w)
    return all(occ[x] == 2 for x, k in island_counts(w).items() if k == 2)


def skeleton(w):
    """The word with every island collapsed to a single letter."""
    return Word(tuple(a for a, _, _ in runs(w)))


# ---- substitutions ----

class Substitution(dict):
    """Letter -> Word; letters not in the mapping are fixed."""

    def __init__(self, mapping=(), **kw):
        super().__init__()
        for k, v in dict(mapping, **kw).items():
            self[k] = as_word(v)

    def __call__(self, w):
        return apply_substitution(self, w)

    def __str__(self):
        return ", ".join(f"{k}->{format_word(v)}" for k, v in sorted(self.items(), key=lambda kv: letter_key(kv[0])))


def apply_substitution(phi, w):
    out = []
    for a in as_word(w):
        if a in phi:
            out.extend(phi[a])
        else:
            out.append(a)
    return Word(tuple(out))


def rename_fresh(w, used, prefix="v"):
    """Rename letters of w away from `used`; returns (word, mapping)."""
    taken = set(used)
    mapping = {}
    n = 1
    for a in sort_letters(set(w)):
        while f"{prefix}{n}" in taken:
            n += 1
        mapping[a] = f"{prefix}{n}"
        taken.add(mapping[a])
    return Word(tuple(mapping[a] for a in w)), mapping


# ---- identities on decompositions ----

def is_linear_balanced(ident):
    u, v = ident.lhs, ident.rhs
    su = [a for a in u if a in simple_letters(u)]
    sv = [a for a in v if a in simple_letters(v)]
    if su != sv:
        return False
    du, dv = decompose(u), decompose(v)
    for bu, bv in zip(du.blocks, dv.blocks):
        cu, cv = Counter(bu), Counter(bv)
        if cu != cv or any(k > 1 for k in cu.values()):
            return False
    return True


# ---- factors ----

def factors(w):
    w = as_word(w)
    out = {EMPTY}
    n = len(w)
    for i in range(n):
        for j in range(i + 1, n + 1):
            out.add(w[i:j])
    return out


def factor_closure(words):
    out = {EMPTY}
    for w in words:
        out |= factors(w)
    return out


def is_factor(v, w):
    n, k = len(w), len(v)
    return any(tuple.__getitem__(w, slice(i, i + k)) == tuple(v) for i in range(n - k + 1))


def words_over(alphabet, max_len, min_len=0):
    """All words over `alphabet` with length in [min_len, max_len], shortlex order."""
    from itertools import product
    alphabet = sort_letters(alphabet)
    for n in range(min_len, max_len + 1):
        for t in product(alphabet, repeat=n):
            yield Word(t)
