"""Equational deduction over free monoids.

The matcher solves a*phi(s)*b = u, a*phi(t)*b = v with possibly erasing
substitutions by plain backtracking.  The prover is a bidirectional breadth
first search whose nodes are words, with length and node budgets.
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .errors import (NotOneLetterForm, ParseError, RoundTripFailed,
                     SkeletonMismatch, StepFailed)
from .words import (EMPTY, Identity, Substitution, Word, apply_substitution,
                    as_identity, as_word, decompose, format_word, parse_identity,
                    parse_word, simple_letters)


# ---- axiom systems ----

class AxiomSystem:
    """A named list of identities, optionally with finite monoid generators."""

    def __init__(self, name, identities=(), monoids=(), schemas=()):
        self.name = name
        self.identities = [as_identity(s) for s in identities]
        self.monoids = list(monoids)
        self.schemas = list(schemas)   # (schema name, bounds) for display

    def __iter__(self):
        return iter(self.identities)

    def __len__(self):
        return len(self.identities)

    def __repr__(self):
        return f"AxiomSystem({self.name}, {len(self)} identities)"

    def __or__(self, other):
        other = other if isinstance(other, AxiomSystem) else AxiomSystem("", other)
        return AxiomSystem(f"{self.name}+{other.name}".strip("+"),
                           self.identities + other.identities,
                           self.monoids + other.monoids, self.schemas + other.schemas)

    def lookup(self, label):
        """Find an identity by name tag (or by its text)."""
        for s in self.identities:
            if s.name == label or str(s) == label:
                return s
        return None

    def dump(self):
        out = []
        for s in self.identities:
            out.append(f"{s}" + (f"  # {s.name}" if s.name else ""))
        return "\n".join(out) + "\n"

    @classmethod
    def load(cls, text, name="file"):
        ids = []
        for line in text.splitlines():
            if line.strip() and not line.lstrip().startswith("#"):
                ids.append(parse_identity(line))
        return cls(name, ids)


# ---- matching ----

def _match_seq(pats, texts, phi, out, limit):
    """Backtracking: find all phi extending `phi` with phi(p_i) = text_i for all i."""
    if len(out) >= limit:
        return
    if not pats:
        out.append(dict(phi))
        return
    p, t = pats[0], texts[0]
    if not p:
        if not t:
            _match_seq(pats[1:], texts[1:], phi, out, limit)
        return
    x = p[0]
    if x in phi:
        img = phi[x]
        if t[:len(img)] == img:
            _match_seq([p[1:]] + pats[1:], [t[len(img):]] + texts[1:], phi, out, limit)
        return
    # remaining length budget: other letters of p need at least zero each
    for n in range(0, len(t) + 1):
        phi[x] = t[:n]
        # quick length feasibility: count occurrences of x in p
        _match_seq([p[1:]] + pats[1:], [t[n:]] + texts[1:], phi, out, limit)
        if len(out) >= limit:
            break
    del phi[x]


def match_pair(s, t, X, Y, limit=1):
    """Substitutions phi with phi(s) = X and phi(t) = Y."""
    out = []
    _match_seq([tuple(s), tuple(t)], [tuple(X), tuple(Y)], {}, out, limit)
    return out


@dataclass
class ProofStep:
    source: Word
    target: Word
    axiom: Identity
    a: Word
    b: Word
    phi: Substitution
    forward: bool   # True: source = a phi(lhs) b

    def __str__(self):
        side = "lhs->rhs" if self.forward else "rhs->lhs"
        return (f"{format_word(self.source)} ~ {format_word(self.target)} by "
                f"{self.axiom.name or self.axiom} [{side}; a={format_word(self.a)}, "
                f"b={format_word(self.b)}, {self.phi}]")


def directly_deducible(u, v, ax):
    """Least (orientation, |a|, |b|, phi) witnessing a one-step deduction, or None."""
    u, v, ax = as_word(u), as_word(v), as_identity(ax)
    if u == v:
        # trivial step: a = u, phi erases everything in both sides
        letters = set(ax.lhs) | set(ax.rhs)
        return ProofStep(u, v, ax, u, EMPTY, Substitution({x: EMPTY for x in letters}), True)
    pre = 0
    while pre < min(len(u), len(v)) and u[pre] == v[pre]:
        pre += 1
    suf = 0
    while suf < min(len(u), len(v)) - 0 and u[len(u) - 1 - suf] == v[len(v) - 1 - suf]:
        suf += 1
    for forward in (True, False):
        s, t = (ax.lhs, ax.rhs) if forward else (ax.rhs, ax.lhs)
        for la in range(pre + 1):
            for lb in range(suf + 1):
                if la + lb > min(len(u), len(v)):
                    break
                X, Y = u[la:len(u) - lb], v[la:len(v) - lb]
                sols = match_pair(s, t, X, Y)
                if sols:
                    phi = Substitution(sols[0])
                    for x in set(s) | set(t):
                        phi.setdefault(x, EMPTY)
                    return ProofStep(u, v, ax, u[:la], u[len(u) - lb:] if lb else EMPTY, phi, forward)
    return None


def rewrites(w, ax, max_len=None, extra_images=None):
    """All words obtained from w by one application of ax (both orientations)."""
    w = as_word(w)
    out = set()
    for s, t in ((ax.lhs, ax.rhs), (ax.rhs, ax.lhs)):
        free = [x for x in dict.fromkeys(t) if x not in set(s)]
        for i in range(len(w) + 1):
            sols = []
            _prefix_matches(tuple(s), tuple(w[i:]), {}, sols)
            for phi, used in sols:
                if not free:
                    choices = [{}]
                else:
                    imgs = extra_images if extra_images is not None else [EMPTY] + [Word((a,)) for a in sorted(set(w))]
                    choices = [dict(zip(free, c)) for c in product(imgs, repeat=len(free))]
                for ch in choices:
                    full = dict(phi)
                    full.update(ch)
                    new = w[:i] + apply_substitution(full, t) + w[i + used:]
                    if new != w and (max_len is None or len(new) <= max_len):
                        out.add(new)
    return out


def _prefix_matches(p, text, phi, out, used=0):
    """All phi with phi(p) a prefix of text; records (phi, consumed length)."""
    if not p:
        out.append((dict(phi), used))
        return
    x = p[0]
    if x in phi:
        img = phi[x]
        if text[:len(img)] == tuple(img):
            _prefix_matches(p[1:], text[len(img):], phi, out, used + len(img))
        return
    for n in range(len(text) + 1):
        phi[x] = Word(text[:n])
        _prefix_matches(p[1:], text[n:], phi, out, used + n)
    del phi[x]


# ---- chains ----

@dataclass
class Chain:
    words: list
    labels: list = field(default_factory=list)   # label per step (None = any axiom)
    steps: list = field(default_factory=list)    # ProofSteps when known
    reconstructed: list = field(default_factory=list)

    def __len__(self):
        return max(0, len(self.words) - 1)

    def dump(self):
        lines = [format_word(self.words[0], exponents=True)]
        for i, w in enumerate(self.words[1:]):
            lab = self.labels[i] if i < len(self.labels) else None
            tail = f" ; by {lab}" if lab else ""
            if i in self.reconstructed:
                tail += " ; reconstructed"
            lines.append(format_word(w, exponents=True) + tail)
        return "\n".join(lines) + "\n"


def load_chain(text):
    words, labels, comments, recon = [], [], [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            if line.startswith("#"):
                comments.append(line[1:].strip())
            continue
        parts = [p.strip() for p in line.split(";")]
        wpart, lab = parts[0], None
        for extra in parts[1:]:
            if extra == "reconstructed":
                recon.append(len(words) - 1)
            elif extra.startswith("by"):
                lab = extra[2:].strip()
            elif extra:
                lab = extra
        words.append(parse_word(wpart))
        if len(words) > 1:
            labels.append(lab or None)
        elif lab:
            raise ParseError("first chain word cannot carry a step label", 0)
    if not words:
        raise ParseError("empty chain", 0)
    ch = Chain(words, labels, reconstructed=recon)
    ch.comments = comments
    return ch


@dataclass
class ChainReport:
    ok: bool
    steps: list
    first_failure: int = None

    def __bool__(self):
        return self.ok


def verify_chain(chain, axioms, resolve=None):
    """Check each step; `resolve(label)` maps labels to identities (default:
    look the label up in the axiom system, then in the numbered table)."""
    if not chain.words:
        raise StepFailed("empty chain")
    if resolve is None:
        resolve = _default_resolver(axioms)
    results = []
    first = None
    for i in range(len(chain)):
        u, v = chain.words[i], chain.words[i + 1]
        lab = chain.labels[i] if i < len(chain.labels) else None
        cands = [resolve(lab)] if lab else list(axioms)
        step = None
        for ax in cands:
            if ax is None:
                continue
            step = directly_deducible(u, v, ax)
            if step:
                break
        results.append(step)
        if step is None and first is None:
            first = i
    return ChainReport(first is None, results, first)


def _default_resolver(axioms):
    def resolve(label):
        if axioms is not None:
            s = axioms.lookup(label)
            if s is not None:
                return s
        from .families import resolve_label
        return resolve_label(label)
    return resolve


# ---- prover ----

@dataclass
class ProverConfig:
    max_len: int = None     # default: longest goal side + slack
    max_nodes: int = 10 ** 6
    slack: int = 4
    keep_simple: bool = False
    countermodels: tuple = ()
    normalize: object = None   # w -> [(word, label), ...] of single sound steps


@dataclass
class ProofResult:
    status: str              # PROVED | REFUTED | INCONCLUSIVE
    chain: Chain = None
    model: object = None
    witness: object = None
    nodes: int = 0

    def __bool__(self):
        return self.status == "PROVED"

    def __str__(self):
        return self.status


def _neighbors(w, axioms, max_len, guard):
    for ax in axioms:
        for n in rewrites(w, ax, max_len):
            if guard is None or guard(n):
                yield n, ax


def a_normal_steps(w):
    """Single steps by x^2 = x^3 and x^2yx = x^2yx^2 (right to left) down to
    the form where each letter has at most one island of length 2, it is its
    first long island, and no island is longer."""
    out = []
    w = as_word(w)
    while True:
        step = _a_step(w)
        if step is None:
            return out
        w = step[0]
        out.append(step)


def _a_step(w):
    from .words import runs
    seen2 = set()
    for a, start, k in runs(w):
        if k >= 3:
            return w[:start] + w[start + 1:], "x^2=x^3"
        if k == 2 and a in seen2:
            return w[:start] + w[start + 1:], "(11)"
        if k == 2:
            seen2.add(a)
    return None


def a_expansions(w, reach=((3,), (2, 2))):
    """Words A-equal to w with some islands grown, each with its chain of
    single steps from w.  `reach` lists the growth patterns: (3,) grows one
    island by up to 3 letters, (2, 2) two islands by up to 2 each."""
    from itertools import combinations, product
    from .words import runs
    w = as_word(w)
    grow = []
    seen2 = set()
    for a, start, k in runs(w):
        if k == 2 and a not in seen2:
            grow.append((start, "x^2=x^3"))
        elif k == 1 and a in seen2:
            grow.append((start, "(11)"))
        if k >= 2:
            seen2.add(a)
    out, seen = [], set()
    for pattern in reach:
        for combo in combinations(grow, len(pattern)):
            for amounts in product(*[range(1, d + 1) for d in pattern]):
                cur, steps = w, []
                # grow from the right so earlier positions stay valid
                for (start, lab), d in sorted(zip(combo, amounts), reverse=True):
                    for j in range(d):
                        # after the first letter the island is long: x^2=x^3
                        cur = cur[:start] + cur[start:start + 1] + cur[start:]
                        steps.append((cur, lab if j == 0 else "x^2=x^3"))
                if cur not in seen:
                    seen.add(cur)
                    out.append((cur, steps))
    return out


a_normal_steps.expansions = a_expansions
A_NORMAL = a_normal_steps


def prove(axioms, goal, config=None):
    cfg = config or ProverConfig()
    goal = as_identity(goal)
    axioms = axioms if isinstance(axioms, AxiomSystem) else AxiomSystem("", axioms)
    u, v = goal.lhs, goal.rhs
    if u == v:
        return ProofResult("PROVED", Chain([u]))
    # countermodels first: cheap and decisive
    for M in list(cfg.countermodels) + list(axioms.monoids):
        from .monoids import satisfies
        r = satisfies(M, goal)
        if not r.holds and all(satisfies(M, s).holds for s in axioms):
            return ProofResult("REFUTED", model=M, witness=r)
    max_len = cfg.max_len or max(len(u), len(v)) + cfg.slack
    raw_len = max_len if cfg.normalize is None else 2 * max_len + 2
    guard = None
    if cfg.keep_simple:
        su = [a for a in u if a in simple_letters(u)]
        if [a for a in v if a in simple_letters(v)] == su:
            def guard(w, su=su):
                sw = simple_letters(w)
                return [a for a in w if a in sw] == su
    named = {}
    for ax in axioms:
        named[ax.name or str(ax)] = ax
    derived = {}
    if cfg.normalize:
        # axioms whose sides are not normal get a normalized twin
        extra = []
        for ax in axioms:
            ls, rs = cfg.normalize(ax.lhs), cfg.normalize(ax.rhs)
            if not ls and not rs:
                continue
            s2 = ls[-1][0] if ls else ax.lhs
            t2 = rs[-1][0] if rs else ax.rhs
            if s2 == t2:
                continue
            twin = Identity(s2, t2, f"{ax.name or ax}~")
            derived[twin.name] = (twin, ax, ls, rs)
            extra.append(twin)
        axioms = AxiomSystem(axioms.name, list(axioms) + extra, axioms.monoids)

    def norm(w):
        steps = cfg.normalize(w) if cfg.normalize else []
        return (steps[-1][0] if steps else w), steps

    # parents[side][node] = (previous node, [(word, label), ...]) or None
    parents = [{u: None}, {v: None}]
    frontiers = [deque([u]), deque([v])]
    for side, w in ((0, u), (1, v)):
        n, steps = norm(w)
        if n != w:
            if n in parents[1 - side]:
                parents[side][n] = (w, steps)
                return ProofResult("PROVED", _join(parents, n, named, derived), nodes=2)
            parents[side][n] = (w, steps)
            frontiers[side] = deque([n])
    nodes = 2
    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        nxt = deque()
        # expand one full level, in (length, lex) order for determinism
        level = sorted(frontiers[side], key=lambda w: w.key())
        grow = getattr(cfg.normalize, "expansions", None)
        for w in level:
            variants = [(w, [])] + (grow(w) if grow else [])
            moves = []
            for w2, pre in variants:
                for raw, ax in _neighbors(w2, axioms, raw_len, guard):
                    moves.append((raw.key(), len(pre), raw, ax, pre))
            moves.sort(key=lambda m: m[:2])
            for _, _, raw, ax, pre in moves:
                n, steps = norm(raw)
                if len(n) > max_len or n in parents[side]:
                    continue
                parents[side][n] = (w, pre + [(raw, ax.name or str(ax))] + steps)
                nodes += 1
                if n in parents[1 - side]:
                    return ProofResult("PROVED", _join(parents, n, named, derived), nodes=nodes)
                nxt.append(n)
                if nodes >= cfg.max_nodes:
                    return ProofResult("INCONCLUSIVE", nodes=nodes)
        frontiers[side] = nxt
    return ProofResult("INCONCLUSIVE", nodes=nodes)


def _join(parents, meet, named, derived=None):
    def path(d, w):
        # segments from the root to w, root first
        segs = []
        while d[w] is not None:
            prev, steps = d[w]
            segs.append((prev, steps))
            w = prev
        return segs[::-1]
    words, labels = [], []
    left = path(parents[0], meet)
    words.append(left[0][0] if left else meet)
    for prev, steps in left:
        for w, lab in steps:
            words.append(w)
            labels.append(lab)
    # right side: walk from meet back to v, reversing each segment
    w = meet
    while parents[1][w] is not None:
        prev, steps = parents[1][w]
        seq = [prev] + [s[0] for s in steps]
        labs = [s[1] for s in steps]
        for i in range(len(steps) - 1, -1, -1):
            words.append(seq[i])
            labels.append(labs[i])
        w = prev
    if derived:
        words, labels = _expand_derived(words, labels, derived)
    chain_steps = []
    for i, lab in enumerate(labels):
        ax = named.get(lab)
        if ax is None:
            from .families import resolve_label
            ax = resolve_label(lab)
        chain_steps.append(directly_deducible(words[i], words[i + 1], ax))
    return Chain(words, labels, chain_steps)


def _expand_derived(words, labels, derived):
    """Replace steps by a normalized twin with: undo the normalization of one
    side, apply the original axiom, redo the normalization of the other."""
    out_w, out_l = [words[0]], []
    for i, lab in enumerate(labels):
        if lab not in derived:
            out_w.append(words[i + 1])
            out_l.append(lab)
            continue
        twin, ax, ls, rs = derived[lab]
        st = directly_deducible(words[i], words[i + 1], twin)
        src_steps, dst_steps = (ls, rs) if st.forward else (rs, ls)
        src0, dst0 = (ax.lhs, ax.rhs) if st.forward else (ax.rhs, ax.lhs)

        def place(w):
            return st.a + apply_substitution(st.phi, w) + st.b
        # words[i] = place(normal(src0)); walk back to place(src0)
        back = [src0] + [w for w, _ in src_steps]
        for j in range(len(src_steps) - 1, -1, -1):
            out_w.append(place(back[j]))
            out_l.append(src_steps[j][1])
        out_w.append(place(dst0))
        out_l.append(ax.name or str(ax))
        for w, l in dst_steps:
            out_w.append(place(w))
            out_l.append(l)
    # substitution images can make some steps trivial; drop repeats
    w2, l2 = [out_w[0]], []
    for w, l in zip(out_w[1:], out_l):
        if w != w2[-1]:
            w2.append(w)
            l2.append(l)
    return w2, l2


def equivalent(axioms, u, v, config=None):
    return prove(axioms, Identity(as_word(u), as_word(v)), config)


MODULO = (parse_identity("x^2 = x^3", "x^2=x^3"),)


def expand_chain(chain, axioms=None, config=None, modulo=MODULO):
    """Fill in steps that only hold modulo their label.

    A labeled step that is not a single rewrite is searched for with the
    labeled identity alone, then together with `modulo`.  The inserted words
    are marked reconstructed; the original words are kept.  Raises
    StepFailed(index) when the search gives up.
    """
    cfg = config or ProverConfig(max_nodes=20000, slack=3)
    resolve = _default_resolver(axioms)
    words, labels, recon = [chain.words[0]], [], []
    for i in range(len(chain)):
        u, v = chain.words[i], chain.words[i + 1]
        lab = chain.labels[i] if i < len(chain.labels) else None
        base = [resolve(lab)] if lab else list(axioms or [])
        if any(directly_deducible(u, v, ax) for ax in base if ax is not None):
            words.append(v)
            labels.append(lab)
            continue
        own = {ax.name or str(ax) for ax in base if ax is not None}
        found = None
        for extra in ((), tuple(modulo)):
            res = prove(AxiomSystem("step", base + list(extra)), Identity(u, v), cfg)
            if res:
                found = res.chain
                break
        if found is None:
            raise StepFailed(f"cannot expand step {i}", index=i)
        for j, w in enumerate(found.words[1:]):
            if j < len(found.words) - 2:
                recon.append(len(words) - 1)
            words.append(w)
            labels.append(lab if found.labels[j] in own else found.labels[j])
    out = Chain(words, labels, reconstructed=recon)
    out.comments = list(getattr(chain, "comments", []))
    return out


# ---- one-letter identities ----

def _one_letter_form(ident):
    """Split u, v into the skeleton t_1..t_r and exponent vectors of x."""
    u, v = ident.lhs, ident.rhs
    su, sv = simple_letters(u), simple_letters(v)
    mu = set(u) - su
    mv = set(v) - sv
    if len(mu | mv) != 1 or mu != mv:
        raise NotOneLetterForm(f"{ident} does not have exactly one multiple letter")
    x = next(iter(mu))
    skel_u = [a for a in u if a != x]
    skel_v = [a for a in v if a != x]
    if skel_u != skel_v or len(set(skel_u)) != len(skel_u):
        raise SkeletonMismatch(f"{ident}: simple-letter skeletons differ")

    def exps(w):
        e = [0]
        for a in w:
            if a == x:
                e[-1] += 1
            else:
                e.append(0)
        return e
    return x, skel_u, exps(u), exps(v)


def _build(x, skel, e):
    out = [x] * e[0]
    for t, k in zip(skel, e[1:]):
        out.append(t)
        out.extend([x] * k)
    return Word(tuple(out))


def one_letter_identity(e, f, x="x"):
    """x^e0 t1 x^e1 ... tr x^er = x^f0 t1 ... tr x^fr."""
    if len(e) != len(f) or not e:
        raise ValueError("exponent vectors must have the same positive length")
    skel = [f"t{i}" for i in range(1, len(e))]
    return Identity(_build(x, skel, list(e)), _build(x, skel, list(f)))


def random_one_letter(rng, max_simple=3, max_exp=3):
    """Random identity accepted by reduce_one_letter (x at least twice per side)."""
    while True:
        r = rng.randint(0, max_simple)
        e = [rng.randint(0, max_exp) for _ in range(r + 1)]
        f = [rng.randint(0, max_exp) for _ in range(r + 1)]
        if sum(e) >= 2 and sum(f) >= 2:
            return one_letter_identity(e, f)


def efficient_form(ident):
    """Drop simple letters sitting next to blocks that are empty on both sides.

    With blocks B_0 t_1 B_1 ... t_r B_r: if B_i (i >= 1) is empty on both sides,
    t_i t_{i+1} collapse to t_i, so t_{i+1} is dropped (t_r when i = r); if B_0
    is empty, t_1 is dropped.  A letter is kept when dropping it would empty
    the identity or trivialize it.
    """
    ident = as_identity(ident)
    u, v = ident.lhs, ident.rhs
    su = [a for a in u if a in simple_letters(u)]
    sv = [a for a in v if a in simple_letters(v)]
    if su != sv:
        raise SkeletonMismatch("simple-letter skeletons differ")
    bu, bv, seps = list(decompose(u).blocks), list(decompose(v).blocks), list(su)
    nontrivial = u != v

    def drop(j):
        # remove separator j (0-based) and merge the block after it into the one before
        nbu = bu[:j + 1] + bu[j + 2:]
        nbv = bv[:j + 1] + bv[j + 2:]
        nbu[j] = bu[j] + bu[j + 1]
        nbv[j] = bv[j] + bv[j + 1]
        return nbu, nbv, seps[:j] + seps[j + 1:]

    changed = True
    while changed:
        changed = False
        for i in range(len(seps) + 1):
            if bu[i] or bv[i]:
                continue
            j = 0 if i == 0 else min(i, len(seps) - 1)
            if not seps:
                break
            nbu, nbv, ns = drop(j)
            lu, lv = _assemble(nbu, ns), _assemble(nbv, ns)
            if (not lu and not lv) or (nontrivial and lu == lv):
                continue
            bu, bv, seps = nbu, nbv, ns
            changed = True
            break
    return Identity(_assemble(bu, seps), _assemble(bv, seps), ident.name)


def _assemble(blocks, seps):
    out = list(blocks[0])
    for t, b in zip(seps, blocks[1:]):
        out.append(t)
        out.extend(b)
    return Word(tuple(out))


# ---- one-letter normalizer ----

def _normal_exps(e):
    """Exponents modulo x^2 = x^3 and x^2yx = x^2yx^2: the first island of
    length >= 2 becomes x^2 and every later island becomes x."""
    out, seen2 = [], False
    for k in e:
        if k == 0:
            out.append(0)
        elif seen2:
            out.append(1)
        else:
            out.append(min(k, 2))
            seen2 = k >= 2
    return out


def _efficient_exps(e, f):
    e, f = list(e), list(f)
    i = 0
    while i < len(e) and len(e) > 1:
        if e[i] == 0 and f[i] == 0:
            del e[i], f[i]
        else:
            i += 1
    return e, f


def _drop_sep(e, k):
    """Delete t_k (k >= 1): blocks k-1 and k merge."""
    return e[:k - 1] + [e[k - 1] + e[k]] + e[k + 1:]


def _delta(name, n=None):
    from .families import beta, gamma, identity_by_key
    if name == "beta":
        return beta(n)
    if name == "gamma":
        return gamma(n)
    return identity_by_key(name)


def _reduce(e, f, depth=0):
    if depth > 64:
        raise RoundTripFailed("case analysis did not terminate", exps=(e, f))
    e, f = _efficient_exps(_normal_exps(e), _normal_exps(f))
    if e == f:
        return set()
    r = len(e) - 1
    if all(e) and all(f):
        if 2 not in f:
            e, f = f, e
        k = f.index(2)
        if 2 not in e:
            return {("beta", r)} if k == r else {("beta", r), ("gamma", k + 1)}
        return {("gamma", min(e.index(2), k) + 1)}
    if e[0] and f[0]:
        k = min(i for i in range(r + 1) if not e[i] or not f[i])
        if e[k]:
            e, f = f, e
        sigma = ("xxyzx=xxyxzx",) if e[r] and f[r] else ("xxy=xxyx",)
        first = _reduce(_drop_sep(e, k), _drop_sep(f, k), depth + 1)
        u1 = f[:k - 1] + [2] + [1] * (r - k + 1)
        return first | {sigma} | _reduce(u1, f, depth + 1)
    if e[0]:
        e, f = f, e
    out = {("yxx=xyxx",)}
    if f[1]:
        first = _reduce(e[1:], [f[0] + f[1]] + f[2:], depth + 1)
        return out | first | _reduce([1, 2] + f[2:], f, depth + 1)
    if r == 1:
        return out | {("xxy=xxyx",)}
    third = _reduce(_drop_sep(e, 2), _drop_sep(f, 2), depth + 1)
    fourth = _reduce(e[1:], [0, e[1] + e[2]] + e[3:], depth + 1)
    return third | fourth


def _delta_key(item):
    order = {"yxx=xyxx": 0, "xxy=xxyx": 1, "xxyzx=xxyxzx": 2, "beta": 3, "gamma": 4}
    return (order[item[0]], item[1] if len(item) > 1 else 0)


@dataclass
class Reduction:
    identity: Identity
    result: list
    checked: bool = False
    proofs: list = field(default_factory=list)


def reduce_one_letter(ident, config=None, check=True):
    """A subset of Delta equivalent to a one-multiple-letter identity within A.

    The identity must have one multiple letter x and the same simple letters
    in the same order on both sides.  With `check`, both directions are
    confirmed by the bounded prover; RoundTripFailed carries the side that
    could not be closed.
    """
    from .families import named_axioms
    ident = as_identity(ident)
    x, skel, e, f = _one_letter_form(ident)
    if sum(e) < 2 or sum(f) < 2:
        raise NotOneLetterForm(f"{ident}: x must occur at least twice on each side")
    items = sorted(_reduce(e, f), key=_delta_key)
    result = [_delta(*it) for it in items]
    red = Reduction(ident, result)
    if not check:
        return red
    cfg = config or ProverConfig(max_nodes=20000, slack=3, normalize=A_NORMAL)
    A = named_axioms("A")
    forward = prove(A | AxiomSystem("S", result), ident, cfg)
    if not forward:
        raise RoundTripFailed(f"{ident} not derived from {[s.name for s in result]}",
                              direction="forward", result=result)
    red.proofs.append(forward)
    back = A | AxiomSystem("id", [ident])
    for s in result:
        p = prove(back, s, cfg)
        if not p:
            raise RoundTripFailed(f"{s.name} not derived from {ident}",
                                  direction="backward", result=result, failed=s)
        red.proofs.append(p)
    red.checked = True
    return red
