"""Small finite lattices: construction from covers or orders, distributivity and
modularity tests, and the concrete lattices of monoid varieties used here.

Two independent tests are kept on purpose.  check_props scans subsets of size
five for N5 and M3 sublattices; distributive_triples/modular_triples check the
laws directly over all triples.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import NotALattice, OrderViolation, ParseError


class FiniteLattice:
    """Labels plus a validated order; meet and join tables are index arrays."""

    def __init__(self, labels, leq):
        self.labels = list(labels)
        self.leq = np.asarray(leq, dtype=bool)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise OrderViolation("duplicate element labels")
        if self.leq.shape != (n, n):
            raise ValueError("order matrix does not match element count")
        _check_order(self.labels, self.leq)
        self.meet = self._bound(self.leq, "meet")
        self.join = self._bound(self.leq.T, "join")

    def _bound(self, leq, what):
        n = len(self.labels)
        out = np.empty((n, n), dtype=np.int32)
        for a in range(n):
            for b in range(a, n):
                lower = np.flatnonzero(leq[:, a] & leq[:, b])
                # the greatest lower bound is the one every other lower bound sits under
                best = [c for c in lower if leq[lower, c].all()]
                if not best:
                    raise NotALattice(f"{self.labels[a]} and {self.labels[b]} have no {what}",
                                      pair=(self.labels[a], self.labels[b]))
                out[a, b] = out[b, a] = best[0]
        return out

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"FiniteLattice({len(self)} elements)"

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def le(self, a, b):
        return bool(self.leq[self.index(a), self.index(b)])

    @property
    def bottom(self):
        return self.labels[int(np.flatnonzero(self.leq.all(axis=1))[0])]

    @property
    def top(self):
        return self.labels[int(np.flatnonzero(self.leq.all(axis=0))[0])]

    def covers(self):
        """Cover pairs (lower, upper) as labels, in element order."""
        n = len(self)
        lt = self.leq & ~np.eye(n, dtype=bool)
        out = []
        for a in range(n):
            for b in np.flatnonzero(lt[a]):
                if not (lt[a] & lt[:, b]).any():
                    out.append((self.labels[a], self.labels[int(b)]))
        return out

    def upper_covers(self, label):
        return [b for a, b in self.covers() if a == label]

    def is_chain(self):
        return bool((self.leq | self.leq.T).all())

    def same_as(self, other):
        return self.labels == other.labels and np.array_equal(self.leq, other.leq)


def _check_order(labels, leq):
    n = len(labels)
    if not leq.diagonal().all():
        raise OrderViolation("order is not reflexive")
    both = leq & leq.T & ~np.eye(n, dtype=bool)
    if both.any():
        a, b = np.argwhere(both)[0]
        raise OrderViolation(f"{labels[a]} and {labels[b]} are below each other",
                             pair=(labels[a], labels[b]))
    comp = (leq.astype(np.int32) @ leq.astype(np.int32)) > 0
    if (comp & ~leq).any():
        a, b = np.argwhere(comp & ~leq)[0]
        raise OrderViolation(f"order is not transitive at {labels[a]} <= {labels[b]}",
                             pair=(labels[a], labels[b]))


def _closure(n, pairs):
    leq = np.eye(n, dtype=bool)
    for a, b in pairs:
        leq[a, b] = True
    # Warshall
    for k in range(n):
        leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
    return leq


def build_lattice(covers=None, order=None, leq=None, elements=None):
    """Build from cover pairs, order pairs (both closed transitively) or a
    predicate leq(a, b) over `elements`.  Pairs are label pairs (lower, upper)."""
    given = [s is not None for s in (covers, order, leq)]
    if sum(given) != 1:
        raise ValueError("give exactly one of covers, order, leq")
    if leq is not None:
        if elements is None:
            raise ValueError("a leq predicate needs the element list")
        labels = list(elements)
        M = np.array([[bool(leq(a, b)) for b in labels] for a in labels], dtype=bool)
        return FiniteLattice(labels, M)
    pairs = list(covers if covers is not None else order)
    labels = list(elements) if elements is not None else []
    for a, b in pairs:
        for x in (a, b):
            if x not in labels:
                labels.append(x)
    pos = {x: i for i, x in enumerate(labels)}
    for a, b in pairs:
        if a == b:
            raise OrderViolation(f"{a} < {a}", pair=(a, b))
    return FiniteLattice(labels, _closure(len(labels), [(pos[a], pos[b]) for a, b in pairs]))


def chain_lattice(n):
    return build_lattice(covers=[(str(i), str(i + 1)) for i in range(n - 1)],
                         elements=[str(i) for i in range(n)])


def boolean_lattice(k):
    els = list(range(1 << k))
    return build_lattice(leq=lambda a, b: a & b == a, elements=els)


def n5_lattice():
    return build_lattice(covers=[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")])


def m3_lattice():
    return build_lattice(covers=[("0", "a"), ("0", "b"), ("0", "c"),
                                 ("a", "1"), ("b", "1"), ("c", "1")])


def random_lattice(rng, max_size=10, ground=4, tries=1000):
    """Closure system on a small ground set: a random family of subsets closed
    under intersection, plus the full set.  Always a lattice; often not
    distributive."""
    full = (1 << ground) - 1
    for _ in range(tries):
        fam = {full}
        for _ in range(rng.randint(1, max_size)):
            fam.add(rng.randrange(full + 1))
        changed = True
        while changed:
            changed = False
            for a, b in combinations(list(fam), 2):
                if a & b not in fam:
                    fam.add(a & b)
                    changed = True
        if len(fam) <= max_size:
            els = sorted(fam)
            return build_lattice(leq=lambda a, b: a & b == a, elements=els)
    raise ValueError("could not draw a lattice within the size bound")


# ---- properties ----

@dataclass
class LatticeProps:
    distributive: bool
    modular: bool
    witness: tuple = None          # labels: N5 as (0, a, c, b, 1), M3 as (0, a, b, c, 1)
    shape: str = None              # "N5" or "M3"
    n5: list = field(default_factory=list, repr=False)
    m3: list = field(default_factory=list, repr=False)

    def __str__(self):
        s = f"distributive={self.distributive} modular={self.modular}"
        if self.witness:
            s += f" witness {self.shape}: " + ", ".join(map(str, self.witness))
        return s


def _shape(L, S):
    """Classify a 5-element subset that is a sublattice: 'N5', 'M3' or None."""
    for a, b in combinations(S, 2):
        if L.meet[a, b] not in S or L.join[a, b] not in S:
            return None, None
    sub = L.leq[np.ix_(S, S)]
    lo = [S[i] for i in range(5) if sub[i].all()]
    hi = [S[i] for i in range(5) if sub[:, i].all()]
    mid = [x for x in S if x not in (lo[0], hi[0])]
    comparable = [(a, b) for a, b in combinations(mid, 2) if L.leq[a, b] or L.leq[b, a]]
    if not comparable:
        return "M3", (lo[0], *mid, hi[0])
    if len(comparable) == 1:
        a, c = comparable[0]
        if L.leq[c, a]:
            a, c = c, a
        b = next(x for x in mid if x not in (a, c))
        return "N5", (lo[0], a, c, b, hi[0])
    return None, None


def check_props(L):
    """Scan every 5-subset; all N5 and M3 sublattices are recorded."""
    n5, m3 = [], []
    for S in combinations(range(len(L)), 5):
        kind, w = _shape(L, list(S))
        if kind == "N5":
            n5.append(tuple(L.labels[i] for i in w))
        elif kind == "M3":
            m3.append(tuple(L.labels[i] for i in w))
    if n5:
        return LatticeProps(False, False, n5[0], "N5", n5, m3)
    if m3:
        return LatticeProps(False, True, m3[0], "M3", n5, m3)
    return LatticeProps(True, True, None, None, n5, m3)


def distributive_triples(L):
    """First triple violating x^(y v z) = (x^y) v (x^z), or None."""
    J, M = L.join, L.meet
    n = len(L)
    for x in range(n):
        lhs = M[x][J]                       # lhs[y, z] = x ^ (y v z)
        rhs = J[M[x][:, None], M[x][None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            y, z = bad[0]
            return tuple(L.labels[i] for i in (x, y, z))
    return None


def modular_triples(L):
    """First triple (x, y, z) with x <= z and x v (y ^ z) != (x v y) ^ z, or None."""
    J, M = L.join, L.meet
    n = len(L)
    for x in range(n):
        for z in np.flatnonzero(L.leq[x]):
            lhs = J[x][M[:, z]]
            rhs = M[J[x], z]
            bad = np.flatnonzero(lhs != rhs)
            if len(bad):
                return tuple(L.labels[i] for i in (x, int(bad[0]), int(z)))
    return None


def count_pentagons(L):
    """Independent N5 count from the defining configuration: a < c, b incomparable
    to both, a v b = c v b and a ^ b = c ^ b."""
    n = len(L)
    lt = L.leq & ~np.eye(n, dtype=bool)
    found = set()
    for a, c in zip(*np.nonzero(lt)):
        for b in range(n):
            if L.leq[a, b] or L.leq[b, a] or L.leq[c, b] or L.leq[b, c]:
                continue
            if L.join[a, b] == L.join[c, b] and L.meet[a, b] == L.meet[c, b]:
                found.add(frozenset((int(L.meet[a, b]), int(a), int(c), b, int(L.join[a, b]))))
    return len(found)


# ---- file format ----

def dump_lattice(L):
    lines = [str(x) for x in L.labels]
    lines += [f"{a} < {b}" for a, b in L.covers()]
    return "\n".join(lines) + "\n"


def load_lattice(text):
    """Element labels one per line, then cover pairs `a < b`; '#' starts a comment."""
    labels, covers = [], []
    for no, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if " < " in line:
            a, b = (p.strip() for p in line.split(" < ", 1))
            if not a or not b:
                raise ParseError("empty label in cover pair", no)
            covers.append((a, b))
        elif covers:
            raise ParseError("element label after cover pairs", no)
        else:
            labels.append(line)
    for a, b in covers:
        for x in (a, b):
            if x not in labels:
                raise ParseError(f"unknown element {x!r}", None)
    return build_lattice(covers=covers, elements=labels)


# ---- the concrete lattices ----

T, SL, MX, MXY = "T", "SL", "M(x)", "M(xy)"
G_YXX = "M_γ(yxx⁺)"
G_XXY = "M_γ(xx⁺y)"
L_XYX = "M_λ(xyx⁺)"
J1 = "M_γ(yxx⁺)∨M_γ(xx⁺y)"
J2 = "M_λ(xyx⁺)∨M_γ(xx⁺y)"
L_XYZXTY = "M_λ(xyzx⁺ty⁺)"
L_YXXTY = "M_λ(yxx⁺ty⁺)"
L_XZYXTY = "M_λ(xzyx⁺ty⁺)"
H = "H"

FIG1_COVERS = [
    (T, SL), (SL, MX), (MX, MXY),
    (MXY, G_YXX), (MXY, G_XXY), (G_YXX, L_XYX), (G_YXX, J1), (G_XXY, J1),
    (L_XYX, J2), (J1, J2),
    (J2, L_XYZXTY), (L_XYZXTY, L_YXXTY), (L_YXXTY, L_XZYXTY),
]
FIG1_ELEMENTS = [T, SL, MX, MXY, G_YXX, G_XXY, L_XYX, J1, J2, L_XYZXTY, L_YXXTY, L_XZYXTY]

D1_CHAIN = [T, SL, MX, MXY, G_YXX, L_XYX, H]

# identity satisfied by the lower and refuted by the upper end of each cover
SEPARATORS = {
    (T, SL): "x = 1",
    (SL, MX): "x = x^2",
    (MX, MXY): "x y = y x",
    (MXY, G_YXX): "y x^2 = x y x^2",
    (MXY, G_XXY): "x^2 y = x^2 y x",
    (G_YXX, L_XYX): "x y x^2 = x^2 y x^2",
    (G_YXX, J1): "x^2 y = x^2 y x",
    (G_XXY, J1): "y x^2 = x y x^2",
    (L_XYX, J2): "x^2 y = x^2 y x",
    (J1, J2): "x y x^2 = x^2 y x^2",
    (J2, L_XYZXTY): "x y z x^2 t y^2 = y x z x^2 t y^2",
    (L_XYZXTY, L_YXXTY): "y x^2 t y = x y x^2 t y",
    (L_YXXTY, L_XZYXTY): "x z y x t y = x z x y x t y",
    (L_XYX, H): "x y z x^2 y^2 = y x z x^2 y^2",
}


def fig1_model():
    return build_lattice(covers=FIG1_COVERS, elements=FIG1_ELEMENTS)


def d1_chain_model():
    return build_lattice(covers=list(zip(D1_CHAIN, D1_CHAIN[1:])), elements=D1_CHAIN)


_MONOIDS = {}


def node_monoid(label):
    """A finite monoid generating the variety named by `label`.

    Joins are direct products.  H is generated by its free object on three
    generators: that monoid lies in H (certified) and outside M_λ(xyx⁺), and
    the varieties between them form a chain, so nothing smaller fits.
    """
    if label in _MONOIDS:
        return _MONOIDS[label]
    from .congruences import build_rees_alpha, free_h
    from .monoids import build_rees, product_monoid, trivial_monoid
    makers = {
        T: trivial_monoid,
        SL: lambda: build_rees([""], provenance="SL"),
        MX: lambda: build_rees(["x"]),
        MXY: lambda: build_rees(["xy"]),
        G_YXX: lambda: build_rees_alpha("gamma", ["y x^2"]),
        G_XXY: lambda: build_rees_alpha("gamma", ["x^2 y"]),
        L_XYX: lambda: build_rees_alpha("lambda", ["x y x^2"]),
        J1: lambda: product_monoid(node_monoid(G_YXX), node_monoid(G_XXY)),
        J2: lambda: product_monoid(node_monoid(L_XYX), node_monoid(G_XXY)),
        L_XYZXTY: lambda: build_rees_alpha("lambda", ["x y z x^2 t y^2"]),
        L_YXXTY: lambda: build_rees_alpha("lambda", ["y x^2 t y^2"]),
        L_XZYXTY: lambda: build_rees_alpha("lambda", ["x z y x^2 t y^2"]),
        H: lambda: free_h(3).monoid,
    }
    if label not in makers:
        raise KeyError(label)
    M = makers[label]()
    _MONOIDS[label] = M
    return M


@dataclass
class EdgeCheck:
    lower: str
    upper: str
    leq: object
    separator: object
    lower_holds: bool
    upper_holds: bool

    @property
    def ok(self):
        return bool(self.leq) and self.lower_holds and not self.upper_holds

    def __str__(self):
        mark = "ok" if self.ok else "FAIL"
        return (f"{self.lower} < {self.upper}: {self.leq}; {self.separator} "
                f"lower={self.lower_holds} upper={self.upper_holds} [{mark}]")


def corroborate(L, k=3, length=7):
    """Bounded inclusion test and separating identity for every cover of L."""
    from .monoids import satisfies, variety_leq
    from .words import parse_identity
    out = []
    for a, b in L.covers():
        Ma, Mb = node_monoid(a), node_monoid(b)
        sep = parse_identity(SEPARATORS[(a, b)])
        out.append(EdgeCheck(a, b, variety_leq(Ma, Mb, k=k, length=length), sep,
                             satisfies(Ma, sep).holds, satisfies(Mb, sep).holds))
    return out


def models():
    return {"fig1": fig1_model, "d1": d1_chain_model}


def lattice_model(name):
    try:
        return models()[name]()
    except KeyError:
        raise KeyError(f"unknown lattice model {name!r}") from None


__all__ = ["FiniteLattice", "build_lattice", "check_props", "distributive_triples",
           "modular_triples", "count_pentagons", "fig1_model", "d1_chain_model",
           "node_monoid", "corroborate", "dump_lattice", "load_lattice", "random_lattice"]
