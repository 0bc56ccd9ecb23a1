"""Parametric word families, permutation classes, identity schemas and the
named axiom systems, plus the table of numbered identities."""

from itertools import permutations, product

from .errors import InvalidParams, UnknownName, UnknownNumber
from .words import (Identity, Word, as_identity, as_word, chi, delete,
                    occurrence_position, parse_identity, parse_word, reverse)


# ---- permutations ----

class PermSpec(tuple):
    """1-based permutation i -> images[i-1]."""

    def __new__(cls, images):
        images = tuple(int(a) for a in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InvalidParams(f"{images} is not a permutation")
        return super().__new__(cls, images)

    @property
    def n(self):
        return len(self)

    def __call__(self, i):
        return self[i - 1]

    def __str__(self):
        return "(" + ",".join(map(str, self)) + ")"


def identity_perm(n):
    return PermSpec(range(1, max(n, 1) + 1))


def _sym(n):
    # S_0 is taken to be S_1
    n = max(n, 1)
    return [PermSpec(p) for p in permutations(range(1, n + 1))]


def is_nm_perm(rho, n, m):
    if len(rho) != max(n + m, 1):
        return False
    if n + m <= 1:
        return True
    for i in range(1, n + m):
        a, b = rho(i), rho(i + 1)
        if not ((a <= n < b) or (b <= n < a)):
            return False
    return True


def is_sharp(pi, k):
    return len(pi) == 2 * k and all(k + 1 <= pi(i) for i in range(1, k + 1)) \
        and all(pi(i) <= k for i in range(k + 1, 2 * k + 1))


def enum_perms(cls, *params):
    """cls in {"S", "S_nm", "S_sharp"}; lexicographic, no duplicates."""
    if cls in ("S", "S_n"):
        (n,) = params
        if n < 0:
            raise InvalidParams("negative size")
        return _sym(n)
    if cls in ("S_nm", "S_{n,m}"):
        n, m = params
        if n < 0 or m < 0:
            raise InvalidParams("negative parameter")
        return [p for p in _sym(n + m) if is_nm_perm(p, n, m)]
    if cls in ("S_sharp", "sharp"):
        (k,) = params
        if k < 1:
            raise InvalidParams("k must be positive")
        return [p for p in _sym(2 * k) if is_sharp(p, k)]
    raise InvalidParams(f"unknown permutation class {cls!r}")


# ---- letters ----

def z(i):
    return f"z{i}"


def t(i):
    return f"t{i}"


def y(i):
    return f"y{i}"


def zp(i):
    return f"z{i}p"


def tp(i):
    return f"t{i}p"


def _perm(rho, size):
    if rho is None:
        return identity_perm(size)
    rho = PermSpec(rho)
    if len(rho) != max(size, 1):
        raise InvalidParams(f"permutation of size {len(rho)} where {max(size, 1)} is needed")
    return rho


def _w(*parts):
    out = []
    for p in parts:
        if isinstance(p, str):
            out.append(p)
        else:
            out.extend(p)
    return Word(tuple(out))


# ---- the a-words ----

def word_a(n, m, rho=None):
    rho = _perm(rho, n + m)
    if n + m == 0:
        raise InvalidParams("a_{0,0} needs at least one z-letter")
    mid = []
    for i in range(1, n + m):
        mid += [z(rho(i)), y(i), y(i)]
    return _w([a for i in range(1, n + 1) for a in (z(i), t(i))], "x", mid,
              z(rho(n + m)), "x", [a for i in range(n + 1, n + m + 1) for a in (t(i), z(i))])


def word_a_prime(n, m, rho=None):
    rho = _perm(rho, n + m)
    if n + m == 0:
        raise InvalidParams("a_{0,0} needs at least one z-letter")
    mid = []
    for i in range(1, n + m):
        mid += [z(rho(i)), y(i), y(i)]
    return _w([a for i in range(1, n + 1) for a in (z(i), t(i))], mid,
              z(rho(n + m)), "x", "x", [a for i in range(n + 1, n + m + 1) for a in (t(i), z(i))])


def word_a_bar(n, m, rho=None):
    rho = _perm(rho, n + m)
    if n + m == 0:
        raise InvalidParams("a_{0,0} needs at least one z-letter")
    mid = []
    for i in range(1, n + m):
        mid += [z(rho(i)), y(i), y(i), "x"]
    return _w([a for i in range(1, n + 1) for a in (z(i), t(i))], "x", mid,
              z(rho(n + m)), "x", [a for i in range(n + 1, n + m + 1) for a in (t(i), z(i))])


def _ys(k):
    return [y(i) for i in range(1, k + 1)]


def word_a_hat(n, m, rho=None):
    return delete(word_a(n, m, rho), _ys(n + m - 1))


def word_a_hat_prime(n, m, rho=None):
    return delete(word_a_prime(n, m, rho), _ys(n + m - 1))


def word_a_hat_bar(n, m, rho=None):
    return delete(word_a_bar(n, m, rho), _ys(n + m - 1))


def word_a_hat_pq(n, m, p, q, rho=None):
    rho = _perm(rho, n + m)
    if not 0 <= p <= q <= n + m:
        raise InvalidParams("need 0 <= p <= q <= n+m")
    return _w([a for i in range(1, n + 1) for a in (z(i), t(i))],
              [z(rho(i)) for i in range(1, p + 1)], "x",
              [z(rho(i)) for i in range(p + 1, q + 1)], "x",
              [z(rho(i)) for i in range(q + 1, n + m + 1)],
              [a for i in range(n + 1, n + m + 1) for a in (t(i), z(i))])


def word_a_hat_j(n, m, j, rho=None):
    """a-hat with the block formed by z_j replaced by x^2 z_j."""
    w = word_a_hat(n, m, rho)
    if not 1 <= j <= n + m:
        raise InvalidParams("need 1 <= j <= n+m")
    # z_j forms a one-letter block at its first occurrence when j <= n,
    # and at its second occurrence otherwise
    pos = occurrence_position(w, z(j), 1 if j <= n else 2)
    return w[:pos] + Word(("x", "x")) + w[pos:]


def _z_block(kind, i, n):
    low = i <= n
    if kind == 1:
        return [z(i)] if low else [z(i), y(i), y(i), zp(i)]
    if kind == 2:
        return [z(i), y(i), y(i), zp(i)] if low else [z(i)]
    if kind == 3:
        return [z(i), y(i), y(i)] if low else [z(i)]
    if kind == 4:
        return [z(i)] if low else [z(i), y(i), y(i)]
    raise InvalidParams(f"no z-block of kind {kind}")


def word_a_i(kind, n, m, rho=None):
    rho = _perm(rho, n + m)
    if n + m == 0:
        raise InvalidParams("need n+m >= 1")
    head = [a for i in range(1, n + 1) for a in ((z(i), t(i)) if kind != 2 else (z(i), t(i), zp(i), tp(i)))]
    if kind == 1:
        tail = [a for i in range(n + 1, n + m + 1) for a in (t(i), z(i), tp(i), zp(i))]
    else:
        tail = [a for i in range(n + 1, n + m + 1) for a in (t(i), z(i))]
    if kind in (1, 2):
        mid = [a for i in range(1, n + m + 1) for a in _z_block(kind, rho(i), n)]
    else:
        mid = [a for i in range(1, n + m) for a in _z_block(kind, rho(i), n)]
        last = rho(n + m)
        mid += [a for a in _z_block(kind, last, n) if a != y(last)]
    return _w(head, "x", mid, "x", tail)


def bar_chi(w, x="x"):
    """Replace the factor between the first two occurrences of x by its chi-image."""
    p1 = occurrence_position(w, x, 1)
    p2 = occurrence_position(w, x, 2)
    return w[:p1 + 1] + chi(w[p1 + 1:p2], x) + w[p2:]


def word_a_i_bar(kind, n, m, rho=None):
    return bar_chi(word_a_i(kind, n, m, rho))


# ---- the c-words ----

def word_c(n, m, k, tau=None):
    tau = _perm(tau, n + m + k)
    if n + m + k == 0:
        raise InvalidParams("c_{0,0,0} needs at least one z-letter")
    N = n + m + k
    mid = []
    for i in range(1, N):
        mid += [z(tau(i)), y(i), y(i)]
    return _w([a for i in range(1, n + 1) for a in (z(i), t(i))], "x", "y", "t",
              [a for i in range(n + 1, n + m + 1) for a in (z(i), t(i))], "x", mid,
              z(tau(N)), "y", [a for i in range(n + m + 1, N + 1) for a in (t(i), z(i))])


def swap_first(w, a="x", b="y"):
    pa, pb = occurrence_position(w, a, 1), occurrence_position(w, b, 1)
    out = list(w)
    out[pa], out[pb] = out[pb], out[pa]
    return Word(tuple(out))


def word_c_prime(n, m, k, tau=None):
    return swap_first(word_c(n, m, k, tau))


def word_d(n, m, k, tau=None):
    return reverse(word_c(n, m, k, tau))


def word_d_prime(n, m, k, tau=None):
    return reverse(word_c_prime(n, m, k, tau))


def word_c_hat(n, m, k, tau=None, prime=False):
    w = word_c_prime(n, m, k, tau) if prime else word_c(n, m, k, tau)
    return delete(w, _ys(n + m + k - 1))


def word_d_hat(n, m, k, tau=None, prime=False):
    w = word_d_prime(n, m, k, tau) if prime else word_d(n, m, k, tau)
    return delete(w, _ys(n + m + k - 1))


def word_h(n, m, k, rho=None, prime=False):
    rho = _perm(rho, n + m + k)
    w = word_c_prime(n, m, k, rho) if prime else word_c(n, m, k, rho)
    return delete(w, [y(i) for i in range(1, n + m + k) if rho(i) > n + m])


def word_c_i(kind, n, pi=None, tau=None):
    sizes = {1: 4 * n + 1, 2: n + 1, 3: 2 * n + 1, 4: 2 * n + 1}
    if kind not in sizes:
        raise InvalidParams(f"no c-word of kind {kind}")
    pi = _perm(pi, sizes[kind])
    tau = _perm(tau, 2 * n)
    head = [a for i in range(1, n + 1) for a in (zp(i), tp(i))]
    head += ["x", "y", "t"] + [a for i in range(n + 1, 2 * n + 1) for a in (zp(i), tp(i))] + ["x"]
    mid = []
    if kind == 1:
        for i in range(1, 2 * n + 1):
            mid += [z(pi(2 * i - 1)), y(i), y(i), z(pi(2 * i)), zp(tau(i))]
    elif kind == 2:
        for i in range(1, n + 1):
            mid += [z(pi(i)), zp(tau(2 * i - 1)), y(i), y(i), zp(tau(2 * i))]
    elif kind == 3:
        for i in range(1, 2 * n + 1):
            mid += [z(pi(i)), zp(tau(i)), y(i), y(i)]
    else:
        for i in range(1, 2 * n + 1):
            mid += [z(pi(i)), y(i), y(i), zp(tau(i))]
    N = sizes[kind]
    return _w(head, mid, z(pi(N)), "y", [a for i in range(1, N + 1) for a in (t(i), z(i))])


def word_c_i_bar(kind, n, pi=None, tau=None):
    return swap_first(word_c_i(kind, n, pi, tau))


FAMILIES = {
    "a": word_a, "a'": word_a_prime, "abar": word_a_bar,
    "ahat": word_a_hat, "ahat'": word_a_hat_prime, "ahatbar": word_a_hat_bar,
    "ahat_pq": word_a_hat_pq, "ahat_j": word_a_hat_j,
    "a_i": word_a_i, "abar_i": word_a_i_bar,
    "c": word_c, "c'": word_c_prime, "d": word_d, "d'": word_d_prime,
    "chat": word_c_hat, "dhat": word_d_hat, "h": word_h,
    "h'": lambda n, m, k, rho=None: word_h(n, m, k, rho, prime=True),
    "c_i": word_c_i, "cbar_i": word_c_i_bar,
}


def gen_word(family, *params, **kw):
    """gen_word("a", 1, 0) -> z1 t1 x z1 x; permutations as tuples or None."""
    if family not in FAMILIES:
        raise InvalidParams(f"unknown family {family!r}")
    return FAMILIES[family](*params, **kw)


# ---- numbered identities ----

_NUMBERED = [
    "x y x^2 = x^2 y x^2",
    "y x^2 t x^2 y x^2 = x^2 y x^2 t x^2 y x^2",
    "x^2 y t y = x^2 y x t y",
    "y x^2 = x y x^2",
    "x^2 y = x^2 y x",
    "y x^2 t y = x y x^2 t y",
    "x^2 y t x y = y x^2 t x y",
    "x^2 y x = x^2 y x^2",
    "x^2 y z x = x^2 y x z x",
    "x^2 y z y t x = y x^2 z y t x",
    "x^2 y z x t y = y x^2 z x t y",
    "y t y x^2 = y t x y x^2",
    "y z x^2 y t x = y z y x^2 t x",
    "x^2 y t x y = x^2 y t y x",
    "x^2 z y t x y = x^2 z y t y x",
    "x y z x^2 t x y x = y x z x^2 t x y x",
    "x y z y t x^2 = y x z y t x^2",
    "y z x y t x^2 = y z y x t x^2",
    "x y z x^2 y^2 = y x z x^2 y^2",
    "x^2 y t y^2 = y x^2 t y^2",
    "x y z x^2 t y^2 = y x z x^2 t y^2",
    "x y z x^2 y = y x z x^2 y",
    "x y z x^2 t y = y x z x^2 t y",
    "x y z x^2 t y s x = y x z x^2 t y s x",
    "x y x = x y x^2",
    "x y z x y = y x z x y",
    "x z y x t y = x z x y x t y",
    "x^2 y^2 = y^2 x^2",
    "x^2 y x t y = x y x t y",
    "x^2 y t y = x y x t y",
    "x y z x y = x y z y x",
    "x y x^2 = x^2 y x",
    "y t y x^2 = y t x y x",
    "x y x = x^2 y x",
    "y x^2 t y = x y x t y",
    "x y x t x^2 y = x y x t y",
    "x^2 y t y = y x^2 t y",
    "y t x^2 y = y t y x^2",
    "y t x^2 y = y t x^2 y x",
    "x z y t x^2 y = x z y t y x^2",
    "x z x t y s x y = x z x t y s y x",
    "x y z x^2 y = x y z y x^2",
    "x z x y t x y = x z x y t y x",
    "y t x^2 y = y t x y x",
    "y z x^2 y t x = y z x y x t x",
    "x z y t x^2 y = x z y t x y x",
    "x z y t x^2 y s x = x z y t x y x s x",
    "x^2 y z y t x = x y x z y t x",
    "x^2 y z x t y s x = x y x z x t y s x",
    "x^2 y z x t y = x y x z x t y",
    "y z x t x y s x = y z x t y x s x",
    "x z y t x y s x = x z y t y x s x",
    "x z x y t y s x = x z y x t y s x",
    "x z x y t x s y = x z y x t x s y",
]
FIRST_NUMBER = 4
LAST_NUMBER = FIRST_NUMBER + len(_NUMBERED) - 1


def _label_key(ident):
    return "=".join("".join(w) for w in (ident.lhs, ident.rhs))


def identity_by_number(n):
    if not isinstance(n, int) or not FIRST_NUMBER <= n <= LAST_NUMBER:
        raise UnknownNumber(f"no identity numbered {n!r} (table runs {FIRST_NUMBER}..{LAST_NUMBER})")
    return parse_identity(_NUMBERED[n - FIRST_NUMBER], name=f"({n})")


def numbered_identities():
    return {n: identity_by_number(n) for n in range(FIRST_NUMBER, LAST_NUMBER + 1)}


def identity_by_key(key):
    """Look up by spelled-out key, e.g. "xxy=xxyx"."""
    for n, s in numbered_identities().items():
        if _label_key(s) == key:
            return s
    raise UnknownNumber(f"no numbered identity with key {key!r}")


def number_of(ident):
    ident = as_identity(ident)
    for n, s in numbered_identities().items():
        if (s.lhs, s.rhs) == (ident.lhs, ident.rhs):
            return n
    return None


# ---- schemas ----

SIGMA = {
    1: "x y z x t y = y x z x t y",
    2: "x z y t x y = x z y t y x",
    3: "x z x y t y = x z y x t y",
}


def sigma(i):
    return parse_identity(SIGMA[i], name=f"sigma{i}")


def beta(n):
    if n < 1:
        raise InvalidParams("beta_n needs n >= 1")
    left = ["x"]
    for i in range(1, n + 1):
        left += [t(i), "x"]
    return Identity(Word(tuple(left)), Word(tuple(left + ["x"])), f"beta{n}")


def gamma(n):
    if n < 1:
        raise InvalidParams("gamma_n needs n >= 1")
    pre = ["x"]
    for i in range(1, n):
        pre += [t(i), "x"]
    lhs = pre + ["x", t(n), "x"]
    rhs = pre + [t(n), "x", "x"]
    return Identity(Word(tuple(lhs)), Word(tuple(rhs)), f"gamma{n}")


PHI = ["x^2 = x^3 # x^2=x^3", "x^2 y^2 = y^2 x^2 # x^2y^2=y^2x^2"]


def phi():
    return [parse_identity(s) for s in PHI]


def phi1(bound=2):
    out = []
    for k, l, m in product(range(1, bound + 1), repeat=3):
        for rho in _sym(k + l + m):
            tag = f"{k},{l},{m}[{rho}]"
            out.append(Identity(word_c(k, l, m, rho), word_c_prime(k, l, m, rho), f"c{tag}"))
            out.append(Identity(word_d(k, l, m, rho), word_d_prime(k, l, m, rho), f"d{tag}"))
    return out


def phi2(bound=2):
    return [Identity(word_a(k, l, rho), word_a_bar(k, l, rho), f"a{k},{l}[{rho}]")
            for k, l in product(range(1, bound + 1), repeat=2) for rho in _sym(k + l)]


def phi3(bound=2):
    return [Identity(word_a(k, l, rho), word_a_prime(k, l, rho), f"a'{k},{l}[{rho}]")
            for k, l in product(range(1, bound + 1), repeat=2) for rho in _sym(k + l)]


def delta(bound=2):
    out = [identity_by_number(7), identity_by_number(8), identity_by_number(12)]
    for n in range(1, bound + 1):
        out += [beta(n), gamma(n)]
    return out


def identity_schema(name, bound=2, n=None):
    """Instantiate a schema.  `bound` caps the indices of infinite families."""
    key = name.lower().replace("_", "").replace("φ", "phi").replace("σ", "sigma")
    if key == "phi":
        return phi()
    if key == "phi1":
        return phi1(bound)
    if key == "phi2":
        return phi2(bound)
    if key == "phi3":
        return phi3(bound)
    if key == "delta":
        return delta(bound)
    if key in ("sigma1", "sigma2", "sigma3"):
        return [sigma(int(key[-1]))]
    if key in ("betan", "beta"):
        return [beta(n if n is not None else bound)]
    if key in ("gamman", "gamma"):
        return [gamma(n if n is not None else bound)]
    raise InvalidParams(f"unknown schema {name!r}")


# ---- named systems ----

def _ids(*items):
    out = []
    for it in items:
        if isinstance(it, Identity):
            out.append(it)
        elif isinstance(it, int):
            out.append(identity_by_number(it))
        elif isinstance(it, str):
            out.append(parse_identity(it, name=it.replace(" ", "")))
        else:
            out.extend(it)
    return out


def _chain_ids(*words):
    """u1 = u2 = u3 ... as consecutive identities."""
    ws = [parse_word(w) for w in words]
    return [Identity(a, b, f"{''.join(a)}={''.join(b)}") for a, b in zip(ws, ws[1:])]


def _d_system(i, bound):
    P = phi()
    s1, s2, s3 = sigma(1), sigma(2), sigma(3)
    P1, P2 = phi1(bound), phi2(bound)
    table = {
        1: lambda: _ids(P, 28, 8),
        2: lambda: _ids(P, P1, P2, 28),
        3: lambda: _ids(P, s2, s3, _chain_ids("x^2 y", "x^2 y x", "x y x^2"), "x y x z x = x y x z x^2"),
        4: lambda: _ids(P, s2, s3, 8, 40, 24, "x y x z x = x y x^2 z x"),
        5: lambda: _ids(P, s2, s3, 35, 25, "x y x z x = x y x z x^2"),
        6: lambda: _ids(P, s2, s3, 11, 40, 26, 20),
        7: lambda: _ids(P, s2, s3, 11, 40, 24, 25, "x y x z x = x y x^2 z x"),
        8: lambda: _ids(P, s2, s3, 11, 40, 24, 25, 27, "x y x z x = x y x z x^2"),
        9: lambda: _ids(P, s1, s3, 11, 41),
        10: lambda: _ids(P, s1, s3, 11, "x y x z x = x y x z x^2", 18),
        11: lambda: _ids(P, P1, P2, 35, "x y x z x = x y x z x^2"),
        12: lambda: _ids(P, P1, P2, 11, 41, 40, 26, 20, 21),
        13: lambda: _ids(P, P1, P2, 11, 9, 15, "x y x z x = x y x^2 z x", 23, 13, 14, 18, 16, 24),
        14: lambda: _ids(P, P1, P2, 11, 9, 15, "x y x z x = x y x z x^2", 23, 13, 14, 18, 16, 24, 27),
    }
    return table[i]()


def named_axioms(name, n=None, bound=2):
    """Transcribed axiom lists; schema families are instantiated up to `bound`."""
    from .equational import AxiomSystem
    key = name.upper()
    if key.startswith("D") and key[1:].isdigit() and 1 <= int(key[1:]) <= 14:
        i = int(key[1:])
        sch = [("Phi1", bound), ("Phi2", bound)] if i in (2, 11, 12, 13, 14) else []
        return AxiomSystem(f"D{i}", _d_system(i, bound), schemas=sch)
    if key[0] in "PQR" and (n is not None or key[1:].isdigit()):
        k = n if n is not None else int(key[1:])
        if k < 1:
            raise InvalidParams("n must be positive")
        xn = "x^%d" % k
        per = f"{xn} = x^{k + 1}"
        if key[0] == "P":
            return AxiomSystem(f"P{k}", _ids(phi1(bound), phi3(bound), per, "x^2 y = y x^2"),
                               schemas=[("Phi1", bound), ("Phi3", bound)])
        if key[0] == "Q":
            return AxiomSystem(f"Q{k}", _ids(per, f"{xn} y = y {xn}", "x^2 y = x y x"))
        return AxiomSystem(f"R{k}", _ids(sigma(1), sigma(2), per, "x^2 y = y x^2"))
    if key == "A":
        return AxiomSystem("A", _ids("x^2 = x^3", 11))
    if key == "H":
        return AxiomSystem("H", _ids(phi(), 28, 8, "x y x t y = y x^2 t y"))
    if key == "N":
        return AxiomSystem("N", _ids("x^2 = x^3", "x^2 y = y x^2", "x y x z x = x^2 y z",
                                     sigma(2), sigma(3)))
    if key == "O":
        return AxiomSystem("O", _ids(phi(), phi1(bound), phi2(bound)),
                           schemas=[("Phi1", bound), ("Phi2", bound)])
    if key in ("PHI", "Φ"):
        return AxiomSystem("Phi", phi())
    if key in ("PHI1", "PHI2", "PHI3"):
        gen = {"PHI1": phi1, "PHI2": phi2, "PHI3": phi3}[key]
        return AxiomSystem(name, gen(bound), schemas=[(name, bound)])
    if key in ("DELTA", "Δ"):
        return AxiomSystem("Delta", delta(bound))
    raise UnknownName(f"unknown axiom system {name!r}")


# ---- labels used in chain files ----

def resolve_label(label):
    """Map a step label to an identity: "(8)", "8", "xxy=xxyx", "sigma3",
    "beta2", "gamma1" or a literal identity such as "x^2 = x^3"."""
    if label is None:
        return None
    lab = label.strip()
    inner = lab[1:-1] if lab.startswith("(") and lab.endswith(")") else lab
    if inner.isdigit():
        return identity_by_number(int(inner))
    low = inner.lower()
    for stem, fn in (("sigma", sigma), ("beta", beta), ("gamma", gamma)):
        if low.startswith(stem) and low[len(stem):].isdigit():
            return fn(int(low[len(stem):]))
    if "=" in inner and " " not in inner and "^" not in inner:
        try:
            return identity_by_key(inner)
        except UnknownNumber:
            pass
    return parse_identity(inner, name=lab)


# ---- the class K ----

K_IDENTITIES = (9, 11, 15, 29, 34)


def check_class_K(M, bound=2, cap=10 ** 7):
    """IN_K / NOT_IN_K / INCONCLUSIVE (see module docs in README)."""
    from .monoids import satisfies
    for k in K_IDENTITIES:
        if not satisfies(M, identity_by_number(k)).holds:
            return "NOT_IN_K"
    if len(M) == 1:
        return "NOT_IN_K"
    for n, m in product(range(bound + 1), repeat=2):
        if abs(n - m) > 1 or n + m == 0:
            continue
        for pi in enum_perms("S_nm", n, m):
            ident = Identity(word_a_hat(n, m, pi), word_a_hat_prime(n, m, pi))
            if len(M) ** len(set(ident.lhs)) > cap:
                continue
            if not satisfies(M, ident, cap=cap).holds:
                return "IN_K"
    return "INCONCLUSIVE"
