"""Root data, Weyl groups and coset combinatorics.

Conventions
-----------
V has the simple roots alpha_1..alpha_n as basis; vectors of V are integer
(or rational) coordinate tuples in that basis.  A point gamma of V^dual is
stored by its values on the simple roots, ``(gamma(alpha_1), ..., gamma(alpha_n))``,
so the fundamental coweights are the standard basis vectors.

The pairing matrix has ``P[i][j] = <alpha_j, alpha_i^vee>``; row i lists the
values of the coroot alpha_i^vee on the simple roots.

Weyl group elements are identified by their action matrix on V.  Their
reduced word is found by greedy left descent (smallest simple index first),
so ``word = (a1, a2, ...)`` means ``w = s_a1 s_a2 ...``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from flint import fmpq, fmpq_mat

from .exact import Q, rat_str


class InfiniteGroup(ValueError):
    pass


class DecompositionNotUnique(RuntimeError):
    pass


class DecompositionMissing(RuntimeError):
    pass


CARTAN_TYPES = {
    # pairing rows are coroots evaluated on simple roots
    "A1": ([[2]], ["alpha"]),
    "A2": ([[2, -1], [-1, 2]], ["alpha", "beta"]),
    # alpha short, beta long: alpha^vee(beta) = -2, beta^vee(alpha) = -1
    "B2": ([[2, -2], [-1, 2]], ["alpha", "beta"]),
    "G2": ([[2, -3], [-1, 2]], ["alpha", "beta"]),
    "A3": ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], ["a1", "a2", "a3"]),
    # a3 short
    "B3": ([[2, -1, 0], [-1, 2, -1], [0, -2, 2]], ["a1", "a2", "a3"]),
    # a3 long
    "C3": ([[2, -1, 0], [-1, 2, -2], [0, -1, 2]], ["a1", "a2", "a3"]),
}

MAX_ROOTS = 10_000
MAX_RANK = 4


def _matmul(A, B):
    n = len(A)
    m = len(B[0])
    k = len(B)
    return tuple(tuple(sum((A[i][l] * B[l][j] for l in range(k)), fmpq(0)) for j in range(m)) for i in range(n))


def _matvec(A, v):
    return tuple(sum((A[i][j] * v[j] for j in range(len(v))), fmpq(0)) for i in range(len(A)))


def _identity(n):
    return tuple(tuple(fmpq(1) if i == j else fmpq(0) for j in range(n)) for i in range(n))


def is_positive(v) -> bool:
    return any(x != 0 for x in v) and all(x >= 0 for x in v)


def is_negative(v) -> bool:
    return any(x != 0 for x in v) and all(x <= 0 for x in v)


@dataclass(frozen=True)
class WeylElt:
    """Element of W: action matrix on V (root coordinates) plus cached data."""

    index: int
    mat: tuple
    word: tuple
    inversions: tuple  # indices into datum.positive_roots

    @property
    def length(self):
        return len(self.word)

    def __eq__(self, other):
        return isinstance(other, WeylElt) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def act(self, v):
        """w(v) for v in V given in simple-root coordinates."""
        return _matvec(self.mat, [Q(x) for x in v])


class RootDatum:
    """A (reduced, crystallographic or rational) root datum with parameters k."""

    def __init__(self, pairing: Sequence[Sequence], k: Sequence | dict, names: Sequence[str] | None = None,
                 label: str | None = None, max_roots: int = MAX_ROOTS, max_rank: int = MAX_RANK):
        P = [[Q(x) for x in row] for row in pairing]
        n = len(P)
        if n > max_rank:
            raise ValueError(f"rank {n} exceeds the configured cap {max_rank}")
        for i in range(n):
            if len(P[i]) != n:
                raise ValueError("pairing matrix must be square")
            if P[i][i] != 2:
                raise ValueError("pairing matrix must have 2 on the diagonal")
            for j in range(n):
                if i != j and P[i][j] > 0:
                    raise ValueError("off-diagonal pairings must be nonpositive")
                if i != j and (P[i][j] == 0) != (P[j][i] == 0):
                    raise ValueError("pairing matrix zero pattern must be symmetric")
        self.n = n
        self.P = tuple(tuple(r) for r in P)
        self.names = tuple(names) if names else tuple(f"a{i + 1}" for i in range(n))
        self.label = label or "custom"
        if isinstance(k, dict):
            k = [k[nm] for nm in self.names]
        self.k = tuple(Q(x) for x in k)

        # simple reflections on V: s_i(v) = v - alpha_i^vee(v) alpha_i
        self.simple_mats = []
        for i in range(n):
            M = [[fmpq(1) if r == c else fmpq(0) for c in range(n)] for r in range(n)]
            for c in range(n):
                M[i][c] -= P[i][c]
            self.simple_mats.append(tuple(tuple(r) for r in M))

        self._enumerate_roots(max_roots)
        self._enumerate_group(max_roots)
        self._check_k()
        self._longest = {}

    # ------------------------------------------------------------------ roots
    def _enumerate_roots(self, max_roots):
        n = self.n
        simple = [tuple(fmpq(1) if j == i else fmpq(0) for j in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        # coroot values alongside, tracked by transporting reflections
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(n):
                    u = _matvec(self.simple_mats[i], v)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
                        if len(seen) > max_roots:
                            raise InfiniteGroup("root closure exceeded the configured bound")
            frontier = nxt
        pos = [r for r in seen if is_positive(r)]
        pos.sort(key=lambda r: (sum(r), tuple(-x for x in r)))
        self.positive_roots = tuple(pos)
        self.roots = tuple(pos) + tuple(tuple(-x for x in r) for r in pos)
        self.root_index = {r: i for i, r in enumerate(self.positive_roots)}

    def root_name(self, r) -> str:
        parts = []
        for c, nm in zip(r, self.names):
            if c == 0:
                continue
            if c == 1:
                parts.append(nm)
            elif c == -1:
                parts.append("-" + nm)
            else:
                parts.append(f"{c}{nm}")
        return "+".join(parts).replace("+-", "-") or "0"

    # ------------------------------------------------------------------ group
    def _enumerate_group(self, max_size):
        n = self.n
        ident = _identity(n)
        order = [ident]
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                for i in range(n):
                    u = _matmul(self.simple_mats[i], m)
                    if u not in seen:
                        seen.add(u)
                        order.append(u)
                        nxt.append(u)
                        if len(seen) > max_size:
                            raise InfiniteGroup("Weyl group enumeration exceeded the bound")
            frontier = nxt
        elts = []
        for m in order:
            word = self._greedy_word(m)
            inv = tuple(idx for idx, r in enumerate(self.positive_roots) if is_negative(_matvec(m, r)))
            elts.append((m, word, inv))
        elts.sort(key=lambda e: (len(e[1]), e[1]))
        self.W = tuple(WeylElt(i, m, w, inv) for i, (m, w, inv) in enumerate(elts))
        self._by_mat = {w.mat: w for w in self.W}
        self._mul = {}
        self._inv = {}
        for w in self.W:
            assert w.length == len(w.inversions), "length must equal the inversion count"

    def _inverse_mat(self, m):
        qm = fmpq_mat([list(r) for r in m]).inv()
        return tuple(tuple(qm[i, j] for j in range(self.n)) for i in range(self.n))

    def _greedy_word(self, m):
        word = []
        cur = m
        n = self.n
        while cur != _identity(n):
            inv = self._inverse_mat(cur)
            for i in range(n):
                # left descent: w^{-1}(alpha_i) < 0
                col = tuple(inv[r][i] for r in range(n))
                if is_negative(col):
                    word.append(i)
                    cur = _matmul(self.simple_mats[i], cur)
                    break
            else:  # pragma: no cover - a nonidentity element always has a descent
                raise RuntimeError("no descent found")
        return tuple(word)

    @property
    def e(self) -> WeylElt:
        return self.W[0]

    def s(self, i) -> WeylElt:
        return self._by_mat[self.simple_mats[i]]

    def from_mat(self, m) -> WeylElt:
        return self._by_mat[tuple(tuple(Q(x) for x in r) for r in m)]

    def from_word(self, word: Sequence[int]) -> WeylElt:
        w = self.e
        for i in word:
            w = self.mul(w, self.s(i))
        return w

    def mul(self, x: WeylElt, y: WeylElt) -> WeylElt:
        key = (x.index, y.index)
        r = self._mul.get(key)
        if r is None:
            r = self._by_mat[_matmul(x.mat, y.mat)]
            self._mul[key] = r
        return r

    def inv(self, w: WeylElt) -> WeylElt:
        r = self._inv.get(w.index)
        if r is None:
            r = self._by_mat[self._inverse_mat(w.mat)]
            self._inv[w.index] = r
        return r

    def word_str(self, w: WeylElt) -> str:
        if not w.word:
            return "e"
        return ".".join("s_" + self.names[i] for i in w.word)

    def reduced_words(self, w: WeylElt):
        """All reduced words of w (exhaustive; intended for small rank)."""
        out = []

        def rec(cur: WeylElt, suffix):
            if cur.length == 0:
                out.append(tuple(suffix))
                return
            for i in range(self.n):
                # right descent: cur(alpha_i) < 0 -> cur = (cur s_i) s_i
                if is_negative(cur.act(self._simple(i))):
                    rec(self.mul(cur, self.s(i)), [i] + list(suffix))

        rec(w, [])
        return sorted(set(out))

    def _simple(self, i):
        return tuple(fmpq(1) if j == i else fmpq(0) for j in range(self.n))

    def _check_k(self):
        for i in range(self.n):
            for j in range(self.n):
                if self.k[i] != self.k[j]:
                    ai = self._simple(i)
                    aj = self._simple(j)
                    if any(w.act(ai) == aj for w in self.W):
                        raise ValueError("parameter k must be constant on W-orbits of simple roots")

    # ------------------------------------------------------------------ coweights
    def coroot_values(self, root) -> tuple:
        """Values on simple roots of the coroot of a root (any root)."""
        root = tuple(Q(x) for x in root)
        for w in self.W:
            for i in range(self.n):
                if w.act(self._simple(i)) == root:
                    return self.act_coweight(w, self.P[i])
        raise ValueError(f"{root} is not a root")

    def pair(self, gamma, v):
        """gamma(v) for a coweight gamma (values on simple roots) and v in V."""
        return sum((Q(g) * Q(x) for g, x in zip(gamma, v)), fmpq(0))

    def act_coweight(self, w: WeylElt, gamma):
        """(w gamma)(v) = gamma(w^{-1} v)."""
        winv = self.inv(w)
        out = []
        for j in range(self.n):
            acc = 0
            for i in range(self.n):
                c = winv.mat[i][j]
                if c != 0:
                    acc = gamma[i] * c + acc
            out.append(Q(acc) if isinstance(acc, int) else acc)
        return tuple(out)

    def coroot_combination(self, coeffs) -> tuple:
        """The coweight sum_i c_i alpha_i^vee, as values on simple roots."""
        c = [Q(x) for x in coeffs]
        return tuple(sum((c[i] * self.P[i][j] for i in range(self.n)), fmpq(0)) for j in range(self.n))

    def coroot_coordinates(self, gamma) -> tuple:
        """Solve gamma = sum_i c_i alpha_i^vee for the c_i."""
        Pt = fmpq_mat([[self.P[i][j] for i in range(self.n)] for j in range(self.n)])
        rhs = fmpq_mat(self.n, 1, [Q(x) for x in gamma])
        sol = Pt.solve(rhs)
        return tuple(sol[i, 0] for i in range(self.n))

    def dominant_representative(self, gamma) -> tuple:
        """The dominant element of the W-orbit of a real coweight."""
        g = tuple(Q(x) for x in gamma)
        while True:
            for i in range(self.n):
                if g[i] < 0:
                    g = self.act_coweight(self.s(i), g)
                    break
            else:
                return g

    def orbit_key(self, gamma, J: Sequence[int] | None = None):
        """Canonical label of the W_J-orbit (all of W when J is None)."""
        if J is None:
            group = self.W
        else:
            group = self.parabolic(J)
        orbit = {tuple(self.act_coweight(w, gamma)) for w in group}
        return min(orbit, key=lambda g: tuple(str(x) for x in g))

    # ------------------------------------------------------------------ parabolics
    def normalize_J(self, J) -> tuple:
        out = []
        for j in J:
            if isinstance(j, str):
                j = self.names.index(j)
            out.append(int(j))
        return tuple(sorted(set(out)))

    def parabolic(self, J) -> tuple:
        """Elements of W_J (generated by s_j, j in J)."""
        J = set(self.normalize_J(J))
        return tuple(w for w in self.W if set(w.word) <= J)

    def coset_minima(self, J) -> tuple:
        """W^J: the w with w(alpha) > 0 for all alpha in J, sorted by (length, word)."""
        J = self.normalize_J(J)
        out = [w for w in self.W if all(is_positive(w.act(self._simple(j))) for j in J)]
        out.sort(key=lambda w: (w.length, w.word))
        return tuple(out)

    def coset_factor(self, J, w: WeylElt):
        """w = w' sigma with w' in W^J and sigma in W_J."""
        J = self.normalize_J(J)
        table = self._factor_table(J)
        return table[w.index]

    def _factor_table(self, J):
        key = ("factor", J)
        t = self._longest.get(key)
        if t is None:
            t = {}
            for wp in self.coset_minima(J):
                for sig in self.parabolic(J):
                    t[self.mul(wp, sig).index] = (wp, sig)
            assert len(t) == len(self.W)
            self._longest[key] = t
        return t

    def longest(self, J=None) -> WeylElt:
        group = self.W if J is None else self.parabolic(J)
        return max(group, key=lambda w: w.length)

    def longest_elements(self, J):
        """(w0, w0J, wJ) with wJ = w0 * w0J the longest element of W^J."""
        J = self.normalize_J(J)
        w0 = self.longest()
        w0J = self.longest(J)
        wJ = self.mul(w0, w0J)
        mins = self.coset_minima(J)
        assert wJ == max(mins, key=lambda w: w.length)
        # bijection w -> w wJ from W^{theta(J)} to W^J with additive lengths
        thJ = self.theta_maps(J)["phi_J"]
        targets = set()
        for w in self.coset_minima(thJ):
            x = self.mul(w, wJ)
            assert x in set(mins), "w -> w wJ must land in W^J"
            assert w.length + x.length == wJ.length
            targets.add(x)
        assert len(targets) == len(mins)
        return w0, w0J, wJ

    def theta_maps(self, J):
        """theta(a) = -w0(a), theta_J(a) = -w0J(a), phi = theta o theta_J.

        Returns a dict with the permutations (as index maps), the image
        ``phi_J = phi(J)`` (sorted tuple of indices), and the linear map phi on
        V, which equals the action of w0 w0J.
        """
        J = self.normalize_J(J)
        key = ("theta", J)
        if key in self._longest:
            return self._longest[key]
        w0 = self.longest()
        w0J = self.longest(J)

        def neg_image(w, i):
            v = tuple(-x for x in w.act(self._simple(i)))
            for j in range(self.n):
                if v == self._simple(j):
                    return j
            raise AssertionError("-w(alpha) is not simple")

        theta = {i: neg_image(w0, i) for i in range(self.n)}
        thetaJ = {j: neg_image(w0J, j) for j in J}
        phi = {j: theta[thetaJ[j]] for j in J}
        phi_elt = self.mul(w0, w0J)
        for j in J:
            assert phi_elt.act(self._simple(j)) == self._simple(phi[j])
        out = {
            "theta": theta,
            "theta_J": thetaJ,
            "phi": phi,
            "phi_J": tuple(sorted(phi.values())),
            "theta_of_J": tuple(sorted(theta[j] for j in J)),
            "phi_elt": phi_elt,
        }
        assert out["phi_J"] == out["theta_of_J"]
        self._longest[key] = out
        return out

    # ------------------------------------------------------------------ decompositions
    def mixed_coordinates(self, gamma, J):
        """Solve Re gamma = sum_{J} a_j alpha_j^vee + sum_{not J} b_j omega_j^vee.

        Returns (a, b) as dicts index -> rational.
        """
        J = self.normalize_J(J)
        n = self.n
        # columns: coroots for j in J (values P[j][:]) and omega_j (e_j) otherwise
        cols = []
        for j in range(n):
            if j in J:
                cols.append([self.P[j][c] for c in range(n)])
            else:
                cols.append([fmpq(1) if c == j else fmpq(0) for c in range(n)])
        A = fmpq_mat([[cols[j][r] for j in range(n)] for r in range(n)])
        rhs = fmpq_mat(n, 1, [Q(x) for x in gamma])
        sol = A.solve(rhs)
        a = {j: sol[j, 0] for j in range(n) if j in J}
        b = {j: sol[j, 0] for j in range(n) if j not in J}
        return a, b

    def langlands_decompose(self, gamma):
        """The unique (J', a, b) with a_j < 0 and b_j >= 0; returns (J', a, b, nu)."""
        n = self.n
        hits = []
        for size in range(n + 1):
            for J in combinations(range(n), size):
                try:
                    a, b = self.mixed_coordinates(gamma, J)
                except (ZeroDivisionError, ValueError):
                    continue
                if all(x < 0 for x in a.values()) and all(x >= 0 for x in b.values()):
                    hits.append((J, a, b))
        if not hits:
            raise DecompositionMissing(f"no decomposition for {gamma}")
        if len(hits) > 1:
            raise DecompositionNotUnique(f"several decompositions for {gamma}: {[h[0] for h in hits]}")
        J, a, b = hits[0]
        nu = tuple(b.get(j, fmpq(0)) for j in range(n))
        return J, a, b, nu

    def nu(self, gamma) -> tuple:
        return self.langlands_decompose(gamma)[3]

    def dominance_leq(self, g1, g2) -> bool:
        """g1 <= g2 iff g2 - g1 is a nonnegative combination of simple coroots."""
        diff = [Q(y) - Q(x) for x, y in zip(g1, g2)]
        return all(c >= 0 for c in self.coroot_coordinates(diff))

    def dominance_lt(self, g1, g2) -> bool:
        return tuple(Q(x) for x in g1) != tuple(Q(x) for x in g2) and self.dominance_leq(g1, g2)

    def perp_basis(self, J):
        """Standard basis of V_J^{perp,dual}: omega_j^vee for j not in J."""
        J = self.normalize_J(J)
        return [tuple(fmpq(1) if c == j else fmpq(0) for c in range(self.n)) for j in range(self.n) if j not in J]

    def conjugacy_classes(self):
        """Conjugacy classes of W as tuples of elements; reps are the first members."""
        seen = set()
        classes = []
        for w in self.W:
            if w.index in seen:
                continue
            cls = {self.mul(self.mul(x, w), self.inv(x)).index for x in self.W}
            seen |= cls
            classes.append(tuple(self.W[i] for i in sorted(cls)))
        return classes

    # ------------------------------------------------------------------ io
    def to_json(self):
        out = {"k": {nm: rat_str(k) for nm, k in zip(self.names, self.k)}}
        if self.label in CARTAN_TYPES:
            out["type"] = self.label
        else:
            out["pairing"] = [[rat_str(x) for x in r] for r in self.P]
            out["names"] = list(self.names)
        return out

    def __repr__(self):
        return f"RootDatum({self.label}, k={[rat_str(x) for x in self.k]})"


def build_datum(kind, k=None, names=None, **kw) -> RootDatum:
    """Build a root datum from a type label (``"B2"``) or a pairing matrix.

    ``k`` may be a scalar (constant parameter), a list, or a name -> value
    dict.
    """
    if isinstance(kind, str):
        if kind not in CARTAN_TYPES:
            raise ValueError(f"unknown type {kind!r}; known: {sorted(CARTAN_TYPES)}")
        pairing, default_names = CARTAN_TYPES[kind]
        names = names or default_names
        label = kind
    else:
        pairing = kind
        label = kw.pop("label", None)
        names = names or [f"a{i + 1}" for i in range(len(pairing))]
    if k is None:
        k = 1
    if not isinstance(k, (list, tuple, dict)):
        k = [k] * len(pairing)
    return RootDatum(pairing, k, names=names, label=label, **kw)


def datum_from_json(obj: dict) -> RootDatum:
    k = obj.get("k", 1)
    if isinstance(k, dict):
        k = {nm: Q(v) for nm, v in k.items()}
    elif isinstance(k, (list, tuple)):
        k = [Q(v) for v in k]
    else:
        k = Q(k)
    if "type" in obj:
        d = build_datum(obj["type"], k, names=obj.get("names"))
    else:
        d = build_datum([[Q(x) for x in r] for r in obj["pairing"]], k, names=obj.get("names"))
    return d
