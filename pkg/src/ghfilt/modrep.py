"""Finite-dimensional modules over parabolic subalgebras H_J.

A module is given by matrices: one for each simple reflection s_j (j in J)
and one for each simple root alpha_i (the action of V).  Base field is Q or
Q(t).  Everything here is exact; module constructors re-check all defining
relations of H_J before returning.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

from flint import fmpq, fmpq_mat, fmpq_mpoly_ctx, fmpq_poly

from .exact import (QQ, QT, Mat, Poly, Q, RatFunT, as_ratfun, contains_span, image, kernel,
                    rat_str, rref, solve_matrix, span_basis)
from .rootsys import RootDatum, WeylElt


class RelationViolated(ValueError):
    def __init__(self, relation, defect):
        super().__init__(f"relation {relation} violated (defect entry {defect})")
        self.relation = relation
        self.defect = defect


class NoOneDimModule(ValueError):
    pass


class IrrationalWeight(ValueError):
    pass


class NotPerpendicular(ValueError):
    pass


class MixedNu(ValueError):
    pass


# ---------------------------------------------------------------------------
# the module type
# ---------------------------------------------------------------------------

class FinModule:
    """H_J-module on F^d given by generator matrices."""

    def __init__(self, datum: RootDatum, J, refl: Dict[int, Mat], vmats: Sequence[Mat],
                 label: str = "", check: bool = True):
        self.datum = datum
        self.J = datum.normalize_J(J)
        vmats = list(vmats)
        if len(vmats) != datum.n:
            raise ValueError("need one matrix per simple root")
        mats = list(refl.values()) + vmats
        field_ = QT if any(m.field == QT for m in mats) else QQ
        self.field = field_
        self.refl = {int(j): m.to_field(field_) for j, m in refl.items()}
        if set(self.refl) != set(self.J):
            raise ValueError("reflection matrices must be given exactly for J")
        self.vmats = [m.to_field(field_) for m in vmats]
        self.dim = self.vmats[0].nrows if vmats else 0
        for m in mats:
            if m.nrows != self.dim or m.ncols != self.dim:
                raise ValueError("all action matrices must be square of the same size")
        self.label = label
        self._tcache = {}
        if check:
            self.check_relations()

    # -- actions
    def t_action(self, w: WeylElt) -> Mat:
        """Action of t_w for w in W_J."""
        m = self._tcache.get(w.index)
        if m is None:
            m = Mat.identity(self.dim, self.field)
            for i in w.word:
                if i not in self.refl:
                    raise ValueError(f"t_w with w outside W_J (letter {self.datum.names[i]})")
                m = m @ self.refl[i]
            self._tcache[w.index] = m
        return m

    def v_action(self, v) -> Mat:
        """Action of v = sum_i v_i alpha_i."""
        out = Mat.zeros(self.dim, self.dim, self.field)
        for c, m in zip(v, self.vmats):
            if c != 0:
                out = out + m * c
        return out

    def poly_action(self, p: Poly) -> Mat:
        out = Mat.zeros(self.dim, self.dim, self.field)
        for e, c in p.terms.items():
            out = out + self._monomial(e) * c
        return out

    def _monomial(self, e) -> Mat:
        key = ("mono", e)
        m = self._tcache.get(key)
        if m is None:
            if sum(e) == 0:
                m = Mat.identity(self.dim, self.field)
            else:
                i = next(idx for idx, k in enumerate(e) if k)
                rest = list(e)
                rest[i] -= 1
                m = self.vmats[i] @ self._monomial(tuple(rest))
            self._tcache[key] = m
        return m

    def algebra_action(self, h) -> Mat:
        out = Mat.zeros(self.dim, self.dim, self.field)
        for w, p in h.terms.items():
            out = out + self.t_action(w) @ self.poly_action(p)
        return out

    def generators(self):
        """[(name, matrix)] for s_j (j in J) then alpha_i."""
        names = self.datum.names
        gens = [(f"t_{names[j]}", self.refl[j]) for j in self.J]
        gens += [(names[i], m) for i, m in enumerate(self.vmats)]
        return gens

    def generator_matrices(self):
        return [m for _, m in self.generators()]

    # -- relations
    def check_relations(self):
        d = self.datum
        I = Mat.identity(self.dim, self.field)
        for j in self.J:
            sq = self.refl[j] @ self.refl[j]
            if sq != I:
                raise RelationViolated(f"t_{d.names[j]}^2 = 1", _defect(sq - I))
        for a in self.J:
            for b in self.J:
                if a < b:
                    m = _coxeter_order(d, a, b)
                    prod = self.refl[a] @ self.refl[b]
                    acc = I
                    for _ in range(m):
                        acc = acc @ prod
                    if acc != I:
                        raise RelationViolated(f"braid({d.names[a]},{d.names[b]})", _defect(acc - I))
        for a in range(d.n):
            for b in range(a + 1, d.n):
                c = self.vmats[a] @ self.vmats[b] - self.vmats[b] @ self.vmats[a]
                if not c.is_zero():
                    raise RelationViolated(f"[{d.names[a]},{d.names[b]}] = 0", _defect(c))
        for j in self.J:
            for i in range(d.n):
                # t_j x_i - s_j(x_i) t_j = k_j <alpha_i, alpha_j^vee>
                sv = [fmpq(0)] * d.n
                sv[i] += 1
                sv[j] -= d.P[j][i]
                lhs = self.refl[j] @ self.vmats[i] - self.v_action(sv) @ self.refl[j]
                rhs = I * (d.k[j] * d.P[j][i])
                if lhs != rhs:
                    raise RelationViolated(f"cross({d.names[j]},{d.names[i]})", _defect(lhs - rhs))

    def with_label(self, label):
        m = FinModule.__new__(FinModule)
        m.__dict__.update(self.__dict__)
        m.label = label
        m._tcache = {}
        return m

    def __repr__(self):
        Js = "{" + ",".join(self.datum.names[j] for j in self.J) + "}"
        return f"FinModule(dim={self.dim}, J={Js}, field={self.field}, label={self.label!r})"


def _defect(m: Mat):
    for r in m.tolist():
        for x in r:
            if x != 0:
                return str(x)
    return "0"


def _coxeter_order(d: RootDatum, a, b) -> int:
    w = d.mul(d.s(a), d.s(b))
    x = w
    m = 1
    while x != d.e:
        x = d.mul(x, w)
        m += 1
    return m


def make_module(datum, J, refl, vmats, label="") -> FinModule:
    """Build a module from raw matrices (lists or Mat); relations are checked."""
    J = datum.normalize_J(J)
    refl = {datum.normalize_J([j])[0]: _as_mat(m) for j, m in refl.items()}
    vm = [_as_mat(m) for m in vmats]
    return FinModule(datum, J, refl, vm, label=label)


def _as_mat(m) -> Mat:
    if isinstance(m, Mat):
        return m
    rows = [[_parse_entry(x) for x in r] for r in m]
    return Mat(rows)


def _parse_entry(x):
    if isinstance(x, str) and "t" in x:
        return RatFunT.parse(x)
    if isinstance(x, RatFunT):
        return x
    return Q(x)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def one_dim_module(datum: RootDatum, J, gamma, label="") -> FinModule:
    """The character with weight gamma; t_{s_j} acts by k_j / gamma(alpha_j)."""
    J = datum.normalize_J(J)
    gamma = tuple(Q(x) for x in gamma)
    refl = {}
    for j in J:
        g = gamma[j]
        k = datum.k[j]
        if g == 0 or (g != k and g != -k):
            raise NoOneDimModule(
                f"gamma({datum.names[j]}) = {g} is not +-k = +-{k}; no 1-dim H_J-module")
        refl[j] = Mat([[k / g]])
    vm = [Mat([[g]]) for g in gamma]
    return FinModule(datum, J, refl, vm, label=label or f"C_{_wstr(gamma)}")


def _wstr(gamma):
    return "(" + ",".join(str(x) for x in gamma) + ")"


def direct_sum(*mods: FinModule, label="") -> FinModule:
    d = mods[0].datum
    J = mods[0].J
    refl = {j: Mat.block_diag([m.refl[j] for m in mods]) for j in J}
    vm = [Mat.block_diag([m.vmats[i] for m in mods]) for i in range(d.n)]
    return FinModule(d, J, refl, vm, label=label or " + ".join(m.label for m in mods))


def tensor_with_character(M: FinModule, nu) -> FinModule:
    """M (x) C_nu for nu vanishing on J: V-matrices shift by nu(alpha_i)."""
    nu = tuple(Q(x) for x in nu)
    _check_perp(M, nu)
    vm = [m + Mat.scalar(M.dim, c, M.field) for m, c in zip(M.vmats, nu)]
    return FinModule(M.datum, M.J, dict(M.refl), vm, label=f"{M.label} (x) C_{_wstr(nu)}")


def _check_perp(M, eta):
    for j in M.J:
        if Q(eta[j]) != 0:
            raise NotPerpendicular(
                f"eta({M.datum.names[j]}) = {eta[j]} != 0; direction must vanish on J")


def deform(M: FinModule, eta) -> FinModule:
    """U_{t eta}: alpha_i acts by M_i + t * eta(alpha_i)."""
    eta = tuple(Q(x) for x in eta)
    _check_perp(M, eta)
    t = RatFunT.t()
    vm = []
    for m, c in zip(M.vmats, eta):
        m = m.to_field(QT)
        if c != 0:
            m = m + Mat.scalar(M.dim, t * c, QT)
        vm.append(m)
    refl = {j: m.to_field(QT) for j, m in M.refl.items()}
    return FinModule(M.datum, M.J, refl, vm, label=f"{M.label}_t{_wstr(eta)}")


def twist_delta(M: FinModule, delta: WeylElt) -> FinModule:
    """delta(M): module over delta(J) with t_{s_delta(a)} <- t_{s_a}, v <- delta^{-1}(v)."""
    d = M.datum
    simple = [tuple(fmpq(1) if c == i else fmpq(0) for c in range(d.n)) for i in range(d.n)]
    new_refl = {}
    for j in M.J:
        img = delta.act(simple[j])
        try:
            jj = simple.index(img)
        except ValueError:
            raise ValueError("delta must map J onto simple roots") from None
        new_refl[jj] = M.refl[j]
    dinv = d.inv(delta)
    vm = []
    for i in range(d.n):
        coeffs = dinv.act(simple[i])
        vm.append(M.v_action(coeffs))
    return FinModule(d, tuple(sorted(new_refl)), new_refl, vm, label=f"twist({M.label})")


def chain_module(M: FinModule, r: int, eta) -> FinModule:
    """U^{r,eta}: r copies of M with v acting by pi(v) plus eta(v) times the shift."""
    if r < 1:
        raise ValueError("chain length must be >= 1")
    eta = tuple(Q(x) for x in eta)
    _check_perp(M, eta)
    if r == 1:
        return M
    d = M.dim
    refl = {j: Mat.block_diag([m] * r) for j, m in M.refl.items()}
    vm = []
    for i, m in enumerate(M.vmats):
        big = Mat.block_diag([m] * r)
        if eta[i] != 0:
            shift = Mat.scalar(d, eta[i], M.field)
            for b in range(r - 1):
                big = big.with_block((b + 1) * d, b * d, shift)
        vm.append(big)
    return FinModule(M.datum, M.J, refl, vm, label=f"{M.label}^{{{r},{_wstr(eta)}}}")


def bullet_dual(M: FinModule) -> FinModule:
    """The dual with g acting by the transpose of g^bullet (v^bullet = v, t_w^bullet = t_w^{-1})."""
    if tuple(M.J) != tuple(range(M.datum.n)):
        raise ValueError("the bullet dual needs a module over the whole algebra (J = all simple roots)")
    refl = {j: m.transpose() for j, m in M.refl.items()}
    vm = [m.transpose() for m in M.vmats]
    return FinModule(M.datum, M.J, refl, vm, label=f"{M.label}^bullet")


def restrict_to(M: FinModule, J) -> FinModule:
    """Restriction to H_J for J contained in M.J."""
    J = M.datum.normalize_J(J)
    if not set(J) <= set(M.J):
        raise ValueError("can only restrict to a smaller parabolic")
    return FinModule(M.datum, J, {j: M.refl[j] for j in J}, M.vmats, label=f"Res({M.label})", check=False)


def specialize_zero(M: FinModule) -> FinModule:
    """Set t = 0 in a Q(t)-module whose matrices are holomorphic at 0."""
    if M.field == QQ:
        return M
    refl = {j: m.at_zero() for j, m in M.refl.items()}
    vm = [m.at_zero() for m in M.vmats]
    return FinModule(M.datum, M.J, refl, vm, label=f"{M.label}|t=0")


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

def restrict_action(A: Mat, B: Mat) -> Mat:
    """Matrix X with A B = B X, for an A-invariant subspace with basis B (columns)."""
    if B.ncols == 0:
        return Mat.zeros(0, 0, A.field)
    if B.field == QQ and A.field == QQ:
        _, piv = rref(B.transpose())
        rows = piv  # independent rows of B
        BS = B.submatrix(rows, range(B.ncols))
        AB = A @ B
        return BS.inverse() @ AB.submatrix(rows, range(B.ncols))
    X = solve_matrix(B, A @ B)
    if X is None:
        raise ValueError("subspace is not invariant")
    return X


def is_invariant(M: FinModule, B: Mat) -> bool:
    if B.ncols == 0:
        return True
    return all(contains_span(B, g @ B) for g in M.generator_matrices())


def submodule(M: FinModule, B: Mat, label="", check=True) -> FinModule:
    """The submodule spanned by the columns of B (assumed independent and invariant)."""
    if check and not is_invariant(M, B):
        raise ValueError("subspace is not a submodule")
    refl = {j: restrict_action(m, B) for j, m in M.refl.items()}
    vm = [restrict_action(m, B) for m in M.vmats]
    return FinModule(M.datum, M.J, refl, vm, label=label or f"sub({M.label})", check=False)


def complement_basis(B: Mat, dim: int, field=QQ) -> Mat:
    """Standard basis vectors completing the columns of B to a basis."""
    cols = []
    if B.ncols:
        cur = B
        for i in range(dim):
            e = [0] * dim
            e[i] = 1
            E = Mat.from_columns([e], dim, field)
            if not contains_span(cur, E):
                cur = cur.hstack(E)
                cols.append(e)
    else:
        cols = [[1 if r == c else 0 for r in range(dim)] for c in range(dim)]
    if not cols:
        return Mat.zeros(dim, 0, field)
    return Mat.from_columns(cols, dim, field)


def quotient(M: FinModule, B: Mat, label="") -> FinModule:
    """M / span(B)."""
    C = complement_basis(B, M.dim, M.field)
    m = B.ncols
    q = C.ncols
    if q == 0:
        z = Mat.zeros(0, 0, M.field)
        return FinModule(M.datum, M.J, {j: z for j in M.J}, [z] * M.datum.n, label=label, check=False)
    full = B.hstack(C) if m else C
    inv = full.inverse()

    def act(g):
        coords = inv @ (g @ C)
        return coords.submatrix(range(m, m + q), range(q))

    refl = {j: act(g) for j, g in M.refl.items()}
    vm = [act(g) for g in M.vmats]
    return FinModule(M.datum, M.J, refl, vm, label=label or f"quot({M.label})", check=False)


def subquotient(M: FinModule, big: Mat, small: Mat, label="") -> FinModule:
    """span(big)/span(small) for invariant subspaces small <= big."""
    S = submodule(M, big, check=False)
    if small.ncols == 0:
        return S.with_label(label or S.label)
    coords = solve_matrix(big, small)
    if coords is None:
        raise ValueError("small is not contained in big")
    return quotient(S, coords, label=label)


def spin(M: FinModule, vectors, transpose=False) -> Mat:
    """Smallest invariant subspace containing the vectors (column basis, echelon)."""
    gens = M.generator_matrices()
    if transpose:
        gens = [g.transpose() for g in gens]
    basis = _Echelon(M.dim)
    queue = []
    for v in vectors:
        if basis.add(v):
            queue.append(list(v))
    while queue:
        v = queue.pop()
        for g in gens:
            u = g.apply(v)
            if basis.add(u):
                queue.append(u)
        if basis.rank == M.dim:
            break
    return basis.matrix(M.field)


class _Echelon:
    """Incremental row-echelon basis used by spin."""

    def __init__(self, dim):
        self.dim = dim
        self.rows = {}  # pivot -> normalised vector
        self.vectors = []

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, v):
        v = list(v)
        for p, r in self.rows.items():
            c = v[p]
            if c != 0:
                v = [a - c * b if b != 0 else a for a, b in zip(v, r)]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        c = v[p]
        v = [x / c if x != 0 else x for x in v]
        for q, r in list(self.rows.items()):
            if r[p] != 0:
                f = r[p]
                self.rows[q] = [a - f * b if b != 0 else a for a, b in zip(r, v)]
        self.rows[p] = v
        return True

    def matrix(self, field=QQ) -> Mat:
        if not self.rows:
            return Mat.zeros(self.dim, 0, field)
        cols = [self.rows[p] for p in sorted(self.rows)]
        return Mat.from_columns(cols, self.dim, field)


def annihilator(B: Mat, dim: int, field=QQ) -> Mat:
    """Vectors x with f(x) = 0 for every column f of B (viewed as functionals)."""
    if B.ncols == 0:
        return Mat.identity(dim, field)
    return kernel(B.transpose())


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

@dataclass
class WeightEntry:
    weight: tuple
    multiplicity: int
    basis: Mat


class WeightTable(list):
    """List of WeightEntry; multiset helpers for comparisons."""

    def multiset(self):
        return sorted(((tuple(str(x) for x in e.weight), e.multiplicity) for e in self))

    def as_dict(self):
        return {tuple(e.weight): e.multiplicity for e in self}


def _eigenvalues_Q(A: Mat):
    if A.nrows == 0:
        return []
    cp = A.qmat().charpoly()
    _, facs = cp.factor()
    out = []
    for f, e in facs:
        if f.degree() != 1:
            raise IrrationalWeight(f"characteristic polynomial has irreducible factor {f}")
        c = f.coeffs()
        out.append((-c[0] / c[1], e))
    out.sort(key=lambda x: x[0])
    return out


def _charpoly_generic(A: Mat):
    """Characteristic polynomial (coefficients low -> high) via Hessenberg reduction."""
    n = A.nrows
    H = [[as_ratfun(x) for x in r] for r in A.tolist()]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1] != 0), None)
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for r in H:
                r[m], r[piv] = r[piv], r[m]
        for j in range(m + 1, n):
            if H[j][m - 1] != 0:
                u = H[j][m - 1] / H[m][m - 1]
                H[j] = [a - u * b for a, b in zip(H[j], H[m])]
                for r in H:
                    r[m] = r[m] + u * r[j]
    polys = [[as_ratfun(1)]]

    def pmul_lin(p, c):  # (x - c) p
        out = [as_ratfun(0)] * (len(p) + 1)
        for i, a in enumerate(p):
            out[i + 1] = out[i + 1] + a
            out[i] = out[i] - c * a
        return out

    def padd(p, q, scale):
        out = list(p) + [as_ratfun(0)] * max(0, len(q) - len(p))
        for i, b in enumerate(q):
            out[i] = out[i] - scale * b
        return out

    for m in range(1, n + 1):
        p = pmul_lin(polys[m - 1], H[m - 1][m - 1])
        t = as_ratfun(1)
        for i in range(1, m):
            t = t * H[m - i][m - i - 1]
            p = padd(p, polys[m - i - 1], t * H[m - i - 1][m - 1])
        polys.append(p)
    return polys[n]


def _eigenvalues_Qt(A: Mat):
    """Eigenvalues of a Q(t)-matrix, required to be of the form c + c' t."""
    if A.nrows == 0:
        return []
    coeffs = _charpoly_generic(A)
    den = fmpq_poly([1])
    for c in coeffs:
        g = den.gcd(c.den)
        den = den * c.den // g
    ctx = fmpq_mpoly_ctx.get(("x", "t"), "lex")
    terms = {}
    for k, c in enumerate(coeffs):
        poly = c.num * (den // c.den)
        for d, a in enumerate(poly.coeffs()):
            if a != 0:
                terms[(k, d)] = a
    F = ctx.from_dict(terms)
    _, facs = F.factor()
    out = []
    for f, e in facs:
        dx = f.degrees()[0]
        if dx == 0:
            continue
        if dx != 1:
            raise IrrationalWeight(f"characteristic polynomial has non-linear factor {f}")
        a_terms, b_terms = {}, {}
        for (ex, et), c in f.to_dict().items():
            (a_terms if ex == 1 else b_terms)[et] = c
        a = fmpq_poly([a_terms.get(i, 0) for i in range(max(a_terms) + 1)])
        b = fmpq_poly([b_terms.get(i, 0) for i in range(max(b_terms, default=0) + 1)]) if b_terms else fmpq_poly([])
        root = RatFunT(-b, a)
        if not root.is_polynomial() or root.num.degree() > 1:
            raise IrrationalWeight(f"eigenvalue {root} is not affine-linear in t")
        out.append((root, e))
    out.sort(key=lambda x: str(x[0]))
    return out


def _eigenvalues(A: Mat):
    return _eigenvalues_Q(A) if A.field == QQ else _eigenvalues_Qt(A)


def _pow(A: Mat, k: int) -> Mat:
    out = Mat.identity(A.nrows, A.field)
    for _ in range(k):
        out = out @ A
    return out


def weights(M: FinModule) -> WeightTable:
    """Simultaneous generalized eigenspaces of the V-action."""
    blocks = [((), Mat.identity(M.dim, M.field))]
    for i in range(M.datum.n):
        new = []
        for vals, B in blocks:
            R = restrict_action(M.vmats[i], B)
            for lam, mult in _eigenvalues(R):
                K = kernel(_pow(R - Mat.scalar(R.nrows, lam, R.field), mult))
                new.append((vals + (lam,), B @ K))
        blocks = new
    table = WeightTable(WeightEntry(tuple(v), B.ncols, B) for v, B in blocks if B.ncols)
    table.sort(key=lambda e: tuple(str(x) for x in e.weight))
    return table


def eigenspaces(M: FinModule):
    """[(weight, basis)] of honest simultaneous eigenvectors."""
    out = []
    for entry in weights(M):
        B = entry.basis
        conds = []
        for i, m in enumerate(M.vmats):
            conds.append(m @ B - B * entry.weight[i])
        stacked = conds[0]
        for c in conds[1:]:
            stacked = stacked.vstack(c)
        K = kernel(stacked)
        out.append((entry.weight, B @ K))
    return out


# ---------------------------------------------------------------------------
# temperedness
# ---------------------------------------------------------------------------

def _real_weights(M: FinModule):
    if M.field != QQ:
        raise ValueError("temperedness is defined for modules over Q")
    return [e.weight for e in weights(M)]


def is_tempered(M: FinModule, J=None):
    """(tempered?, nu) using a_j <= 0 on J and b_j > 0 off J for every weight."""
    d = M.datum
    J = M.J if J is None else d.normalize_J(J)
    nus = set()
    ok = True
    for g in _real_weights(M):
        a, b = d.mixed_coordinates(g, J)
        if not (all(x <= 0 for x in a.values()) and all(x > 0 for x in b.values())):
            ok = False
        nus.add(tuple(b.get(j, fmpq(0)) for j in range(d.n)))
    if len(nus) > 1:
        raise MixedNu(f"weights have different omega-parts: {sorted(map(str, nus))}")
    nu = nus.pop() if nus else tuple(fmpq(0) for _ in range(d.n))
    return ok, (nu if ok else None)


def nu_of(M: FinModule, J=None):
    """The common omega-part of the weights (whether or not M is tempered)."""
    d = M.datum
    J = M.J if J is None else d.normalize_J(J)
    nus = {tuple(d.mixed_coordinates(g, J)[1].get(j, fmpq(0)) for j in range(d.n)) for g in _real_weights(M)}
    if len(nus) != 1:
        raise MixedNu("weights have different omega-parts")
    return nus.pop()


def is_discrete_series(M: FinModule, J=None) -> bool:
    """All coroot coefficients on J strictly negative (the H_J^ss discrete series condition)."""
    d = M.datum
    J = M.J if J is None else d.normalize_J(J)
    for g in _real_weights(M):
        a, _ = d.mixed_coordinates(g, J)
        if not all(x < 0 for x in a.values()):
            return False
    return True


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------

@dataclass
class HomSpace:
    basis: List[Mat]

    @property
    def dim(self):
        return len(self.basis)

    def has_invertible(self, tries: int = 24, seed: int = 0) -> bool:
        """Whether some element of the span is invertible.

        Tries each basis vector, then fixed-seed random integer combinations;
        a nonzero determinant polynomial of degree d survives a random point
        from [1, 1000] with probability >= 1 - d/1000 each time.
        """
        if not self.basis:
            return False
        n = self.basis[0].nrows
        if n != self.basis[0].ncols:
            return False
        if n == 0:
            return True
        for T in self.basis:
            if T.det() != 0:
                return True
        rng = random.Random(seed)
        for _ in range(tries):
            S = Mat.zeros(n, n, self.basis[0].field)
            for T in self.basis:
                S = S + T * rng.randint(1, 1000)
            if S.det() != 0:
                return True
        return False

    def invertible_element(self, tries: int = 24, seed: int = 0):
        if not self.basis:
            return None
        n = self.basis[0].nrows
        for T in self.basis:
            if T.nrows == T.ncols and T.det() != 0:
                return T
        rng = random.Random(seed)
        for _ in range(tries):
            S = Mat.zeros(n, n, self.basis[0].field)
            for T in self.basis:
                S = S + T * rng.randint(1, 1000)
            if S.det() != 0:
                return S
        return None


def _weight_frame(M: FinModule):
    """(P, labels) with P's columns the concatenated generalized weight bases."""
    table = weights(M)
    cols = None
    labels = []
    for e in table:
        cols = e.basis if cols is None else cols.hstack(e.basis)
        labels += [tuple(e.weight)] * e.multiplicity
    if cols is None:
        cols = Mat.zeros(M.dim, 0, M.field)
    return cols, labels


def hom_space(M1: FinModule, M2: FinModule) -> HomSpace:
    """All T with T rho1(g) = rho2(g) T for every generator g."""
    if M1.datum is not M2.datum or tuple(M1.J) != tuple(M2.J):
        raise ValueError("Hom needs modules over the same algebra")
    d1, d2 = M1.dim, M2.dim
    if d1 == 0 or d2 == 0:
        return HomSpace([])
    field_ = QT if QT in (M1.field, M2.field) else QQ
    try:
        P1, lab1 = _weight_frame(M1)
        P2, lab2 = _weight_frame(M2)
        use_frame = True
    except IrrationalWeight:
        use_frame = False
    if use_frame:
        P1inv = P1.inverse()
        P2inv = P2.inverse()
        g1 = [P1inv @ g @ P1 for g in M1.generator_matrices()]
        g2 = [P2inv @ g @ P2 for g in M2.generator_matrices()]
        unknowns = [(r, c) for r in range(d2) for c in range(d1) if lab2[r] == lab1[c]]
    else:
        g1 = M1.generator_matrices()
        g2 = M2.generator_matrices()
        unknowns = [(r, c) for r in range(d2) for c in range(d1)]
    if not unknowns:
        return HomSpace([])
    uidx = {u: k for k, u in enumerate(unknowns)}
    rows = []
    for A, B in zip(g1, g2):
        Al = A.tolist()
        Bl = B.tolist()
        # (T A - B T)[i][j] = sum_k T[i][k] A[k][j] - sum_k B[i][k] T[k][j]
        for i in range(d2):
            for j in range(d1):
                row = {}
                for k in range(d1):
                    a = Al[k][j]
                    if a != 0 and (i, k) in uidx:
                        u = uidx[(i, k)]
                        row[u] = row.get(u, 0) + a
                for k in range(d2):
                    b = Bl[i][k]
                    if b != 0 and (k, j) in uidx:
                        u = uidx[(k, j)]
                        row[u] = row.get(u, 0) - b
                row = {u: v for u, v in row.items() if v != 0}
                if row:
                    rows.append(row)
    nun = len(unknowns)
    if rows:
        dense = [[r.get(u, 0) for u in range(nun)] for r in rows]
        sys_mat = Mat(dense, field_, ncols=nun)
        K = kernel(sys_mat)
    else:
        K = Mat.identity(nun, field_)
    basis = []
    for c in range(K.ncols):
        T = [[0] * d1 for _ in range(d2)]
        for u, (r, cc) in enumerate(unknowns):
            T[r][cc] = K[u, c]
        Tm = Mat(T, field_, ncols=d1)
        if use_frame:
            Tm = P2 @ Tm @ P1inv
        basis.append(Tm)
    return HomSpace(basis)


def is_isomorphic(M1: FinModule, M2: FinModule) -> bool:
    if M1.dim != M2.dim:
        return False
    return hom_space(M1, M2).has_invertible()


# ---------------------------------------------------------------------------
# central characters
# ---------------------------------------------------------------------------

def central_character_blocks(M: FinModule):
    """[(orbit label, basis)] grouping generalized weight spaces by W_J-orbit."""
    d = M.datum
    groups = {}
    order = []
    for e in weights(M):
        key = d.orbit_key(e.weight, M.J)
        if key not in groups:
            groups[key] = e.basis
            order.append(key)
        else:
            groups[key] = groups[key].hstack(e.basis)
    return [(k, groups[k]) for k in order]


def split_by_central_character(M: FinModule) -> List[FinModule]:
    out = []
    for key, B in central_character_blocks(M):
        out.append(submodule(M, B, label=f"{M.label}[cc {_wstr(key)}]"))
    return out


# ---------------------------------------------------------------------------
# image algebra, radicals, endomorphisms
# ---------------------------------------------------------------------------

def image_algebra(M: FinModule) -> List[Mat]:
    """Basis of the image of H_J in End(M).

    Uses H_J = span{t_w p : w in W_J, p in S(V)}: first the commutative
    algebra generated by the V-matrices, then products with the t_w.
    """
    n = M.dim
    if M.field != QQ:
        raise ValueError("image algebra is computed over Q only")
    # commutative part: closure of {1} under multiplication by the x_i
    comm = []
    ech = _Echelon(n * n)
    queue = [Mat.identity(n)]
    ech.add(_flat(queue[0]))
    comm.append(queue[0])
    while queue:
        X = queue.pop()
        for m in M.vmats:
            Y = m @ X
            if ech.add(_flat(Y)):
                comm.append(Y)
                queue.append(Y)
    prods = []
    for w in M.datum.parabolic(M.J):
        T = M.t_action(w)
        for C in comm:
            prods.append(T @ C)
    F = fmpq_mat(len(prods), n * n, [x for P in prods for x in _flat(P)])
    R, rank = F.rref()
    basis = []
    for i in range(rank):
        basis.append(Mat(fmpq_mat(n, n, [R[i, j] for j in range(n * n)])))
    return basis


def _flat(X: Mat):
    return [X[i, j] for i in range(X.nrows) for j in range(X.ncols)]


def trace_radical(mats: List[Mat]) -> List[Mat]:
    """{x in span : tr(x y) = 0 for all y} (the Jacobson radical in characteristic 0)."""
    if not mats:
        return []
    n = mats[0].nrows
    F = fmpq_mat(len(mats), n * n, [x for A in mats for x in _flat(A)])
    Ft = fmpq_mat(len(mats), n * n, [x for A in mats for x in _flat(A.transpose())])
    G = Mat(F * Ft.transpose())  # G[a][b] = tr(A_a A_b)
    K = kernel(G)
    out = []
    for c in range(K.ncols):
        X = Mat.zeros(n, n)
        for a, A in enumerate(mats):
            if K[a, c] != 0:
                X = X + A * K[a, c]
        out.append(X)
    return out


def radical_series(M: FinModule):
    """[rad^0 M = M, rad^1 M, ...] down to 0, as column bases."""
    A = image_algebra(M)
    R = trace_radical(A)
    chain = [Mat.identity(M.dim)]
    cur = chain[0]
    while cur.ncols:
        vecs = []
        for X in R:
            P = X @ cur
            vecs += P.columns()
        nxt = span_basis(vecs, M.dim) if vecs else Mat.zeros(M.dim, 0)
        if nxt.ncols == cur.ncols:
            raise RuntimeError("radical series failed to descend")
        chain.append(nxt)
        cur = nxt
    return chain, R


def socle_series_direct(M: FinModule, R=None):
    """[soc^0 = 0, soc^1, ...] with soc^i = {x : rad(A)^i x = 0}."""
    if R is None:
        R = trace_radical(image_algebra(M))
    n = M.dim
    chain = [Mat.zeros(n, 0)]
    power = [Mat.identity(n)]  # basis of rad(A)^level, level = 0
    while True:
        ech = _Echelon(n * n)
        nxt = []
        for X in R:
            for P in power:
                Y = X @ P
                if ech.add(_flat(Y)):
                    nxt.append(Y)
        power = nxt
        if not power:
            K = Mat.identity(n)
        else:
            stacked = power[0]
            for P in power[1:]:
                stacked = stacked.vstack(P)
            K = kernel(stacked)
        chain.append(K)
        if K.ncols == n:
            return chain


def endomorphism_radical_quotient_dim(M: FinModule) -> int:
    """dim End(M)/rad End(M); equal to 1 implies M is indecomposable."""
    E = hom_space(M, M).basis
    return len(E) - len(trace_radical(E))


def is_indecomposable(M: FinModule) -> bool:
    """True iff End(M) is local.

    End/rad(End) is semisimple; it is a division algebra exactly when no
    element has a minimal polynomial with two coprime factors.  For the
    common case dim End/rad = 1 this is immediate.
    """
    E = hom_space(M, M).basis
    R = trace_radical(E)
    if len(E) - len(R) <= 1:
        return True
    for T in E:
        mp = T.qmat().minpoly()
        _, facs = mp.factor()
        if len(facs) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# irreducibility and composition factors
# ---------------------------------------------------------------------------

def find_proper_submodule(M: FinModule):
    """A proper nonzero invariant subspace, or None when M is irreducible."""
    n = M.dim
    if n <= 1:
        return None
    blocks = central_character_blocks(M)
    if len(blocks) > 1:
        return blocks[0][1]
    spaces = eigenspaces(M)
    all_simple_lines = all(B.ncols == 1 for _, B in spaces)
    for _, B in spaces:
        for v in B.columns():
            S = spin(M, [v])
            if S.ncols < n:
                return S
    if all_simple_lines:
        return None
    # dual side: submodules of the transpose action give annihilators
    dual_vm = [m.transpose() for m in M.vmats]
    dual = FinModule(M.datum, M.J, {j: m.transpose() for j, m in M.refl.items()}, dual_vm, check=False)
    for _, B in eigenspaces(dual):
        for v in B.columns():
            S = spin(M, [v], transpose=True)
            if S.ncols < n:
                return annihilator(S, n)
    A = image_algebra(M)
    R = trace_radical(A)
    if R:
        vecs = [c for X in R for c in X.columns()]
        S = span_basis(vecs, n)
        if 0 < S.ncols < n:
            return S
    E = hom_space(M, M).basis
    if len(E) <= 1:
        return None
    for T in E:
        mp = T.qmat().minpoly()
        _, facs = mp.factor()
        if len(facs) == 1 and facs[0][0].degree() == 1 and facs[0][1] == 1:
            continue  # scalar
        f, _ = facs[0]
        fT = Mat.zeros(n, n)
        P = Mat.identity(n)
        for c in f.coeffs():
            fT = fT + P * c
            P = P @ T
        K = kernel(fT)
        if 0 < K.ncols < n:
            return K
    return None


def is_irreducible(M: FinModule) -> bool:
    return M.dim > 0 and find_proper_submodule(M) is None


def composition_factors(M: FinModule) -> List[FinModule]:
    """Irreducible subquotients (with multiplicity) of a module over Q."""
    if M.dim == 0:
        return []
    S = find_proper_submodule(M)
    if S is None:
        return [M]
    return composition_factors(submodule(M, S, check=False)) + composition_factors(quotient(M, S))


# ---------------------------------------------------------------------------
# fingerprints
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorFingerprint:
    dim: int
    weights: tuple
    w_character: tuple | None
    central_character: tuple

    def to_json(self):
        return {
            "dim": self.dim,
            "weights": [{"weight": list(w), "multiplicity": m} for w, m in self.weights],
            "w_character": list(self.w_character) if self.w_character is not None else None,
            "central_character": list(self.central_character),
        }

    def short(self):
        ws = ", ".join(f"({','.join(w)})x{m}" if m > 1 else f"({','.join(w)})" for w, m in self.weights)
        return f"dim {self.dim}: {ws}"


def fingerprint(M: FinModule) -> FactorFingerprint:
    d = M.datum
    table = weights(M)
    ws = tuple(sorted((tuple(str(x) for x in e.weight), e.multiplicity) for e in table))
    wchar = None
    if tuple(M.J) == tuple(range(d.n)):
        wchar = tuple(str(_trace(M.t_action(cls[0]))) for cls in d.conjugacy_classes())
    if table:
        g = table[0].weight
        if M.J == tuple(range(d.n)):
            cc = d.dominant_representative(g)
        else:
            cc = d.orbit_key(g, M.J)
        cc = tuple(str(x) for x in cc)
    else:
        cc = ()
    return FactorFingerprint(M.dim, ws, wchar, cc)


def _trace(A: Mat):
    s = fmpq(0)
    for i in range(A.nrows):
        s += A[i, i]
    return s


def composition_fingerprints(M: FinModule) -> List[FactorFingerprint]:
    fps = [fingerprint(F) for F in composition_factors(M)]
    fps.sort(key=lambda f: (f.dim, f.weights))
    return fps


# ---------------------------------------------------------------------------
# serialisation
# ---------------------------------------------------------------------------

def matrix_json(m: Mat):
    return m.canonical_rows()


def module_to_json(M: FinModule):
    names = M.datum.names
    return {
        "kind": "matrices",
        "J": [names[j] for j in M.J],
        "reflections": {names[j]: matrix_json(m) for j, m in M.refl.items()},
        "vectors": {names[i]: matrix_json(m) for i, m in enumerate(M.vmats)},
    }


def weight_json(w):
    return [x.canonical() if isinstance(x, RatFunT) else rat_str(x) for x in w]


def weights_json(table: WeightTable):
    return [{"weight": weight_json(e.weight), "multiplicity": e.multiplicity} for e in table]
