"""Parabolic induction I(J, U) = H (x)_{H_J} U as explicit matrices.

The basis is {t_w (x) u_i : w in W^J, i = 1..dim U}, ordered by W^J (sorted
by length, then word) and then by the basis of U.  A vector index is
``pos(w) * dim U + i``.

To act by h in H on t_w (x) u, write h t_w = sum_x t_x p_x in normal form,
factor each x = x' sigma with x' in W^J and sigma in W_J, and absorb
t_sigma p_x into U:  t_x p_x (x) u = t_{x'} (x) rho_U(t_sigma) rho_U(p_x) u.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import List, Sequence

from .exact import QQ, Mat, Q
from .hecke import AlgebraElement
from .modrep import (FinModule, WeightTable, deform, hom_space, is_indecomposable,
                     is_tempered, restrict_to, submodule, weights)
from .rootsys import RootDatum, WeylElt


class CensusMismatch(AssertionError):
    pass


class DecomposeFailure(AssertionError):
    pass


class DimensionTooLarge(ValueError):
    pass


def max_dim() -> int:
    return int(os.environ.get("GHFILT_MAX_DIM", "512"))


@dataclass
class InducedModule:
    """I(J, U) together with its basis bookkeeping."""

    module: FinModule
    coset_reps: tuple          # W^J in basis order
    J: tuple
    U: FinModule
    eta: tuple | None = None
    labels: List[tuple] = field(default_factory=list)  # (w, i) per basis vector

    @property
    def datum(self) -> RootDatum:
        return self.module.datum

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def field(self):
        return self.module.field

    def index(self, w: WeylElt, i: int) -> int:
        return self.coset_reps.index(w) * self.U.dim + i

    def basis_vector(self, w: WeylElt, u: Sequence) -> list:
        """Coordinates of t_w (x) u."""
        v = [0] * self.dim
        base = self.coset_reps.index(w) * self.U.dim
        for i, c in enumerate(u):
            v[base + i] = c
        return v

    def act(self, h: AlgebraElement, vec: Sequence) -> list:
        """h applied to a coordinate vector."""
        return self.module.algebra_action(h).apply(vec)

    def label_str(self, k: int) -> str:
        w, i = self.labels[k]
        return f"t[{self.datum.word_str(w)}] (x) u{i + 1}"


def _element_on_coset(d: RootDatum, J, U: FinModule, reps, h: AlgebraElement, w: WeylElt):
    """Block column of h acting on t_w (x) U: {position of x': dim U x dim U matrix}."""
    out = {}
    for x, p in h.times_t(w).terms.items():
        xp, sigma = d.coset_factor(J, x)
        block = U.t_action(sigma) @ U.poly_action(p)
        pos = reps.index(xp)
        out[pos] = out[pos] + block if pos in out else block
    return out


def induce(datum: RootDatum, J, U: FinModule, eta=None, label: str = "") -> InducedModule:
    """I(J, U) as a module over the whole algebra.

    ``eta`` is recorded only; pass an already deformed U (see
    :func:`induce_deformed`) to induce U_{t eta}.
    """
    d = datum
    J = d.normalize_J(J)
    if tuple(U.J) != J:
        raise ValueError(f"U is a module over J = {U.J}, not {J}")
    reps = d.coset_minima(J)
    m = U.dim
    n = len(reps) * m
    if n > max_dim():
        raise DimensionTooLarge(f"induced dimension {n} exceeds GHFILT_MAX_DIM = {max_dim()}")
    field_ = U.field

    def assemble(h: AlgebraElement) -> Mat:
        big = Mat.zeros(n, n, field_)
        for c, w in enumerate(reps):
            for pos, block in _element_on_coset(d, J, U, reps, h, w).items():
                big = big.with_block(pos * m, c * m, block)
        return big

    refl = {i: assemble(AlgebraElement.t(d, d.s(i))) for i in range(d.n)}
    vmats = [assemble(AlgebraElement.root(d, i)) for i in range(d.n)]
    mod = FinModule(d, tuple(range(d.n)), refl, vmats,
                    label=label or f"I({_jstr(d, J)}, {U.label})")
    labels = [(w, i) for w in reps for i in range(m)]
    return InducedModule(mod, reps, J, U, None if eta is None else tuple(Q(x) for x in eta), labels)


def induce_deformed(datum: RootDatum, J, U: FinModule, eta) -> InducedModule:
    """I(J, U_{t eta}) over Q(t)."""
    X = induce(datum, J, deform(U, eta))
    X.eta = tuple(Q(x) for x in eta)
    return X


def _jstr(d, J):
    return "{" + ",".join(d.names[j] for j in J) + "}"


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

def expected_census(X: InducedModule):
    """{w(lambda) : w in W^J, lambda in Wgt(U)} with multiplicities, as a sorted multiset."""
    d = X.datum
    counts = {}
    for e in weights(X.U):
        for w in X.coset_reps:
            g = tuple(d.act_coweight(w, e.weight))
            counts[g] = counts.get(g, 0) + e.multiplicity
    return sorted(((tuple(str(x) for x in g), c) for g, c in counts.items()))


def weight_census(X: InducedModule) -> WeightTable:
    """weights(X), checked against the W^J-translates of the weights of U."""
    table = weights(X.module)
    if table.multiset() != expected_census(X):
        raise CensusMismatch(f"weights {table.multiset()} != census {expected_census(X)}")
    return table


def census_preimages(X: InducedModule, gamma):
    """W(J, U, gamma) = {(w, lambda) : w(lambda) = gamma}."""
    d = X.datum
    gamma = tuple(Q(x) for x in gamma)
    out = []
    for e in weights(X.U):
        for w in X.coset_reps:
            if tuple(d.act_coweight(w, e.weight)) == gamma:
                out.append((w, e.weight))
    return out


# ---------------------------------------------------------------------------
# restriction to H_J
# ---------------------------------------------------------------------------

@dataclass
class RestrictionSplit:
    u_block: FinModule
    y_block: FinModule | None
    u_basis: Mat
    y_basis: Mat
    nu: tuple
    y_nus: list


def restrict_decompose(X: InducedModule) -> RestrictionSplit:
    """Res_{H_J} I(J,U) = U + Y, split by central character of H_J.

    The block carrying the W_J-orbits of the weights of U must be isomorphic
    to U, and every weight of Y must have strictly smaller Langlands
    parameter nu than (J, U).
    """
    d = X.datum
    J = X.J
    if X.field != QQ:
        raise ValueError("restriction split is computed over Q")
    ok, nu = is_tempered(X.U, J)
    if not ok:
        raise DecomposeFailure("U is not tempered")
    R = restrict_to(X.module, J)
    u_keys = {d.orbit_key(e.weight, J) for e in weights(X.U)}
    ub, yb = [], []
    y_nus = []
    for e in weights(R):
        if d.orbit_key(e.weight, J) in u_keys:
            ub += e.basis.columns()
        else:
            yb += e.basis.columns()
            y_nus.append(d.nu(e.weight))
    n = X.dim
    Ub = Mat.from_columns(ub, n) if ub else Mat.zeros(n, 0)
    Yb = Mat.from_columns(yb, n) if yb else Mat.zeros(n, 0)
    Um = submodule(R, Ub, label="U-block")
    Ym = submodule(R, Yb, label="Y-block") if yb else None
    if Um.dim != X.U.dim or not hom_space(X.U, Um).has_invertible():
        raise DecomposeFailure("the U-block of the restriction is not isomorphic to U")
    for g in y_nus:
        if not d.dominance_lt(g, nu):
            raise DecomposeFailure(f"weight in Y has nu = {g} not strictly below nu(J,U) = {nu}")
    return RestrictionSplit(Um, Ym, Ub, Yb, nu, y_nus)


def frobenius_block(X: InducedModule) -> Mat:
    """Basis of span{t_e (x) u_i} (the first dim U coordinates)."""
    m = X.U.dim
    return Mat.from_columns([[1 if r == c else 0 for r in range(X.dim)] for c in range(m)], X.dim, X.field)


def frobenius_check(X: InducedModule) -> bool:
    """span{t_e (x) u_i} is H_J-invariant and isomorphic to U."""
    R = restrict_to(X.module, X.J)
    B = frobenius_block(X)
    S = submodule(R, B, check=True)
    return hom_space(X.U, S).has_invertible()


def is_indecomposable_induced(X: InducedModule) -> bool:
    return is_indecomposable(X.module)
