"""The normalized intertwining operator Delta_{t eta}.

Delta_{t eta} : I(J, U_{t eta}) -> I(theta(J), phi(U_{t eta})) is the H-map with

    Delta(1 (x) u) = tau~_{w} (x) ( prod_{gamma in R(w)} gamma^{-1} ) phi(u),

where w is the longest element of W^{theta(J)} and R(w) the positive roots
made negative by w^{-1}.  The root inverses are inverse action matrices on
phi(U_{t eta}) over Q(t) (they commute, so the order is irrelevant).  The
operator is extended by Delta(t_x (x) u) = t_x Delta(1 (x) u), and both
H-equivariance and holomorphy at t = 0 are asserted as exact identities.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List

from .exact import QQ, QT, Mat, Q, image, kernel, t_valuation
from .hecke import tau_tilde
from .induce import InducedModule, induce, induce_deformed
from .modrep import FinModule, deform, is_tempered, is_indecomposable, submodule, twist_delta
from .rootsys import RootDatum


class SingularNormalization(ArithmeticError):
    pass


class EquivarianceViolated(AssertionError):
    pass


class NotHolomorphic(AssertionError):
    pass


class NotStandardInput(ValueError):
    pass


@dataclass
class Intertwiner:
    domain: InducedModule
    codomain: InducedModule
    matrix: Mat
    eta: tuple
    w: object                 # longest element of W^{theta(J)}
    normalization: List[tuple]  # roots (simple-root coordinates) inverted on phi(U)
    norm_matrix: Mat

    @property
    def datum(self) -> RootDatum:
        return self.domain.datum

    def image_of(self, vec):
        return self.matrix.apply(vec)

    def min_valuation(self):
        return self.matrix.min_valuation()

    def to_json(self):
        d = self.datum
        return {
            "eta": [str(x) for x in self.eta],
            "w": d.word_str(self.w),
            "normalization_roots": [d.root_name(r) for r in self.normalization],
            "domain_basis": [self.domain.label_str(k) for k in range(self.domain.dim)],
            "codomain_basis": [self.codomain.label_str(k) for k in range(self.codomain.dim)],
            "matrix": self.matrix.canonical_rows(),
        }


def inverted_roots(d: RootDatum, w):
    """R(w) = {gamma > 0 : w^{-1}(gamma) < 0}, in height order."""
    winv = d.inv(w)
    out = []
    for r in d.positive_roots:
        img = winv.act(r)
        if all(x <= 0 for x in img):
            out.append(r)
    return out


def check_standard_input(d: RootDatum, J, U: FinModule):
    """(J, U) must be tempered and indecomposable (a generalized standard datum)."""
    ok, nu = is_tempered(U, J)
    if not ok:
        raise NotStandardInput(f"U is not tempered for J = {J}")
    if not is_indecomposable(U):
        raise NotStandardInput("U is not indecomposable")
    return nu


def build_delta(datum: RootDatum, J, U: FinModule, eta, allow_nontempered: bool = False,
                check: bool = True) -> Intertwiner:
    d = datum
    J = d.normalize_J(J)
    if not allow_nontempered:
        check_standard_input(d, J, U)
    eta = tuple(Q(x) for x in eta)
    Ut = deform(U, eta)
    th = d.theta_maps(J)
    phi = th["phi_elt"]
    tJ = th["theta_of_J"]
    phiU = twist_delta(Ut, phi)
    X = induce(d, J, Ut)
    X.eta = eta
    Y = induce(d, tJ, phiU)
    Y.eta = eta
    w = max(d.coset_minima(tJ), key=lambda x: x.length)
    roots = inverted_roots(d, w)
    m = U.dim
    Nmat = Mat.identity(m, QT)
    for r in roots:
        A = phiU.v_action(r).to_field(QT)
        if A.det() == 0:
            raise SingularNormalization(
                f"root {d.root_name(r)} acts non-invertibly on phi(U_t eta); perturb eta")
        Nmat = Nmat @ A.inverse()
    T = Y.module.algebra_action(tau_tilde(d, w))
    # Delta(1 (x) u_i): the block column at t_e
    first = Mat.zeros(Y.dim, m, QT).with_block(0, 0, Nmat)
    first = T @ first
    cols = []
    for x in X.coset_reps:
        img = Y.module.t_action(x) @ first
        cols += img.columns()
    D = Mat.from_columns(cols, Y.dim, QT)
    Dl = Intertwiner(X, Y, D, eta, w, roots, Nmat)
    if check:
        assert_equivariant(Dl)
        assert_holomorphic(Dl)
    return Dl


def assert_equivariant(D: Intertwiner):
    for (name, gx), gy in zip(D.domain.module.generators(), D.codomain.module.generator_matrices()):
        if not (D.matrix @ gx.to_field(QT) == gy.to_field(QT) @ D.matrix):
            raise EquivarianceViolated(f"Delta does not commute with {name}")
    return True


def assert_holomorphic(D: Intertwiner):
    v = D.matrix.min_valuation()
    if v < 0:
        raise NotHolomorphic(f"Delta has a pole of order {-v} at t = 0")
    return True


@dataclass
class Specialization:
    map0: Mat
    domain0: FinModule
    codomain0: FinModule
    L: FinModule
    N: FinModule
    L_basis: Mat      # in codomain0
    N_basis: Mat      # in domain0


def _at_zero_module(M: FinModule) -> FinModule:
    refl = {j: m.at_zero() for j, m in M.refl.items()}
    vm = [m.at_zero() for m in M.vmats]
    return FinModule(M.datum, M.J, refl, vm, label=f"{M.label}|t=0")


def specialize_zero(D: Intertwiner) -> Specialization:
    """Delta at t = 0, its image L(J,U) and its kernel N(J,U)."""
    M0 = D.matrix.at_zero()
    X0 = _at_zero_module(D.domain.module)
    Y0 = _at_zero_module(D.codomain.module)
    Lb = image(M0)
    Nb = kernel(M0)
    L = submodule(Y0, Lb, label="L") if Lb.ncols else None
    N = submodule(X0, Nb, label="N") if Nb.ncols else None
    if L is None:
        raise AssertionError("Delta vanishes at t = 0")
    if N is None:
        N = FinModule(X0.datum, X0.J, {j: Mat.zeros(0, 0) for j in X0.J},
                      [Mat.zeros(0, 0)] * X0.datum.n, label="N", check=False)
    assert L.dim + N.dim == X0.dim
    return Specialization(M0, X0, Y0, L, N, Lb, Nb)


def langlands_quotient(datum: RootDatum, J, U: FinModule, nu=None,
                       allow_nontempered: bool = False) -> Specialization:
    """L(J,U) and N(J,U) via Delta with eta = 0; eta = nu if that normalization is singular."""
    zero = tuple(0 for _ in range(datum.n))
    try:
        D = build_delta(datum, J, U, zero, allow_nontempered=allow_nontempered)
    except SingularNormalization:
        if nu is None:
            ok, nu = is_tempered(U, J)
        D = build_delta(datum, J, U, nu, allow_nontempered=allow_nontempered)
    return specialize_zero(D)
