"""Worked examples used throughout the tests, demos and the verification suite.

* ``b2_standard``: B2 with k = 2, J = {alpha}, U the 2-dimensional tempered
  H_J-module with V_J-weight 0, twisted by nu = alpha^vee + 2 beta^vee.
  In value coordinates (gamma(alpha), gamma(beta)) the weight of U is (0, 2).
* ``a1_chain``: A1 with k = 1, U = C with weight alpha^vee / 2 (value 1),
  direction eta = alpha^vee / 2.
* ``a2_principal``: A2 with k = 1, J = empty, the character with weight
  beta^vee/2 + 10 (beta^vee + 2 alpha^vee); bad direction
  (beta^vee + 2 alpha^vee)/2 and good direction alpha^vee / 2.

Coweights are written as their values on the simple roots throughout.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import List

from .exact import QT, Mat, Q, RatFunT, solve
from .hecke import tau_tilde
from .intertwine import Intertwiner, build_delta
from .modrep import FinModule, make_module, one_dim_module
from .rootsys import RootDatum, build_datum, datum_from_json


@lru_cache(maxsize=None)
def datum(kind: str, k) -> RootDatum:
    """Shared root data (Hom computations need the same datum object)."""
    return build_datum(kind, Q(k))


# ---------------------------------------------------------------------------
# B2
# ---------------------------------------------------------------------------

B2_NU = (Q(0), Q(2))       # alpha^vee + 2 beta^vee
B2_ETA = B2_NU


def b2() -> RootDatum:
    return datum("B2", 2)


def b2_U() -> FinModule:
    """Tempered U over J = {alpha}: alpha nilpotent, beta acting by 2 + nilpotent."""
    return make_module(b2(), ["alpha"], {"alpha": [[1, 4], [0, -1]]},
                       [[[0, 0], [1, 0]], [[2, 0], [-1, 2]]], label="U")


def b2_Z() -> FinModule:
    return one_dim_module(b2(), ["alpha", "beta"], (2, -2), label="Z")


def b2_T1() -> FinModule:
    return one_dim_module(b2(), ["alpha", "beta"], (-2, 2), label="T1")


def b2_Z_datum():
    """Z as a Langlands datum: ({beta}, C_(2,-2))."""
    return (b2().normalize_J(["beta"]), one_dim_module(b2(), ["beta"], (2, -2), label="Z_beta"))


def b2_T1_datum():
    """T1 as a Langlands datum, read off from langlands_decompose of its weight."""
    d = b2()
    J, _, _, _ = d.langlands_decompose((Q(-2), Q(2)))
    return (J, one_dim_module(d, J, (-2, 2), label="T1_J"))


# ---------------------------------------------------------------------------
# A1
# ---------------------------------------------------------------------------

A1_ETA = (Q(1),)


def a1() -> RootDatum:
    return datum("A1", 1)


def a1_U() -> FinModule:
    return one_dim_module(a1(), [], (1,), label="C_1")


def a1_chain_element(D: Intertwiner) -> list:
    """x~ = (t_s - 1/alpha) (x) (0, u) in I(empty, U^{2,eta}_{t eta})."""
    X = D.domain
    Ut = X.U
    u = [RatFunT(0), RatFunT(1)]
    inv_alpha = Ut.vmats[0].inverse().apply(u)
    s = a1().s(0)
    vec = [RatFunT(0)] * X.dim
    for i, c in enumerate(u):
        vec[X.index(s, i)] = vec[X.index(s, i)] + c
    for i, c in enumerate(inv_alpha):
        vec[X.index(a1().e, i)] = vec[X.index(a1().e, i)] - c
    return vec


# ---------------------------------------------------------------------------
# A2
# ---------------------------------------------------------------------------

A2_C = 10
A2_BAD = (Q("3/2"), Q(0))      # (beta^vee + 2 alpha^vee) / 2
A2_GOOD = (Q(1), Q("-1/2"))    # alpha^vee / 2


def a2() -> RootDatum:
    return datum("A2", 1)


def a2_weight(C=A2_C):
    """beta^vee/2 + C (beta^vee + 2 alpha^vee) in value coordinates."""
    half_beta = (Q("-1/2"), Q(1))
    long = (Q(3), Q(0))
    return tuple(h + C * l for h, l in zip(half_beta, long))


def a2_U(C=A2_C) -> FinModule:
    return one_dim_module(a2(), [], a2_weight(C), label=f"C_gamma(C={C})")


# ---------------------------------------------------------------------------
# stored golden images for the B2 intertwiner
# ---------------------------------------------------------------------------

def load_fixture(name: str, directory=None) -> dict:
    if directory is not None:
        with open(f"{directory}/{name}", encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(resources.files("ghfilt").joinpath("fixtures", name).read_text(encoding="utf-8"))


@dataclass
class ImageCheck:
    name: str
    source: str
    u: int
    target: str
    expected: List[str]
    computed: List[str] | None
    passed: bool
    sign: int | None = None   # computed = sign * expected, when such a sign exists

    def to_json(self):
        return {"name": self.name, "source": self.source, "u": self.u, "target": self.target,
                "expected": self.expected, "computed": self.computed, "passed": self.passed,
                "ratio_to_printed": self.sign}


def _canon(x) -> str:
    if isinstance(x, str):
        x = RatFunT.parse(x)
    return x.canonical()


def delta_image_coefficients(D: Intertwiner, source_word, u_index: int, target_word):
    """Coefficients (c1, c2) with Delta(tau~_source (x) u_i) = sum_j c_j tau~_target (x) u^j_t.

    Returns None when the image is not of that form.
    """
    d = D.datum
    X, Y = D.domain, D.codomain
    src = d.from_word(source_word)
    tgt = d.from_word(target_word)
    m = X.U.dim
    e = [RatFunT(0)] * X.dim
    e[X.index(d.e, u_index)] = RatFunT(1)
    vec = X.act(tau_tilde(d, src), e)
    image = D.matrix.apply(vec)
    Ttgt = Y.module.algebra_action(tau_tilde(d, tgt))
    cols = []
    for j in range(m):
        base = [RatFunT(0)] * Y.dim
        ut = D.norm_matrix.column(j)
        for i in range(m):
            base[Y.index(d.e, i)] = ut[i]
        cols.append(Ttgt.apply(base))
    sol = solve(Mat.from_columns(cols, Y.dim, QT), image)
    return sol


def b2_delta_image_checks(directory=None) -> List[ImageCheck]:
    data = load_fixture("b2_delta_images.json", directory)
    d = b2()
    if datum_from_json(data["datum"]).P != d.P:
        raise ValueError("fixture datum does not match the B2 example")
    J = d.normalize_J(data["J"])
    eta = tuple(Q(x) for x in data["eta"])
    D = build_delta(d, J, b2_U(), eta)
    out = []
    for eq in data["equations"]:
        src = [d.names.index(x) for x in eq["source"]]
        tgt = [d.names.index(x) for x in eq["target"]]
        expected = [_canon(c) for c in eq["coefficients"]]
        sol = delta_image_coefficients(D, src, eq["u"] - 1, tgt)
        computed = None if sol is None else [_canon(c) for c in sol]
        sign = None
        if sol is not None:
            exp_r = [RatFunT.parse(c) for c in eq["coefficients"]]
            for s in (1, -1):
                if all(a == b * s for a, b in zip(sol, exp_r)):
                    sign = s
        out.append(ImageCheck(eq["name"], ".".join(eq["source"]) or "e", eq["u"],
                              ".".join(eq["target"]) or "e", expected, computed,
                              computed == expected, sign))
    return out
