"""Jantzen, radical and socle filtrations; bad directions; Ext^1 dimensions.

Jantzen filtration.  With L * Delta * R = diag(t^{e_j}) the t-adic Smith
form of the intertwiner, the columns c_j of R are a basis of the domain over
the local ring Q[t]_(t) adapted to Delta, and

    JF^i = span_Q { c_j(0) : e_j >= i }

inside I(J, U) (the domain at t = 0).  Columns with e_j = inf span the
kernel of Delta over Q(t) and lie in every JF^i (the "stabilized tail").

Radical/socle.  rad(A) of the image algebra A of H in End(M) is the kernel
of the trace form; rad^i(M) = rad(A)^i M.  The socle series of M is read off
the radical series of the bullet dual: soc^i(M) = ann(rad^i(M^bullet)).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Sequence

from .exact import (INF, QQ, Mat, Q, contains_span, format_exponent, kernel, rat_str, rref, same_span,
                    span_basis, t_adic_snf, t_valuation)
from .induce import InducedModule
from .intertwine import (Intertwiner, SingularNormalization, Specialization, build_delta,
                         langlands_quotient, specialize_zero)
from .modrep import (FactorFingerprint, FinModule, annihilator, bullet_dual, chain_module,
                     composition_factors, fingerprint, hom_space, image_algebra, is_discrete_series,
                     is_invariant, is_isomorphic, is_tempered, radical_series, socle_series_direct,
                     subquotient, submodule, trace_radical, weights, weights_json)
from .rootsys import RootDatum


class CheckFailed(AssertionError):
    def __init__(self, part, message):
        super().__init__(f"part ({part}): {message}")
        self.part = part


def canonical_basis(B: Mat) -> Mat:
    """Column basis in reduced echelon form (rows of rref(B^T))."""
    if B.ncols == 0:
        return B
    R, piv = rref(B.transpose())
    rows = [R.row(i) for i in range(len(piv))]
    return Mat.from_columns(rows, B.nrows, B.field) if rows else Mat.zeros(B.nrows, 0, B.field)


def _zero(n):
    return Mat.zeros(n, 0)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class Layer:
    dim: int
    weights: list
    factors: List[FactorFingerprint]

    def to_json(self):
        return {"dim": self.dim, "weights": self.weights,
                "factors": [f.to_json() for f in self.factors]}


@dataclass
class FiltrationReport:
    kind: str
    module: FinModule
    chain: List[Mat]
    layers: List[Layer]
    eta: tuple | None = None
    snf_exponents: list | None = None
    stabilized_tail: Mat | None = None

    @property
    def layer_dims(self):
        return tuple(l.dim for l in self.layers)

    @property
    def stabilized_tail_dim(self):
        return self.stabilized_tail.ncols if self.stabilized_tail is not None else 0

    def factor_multiset(self):
        return sorted((f for l in self.layers for f in l.factors), key=_fp_key)

    def to_json(self):
        out = {
            "kind": self.kind,
            "layers": [l.to_json() for l in self.layers],
            "chain_dims": [B.ncols for B in self.chain],
        }
        if self.kind == "jantzen":
            out["eta"] = [rat_str(x) for x in self.eta]
            out["snf_exponents"] = [format_exponent(e) for e in self.snf_exponents]
            out["stabilized_tail_dim"] = self.stabilized_tail_dim
        return out


def _fp_key(f: FactorFingerprint):
    return (f.dim, f.weights, f.w_character or (), f.central_character)


def _layer(M: FinModule, big: Mat, small: Mat) -> Layer:
    Q_ = subquotient(M, big, small)
    fps = [fingerprint(F) for F in composition_factors(Q_)]
    fps.sort(key=_fp_key)
    return Layer(Q_.dim, weights_json(weights(Q_)), fps)


# ---------------------------------------------------------------------------
# Jantzen
# ---------------------------------------------------------------------------

def jantzen_from_delta(D: Intertwiner, spec: Specialization | None = None) -> FiltrationReport:
    exps, _, R = t_adic_snf(D.matrix)
    spec = spec or specialize_zero(D)
    X0 = spec.domain0
    n = X0.dim
    R0 = R.at_zero()
    # Delta applied to each lifted column has exactly the SNF valuation
    DR = D.matrix @ R
    for j, e in enumerate(exps):
        col = DR.column(j)
        v = min((t_valuation(x) for x in col), default=INF)
        if v != e:
            raise AssertionError(f"column {j}: valuation {v} != SNF exponent {e}")
    finite = [e for e in exps if e != INF]
    top = max(finite, default=-1)
    chain = []
    for i in range(top + 2):
        cols = [R0.column(j) for j, e in enumerate(exps) if e >= i]
        B = canonical_basis(span_basis(cols, n)) if cols else _zero(n)
        if not is_invariant(X0, B):
            raise AssertionError(f"JF^{i} is not a submodule")
        chain.append(B)
    tail = chain[-1]
    layers = [_layer(X0, chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    return FiltrationReport("jantzen", X0, chain, layers, D.eta, list(exps), tail)


def jantzen(datum: RootDatum, J, U: FinModule, eta, allow_nontempered=False) -> FiltrationReport:
    D = build_delta(datum, J, U, eta, allow_nontempered=allow_nontempered)
    return jantzen_from_delta(D)


def jf(report: FiltrationReport, i: int) -> Mat:
    """JF^i, constant beyond the last computed index."""
    if i < len(report.chain):
        return report.chain[i]
    return report.chain[-1]


# ---------------------------------------------------------------------------
# radical and socle
# ---------------------------------------------------------------------------

def radical_filtration(M: FinModule) -> FiltrationReport:
    chain, R = radical_series(M)
    chain = [canonical_basis(B) for B in chain]
    for i in range(len(chain) - 1):
        # rad(A) kills each layer: rad(A) rad^i M lies in rad^{i+1} M
        for X in R:
            if not contains_span(chain[i + 1], X @ chain[i]):
                raise AssertionError("radical layer is not semisimple")
    layers = [_layer(M, chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    return FiltrationReport("radical", M, chain, layers)


def socle_filtration(M: FinModule, cross_check: bool = True) -> FiltrationReport:
    """soc^i(M) = ann(rad^i(M^bullet)); increasing chain 0 = soc^0 < soc^1 < ..."""
    Mb = bullet_dual(M)
    rchain, _ = radical_series(Mb)
    chain = [canonical_basis(annihilator(B, M.dim)) for B in rchain]
    for B in chain:
        if not is_invariant(M, B):
            raise AssertionError("socle term is not a submodule")
    if cross_check:
        direct = socle_series_direct(M)
        if len(direct) != len(chain) or not all(same_span(a, b) for a, b in zip(direct, chain)):
            raise AssertionError("socle series via the bullet dual differs from ker rad(A)^i")
    layers = [_layer(M, chain[i + 1], chain[i]) for i in range(len(chain) - 1)]
    return FiltrationReport("socle", M, chain, layers)


def composition_fingerprints(M: FinModule) -> List[FactorFingerprint]:
    """Fingerprints of all composition factors, refining the radical layers."""
    rep = radical_filtration(M)
    return rep.factor_multiset()


# ---------------------------------------------------------------------------
# bad directions
# ---------------------------------------------------------------------------

def is_bad_direction(datum: RootDatum, J, U: FinModule, eta) -> bool:
    rep = jantzen(datum, J, U, eta)
    return same_span(jf(rep, 1), jf(rep, 2))


@dataclass
class ProbeResult:
    bad: list
    good: list
    singular: list
    span_dim: int
    closure_violations: list
    exact: bool = False

    def to_json(self):
        vec = lambda v: [rat_str(Q(x)) for x in v]
        return {
            "bad": [vec(v) for v in self.bad],
            "good": [vec(v) for v in self.good],
            "singular": [vec(v) for v in self.singular],
            "bad_span_dim_lower_bound": self.span_dim,
            "exact": self.exact,
            "closure_violations": [[vec(a), vec(b)] for a, b in self.closure_violations],
        }


def bad_space_probe(datum: RootDatum, J, U: FinModule, directions: Sequence) -> ProbeResult:
    """Classify directions; test closure of the bad ones under sums and scaling."""
    J = datum.normalize_J(J)
    cache = {}

    def classify(eta):
        key = tuple(Q(x) for x in eta)
        if key not in cache:
            if all(x == 0 for x in key):
                cache[key] = "bad"  # eta = 0: JF^1 = JF^2 = N
            else:
                try:
                    cache[key] = "bad" if is_bad_direction(datum, J, U, key) else "good"
                except SingularNormalization:
                    cache[key] = "singular"
        return cache[key]

    dirs = [tuple(Q(x) for x in v) for v in directions]
    bad, good, sing = [], [], []
    for v in dirs:
        {"bad": bad, "good": good, "singular": sing}[classify(v)].append(v)
    violations = []
    nonzero_bad = [v for v in bad if any(x != 0 for x in v)]
    for a, b in combinations(nonzero_bad, 2):
        s = tuple(x + y for x, y in zip(a, b))
        if classify(s) == "good":
            violations.append((a, b))
    for a in nonzero_bad:
        for c in (Q(2), Q(-1), Q(1) / 3):
            if classify(tuple(c * x for x in a)) == "good":
                violations.append((a, tuple(c for _ in a)))
    span = span_basis([list(v) for v in nonzero_bad], datum.n).ncols if nonzero_bad else 0
    perp_dim = datum.n - len(J)
    exact = perp_dim == 1 and bool(dirs) and any(any(x != 0 for x in v) for v in dirs) and not sing
    return ProbeResult(bad, good, sing, span, violations, exact)


# ---------------------------------------------------------------------------
# Ext^1
# ---------------------------------------------------------------------------

VERIFIED = "verified-discrete-series"
ASSUMED = "assumed"
UNVERIFIED = "hypothesis-unverified"


def ss_hypothesis_status(datum, J, U, assume=False) -> str:
    if not datum.normalize_J(J) or is_discrete_series(U, J):
        return VERIFIED
    return ASSUMED if assume else UNVERIFIED


@dataclass
class Ext1Result:
    value: int | None
    status: str
    case: str = "self"
    probe: ProbeResult | None = None

    def to_json(self):
        out = {"value": self.value, "status": self.status, "case": self.case}
        if self.probe is not None:
            out["probe"] = self.probe.to_json()
        return out


def ext1_self_dim(datum: RootDatum, J, U: FinModule, directions: Sequence = (),
                  assume: bool = False) -> Ext1Result:
    """dim Ext^1(L, L) = dim V_bad (lower bound from probing)."""
    status = ss_hypothesis_status(datum, J, U, assume)
    if status == UNVERIFIED:
        return Ext1Result(None, status)
    dirs = list(datum.perp_basis(J)) + [tuple(Q(x) for x in v) for v in directions]
    probe = bad_space_probe(datum, J, U, dirs)
    return Ext1Result(probe.span_dim, status, "self", probe)


def _nu(datum, J, U):
    ok, nu = is_tempered(U, J)
    if not ok:
        raise ValueError("Ext^1 computation needs tempered Langlands data")
    return nu


def ext1_cross_dim(datum: RootDatum, data1, data2, assume: bool = False,
                   directions: Sequence = ()) -> Ext1Result:
    """dim Ext^1(L(J1,U1), L(J2,U2)) by comparing Langlands parameters."""
    (J1, U1), (J2, U2) = data1, data2
    J1, J2 = datum.normalize_J(J1), datum.normalize_J(J2)
    nu1, nu2 = _nu(datum, J1, U1), _nu(datum, J2, U2)
    if nu1 == nu2:
        same = J1 == J2 and is_isomorphic(U1, U2)
        if same:
            r = ext1_self_dim(datum, J1, U1, directions, assume)
            r.case = "equal-nu-isomorphic"
            return r
        s1 = ss_hypothesis_status(datum, J1, U1, assume)
        s2 = ss_hypothesis_status(datum, J2, U2, assume)
        if UNVERIFIED in (s1, s2):
            return Ext1Result(None, UNVERIFIED, "equal-nu-distinct")
        status = VERIFIED if s1 == s2 == VERIFIED else ASSUMED
        return Ext1Result(0, status, "equal-nu-distinct")
    if datum.dominance_lt(nu2, nu1):
        sp1 = langlands_quotient(datum, J1, U1, nu1)
        sp2 = langlands_quotient(datum, J2, U2, nu2)
        return Ext1Result(hom_space(sp1.N, sp2.L).dim if sp1.N.dim else 0, "not-required", "nu2<nu1")
    if datum.dominance_lt(nu1, nu2):
        sp1 = langlands_quotient(datum, J1, U1, nu1)
        sp2 = langlands_quotient(datum, J2, U2, nu2)
        return Ext1Result(hom_space(sp2.N, sp1.L).dim if sp2.N.dim else 0, "not-required", "nu1<nu2")
    return Ext1Result(0, "not-required", "incomparable")


# ---------------------------------------------------------------------------
# generalized standard modules U^{r, eta}
# ---------------------------------------------------------------------------

@dataclass
class ChainReport:
    r: int
    parts: dict
    details: dict

    @property
    def passed(self):
        return all(self.parts.values())

    def to_json(self):
        return {"r": self.r, "parts": self.parts, "details": self.details, "passed": self.passed}


def _iota(X_small: InducedModule, X_big: InducedModule) -> Mat:
    """(u_1..u_{r-1}) -> (0, u_1, ..., u_{r-1}) on every coset block."""
    m = X_big.U.dim - X_small.U.dim  # dim U
    ms, mb = X_small.U.dim, X_big.U.dim
    nblocks = len(X_small.coset_reps)
    cols = []
    for b in range(nblocks):
        for i in range(ms):
            v = [0] * (nblocks * mb)
            v[b * mb + m + i] = 1
            cols.append(v)
    return Mat.from_columns(cols, nblocks * mb)


def chain_theorem_check(datum: RootDatum, J, U: FinModule, eta, r: int) -> ChainReport:
    """Checks for I(J, U^{r,eta}): iota is injective on L, the quotient
    L(U^r)/L(U^{r-1}) matches JF^0/JF^r(J,U), the multiplicity of L(J,U) in
    L(U^r) equals that in I(J,U^r), and L(U^r) is self bullet-dual."""
    if r < 2:
        raise ValueError("r >= 2 required")
    eta = tuple(Q(x) for x in eta)
    if all(x == 0 for x in eta):
        raise ValueError("eta must be nonzero")
    J = datum.normalize_J(J)
    nu = _nu(datum, J, U)
    small = chain_module(U, r - 1, eta)
    big = chain_module(U, r, eta)
    sp_s = langlands_quotient(datum, J, small, nu)
    sp_b = langlands_quotient(datum, J, big, nu)
    from .induce import induce
    Xs = induce(datum, J, small)
    Xb = induce(datum, J, big)
    iota = _iota(Xs, Xb)
    parts, details = {}, {}
    # (1) iota is an H-map and induces L(U^{r-1}) -> L(U^r) injectively
    ok_map = all(iota @ gs == gb @ iota for gs, gb in
                 zip(sp_s.domain0.generator_matrices(), sp_b.domain0.generator_matrices()))
    comp = sp_b.map0 @ iota
    K = kernel(comp)
    ok1 = ok_map and same_span(K, sp_s.N_basis) if K.ncols or sp_s.N_basis.ncols else ok_map
    sub_img = span_basis(comp.columns(), comp.nrows) if comp.ncols else _zero(comp.nrows)
    ok1 = ok1 and sub_img.ncols == sp_s.L.dim
    parts["1"] = bool(ok1)
    details["dim_L_small"] = sp_s.L.dim
    details["dim_L_big"] = sp_b.L.dim
    # (2) L(U^r)/iota L(U^{r-1}) vs JF^0/JF^r(J,U)
    coords = _coords_in(sp_b.L_basis, sub_img)
    quot = subquotient(sp_b.L, Mat.identity(sp_b.L.dim), coords)
    rep = jantzen(datum, J, U, eta)
    jfq = subquotient(rep.module, jf(rep, 0), jf(rep, r))
    fq = sorted((fingerprint(F) for F in composition_factors(quot)), key=_fp_key)
    fj = sorted((fingerprint(F) for F in composition_factors(jfq)), key=_fp_key)
    parts["2"] = quot.dim == jfq.dim and fq == fj
    details["dim_quotient"] = quot.dim
    details["dim_jf0_over_jfr"] = jfq.dim
    details["quotient_factors"] = [f.short() for f in fq]
    details["jf_factors"] = [f.short() for f in fj]
    # (3b) multiplicity of L(J,U) in L(U^r) equals that in I(J,U^r)
    Lfp = fingerprint(langlands_quotient(datum, J, U, nu).L)
    mL = sum(1 for F in composition_factors(sp_b.L) if fingerprint(F) == Lfp)
    mI = sum(1 for F in composition_factors(sp_b.domain0) if fingerprint(F) == Lfp)
    parts["3b"] = mL == mI
    details["multiplicity_in_L"] = mL
    details["multiplicity_in_I"] = mI
    # (4) self bullet-duality
    parts["4"] = hom_space(sp_b.L, bullet_dual(sp_b.L)).has_invertible()
    return ChainReport(r, parts, details)


def _coords_in(basis: Mat, vecs: Mat) -> Mat:
    from .exact import solve_matrix
    if vecs.ncols == 0:
        return Mat.zeros(basis.ncols, 0)
    X = solve_matrix(basis, vecs)
    if X is None:
        raise AssertionError("vectors are not in the span")
    return X
