"""Good and bad deformation directions for an A2 principal series.

X = I(empty, C_gamma) with gamma = beta^vee/2 + 10 (beta^vee + 2 alpha^vee).
Deforming along (beta^vee + 2 alpha^vee)/2 gives JF^1 = JF^2 (a bad
direction: Delta vanishes to order >= 2 on the whole kernel), while
alpha^vee/2 gives JF^1 = N, the unique simple submodule, and JF^2 = 0.
"""
from ghfilt import cases
from ghfilt.filtration import bad_space_probe, jantzen, jf
from ghfilt.induce import induce
from ghfilt.intertwine import langlands_quotient
from ghfilt.modrep import composition_factors, fingerprint

d, U = cases.a2(), cases.a2_U()
print("weight gamma (values on alpha, beta):", [str(x) for x in cases.a2_weight()])
X = induce(d, [], U)
print("composition factors:", [fingerprint(F).short() for F in composition_factors(X.module)])

for name, eta in [("bad", cases.A2_BAD), ("good", cases.A2_GOOD)]:
    rep = jantzen(d, [], U, eta)
    print(f"{name} direction {[str(x) for x in eta]}: SNF {[str(e) for e in rep.snf_exponents]},"
          f" dims JF^0..3 = {[jf(rep, i).ncols for i in range(4)]}")

sp = langlands_quotient(d, [], U)
print("dim L =", sp.L.dim, " dim N =", sp.N.dim)
print("probe:", bad_space_probe(d, [], U, [cases.A2_BAD, cases.A2_GOOD]).to_json())
