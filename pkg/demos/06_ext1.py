"""First extensions between Langlands quotients.

For different Langlands parameters Ext^1 reduces to a Hom space out of the
maximal submodule N.  In the B2 example N maps onto Z + T1 and its radical is
T0; Ext^1(L, L) is the space of bad directions, which needs a hypothesis on U
(automatic for discrete series; here it must be assumed explicitly).
"""
from ghfilt import cases
from ghfilt.filtration import ext1_cross_dim, ext1_self_dim
from ghfilt.intertwine import langlands_quotient
from ghfilt.modrep import hom_space, one_dim_module

d = cases.b2()
Y = (d.normalize_J(["alpha"]), cases.b2_U())
sp = langlands_quotient(d, *Y)
for name, M in [("T1", cases.b2_T1()), ("Z", cases.b2_Z())]:
    print(f"dim Hom(N, {name}) =", hom_space(sp.N, M).dim)

print("Ext^1(Y, Z):", ext1_cross_dim(d, Y, cases.b2_Z_datum()).to_json())
print("Ext^1(Y, Y):", ext1_self_dim(d, *Y).to_json())
print("Ext^1(Y, Y) assuming the hypothesis:", ext1_self_dim(d, *Y, assume=True).to_json()["value"])

a = ((), one_dim_module(d, [], (1, 4)))
b = ((), one_dim_module(d, [], (3, 1)))
print("incomparable parameters (1,4), (3,1):", ext1_cross_dim(d, a, b).to_json())

a1 = cases.a1()
print("A1, I(empty, C_1), Ext^1(L, L):", ext1_self_dim(a1, [], cases.a1_U()).to_json()["value"])
