"""The B2 standard module I({alpha}, U).

U is the 2-dimensional irreducible tempered H_{alpha}-module on which alpha
acts nilpotently, twisted by nu = alpha^vee + 2 beta^vee.  Induction gives an
8-dimensional module; its weights are the W^J-translates of the weight of U,
and restriction back to H_J splits off a copy of U.
"""
from ghfilt import cases
from ghfilt.induce import induce, restrict_decompose, weight_census
from ghfilt.modrep import is_indecomposable, is_tempered

d = cases.b2()
U = cases.b2_U()
print("U tempered, nu(U) =", is_tempered(U))

X = induce(d, ["alpha"], U)
print("dim I(J,U) =", X.dim)
print("basis:", [X.label_str(k) for k in range(X.dim)])
for e in weight_census(X):
    print("  weight", [str(x) for x in e.weight], "multiplicity", e.multiplicity)

split = restrict_decompose(X)
print("restriction to H_J: U-block dim", split.u_block.dim, "+ Y-block dim", split.y_block.dim)
print("Y-block parameters nu:", [[str(x) for x in g] for g in split.y_nus])
print("indecomposable:", is_indecomposable(X.module))
