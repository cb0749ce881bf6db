"""Jantzen, radical and socle filtrations of the B2 standard module.

The Jantzen filtration comes from the t-adic Smith form of Delta; its layers
are (3,1,1,3) with the Langlands quotient Y on top, then T1 and Z, then T0.
The radical filtration is (3,2,3) with T1 + Z in the middle, so the two
filtrations differ although they have the same layers up to regrouping.
"""
from ghfilt import cases
from ghfilt.filtration import jantzen, radical_filtration, socle_filtration
from ghfilt.oracles import sorted_exponents

rep = jantzen(cases.b2(), ["alpha"], cases.b2_U(), cases.B2_ETA)
print("SNF exponents:", sorted_exponents(rep.snf_exponents))
print("Jantzen layers:", rep.layer_dims)
for i, layer in enumerate(rep.layers):
    print(f"  JF^{i}/JF^{i + 1}:", [f.short() for f in layer.factors])

rad = radical_filtration(rep.module)
print("radical layers:", rad.layer_dims)
for i, layer in enumerate(rad.layers):
    print(f"  rad^{i}/rad^{i + 1}:", [f.short() for f in layer.factors])

soc = socle_filtration(rep.module)
print("socle layers:", soc.layer_dims)

print("eta = 0 instead:", jantzen(cases.b2(), ["alpha"], cases.b2_U(), (0, 0)).to_json()["chain_dims"])
