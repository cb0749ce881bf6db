"""Generalized standard modules built from chain modules U^{r, eta}.

For the A1 example Delta applied to x~ = (t_s - 1/alpha) (x) (0, u) gives
1 (x) (0, (t^2+2t)/(t+1)^2 u).  The chain check compares the Langlands-type
quotient of I(J, U^r) with the Jantzen quotient JF^0/JF^r of I(J, U).
"""
from ghfilt import cases
from ghfilt.filtration import chain_theorem_check, jantzen_from_delta, jf
from ghfilt.intertwine import build_delta
from ghfilt.modrep import chain_module

d = cases.a1()
U2 = chain_module(cases.a1_U(), 2, cases.A1_ETA)
D = build_delta(d, [], U2, cases.A1_ETA)
print("Delta(x~) =", [x.canonical() for x in D.matrix.apply(cases.a1_chain_element(D))])
rep = jantzen_from_delta(D)
print("dims JF^0..3:", [jf(rep, i).ncols for i in range(4)])

for label, args in [("A1, r=2", (cases.a1(), [], cases.a1_U(), cases.A1_ETA, 2)),
                    ("B2, r=2", (cases.b2(), ["alpha"], cases.b2_U(), cases.B2_ETA, 2)),
                    ("B2, r=3", (cases.b2(), ["alpha"], cases.b2_U(), cases.B2_ETA, 3)),
                    ("A2 bad, r=2", (cases.a2(), [], cases.a2_U(), cases.A2_BAD, 2))]:
    res = chain_theorem_check(*args)
    print(f"{label}: parts {res.parts}  passed={res.passed}")
