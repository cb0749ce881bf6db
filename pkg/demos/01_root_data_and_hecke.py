"""Root data, Weyl groups and the graded Hecke algebra.

Builds the B2 root datum used in the worked examples, lists its Weyl group
and positive roots, checks the cross relation in normal form, and verifies
that the intertwining elements tau~_w do not depend on the reduced word.
"""
from ghfilt.hecke import AlgebraElement, multiply, tau_factor, tau_tilde
from ghfilt.rootsys import build_datum

d = build_datum("B2", 2)
print(d)
print("pairing alpha_i^vee(alpha_j):", [[str(x) for x in r] for r in d.P])
print("positive roots:", [d.root_name(r) for r in d.positive_roots])
print("|W| =", len(d.W), " elements:", [d.word_str(w) for w in d.W])

# cross relation t_s v - s(v) t_s = k <v, alpha^vee>
ta = AlgebraElement.t(d, d.s(0))
beta = AlgebraElement.root(d, 1)
print("t_alpha * beta  =", multiply(ta, beta))

# tau~_s^2 under the relation above
tau = tau_factor(d, 0)
print("tau~_alpha^2    =", multiply(tau, tau))

# reduced-word independence of tau~_{w0}
w0 = d.longest()
words = d.reduced_words(w0)
taus = [tau_tilde(d, w0, wd) for wd in words]
print(f"w0 has {len(words)} reduced words; tau~_w0 agrees on all of them:", all(t == taus[0] for t in taus))
print("tau~_w0 has", len(taus[0].terms), "terms, degree", taus[0].degree())
