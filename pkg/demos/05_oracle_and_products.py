# %% [markdown]
# Products of T-ideals, checked against brute force
#
# The product formula comes in two variants. The multilinear oracle computes
# codimensions directly, by linear algebra on all multilinear consequences of
# the generators, and only one variant agrees with it.

# %%
from codimkit.oracle import codimension
from codimkit.pi_model import DERIVED, PAPER, catalog_terms, tideal_product

K = catalog_terms("K", 6)
print("derived:", tideal_product(K, K, 6, DERIVED))
print("paper:  ", tideal_product(K, K, 6, PAPER))
print("oracle: ", [codimension("comm2", n, times="comm2") for n in range(6)])

# %% [markdown]
# The oracle also recomputes single T-ideals. For the standard polynomial s4 it
# agrees with the catalog. For the length-4 commutator it finds
# c_n(E) + 2 C(n,3) + 2 C(n,4), so the catalog entry, which lacks the
# C(n,3) term, is off from n = 3 on.

# %%
print("s4 :", [codimension("s4", n) for n in range(6)], catalog_terms("s4T", 6))
print("f4 :", [codimension("comm4", n) for n in range(7)], catalog_terms("f4T", 7))
