# %% [markdown]
# The codimension catalog
#
# Each entry is an exact formula. Some also carry a rational generating function.

# %%
from codimkit.pi_model import CATALOG, catalog_terms, estimate_exponent, verify_exp_closed_form

for name in CATALOG:
    print(f"{name:9s}", catalog_terms(name, 9))

# %% [markdown]
# The exponential generating functions of M2 and E (x) E have closed forms in
# modified Bessel functions. They are checked as formal power series.

# %%
print("M2 Bessel form holds:", verify_exp_closed_form("M2", 25))
print("E(x)E Bessel form holds:", verify_exp_closed_form("EtensorE", 25))

# %% [markdown]
# The growth rate settles on an integer: 4 for M2.

# %%
est = estimate_exponent(catalog_terms("M2", 501))
print(f"ratio {est.ratio:.4f}, nth root {est.root:.4f}, nearest {est.nearest}")
