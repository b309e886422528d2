# %% [markdown]
# Proper codimensions
#
# c_n is the binomial transform of the proper codimensions gamma_k. For the
# Grassmann algebra the proper sequence is 1, 0, 1, 0, ...

# %%
from codimkit.pi_model import catalog_terms, codim_to_proper, f5_proper_codimensions, proper_to_codim

print(codim_to_proper(catalog_terms("E", 10), 10))

# %% [markdown]
# For the T-ideal of the length-5 commutator, the proper codimensions come from
# a table of cocharacters via the hook formula.

# %%
gamma = f5_proper_codimensions(10)
print("gamma:", gamma)
print("c_n:  ", proper_to_codim(gamma, 10))
