# %% [markdown]
# Symmetric-group characters
#
# Degrees come from the hook formula and can be cross-checked against a count
# of standard tableaux. Outer products are expanded with the
# Littlewood-Richardson rule.

# %%
from codimkit.characters import count_syt, degree_of, hook_degree, lr_coefficients

print("deg chi(3,2,1) =", hook_degree((3, 2, 1)), "=", count_syt((3, 2, 1)))
prod = lr_coefficients((2, 1), (2, 1))
print(prod)
print("degree", degree_of(prod), "= C(6,3) * 2 * 2 =", 20 * 2 * 2)
