# %% [markdown]
# Exact series and the two products
#
# Sequences hold exact rationals. The LR-derived product is the binomial
# convolution: multiply exponential generating functions, read off ordinary
# coefficients. The Hadamard product is termwise.

# %%
from codimkit.rational import RationalFunction, expand_rational, hadamard_rational, lr_product_rational
from codimkit.series import hadamard_series, lr_product_seq

N = 10
ones = expand_rational(RationalFunction([1], [1, -1]), N)
powers_of_two = expand_rational(RationalFunction([1], [1, -2]), N)
print("1/(1-t) *LR 1/(1-2t):", lr_product_seq(ones, powers_of_two, N))
print("1/(1-2t) *H 1/(1-2t):", hadamard_series(powers_of_two, powers_of_two))

# %% [markdown]
# Both products keep rational functions rational. The closed form comes from
# a certified reconstruction: expand far enough and solve a Hankel system.

# %%
a = RationalFunction([1], [1, -1])
b = RationalFunction([1], [1, -2])
print("LR closed form:", lr_product_rational(a, b))
print("Hadamard closed form:", hadamard_rational(b, b))
