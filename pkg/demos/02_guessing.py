# %% [markdown]
# Guessing recurrences and algebraic equations
#
# Every guess is fitted on a prefix and checked on held-out terms.

# %%
from math import comb

from codimkit.guessing import guess_algebraic, guess_rational
from codimkit.pi_model import catalog_terms
from codimkit.series import Sequence

rep = guess_rational(catalog_terms("f4T", 40), max_order=6, max_start=2, holdout=10)
print("c(f4T) is rational:", rep.model, "| verified on", rep.verified, "terms")

# %% [markdown]
# Catalan numbers satisfy t y^2 - y + 1 = 0.

# %%
catalan = Sequence([comb(2 * n, n) // (n + 1) for n in range(20)])
print(guess_algebraic(catalan, max_ydeg=2, max_tdeg=1).model)

# %% [markdown]
# The codimensions of 2x2 matrices are algebraic too, but their quadratic
# equation only appears once the t-degree reaches 12.

# %%
rep = guess_algebraic(catalog_terms("M2", 60), max_ydeg=2, max_tdeg=12)
print("found:", rep.found, rep.details)
