# %% [markdown]
# # How many diamonds does phi_n need over T?
#
# phi_0 = p0 & dia(~p0) and phi_{n+1} = p_{(n+1) mod 2} & (p <-> dia(phi_n)).
# Expanding the bi-implication doubles the diamonds at each level. Here we
# check the first two levels by exhaustive search.

# %%
from basisml.formula import render
from basisml.semantics import (IOTA, KAPPA, fig4_model, min_diamond_search, model_check,
                               phi_n)

for n in range(3):
    print(n, render(phi_n(n)))

# %% [markdown]
# ## The separating structure
#
# kappa and iota agree on every atom, yet phi_0 holds only at kappa. So no
# diamond-free formula can be equivalent to phi_0.

# %%
S = fig4_model()
print(S.as_text())
print(model_check(S, KAPPA, phi_n(0)), model_check(S, IOTA, phi_n(0)))

# %% [markdown]
# ## Exhaustive search

# %%
for n, dias in ((0, 0), (0, 1), (1, 1)):
    res = min_diamond_search(phi_n(n), "T", dias, 9)
    found = render(res.found) if res.found is not None else "-"
    print(f"phi_{n} with <= {dias} diamonds, size <= 9: {res.verdict:10} {found} "
          f"({res.candidates} candidates, {res.classes} classes)")

# %% [markdown]
# phi_1 itself uses two diamonds, and nothing of size at most 9 with one
# diamond matches it over T.
