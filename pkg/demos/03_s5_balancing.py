# %% [markdown]
# # Balancing over S5
#
# Over S5 every extdM formula has an equivalent whose depth is logarithmic in
# its number of leaves. The construction splits at a connective that holds
# about half the leaves and reassembles the halves.

# %%
import math

from basisml.boolfn import EXTDM
from basisml.formula import conj, parse, render, var
from basisml.s5 import (balance, depth_bound, eliminate_iff, prefix_table,
                        recursion_depth_bound, split)
from basisml.semantics import equivalent

# %% [markdown]
# ## Prefixes
#
# A run of negations and diamonds in front of an atom collapses to at most
# three operators. S5 has six distinct such modalities.

# %%
for pre, short in sorted(prefix_table(4).items(), key=lambda kv: (len(kv[0]), kv[0])):
    if len(pre) == 4:
        print(" ".join(pre), "->", " ".join(short) or "(empty)")
print(sorted(set(prefix_table().values()), key=len))

# %% [markdown]
# ## Splitting

# %%
phi = parse("not(not(and(and(p, q), p1)))")
s = split(phi)
print(render(s.context), "|", render(s.pivot), s.bounds_hold())

# %% [markdown]
# ## Chains

# %%
for m in (8, 16, 32, 64, 128):
    chain = var("p1")
    for j in range(2, m + 1):
        chain = conj(chain, var(f"p{j % 5 + 1}"))
    out = balance(chain)
    print(f"leaves {m:4}  depth {chain.depth:4} -> {out.depth:3}  bound {depth_bound(m):6.1f}")

# %% [markdown]
# The depth recurrence that the construction follows stays below the closed
# form bound.

# %%
print(max(recursion_depth_bound(m) - depth_bound(m) for m in range(1, 20000)))

# %% [markdown]
# ## Removing bi-implication
#
# Replacing each iff by its dM expansion at most triples the depth of a
# balanced formula.

# %%
phi = parse("iff(iff(p, q), dia(and(p1, iff(p2, p3))))", EXTDM)
dm = eliminate_iff(balance(phi))
print(phi.depth, dm.depth, 3 * depth_bound(phi.norm), equivalent(dm, phi, "S5"))
