# %% [markdown]
# # Classifying Boolean bases
#
# A basis is a finite set of truth tables. Two properties drive everything
# else: completeness (can the basis express every Boolean function?) and local
# monotonicity (is each function monotone in each argument on its own?).

# %%
from basisml.boolfn import (AND, BOT, DM, EXTDM, IFF, IMP, MAJ, NAND, OR, TOP, XOR, Basis,
                            is_affine, is_complete, is_locally_monotone, monotone_direction)

for f in (AND, OR, IMP, IFF, MAJ, NAND, XOR):
    dirs = [monotone_direction(f, i) for i in range(1, f.arity + 1)]
    print(f"{f.name:5} {f.bitstring:9} locally monotone={is_locally_monotone(f)!s:5} "
          f"affine={is_affine(f)!s:5} directions={dirs}")

# %% [markdown]
# Implication decreases in its first argument and increases in its second, so
# it still counts as locally monotone. Bi-implication goes both ways in every
# argument.

# %%
for B in (DM, EXTDM, Basis("nand", (NAND,)), Basis("mono", (AND, OR, TOP, BOT)),
          Basis("andxor", (AND, XOR, TOP))):
    print(f"{B.name:7} complete={is_complete(B)!s:5} locally monotone={B.locally_monotone}")

# %% [markdown]
# ## Representations
#
# A representation of (f, i) is a formula equivalent to f that mentions the
# variable p_i only once. Over dM these exist exactly for the arguments in
# which f is monotone; over extdM they always exist.

# %%
from basisml.errors import NotLocallyMonotone
from basisml.formula import render
from basisml.representations import repr_biimplication, repr_dm, repr_extdm, repr_negation

print(render(repr_dm(MAJ, 1).formula))
try:
    repr_dm(IFF, 1)
except NotLocallyMonotone as exc:
    print("dm:", exc)
print(render(repr_extdm(IFF, 1).formula))

# %% [markdown]
# Any complete basis can simulate negation and bi-implication with a single
# occurrence of p1 once the constants are available.

# %%
andxor = Basis("andxor", (AND, XOR, TOP, BOT))
print(render(repr_negation(Basis("nand", (NAND, TOP, BOT))).formula))
print(render(repr_biimplication(andxor).formula))
