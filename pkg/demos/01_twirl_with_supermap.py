# %% [markdown]
# # Twirling a channel with a controlled-unitary supermap
#
# A qubit channel is sandwiched between the 24x24 gate `W` and its inverse on a
# qubit (x) ququart (x) qutrit register. Discarding the two ancillas leaves the
# qubit channel averaged over a 12-element group, which turns any channel into
# a depolarizing one.

# %%
import numpy as np

from supertwirl import (
    amplitude_damping,
    apply_supermap,
    build_W,
    generate_group_G,
    is_depolarizing_form,
    ptm,
    random_channel,
    twirl_average,
)

np.set_printoptions(precision=4, suppress=True)

# %%
w = build_W()
print("W acts on", w.profile.factor_dims, "with shape", w.matrix.shape)

# %% [markdown]
# Amplitude damping is not unital, so its transfer matrix has an entry in the
# first column. After the twirl only the identity block and a repeated
# diagonal remain.

# %%
e = amplitude_damping(0.1)
print("before:\n", ptm(e).real)
twirled = apply_supermap(w, e)
print("after:\n", ptm(twirled).real)
print("depolarizing form, eta:", is_depolarizing_form(ptm(twirled)))

# %% [markdown]
# The same matrix comes out of a plain group average, computed here as a check.

# %%
diffs = []
for seed in range(20):
    e = random_channel(seed, kraus_count=1 + seed % 4)
    diffs.append(np.linalg.norm(ptm(apply_supermap(w, e)) - twirl_average(generate_group_G(), e)))
print("largest distance to the group-average oracle:", max(diffs))
