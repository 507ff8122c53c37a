# %% [markdown]
# # The 12-element group and the single-qubit Clifford group
#
# Both groups are enumerated by closure modulo global phase. Averaging over
# either gives the same twirl, because both are unitary 2-designs.

# %%
import numpy as np

from supertwirl import generate_clifford_1q, generate_group_G, random_channel, twirl_average
from supertwirl.channels import GATES, unitary_ptm

g12 = generate_group_G()
c24 = generate_clifford_1q()
print(len(g12), "elements in G,", len(c24), "in the Clifford group")
print("G inside Clifford:", all(c24.contains(u) for u in g12))

# %%
gt = unitary_ptm(GATES["T"])
print("T has projective order 3:", np.allclose(gt @ gt @ gt, np.eye(4)))

# %%
e = random_channel(42, kraus_count=3)
print("max |G-twirl - Clifford-twirl| =", np.abs(twirl_average(g12, e) - twirl_average(c24, e)).max())
