# Free boson partition function
#
# Z = Tr exp(-x a†a) = 1 / (1 - e^{-x}). Compare the closed form with a
# truncated trace and with a Fock-space matrix computation.

# %%
import numpy as np
from scipy.linalg import expm

from hopfdiag import free_boson_partition_function, geometric_trace

# %%
xs = [0.1, 0.5, 1.0, 2.0, 5.0]
for x in xs:
    print(f"{x:4}  closed {free_boson_partition_function(x):.15f}  trace {geometric_trace(x):.15f}")

# %%
# matrix version on a truncated Fock space
dim = 400
number = np.diag(np.arange(dim, dtype=float))
for x in xs:
    z = np.trace(expm(-x * number))
    print(f"{x:4}  fock {z:.12f}  diff {abs(z - free_boson_partition_function(x)):.2e}")

# %%
# large x: only the vacuum survives
print(free_boson_partition_function(700.0))
