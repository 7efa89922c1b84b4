# Diagrams for the product formula
#
# F_n = sum over pairs of set partitions of prod L_{white degree} prod V_{black degree}.
# Grouping the pairs by bipartite multigraph shape gives the diagram expansion.

# %%
from fractions import Fraction

from hopfdiag import (
    bell_number,
    connected_sums,
    enumerate_bell_diagrams,
    enumerate_diag_diagrams,
    pfi_by_diagrams,
    pfi_by_series,
    series_log,
    to_dot,
)

# %%
# shapes with one-line white spots, labelled by integer partitions
for n in (1, 2, 3):
    table = enumerate_bell_diagrams(n)
    print(n, [(lam.parts, m) for lam, m in table], "total", sum(m for _, m in table))

# %%
# full diagram census: multiplicities add up to B(n)^2
for n in range(1, 6):
    diags = enumerate_diag_diagrams(n)
    print(n, len(diags), "diagrams", len(diags.connected()), "connected",
          diags.total(), "=", bell_number(n) ** 2)

# %%
for d, m in enumerate_diag_diagrams(2).items():
    print(m, d.mult, "white", d.white_degrees, "black", d.black_degrees)

# %% [markdown]
# The same coefficients come out of the differential operator acting on
# exp(sum V_s y^s / s!). Weights below are arbitrary rationals.

# %%
L = [Fraction(1, 2), Fraction(-3), Fraction(2, 5)]
V = [Fraction(1), Fraction(4, 3), Fraction(-1, 2)]
N = 5
print("diagrams", [str(c) for c in pfi_by_diagrams(N, L, V).coeffs])
print("series  ", [str(c) for c in pfi_by_series(N, L, V).coeffs])

# %%
# log F keeps only the connected diagrams
print("log F    ", [str(c) for c in series_log(pfi_by_series(N, L, V)).coeffs])
print("connected", [str(c) for c in connected_sums(N, L, V).coeffs])

# %%
d = next(iter(enumerate_diag_diagrams(3).connected()))
print(to_dot(d, "example"))
