# Bell numbers, set partitions and normal ordering
#
# Set partitions are counted by Bell numbers. The same numbers show up when
# the boson number operator a†a is raised to a power and normal ordered.

# %%
from hopfdiag import (
    bell_number,
    bell_polynomial,
    coherent_expectation,
    enumerate_set_partitions,
    normal_order,
    parse_word,
    stirling2,
)

# %% [markdown]
# Stirling numbers S(n, k) split the Bell number by block count.

# %%
for n in range(8):
    row = [stirling2(n, k) for k in range(n + 1)]
    print(n, bell_number(n), row)

# %%
# the five partitions of {1, 2, 3}
for p in enumerate_set_partitions(3):
    print(p.blocks, "rgs", p.rgs())

# %% [markdown]
# Words use A for a† and a for a. Normal ordering moves every A to the left,
# picking up a commutator term at each swap.

# %%
w = parse_word("a A")
print(w, "->", normal_order(w).terms)

# %%
# (a†a)^n has coherent-state expectation B_n(y) with y = |z|^2
for n in range(1, 6):
    poly = coherent_expectation(normal_order(parse_word(" ".join(["A a"] * n))))
    coeffs = [int(c) for c in bell_polynomial(n)]
    print(n, poly.y_coeffs(), coeffs)

# %%
# at y = 1 the expectation is the Bell number
for n in range(1, 6):
    poly = coherent_expectation(normal_order("DA" * n))
    print(n, poly.evaluate(1.0).real, bell_number(n))
