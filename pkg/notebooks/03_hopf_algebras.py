# Hopf algebras on Bell generators and connected diagrams
#
# Both algebras are free commutative on primitive generators. The checker
# verifies the axioms on every basis monomial up to a chosen grade.

# %%
from hopfdiag import (
    BELL,
    DIAG,
    BellGenerator,
    HopfElement,
    antipode,
    check_hopf_axioms,
    check_hopf_morphism,
    coproduct,
    graded_dimension,
    phi_bell,
    phi_contract,
)

# %%
b1 = HopfElement.of(BellGenerator(1))
b2 = HopfElement.of(BellGenerator(2))
h = b1 * b1 * b2
print("h =", h)
print("coproduct terms:", len(coproduct(h).terms))
print("S(h) =", antipode(h))

# %%
print("BELL dims", [graded_dimension(BELL, n) for n in range(7)])
print("DIAG dims", [graded_dimension(DIAG, n) for n in range(5)])

# %%
for algebra, grade in ((BELL, 5), (DIAG, 4)):
    report = check_hopf_axioms(algebra, grade)
    print(algebra.name, grade, report.passed, [(r.name, r.checked) for r in report.results])

# %% [markdown]
# A connected diagram whose white spots all have degree one has a single black
# spot. Sending it to b_grade, and every other generator to zero, gives a
# surjective Hopf morphism. Sending a diagram to the product of b_s over its
# black degrees s breaks the coproduct.

# %%
good = check_hopf_morphism(phi_bell(4), 4)
print("phi_bell", good.passed, good.info)

bad = check_hopf_morphism(phi_contract(3), 3)
print("phi_contract", bad.passed, bad["coalgebra"].counterexample)
