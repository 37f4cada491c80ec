"""
Rewriting in the cohomology of C x C x C x W
============================================

Products of the classes eta, gamma and theta reduce to a normal form.
"""

from netclass.ring import fiber_integrate_3, standard_presentation

# s = 2 gives curves of genus h = 5
P = standard_presentation(2)
eta1, eta3, g12, g13, g23, g34, theta = P.gens(
    "eta1", "eta3", "gamma12", "gamma13", "gamma23", "gamma34", "theta"
)

print(g12 * g12)          # -10 eta1 eta2
print(g13 * g23)          # a shared last index collapses to eta3 gamma12
print(g34 * g34)          # -2 eta3 theta
print(theta ** 3)         # beyond the W cap, so 0

###############################################################################
# Text form round-trips through ``parse``.

x = 1 + g13 - eta1 * theta / 2
text = str(x)
print(text)
assert P.parse(text) == x

###############################################################################
# Integrating over the third factor keeps the eta3 part.

print(fiber_integrate_3(P, eta3 * theta + g34 * g34))
