"""
Counting linear series
======================

Castelnuovo numbers, ramified counts and Pluecker double points.
"""

from netclass import bn

for s in range(1, 6):
    g, d = 3 * s, 2 * s + 2
    print(f"g={g:2d} d={d:2d}  rho={bn.rho(g, 2, d)}  N={bn.castelnuovo(g, 2, d)}")

###############################################################################
# A cusp-like ramification (0, 0, 1) at one point of a genus 4 curve.

print(bn.count_ramified(4, 2, 5, (0, 0, 1)))
print(bn.ramification_from_vanishing((0, 2, 4)))

###############################################################################
# Nodes of the image of a general genus 6 curve under a plane sextic map.

print(bn.plucker_double_points(6, 6))
