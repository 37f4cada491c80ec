"""
From Chern character to a Porteous class
========================================

The character of M comes from Grothendieck-Riemann-Roch on the third
factor; Newton's identities give its Chern classes.
"""

from netclass import chern
from netclass.pipeline import compute_y_locus

steps = compute_y_locus(3)  # g = 9, d = 8
print("ch(M) =", steps.ch_M)
for k in (1, 2, 3):
    print(f"c{k}(M) =", steps.c_M[k])

###############################################################################
# Going back recovers the character exactly.

back = chern.chern_to_character(steps.c_M, rank=3)
assert back.total() == steps.ch_M

###############################################################################
# The 2x2 determinant and its degree.

print("[Y] =", steps.bracket)
print("deg [Y] =", steps.degree)   # 1848
