# coding: utf-8

# # Local certificates
#
# Three local facts together force a large Galois group: an Eisenstein prime,
# a prime where one pair of roots collides (a transposition in inertia), and
# tame behaviour at a prime dividing the denominator of A.

# In[1]:

from fractions import Fraction

from odoni.certificates import (certify_eisenstein, certify_tame_infinity,
                                find_pk, verify_transposition)
from odoni.params import OdoniParams

P = OdoniParams(3, 1, Fraction(52, 7))
eis = certify_eisenstein(P, 3)
print(eis.p0, eis.verified)


# In[2]:

pk = find_pk(P, 1)
cert = verify_transposition(P, 1, pk)
print(pk, cert.double_root, cert.simple_roots, cert.lifted_quadratic_slope, cert.valid)


# The tame certificate reads root valuations off Newton polygons level by
# level. `offset_valuations` are what the polygons show; `formula_valuations`
# come from the closed form.

# In[3]:

tame = certify_tame_infinity(P, 3)
print(tame.pinf, tame.orbit_sizes)
print([str(v) for v in tame.eps_valuations])
print([str(v) for v in tame.offset_valuations])
print([str(v) for v in tame.formula_valuations])
for lv in tame.levels:
    print(lv.level, [(str(s), l) for s, l in lv.segments])
