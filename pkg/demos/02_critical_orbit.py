# coding: utf-8

# # The critical orbit
#
# f has a critical point at aA/n. Its forward orbit c_k = f^k(aA/n) drives
# everything else: denominators follow a closed form and every numerator
# c_k^+ must be a non-square.

# In[1]:

from fractions import Fraction

from odoni.certificates import critical_orbit, denominator_closed_form, find_pk
from odoni.params import OdoniParams

P = OdoniParams(3, 1, Fraction(52, 7))
orbit = critical_orbit(P, 4)
print("c0 =", orbit.c0)


# In[2]:

for r in orbit.records:
    digits = len(str(r.ck_plus))
    print(r.k, digits, "digits", r.v2_of_ck_minus_1, r.ck_minus == denominator_closed_form(P, r.k),
          r.gcd_check, r.square_check)


# A prime dividing c_k^+ to odd order is what the transposition certificate
# needs.

# In[3]:

for k in range(1, 5):
    print(k, find_pk(P, k, orbit=orbit))
