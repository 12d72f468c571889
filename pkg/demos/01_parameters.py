# coding: utf-8

# # Choosing parameters
#
# The family is f = X^a (X - A)^(n-a) + A. We pick the exponent a from n,
# then search for rational A that pass every local hypothesis.

# In[1]:

from fractions import Fraction

from odoni.params import OdoniParams, check_hypotheses, choose_a, exponent_rule, search_A

for n in range(2, 13):
    a = choose_a(n)
    print(n, a, exponent_rule(n, a))


# A search returns candidates ordered by height, each with the report that
# accepted it.

# In[2]:

for A, report in search_A(3, 1, (), 10 ** 4, 5):
    print(A, report.p0, report.pinf)


# A failing candidate names the first hypothesis it breaks.

# In[3]:

bad = check_hypotheses(OdoniParams(3, 1, Fraction(52, 9)))
print(bad.valid, bad.first_failure)
print(bad.verdicts)
