# coding: utf-8

# # Frobenius statistics
#
# Factor iterates of X^2 - X + 1 modulo every good prime and compare the
# proportion with a root against the prediction from the full tree group.

# In[1]:

from odoni.chebotarev import compare_to_group, density_from_samples, sample_primes
from odoni.poly import X

f = X ** 2 - X + 1
samples = sample_primes(f, 3, 20000, workers=2)
print(len(samples), samples[0])


# In[2]:

rep = density_from_samples(samples, 2, 3, 20000)
for e, p, s in zip(rep.estimates, rep.predictions, rep.std_errors):
    print(round(e, 4), p, round(s, 4))
print(rep.within(3.0))


# In[3]:

print("TV at level 3:", compare_to_group(samples, 2, 3))
