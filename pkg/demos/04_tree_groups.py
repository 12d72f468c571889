# coding: utf-8

# # Automorphisms of the n-ary tree
#
# Elements are portraits: one permutation per vertex. Schreier-Sims gives
# exact orders without listing the group.

# In[1]:

from odoni.treegroup import (GroupHandle, contains_gamma, cycle_type_distribution,
                             fixed_point_free_mass, full_generators, gamma_order,
                             odometer, standard_sigmas, wreath_order)

for n, k in [(2, 2), (2, 3), (3, 2), (2, 5)]:
    print(n, k, wreath_order(n, k), GroupHandle(full_generators(n, k)).order())


# In[2]:

w = odometer(2, 3)
print(w.leaf_perm(), w.cycle_type())


# The standard generators contain the level-N congruence subgroup.

# In[3]:

for n, a, k, N in [(2, 1, 3, 0), (3, 1, 3, 1), (5, 2, 2, 0)]:
    gens = standard_sigmas(n, a, k, N)
    h = GroupHandle(gens)
    print((n, a, k, N), contains_gamma(gens, n, k, N), h.stabilizer_order(N), gamma_order(n, k, N))


# Fixed-point-free mass shrinks with depth, so most primes give no root at
# deep levels.

# In[4]:

for k in range(1, 5):
    dist = cycle_type_distribution(2, k)
    print(k, 1 - fixed_point_free_mass(dist))
