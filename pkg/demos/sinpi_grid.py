# coding: utf-8

# # x |sin(pi/x)| on a grid
#
# The map touches the diagonal at x = 2/(2k+1) and stays below it elsewhere, so fixed
# points pile up at 0. We put it on a grid with step h = 1/1000 and use eps = 2h chains.

# In[1]:

import numpy as np

from hyperchain import Eps, chain_components, conley_intersection, discretize, enumerate_attractors, fixed_point_oracle, sinpi

grid = discretize(sinpi(), 1000)
eps = grid.default_eps
analysis = chain_components(grid.system, Eps(eps))
print("grid points:", len(grid.system), " eps:", eps)
print("recurrent grid points:", len(analysis.recurrent), " components:", len(analysis.components))


# The fixed points come from a root finder on the continuous map, not from the grid.

# In[2]:

roots = np.array(fixed_point_oracle(grid.spec))
print("largest fixed points:", np.round(roots[::-1][:6], 6))
print("f(1/3), f(1/5):", grid.spec.value_at(np.array([1 / 3, 1 / 5])))


# Near each fixed point the map only touches the diagonal, so the nearest grid point can
# sit a few cells below it. Once that drop beats 2h the eps-chains cannot climb back.

# In[3]:

for k in range(1, 21):
    p = 2 / (2 * k + 1)
    j = grid.nearest(p)
    drop = (grid.grid[j] - grid.spec.value_at(grid.grid[j])) / grid.step
    print(f"k={k:2d} p={p:.6f} recurrent={analysis.is_recurrent(j)!s:5} drop={drop:5.2f} cells")


# Attractors of the eps-chain graph and the intersection formula.

# In[4]:

records = enumerate_attractors(grid.system, Eps(eps), analysis=analysis)
inter = conley_intersection(grid.system, Eps(eps), records=records)
print(len(records), "attractors; intersection equals recurrent set:", inter.members == analysis.recurrent.members)


# A finer grid brings the missing fixed points back.

# In[5]:

fine = discretize(sinpi(), 4000)
fa = chain_components(fine.system, Eps(fine.default_eps))
print("n=4000 all recurrent:", all(fa.is_recurrent(fine.nearest(2 / (2 * k + 1))) for k in range(1, 21)))
