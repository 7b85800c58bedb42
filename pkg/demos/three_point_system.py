# coding: utf-8

# # A three-point system and its hyperspace
#
# Three points a, b, c with the zero-one metric. The map swaps a and b and sends c to a.
# We compute the chain recurrent set, then lift the map to all nonempty subsets and look
# at how the recurrent subsets split into chain components.

# In[1]:

from hyperchain import EXACT, chain_components, conley_intersection, enumerate_attractors, lift, is_chain_transitive
from hyperchain import DiscreteSystem, zero_one_space

X = zero_one_space(["a", "b", "c"])
f = DiscreteSystem(X, [1, 0, 0])
f


# The chain graph of an exact map is just its functional graph, so the recurrent points
# are the periodic ones.

# In[2]:

base = chain_components(f, EXACT)
print("C =", base.recurrent)
print("components:", base.components)


# Attractors come from lower sets of the component order. There is only one component here,
# so only one attractor, and its dual is empty because c falls into {a,b}.

# In[3]:

for rec in enumerate_attractors(f, EXACT):
    print(rec)
print("intersection of A u A* over all attractors:", conley_intersection(f, EXACT))


# # The lift
#
# Seven nonempty subsets. {a,c} goes to {a,b}; {a,b} is fixed; {a} and {b} swap.

# In[4]:

hyper = lift(f)
ha = chain_components(hyper.as_system, EXACT)
print("C_bar =", hyper.describe(ha.recurrent.members))
for Q in ha.components:
    print("hyper component:", hyper.describe(Q.members))


# The recurrent subsets are exactly the nonempty subsets of C, yet they form two
# components. The collection of subsets of {a,b} is invariant but not chain transitive.

# In[5]:

print("K({a,b}) chain transitive?", is_chain_transitive(hyper, hyper.K({0, 1}), EXACT))
