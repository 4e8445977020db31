# coding: utf-8

# # An oscillating function with no limit
#
# g grows like t/4 up to 1/4, then alternates between the plateau 1/16 and 0
# on windows that shrink toward 1/2.  Locally it always agrees with an element
# of M, but it has no limit at 1/2.

# In[1]:

from locmult import rat, build_monster, monster_tower, locally_in_M_witness, dominated
from locmult.monster import check_property_C, split_through_E
from locmult.pwl import meet

b = build_monster()          # rho = 1/2, mu = 1/4
g = b.g
print(g)
print("f' =", b.f_prime.fn)


# ## The first few windows

# In[2]:

for n in range(1, 5):
    lo, _, _, hi = g.osc.window(n)
    print(f"window {n}: [{lo}, {hi}]  g = {g(lo)} -> {g(hi)}")


# ## Certificates
#
# Every certificate is an exact check.  The oscillation is read off the tail
# rule, so the liminf and limsup at 1/2 are exact.

# In[3]:

for name, ok in sorted(b.certificates.items()):
    print(f"{name:25s} {ok}")
print("oscillation at 1/2:", g.oscillation())
print("below h/2 on (0, 1]:", dominated(g, b.h1))


# ## Locally in M
#
# Around each point short of 1/2 a finite truncation of g lies in M and
# agrees with g on a window.

# In[4]:

for t in (rat(1, 8), rat(3, 8), rat(15, 32), rat(63, 128)):
    w = locally_in_M_witness(g, t)
    print(t, w.window, w.verify(g))


# Property (C) for g over f':

# In[5]:

checks = check_property_C(b, [rat(k, 31) for k in range(1, 16)])
print(sum(map(bool, checks)), "of", len(checks), "points verified")


# ## Splitting through the oscillating interval
#
# An element under h splits into a piece under g, a piece under h/2 - g and a
# remainder strictly under h/2.

# In[6]:

z = meet(b.h1, b.f_prime.fn * 3)
row = split_through_E(b, z)
for k in ("a", "b", "rest"):
    print(k, "=", row.parts[k])
print(row.ok)


# ## A tower
#
# Each stage sits below the previous one and below the next element of a
# fundamental sequence, and oscillates at a point inside the previous co-zero
# set.

# In[7]:

for s in monster_tower(3):
    print(f"stage {s.n}: rho = {s.rho}, gap = {s.gap}, ok = {s.ok}")
