# coding: utf-8

# # A tour of the monoid M
#
# Everything here is exact: values are gmpy2 rationals and every claim below
# is checked with exact comparisons, never sampled in floating point.
#
# Run with `python3 demos/tour_of_the_monoid.py`.

# In[1]:

from locmult import F0, PwlFn, meet, join, rat, from_text, to_text, compare, cozero
from locmult import in_M, alg_leq, ideal_ctx, in_Nf, in_Df, riesz_decompose, prime_witness


# ## Functions
#
# A function is a list of breakpoints on [0, 1], linear in between.  `F0` is
# the identity t.  Arithmetic and the lattice operations stay inside the class,
# and crossings are computed exactly.

# In[2]:

tent = meet(F0, 1 - F0)
print(tent, "at 1/4:", tent(rat(1, 4)))

line = from_text("pwl[(0,1/3);(1,1/5)]")
crossing = meet(F0, line)
print("min(t, 1/3 - 2t/15) =", crossing)   # the kink sits at 5/17


# The co-zero set is where a nonnegative function is positive:

# In[3]:

print("cozero(tent) =", cozero(tent))
print("cozero(max(0, 1/2 - t)) =", cozero(join(PwlFn.const(0), rat(1, 2) - F0)))


# ## Membership and the algebraic order
#
# M holds the nonnegative functions that are positive right after 0, plus 0.
# The algebraic order g <= f means f - g lies in M, which is stronger than
# pointwise order: it also asks f - g to stay positive next to 0.

# In[4]:

print(in_M(join(PwlFn.const(0), rat(1, 2) - F0)))
print(in_M(join(PwlFn.const(0), F0 - rat(1, 2))))   # vanishes on (0, 1/2)

print("f0 <= 1 ?", bool(alg_leq(F0, PwlFn.const(1))))
print("2 f0 <= f0 ?", bool(alg_leq(2 * F0, F0)))

# f0 - cap vanishes on [0, 1/4], so cap is below f0 only pointwise
cap = meet(F0, PwlFn.const(rat(1, 4)))
print("cap <= f0 pointwise:", compare(cap, F0).leq, " algebraically:", bool(alg_leq(cap, F0)))


# ## Order-ideals
#
# The order-ideal of f collects the g below some multiple n f.  `in_Nf`
# returns the least such n (or a rejection with a point where f = 0 < g).

# In[5]:

ctx = ideal_ctx(F0)
print("least n with cap <= n f0:", in_Nf(cap, ctx))
print("cap in D_f0:", in_Df(cap, ctx), "  1 in D_f0:", in_Df(PwlFn.const(1), ctx))

small = ideal_ctx(meet(F0, join(PwlFn.const(0), rat(1, 2) - F0)))
print(in_Nf(PwlFn.const(1), small))


# ## Riesz decomposition
#
# Whenever x <= y1 + y2 there is a split x = x1 + x2 with x1 <= y1 and
# x2 <= y2.  The pointwise split x ^ y1 can fail next to 0; the construction
# then moves to the middle of the feasible band there.

# In[6]:

x, y1, y2 = F0, cap, F0
naive = meet(x, y1)
print("pointwise remainder in M:", bool(in_M(x - naive)))   # zero near 0, not zero
x1, x2 = riesz_decompose(x, y1, y2)
print("x1 =", to_text(x1.fn))
print("x2 =", to_text(x2.fn))
print("x1 + x2 == x:", x1.fn + x2.fn == x,
      " x1 <= y1:", bool(alg_leq(x1, y1)), " x2 <= y2:", bool(alg_leq(x2, y2)))


# ## Primeness
#
# Two nonzero elements always share a nonzero element of their order-ideals:
# their meet.

# In[7]:

w = prime_witness(F0, join(PwlFn.const(0), rat(1, 2) - F0))
print("common element:", w.fn)
