# coding: utf-8

# # Intervals described by their sup function
#
# Inside the order-ideal of f, an interval I_f(h) is determined by a function
# h on the co-zero set U_f.  This walk-through builds a few, tests membership
# three ways, and runs the constructions that need property (C).

# In[1]:

from locmult import F0, PwlFn, RSet, meet, rat, ideal_ctx
from locmult import in_Lf, in_Ifh, upward_direct, has_property_C, approx_on_compact
from locmult import realize_sup, complement_split, sub_has_C
from locmult.intervals import _equal_on

ctx = ideal_ctx(F0)
one = PwlFn.const(1)


# ## Sup functions
#
# h qualifies when something nonzero in the ideal fits under it.

# In[2]:

print("witness under 1:", in_Lf(one, ctx).fn)
print("witness under f0:", in_Lf(F0, ctx).fn)


# ## Membership, three ways
#
# `in_Ifh` decides g in I_f(h) with three independent descriptions and raises
# if they ever disagree.  A negative answer carries its obstruction.

# In[3]:

g = in_Lf(one, ctx).fn / 2
res = in_Ifh(g, ctx, one)
print(bool(res), res.verdicts)

res = in_Ifh(F0, ctx, F0)   # g = h: nothing fits strictly between them
print(bool(res), res.obstruction)


# The interval is upward directed:

# In[4]:

a = meet(F0 / 2, PwlFn([(0, 1), (rat(1, 4), 1), (rat(1, 2), 0), (1, 0)]))
b = meet(F0 / 3, PwlFn([(0, 1), (rat(1, 8), 0), (rat(1, 2), 0), (rat(3, 4), 1), (1, 1)]))
top = upward_direct(a, b, ctx, one)
print("above both:", top.fn)


# ## Property (C)
#
# At every t of U_f there is an element equal to h around t and strictly
# below it near 0.  The witness is replayed and checked exactly.

# In[5]:

wit = has_property_C(ctx, one)
for t in (rat(1, 3), rat(1, 100), rat(1)):
    print(t, wit.verify(t))


# ## Approximating h on a compact set, and reaching its sup

# In[6]:

K = RSet.closed(rat(1, 4), rat(1, 2))
z = approx_on_compact(ctx, one, K)
print("z == 1 on K:", _equal_on(z.fn, one, K))

g = realize_sup(ctx, one, rat(1, 2), rat(1, 8))
print("g(1/2) =", g.fn(rat(1, 2)))


# ## Splitting across complementary intervals
#
# An element of n D_f splits into a part below h and a part below n - h.

# In[7]:

half = PwlFn.const(rat(1, 2))
g1, g2, report = complement_split(ctx, half, 1, F0)
print("g1 =", g1.fn)
print("g2 =", g2.fn)
print(report.to_json())

diff = sub_has_C(ctx, half, one)
print("witness for 1 - 1/2 at 1/3:", diff.verify(rat(1, 3)).ok)
