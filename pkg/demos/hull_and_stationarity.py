# # Convex hulls of gradients
#
# When several candidates tie for the maximum, the descent direction comes
# from the convex hull of their u-gradients. If the origin lies in that hull
# the point is stationary.

import numpy as np

from kbeam import get_surface
from kbeam.hull import min_norm_point, sample_hull_point
from kbeam.optimizer import descent_direction, epsilon_stationarity_check

Z = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
hp = min_norm_point(Z)
print("min-norm point", hp.point, "weights", hp.coefficients)

# Optimality check: every vertex has <z - x, x> >= 0.

print("certificate", (Z - hp.point) @ hp.point)

# A random hull element, flat Dirichlet weights.

print("random element", sample_hull_point(Z, np.random.default_rng(0)).point)

# ## The anti-saddle at u = 0

p = get_surface("anti_saddle").problem
beam = np.array([[-0.5], [0.5]])
c = epsilon_stationarity_check(p, np.array([0.0]), beam, eps=0.0)
print("stationary:", c.stationary, "norm:", c.certificate_norm)

# Slightly to the right only +0.5 is maximal, so the direction is just -grad.

d = descent_direction(p, np.array([0.1]), beam, eps=0.0)
print("direction at u=0.1:", d.direction, "from candidates", d.eps_argmax_indices)

# A larger eps admits both candidates again.

d = descent_direction(p, np.array([0.1]), beam, eps=0.5, rule="min_norm")
print("eps=0.5, min-norm direction:", d.direction)
