# # The benchmark surfaces and the grid oracle
#
# Each surface comes with its known minimax set. The grid oracle gives an
# independent view: phi(u) = max over a fine v-grid, and a brute-force minimax.

import numpy as np

from kbeam import oracle
from kbeam.harness import oracle_vgrid
from kbeam.surfaces import SURFACE_NAMES, get_surface

for name in SURFACE_NAMES:
    s = get_surface(name)
    print(f"{name:24s} {s.formula}")

# ## phi on a grid vs closed form

s = get_surface("monkey_saddle")
vgrid = oracle_vgrid(s)
for u in np.linspace(-0.5, 0.5, 5):
    print(f"u={u:+.2f}  grid={oracle.phi_grid(s.problem, [u], vgrid):.5f}  exact={s.phi_closed_form(u):.5f}")

# The monkey saddle has two minimax points: at u = +-0.25 the boundary
# maximum and the interior one have equal height.

u_hat, val = oracle.grid_minimax(s.problem, oracle.Grid1D(-0.5, 0.5, 1e-3), vgrid)
print("grid minimax:", u_hat, val)

# ## Local maxima and the gap zeta

a = get_surface("anti_saddle")
for u in (0.0, 0.1, 0.3):
    S = oracle.local_maxima_grid(a.problem, [u], oracle_vgrid(a))
    z = oracle.zeta_gap(a.problem, [u], oracle_vgrid(a))
    print(f"u={u:.1f}  local maxima {S[:, 0]}  zeta={z}")
