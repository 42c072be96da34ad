# # Why one candidate is not enough
#
# On the anti-saddle f(u, v) = -u^2 + v^2 + 2uv the inner maximiser jumps
# between v = -0.5 and v = +0.5 as u crosses zero. Alternating gradient
# descent/ascent keeps a single v and gets stuck on the wrong endpoint.
# Tracking two candidates fixes that.

import numpy as np

from kbeam import RunConfig, get_surface, run

surface = get_surface("anti_saddle")
p = surface.problem

# ## A single candidate

# Start just right of zero with v pinned at +0.5. The min step pushes u left,
# and the ascent direction 2v + 2u still points at +0.5 for a long time.

trace = []
run(p, RunConfig(K=1, N=200, u0=[0.05], beam0=[[0.5]]), lambda i, u, b, ph: trace.append((u[0], b[0, 0])))
for i in (0, 9, 49, 199):
    print(f"iter {i + 1:3d}  u={trace[i][0]:+.4f}  v={trace[i][1]:+.4f}")

# phi(u) = -u^2 + 0.25 + |u| is minimised at u = 0, so the run above ends far away.

print("phi at the end:", surface.phi_closed_form(trace[-1][0]), " minimum:", surface.phi_closed_form(0.0))

# ## Two candidates

# Same start, but the beam also holds v = -0.5. Once u goes negative the
# second candidate takes over and pulls u back.

trace2 = []
run(p, RunConfig(K=2, N=200, u0=[0.05], beam0=[[0.5], [-0.5]], seed=0),
    lambda i, u, b, ph: trace2.append(u[0]))
print("K=2 final u:", trace2[-1])

# ## Many random starts

for K in (1, 2, 5, 10):
    finals = []
    for seed in range(50):
        st = run(p, RunConfig(K=K, N=200, seed=seed))
        finals.append(abs(st.u[0]))
    finals = np.array(finals)
    print(f"K={K:2d}  mean |u|={finals.mean():.3f}  share within 0.05: {np.mean(finals <= 0.05):.2f}")
