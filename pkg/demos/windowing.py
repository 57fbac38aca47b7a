"""
Windowing is filtering on the dual graph
========================================

Multiplying a signal by a window in the vertex domain acts on its spectrum
like a polynomial filter of the dual shift. The filter taps come from a
Vandermonde system in the dual eigenvalues.
"""

import numpy as np

from dualshift import build_dual, erdos_renyi, gft, path_graph, verify_windowing_duality
from dualshift.windowing import windowing_routes

S = erdos_renyi(8, 0.4, seed=3)
dual = build_dual(S)

rng = np.random.default_rng(1)
w = rng.uniform(0, 1, 8)
x = rng.standard_normal(8)

routes = windowing_routes(S, dual, w, x)
print("dual filter taps:", np.round(routes["h_f"].real, 4))
print("gft(w * x)            :", np.round(routes["windowed_gft"].real, 4))
print("h_f(S_f) applied to X :", np.round(routes["filtered_gft"].real, 4))
print(verify_windowing_duality(S, dual, w, x).to_dict())

# the 3-node path has a repeated dual eigenvalue, so the check is skipped
P = path_graph(3)
report = verify_windowing_duality(P, build_dual(P), [1, 2, 3], [1, 0, 0])
print(report.status, report.details["reason"])
