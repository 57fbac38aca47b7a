"""
Fourier transform and filters on a small graph
==============================================

A path graph, its Fourier basis, and a polynomial filter applied in the
vertex domain and in the frequency domain.
"""

import numpy as np

from dualshift import PolynomialFilter, apply_filter, apply_filter_spectral, gft, igft, path_graph

# the shift of a 5-node path, diagonalized by a Jacobi sweep
S = path_graph(5)
print("eigenvalues:", np.round(S.eigenvalues.real, 4))

# a unit impulse on the middle node and its spectrum
x = np.zeros(5)
x[2] = 1.0
x_hat = gft(S, x)
print("spectrum of the impulse:", np.round(x_hat.values.real, 4))
print("energy kept:", np.linalg.norm(x_hat.values), "round trip error:",
      np.abs(igft(S, x_hat.values).values - x).max())

# low-pass filter h(S) = I + 0.5 S, written out two ways
h = PolynomialFilter([1.0, 0.5])
y_vertex = apply_filter(S, h, x).values
y_spectral = apply_filter_spectral(S, h, x).values
print("filtered:", np.round(y_vertex.real, 4))
print("vertex vs spectral gap:", np.abs(y_vertex - y_spectral).max())
