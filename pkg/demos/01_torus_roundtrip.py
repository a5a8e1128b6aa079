"""
Encoding points on the torus and decoding them back
===================================================

A 2-D point goes through 64 prime frequencies. Every cos/sin pair lands on
its own unit circle, and inside the injectivity radius the pseudoinverse
recovers the point to machine precision.
"""

import numpy as np

from primefreq import build_dynamic, forward, reverse

basis = build_dynamic(d_in=2, d_out=128, sigma=0.007)
r = basis.injectivity_radius()
print("injectivity radius:", r)

# a few points comfortably inside the radius
x = np.random.default_rng(0).uniform(-r / 2, r / 2, size=(5, 2))
z = forward(basis, x)
print("embedding shape:", z.shape)

# each pair sits on a circle, so the squared norm is D/2 = 64
print("squared norms:", np.round(np.sum(z * z, axis=1), 12))

x_hat = reverse(basis, z)
print("max reconstruction error:", np.max(np.abs(x_hat - x)))

# step outside the radius and phases start to wrap
far = np.array([[1.5 * r, 1.5 * r]])
print("error far outside the radius:", np.max(np.abs(reverse(basis, forward(basis, far)) - far)))
