"""Independent reference computations shared by the unit and acceptance tests."""

import numpy as np

# (criterion, passed, detail) rows printed at the end of the session
ACCEPTANCE_LINES = []


def quadrature_energy_and_mass(mesh, u, delta):
    """Independent evaluation of the two quadratic forms for a P1 function ``u``.

    Gradients come from solving the 2x2 edge system per triangle; the mass
    integrals use the edge-midpoint rule (exact for quadratics) and Simpson's
    rule on boundary edges. Densities follow the mesh convention: triangle or
    edge means of the vertex weights, conformal factor at the centroid or
    midpoint.
    """
    energy = mass = 0.0
    phi = mesh.metric.factor
    for tri in mesh.triangles:
        p = mesh.vertices[tri]
        J = np.array([p[1] - p[0], p[2] - p[0]])
        g = np.linalg.solve(J, [u[tri[1]] - u[tri[0]], u[tri[2]] - u[tri[0]]])
        area = 0.5 * abs(np.linalg.det(J))
        a = mesh.alpha[tri].mean()
        energy += a * area * (g @ g)
        mids = [0.5 * (u[tri[i]] + u[tri[(i + 1) % 3]]) for i in range(3)]
        mass += a * phi(p.mean(axis=0)) ** 2 * area / 3.0 * sum(m * m for m in mids)
    for loop in mesh.boundary_loops:
        for i, j in zip(loop, np.roll(loop, -1)):
            a, b = mesh.vertices[i], mesh.vertices[j]
            length = np.hypot(*(b - a)) * phi(0.5 * (a + b))
            beta = 0.5 * (mesh.beta[i] + mesh.beta[j])
            um = 0.5 * (u[i] + u[j])
            mass += beta * length / 6.0 * (u[i] ** 2 + 4 * um * um + u[j] ** 2)
            energy += delta * beta * (u[j] - u[i]) ** 2 / length
    return energy, mass
