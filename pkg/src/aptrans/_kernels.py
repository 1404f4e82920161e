"""Numba kernels for the split time stepper.

The state is stored as eight (ndir, nx, ny) float64 arrays: even parities
r1, r2 on the vertex (v) and center (c) planes, odd parities j1, j2 on the
horizontal-face (h) and vertical-face (vf) planes.  Periodic wrap happens
through explicit index arithmetic; all loops run serially in a fixed order
so repeated runs are bitwise identical.

Sources arrive as sums of separable components: per-component spatial
fields sampled once on the relevant planes, and per-step coefficient
matrices c[m, k] (component m, direction k) that already include the time
factor.  Zero-length component axes simply skip the inner loops.
"""

import numba

NOPYTHON_OPTS = dict(cache=True, fastmath=False)


@numba.njit(**NOPYTHON_OPTS)
def transport(r1v, r1c, r2v, r2c, j1h, j1v, j2h, j2v,
              o_r1v, o_r1c, o_r2v, o_r2c, o_j1h, o_j1v, o_j2h, o_j2v,
              xi, eta, sa_rv, sa_rc, sa_jh, sa_jv,
              dt, phi, inv_dx, inv_dy,
              ce1, ce2, fe_v, fe_c, co1, co2, fo_h, fo_v):
    nd, nx, ny = r1v.shape
    ne = ce1.shape[0]
    no = co1.shape[0]
    for k in range(nd):
        x = xi[k]
        e = eta[k]
        px = phi * x
        pe = phi * e
        for i in range(nx):
            im1 = nx - 1 if i == 0 else i - 1
            ip1 = 0 if i == nx - 1 else i + 1
            for j in range(ny):
                jm1 = ny - 1 if j == 0 else j - 1
                jp1 = 0 if j == ny - 1 else j + 1

                q1v = 0.0
                q2v = 0.0
                q1c = 0.0
                q2c = 0.0
                for m in range(ne):
                    q1v += ce1[m, k] * fe_v[m, i, j]
                    q2v += ce2[m, k] * fe_v[m, i, j]
                    q1c += ce1[m, k] * fe_c[m, i, j]
                    q2c += ce2[m, k] * fe_c[m, i, j]

                djx1 = (j1h[k, i, j] - j1h[k, im1, j]) * inv_dx
                djy1 = (j1v[k, i, j] - j1v[k, i, jm1]) * inv_dy
                o_r1v[k, i, j] = r1v[k, i, j] - dt * (
                    x * djx1 - e * djy1 + sa_rv[i, j] * r1v[k, i, j] - q1v)

                djx2 = (j2h[k, i, j] - j2h[k, im1, j]) * inv_dx
                djy2 = (j2v[k, i, j] - j2v[k, i, jm1]) * inv_dy
                o_r2v[k, i, j] = r2v[k, i, j] - dt * (
                    x * djx2 + e * djy2 + sa_rv[i, j] * r2v[k, i, j] - q2v)

                djx1c = (j1v[k, ip1, j] - j1v[k, i, j]) * inv_dx
                djy1c = (j1h[k, i, jp1] - j1h[k, i, j]) * inv_dy
                o_r1c[k, i, j] = r1c[k, i, j] - dt * (
                    x * djx1c - e * djy1c + sa_rc[i, j] * r1c[k, i, j] - q1c)

                djx2c = (j2v[k, ip1, j] - j2v[k, i, j]) * inv_dx
                djy2c = (j2h[k, i, jp1] - j2h[k, i, j]) * inv_dy
                o_r2c[k, i, j] = r2c[k, i, j] - dt * (
                    x * djx2c + e * djy2c + sa_rc[i, j] * r2c[k, i, j] - q2c)

                qo1h = 0.0
                qo2h = 0.0
                qo1v = 0.0
                qo2v = 0.0
                for m in range(no):
                    qo1h += co1[m, k] * fo_h[m, i, j]
                    qo2h += co2[m, k] * fo_h[m, i, j]
                    qo1v += co1[m, k] * fo_v[m, i, j]
                    qo2v += co2[m, k] * fo_v[m, i, j]

                drx1h = (r1v[k, ip1, j] - r1v[k, i, j]) * inv_dx
                dry1h = (r1c[k, i, j] - r1c[k, i, jm1]) * inv_dy
                o_j1h[k, i, j] = j1h[k, i, j] - dt * (
                    px * drx1h - pe * dry1h + sa_jh[i, j] * j1h[k, i, j] - qo1h)

                drx2h = (r2v[k, ip1, j] - r2v[k, i, j]) * inv_dx
                dry2h = (r2c[k, i, j] - r2c[k, i, jm1]) * inv_dy
                o_j2h[k, i, j] = j2h[k, i, j] - dt * (
                    px * drx2h + pe * dry2h + sa_jh[i, j] * j2h[k, i, j] - qo2h)

                drx1v = (r1c[k, i, j] - r1c[k, im1, j]) * inv_dx
                dry1v = (r1v[k, i, jp1] - r1v[k, i, j]) * inv_dy
                o_j1v[k, i, j] = j1v[k, i, j] - dt * (
                    px * drx1v - pe * dry1v + sa_jv[i, j] * j1v[k, i, j] - qo1v)

                drx2v = (r2c[k, i, j] - r2c[k, im1, j]) * inv_dx
                dry2v = (r2v[k, i, jp1] - r2v[k, i, j]) * inv_dy
                o_j2v[k, i, j] = j2v[k, i, j] - dt * (
                    px * drx2v + pe * dry2v + sa_jv[i, j] * j2v[k, i, j] - qo2v)


@numba.njit(**NOPYTHON_OPTS)
def relaxation(r1v, r1c, r2v, r2c, j1h, j1v, j2h, j2v,
               w, xi, eta, ss_rv, ss_rc, ss_jh, ss_jv,
               dt, phi, eps, inv_dx, inv_dy, rho_v, rho_c):
    """In-place relaxation half-step; fills rho_v/rho_c with the preserved
    density (computed from the incoming state, direction loop ascending)."""
    nd, nx, ny = r1v.shape
    eps2 = eps * eps
    coef = dt * (1.0 - eps2 * phi)
    for i in range(nx):
        for j in range(ny):
            sv = 0.0
            sc = 0.0
            for k in range(nd):
                sv += w[k] * (r1v[k, i, j] + r2v[k, i, j])
                sc += w[k] * (r1c[k, i, j] + r2c[k, i, j])
            rho_v[i, j] = 0.5 * sv
            rho_c[i, j] = 0.5 * sc
    for k in range(nd):
        for i in range(nx):
            for j in range(ny):
                den_v = eps2 + ss_rv[i, j] * dt
                den_c = eps2 + ss_rc[i, j] * dt
                r1v[k, i, j] = (eps2 * r1v[k, i, j] + ss_rv[i, j] * dt * rho_v[i, j]) / den_v
                r2v[k, i, j] = (eps2 * r2v[k, i, j] + ss_rv[i, j] * dt * rho_v[i, j]) / den_v
                r1c[k, i, j] = (eps2 * r1c[k, i, j] + ss_rc[i, j] * dt * rho_c[i, j]) / den_c
                r2c[k, i, j] = (eps2 * r2c[k, i, j] + ss_rc[i, j] * dt * rho_c[i, j]) / den_c
    for k in range(nd):
        x = xi[k]
        e = eta[k]
        for i in range(nx):
            im1 = nx - 1 if i == 0 else i - 1
            ip1 = 0 if i == nx - 1 else i + 1
            for j in range(ny):
                jm1 = ny - 1 if j == 0 else j - 1
                jp1 = 0 if j == ny - 1 else j + 1
                den_h = eps2 + ss_jh[i, j] * dt
                den_f = eps2 + ss_jv[i, j] * dt

                drx1h = (r1v[k, ip1, j] - r1v[k, i, j]) * inv_dx
                dry1h = (r1c[k, i, j] - r1c[k, i, jm1]) * inv_dy
                j1h[k, i, j] = (eps2 * j1h[k, i, j] - coef * (x * drx1h - e * dry1h)) / den_h

                drx2h = (r2v[k, ip1, j] - r2v[k, i, j]) * inv_dx
                dry2h = (r2c[k, i, j] - r2c[k, i, jm1]) * inv_dy
                j2h[k, i, j] = (eps2 * j2h[k, i, j] - coef * (x * drx2h + e * dry2h)) / den_h

                drx1v = (r1c[k, i, j] - r1c[k, im1, j]) * inv_dx
                dry1v = (r1v[k, i, jp1] - r1v[k, i, j]) * inv_dy
                j1v[k, i, j] = (eps2 * j1v[k, i, j] - coef * (x * drx1v - e * dry1v)) / den_f

                drx2v = (r2c[k, i, j] - r2c[k, im1, j]) * inv_dx
                dry2v = (r2v[k, i, jp1] - r2v[k, i, j]) * inv_dy
                j2v[k, i, j] = (eps2 * j2v[k, i, j] - coef * (x * drx2v + e * dry2v)) / den_f
