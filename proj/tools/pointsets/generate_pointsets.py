#!/usr/bin/env python3
"""Generate the reference point-set files shipped under tests/data/pointsets.

Spherical t-designs with m = (t+1)^2 points are found by Gauss-Newton on the
moment residuals sum_j Y_lk(x_j), l = 1..t. Minimal Coulomb energy and
(approximate) Fekete configurations are found by L-BFGS. Designs and energy
minimizers start from generalized spiral points, Fekete runs from the energy
minimizer of the same size, so the output is deterministic.

Usage: generate_pointsets.py OUTDIR
"""
import sys
import pathlib

import numpy as np
import scipy.optimize

import jax
import jax.numpy as jnp

jax.config.update("jax_enable_x64", True)


def spiral_points(m):
    """Rakhmanov-Saff-Zhou generalized spiral points."""
    k = np.arange(1, m + 1)
    z = 1.0 - (2.0 * k - 1.0) / m
    theta = np.arccos(z)
    phi = np.zeros(m)
    for i in range(1, m - 1):
        phi[i] = (phi[i - 1] + 3.6 / np.sqrt(m * (1.0 - z[i] ** 2))) % (2 * np.pi)
    return np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), z], axis=1)


def real_harmonics(points, degree, skip_constant=False):
    """Real orthonormal spherical harmonics (mass 4*pi) written as polynomials
    in the Cartesian coordinates, so they differentiate cleanly at the poles.
    Returns an array of shape (num_harmonics, m)."""
    x, y, z = points[:, 0], points[:, 1], points[:, 2]
    rows = []
    # Q[l][m]: normalized associated Legendre divided by (1-z^2)^(m/2)
    q_prev_diag = jnp.full_like(z, np.sqrt(1.0 / (4.0 * np.pi)))
    diag = [q_prev_diag]
    for mm in range(1, degree + 1):
        q_prev_diag = q_prev_diag * np.sqrt((2.0 * mm + 1.0) / (2.0 * mm))
        diag.append(q_prev_diag)
    table = {}
    for mm in range(0, degree + 1):
        table[(mm, mm)] = diag[mm]
        if mm + 1 <= degree:
            table[(mm + 1, mm)] = np.sqrt(2.0 * mm + 3.0) * z * diag[mm]
        for ll in range(mm + 2, degree + 1):
            a = np.sqrt((4.0 * ll * ll - 1.0) / (ll * ll - mm * mm))
            b = np.sqrt(((ll - 1.0) ** 2 - mm * mm) / (4.0 * (ll - 1.0) ** 2 - 1.0))
            table[(ll, mm)] = a * (z * table[(ll - 1, mm)] - b * table[(ll - 2, mm)])
    cplx = [jnp.ones_like(x) + 0j]
    for mm in range(1, degree + 1):
        cplx.append(cplx[-1] * (x + 1j * y))
    for ll in range(0, degree + 1):
        if skip_constant and ll == 0:
            continue
        for mm in range(ll, 0, -1):
            rows.append(np.sqrt(2.0) * table[(ll, mm)] * jnp.imag(cplx[mm]))
        rows.append(table[(ll, 0)])
        for mm in range(1, ll + 1):
            rows.append(np.sqrt(2.0) * table[(ll, mm)] * jnp.real(cplx[mm]))
    return jnp.stack(rows)


def normalize(flat):
    p = flat.reshape(-1, 3)
    return p / jnp.linalg.norm(p, axis=1, keepdims=True)


def t_design(t, maxit=60):
    m = (t + 1) ** 2

    def point_values(p):
        # harmonics of degree 1..t at one (possibly unnormalized) point
        q = p / jnp.linalg.norm(p)
        return real_harmonics(q[None, :], t, skip_constant=True)[:, 0]

    values = jax.jit(jax.vmap(point_values))
    grads = jax.jit(jax.vmap(jax.jacfwd(point_values)))

    def residual(pts):
        return np.asarray(jnp.sum(values(pts), axis=0))

    def jacobian(pts):
        g = np.asarray(grads(pts))  # (m, nres, 3)
        return np.transpose(g, (1, 0, 2)).reshape(g.shape[1], -1)

    x = spiral_points(m)
    r = residual(x)
    for it in range(maxit):
        nrm = float(np.linalg.norm(r))
        print(f"  t={t} it={it} |r|={nrm:.3e}", flush=True)
        if nrm < 1e-12:
            break
        step = np.linalg.lstsq(jacobian(x), -r, rcond=None)[0].reshape(-1, 3)
        alpha = 1.0
        while alpha > 1e-4:
            cand = x + alpha * step
            cand /= np.linalg.norm(cand, axis=1, keepdims=True)
            rc = residual(cand)
            if float(np.linalg.norm(rc)) < nrm:
                x, r = cand, rc
                break
            alpha *= 0.5
        else:
            if nrm < 1e-12:
                break
            raise RuntimeError("Gauss-Newton stalled")
    return x


def minimal_energy(m, maxiter=3000):
    x0 = spiral_points(m).reshape(-1)
    iu = np.triu_indices(m, 1)

    def energy(flat):
        p = normalize(flat)
        d = p[:, None, :] - p[None, :, :]
        r = jnp.sqrt(jnp.sum(d * d, axis=-1)[iu])
        return jnp.sum(1.0 / r)

    f = jax.jit(jax.value_and_grad(energy))
    sol = scipy.optimize.minimize(lambda v: tuple(np.asarray(a) for a in f(v)), x0, jac=True,
                                  method="L-BFGS-B", options={"maxiter": maxiter, "gtol": 1e-12})
    print(f"  energy m={m}: {sol.fun:.12f} ({sol.nit} iterations)", flush=True)
    return np.asarray(normalize(jnp.asarray(sol.x)))


def fekete(degree, start, maxiter=3000):
    """Maximizes log|det| of the interpolation matrix from a well-spread start
    (spiral starts are too ill-conditioned at degree 20 for the line search)."""
    x0 = np.asarray(start).reshape(-1)

    def neg_logdet(flat):
        return -jnp.linalg.slogdet(real_harmonics(normalize(flat), degree))[1]

    f = jax.jit(jax.value_and_grad(neg_logdet))
    sol = scipy.optimize.minimize(lambda v: tuple(np.asarray(a) for a in f(v)), x0, jac=True,
                                  method="L-BFGS-B", options={"maxiter": maxiter, "gtol": 1e-10})
    print(f"  fekete degree={degree}: log|det|={-sol.fun:.12f} ({sol.nit} iterations)", flush=True)
    return np.asarray(normalize(jnp.asarray(sol.x)))


def write(path, points, header):
    with open(path, "w") as fh:
        for line in header:
            fh.write(f"# {line}\n")
        for p in points:
            fh.write(" ".join(f"{c:.17g}" for c in p) + "\n")
    print(f"wrote {path} ({len(points)} points)", flush=True)


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "tests/data/pointsets")
    out.mkdir(parents=True, exist_ok=True)
    for t in (10, 20, 30, 40):
        if (out / f"sd_t{t:02d}_m{(t + 1) ** 2}.txt").exists():
            continue
        m = (t + 1) ** 2
        write(out / f"sd_t{t:02d}_m{m}.txt", t_design(t),
              [f"spherical {t}-design, {m} points", "equal weights 4*pi/m"])
    for degree in (5, 10):
        m = (2 * degree + 1) ** 2
        energy = minimal_energy(m)
        write(out / f"me_m{m}.txt", energy,
              [f"minimal Coulomb energy configuration, {m} points"])
        write(out / f"fk_m{m}.txt", fekete(2 * degree, energy),
              [f"approximate Fekete points for degree {2 * degree} interpolation, {m} points"])


if __name__ == "__main__":
    main()
