"""Pure-Python hot loops.  ``_kernels.pyx`` mirrors this module line for line.

All lattice coordinates are doubled half-integers: ``P = 2p``, ``Q = 2q`` with
``P + Q`` even.  A region is given by a unit normal, the half-plane offset
``r1``, the radius ``r2`` and ``bound4 = 4 r2^2`` (an int when the squared
radius is integral, which keeps the disk test exact).  Loop bounds are
computed in floating point, widened by ``guard``, and every candidate is
re-checked with the membership predicate.  The predicates are written so the
compiled kernel evaluates the same floating-point expression in the same
order.
"""

from math import ceil, floor, isqrt, sqrt

S3 = sqrt(3.0)
# below this the half-plane normal is treated as perpendicular to the scan axis
AXIS_EPS = 1e-6


def solve_norm_doubled(N):
    """First ``(P, Q)`` with ``P^2 + 3Q^2 = 4N``, ``P + Q`` even, ``Q >= 0`` ascending, ``P > 0`` first."""
    four_n = 4 * N
    qmax = isqrt(four_n // 3)
    for Q in range(qmax + 1):
        rest = four_n - 3 * Q * Q
        P = isqrt(rest)
        if P * P == rest and (P + Q) % 2 == 0:
            return P, Q
    return None


def cap_extent(c, s, r1, r2):
    """Range of the second coordinate over ``{z : (c, s).z >= r1, |z| <= r2}``.

    ``(c, s)`` must be a unit vector.  Returns ``None`` when the region is empty.
    """
    if r1 > r2:
        return None
    if r1 <= -r2:
        return -r2, r2
    h = sqrt((r2 - r1) * (r2 + r1))
    ya = r1 * s + h * c
    yb = r1 * s - h * c
    hi = r2 if r2 * s >= r1 else max(ya, yb)
    lo = -r2 if -r2 * s >= r1 else min(ya, yb)
    return max(lo, -r2), min(hi, r2)


def _isqrt_bound(rest):
    if isinstance(rest, int):
        return isqrt(rest)
    return floor(sqrt(rest))


def scan_2d(c, s, r1, r2, bound4, guard):
    """Superset of the doubled lattice points of a half-plane/disk region.

    Yields ``(P, Q)`` with ``Q`` ascending, then ``P`` ascending.
    """
    if r1 > r2 + guard:
        return
    ext = cap_extent(c, s, min(r1 - guard, r2), r2 + guard)
    if ext is None:
        return
    qlo = ceil(2.0 * ext[0] / S3 - guard)
    qhi = floor(2.0 * ext[1] / S3 + guard)
    use_half = c > AXIS_EPS or c < -AXIS_EPS
    g2 = guard / abs(c) if use_half else 0.0
    for Q in range(qlo, qhi + 1):
        rest = bound4 - 3 * Q * Q
        if rest < 0:
            continue
        pr = _isqrt_bound(rest)
        plo, phi = -pr, pr
        if use_half:
            t = (2.0 * r1 - S3 * Q * s) / c
            if c > 0:
                plo = max(plo, ceil(t - g2))
            else:
                phi = min(phi, floor(t + g2))
        if (plo + Q) % 2:
            plo += 1
        for P in range(plo, phi + 1, 2):
            yield P, Q


def contains_2d(P, Q, c, s, r1, bound4):
    return P * c + S3 * Q * s >= 2.0 * r1 and P * P + 3 * Q * Q <= bound4


def enum_2d(c, s, r1, r2, bound4, guard):
    out = []
    for P, Q in scan_2d(c, s, r1, r2, bound4, guard):
        if P * c + S3 * Q * s >= 2.0 * r1 and P * P + 3 * Q * Q <= bound4:
            out.append((P, Q))
    return out


def contains_4d(P1, Q1, P2, Q2, u0, u1, u2, u3, r1, bound4):
    return (
        u0 * P1 + u1 * S3 * Q1 + u2 * P2 + u3 * S3 * Q2 >= 2.0 * r1
        and P1 * P1 + 3 * Q1 * Q1 + P2 * P2 + 3 * Q2 * Q2 <= bound4
    )


def enum_cap4(u0, u1, u2, u3, r1, r2, bound4, guard):
    """Lattice points of the 4D cap for a unit normal with ``u3 == 0``.

    The half-space test does not involve ``Q2``, so the scan runs over the
    three-dimensional cap in ``(P2, Q1, P1)``: ``P2`` ranges over the extent
    of the cap in the ``(w, p2)`` plane, ``(P1, Q1)`` over a half-plane/disk
    problem, and each hit is extended over every ``Q2`` the ball allows
    (``Q2`` has the parity of ``P2``).  Order is ``(P2, Q1, P1, Q2)``
    ascending.  The number of rows visited grows with the cap's cross
    section rather than its bounding box.
    """
    out = []
    rho = sqrt(u0 * u0 + u1 * u1)
    if r1 > r2 + guard:
        return out
    ci, si = (u0 / rho, u1 / rho) if rho > 0 else (1.0, 0.0)
    # plane (w, p2): w along (ci, si), unit normal (rho, u2)
    ext = cap_extent(rho, u2, min(r1 - guard, r2), r2 + guard)
    if ext is None:
        return out
    plo = ceil(2.0 * ext[0] - guard)
    phi = floor(2.0 * ext[1] + guard)
    for P2 in range(plo, phi + 1):
        odd = P2 % 2
        inner4 = bound4 - P2 * P2 - 3 * odd
        if inner4 < 0:
            continue
        lam2 = sqrt(inner4) / 2.0
        if rho > AXIS_EPS:
            lam1 = (r1 - u2 * P2 / 2.0) / rho
            g = guard / rho
        else:
            lam1 = -lam2 - 1.0
            g = guard
        for P1, Q1 in scan_2d(ci, si, lam1, lam2, inner4, g):
            if u0 * P1 + u1 * S3 * Q1 + u2 * P2 < 2.0 * r1:
                continue
            rest = bound4 - (P1 * P1 + 3 * Q1 * Q1 + P2 * P2)
            if rest < 0:
                continue
            q2 = _isqrt_bound(rest // 3 if isinstance(rest, int) else rest / 3.0)
            if (q2 + odd) % 2:
                q2 -= 1
            for Q2 in range(-q2, q2 + 1, 2):
                if (
                    u0 * P1 + u1 * S3 * Q1 + u2 * P2 + u3 * S3 * Q2 >= 2.0 * r1
                    and P1 * P1 + 3 * Q1 * Q1 + P2 * P2 + 3 * Q2 * Q2 <= bound4
                ):
                    out.append((P1, Q1, P2, Q2))
    return out


def enum_box4(u0, u1, u2, u3, r1, r2, bound4, guard):
    """Ball-pruned box scan for an arbitrary unit normal."""
    out = []
    q2max = floor(2.0 * r2 / S3 + guard)
    for Q2 in range(-q2max, q2max + 1):
        rem2 = bound4 - 3 * Q2 * Q2
        if rem2 < 0:
            continue
        p2max = _isqrt_bound(rem2)
        for P2 in range(-p2max, p2max + 1):
            if (P2 + Q2) % 2:
                continue
            rem1 = rem2 - P2 * P2
            q1max = _isqrt_bound(rem1 // 3 if isinstance(rem1, int) else rem1 / 3.0)
            for Q1 in range(-q1max, q1max + 1):
                rem0 = rem1 - 3 * Q1 * Q1
                if rem0 < 0:
                    continue
                p1max = _isqrt_bound(rem0)
                plo = -p1max
                if (plo + Q1) % 2:
                    plo += 1
                for P1 in range(plo, p1max + 1, 2):
                    if (
                        u0 * P1 + u1 * S3 * Q1 + u2 * P2 + u3 * S3 * Q2 >= 2.0 * r1
                        and P1 * P1 + 3 * Q1 * Q1 + P2 * P2 + 3 * Q2 * Q2 <= bound4
                    ):
                        out.append((P1, Q1, P2, Q2))
    return out


# the six units in canonical order as complex numbers
UNIT_RE = (1.0, -0.5, -0.5, -1.0, 0.5, 0.5)
UNIT_IM = (0.0, S3 / 2, -S3 / 2, 0.0, -S3 / 2, S3 / 2)


def triplet_hits(xs, ys, zs, M, scale, eps2):
    """Diagonal triplets that pass the cofactor test of a unitary completion.

    Each list holds ``(a, b, n, err, w, P, Q)`` per candidate entry, sorted by ``err`` ascending.  ``a + b w`` is the numerator,
    ``n`` its norm, ``err`` the column error ``2 - 2 Re(conj(t) v)`` and
    ``w`` the twelve components of ``u chi^f conj(v)`` for the six units
    ``u``; ``(P, Q)`` are the doubled lattice coordinates of ``gamma(f) v``.
    ``M = 3^f`` and ``scale = 3^(f // 2)``.

    A unitary ``N / chi^f`` with diagonal ``(x1, y2, z3)`` and determinant
    phase ``u`` has ``x2 y1 = x1 y2 - u chi^f conj(z3)``.  With
    ``a = |x2|^2`` the norm of that product is ``a (K - a)``,
    ``K = m1 + m2 - m3``, which pins ``a`` to a root of a quadratic and
    confines ``gamma(f) z3`` to the disk of radius ``K / (2 scale)`` about
    ``u conj(x1 y2) / scale``; only that disk is scanned.  The two other
    diagonal cofactors must have norms ``b e`` and ``d g``.  Returns
    ``(i, j, k, u, a)`` tuples.
    """
    hits = []
    if not xs or not ys or not zs:
        return hits
    grid = {}
    zemin = zs[0][3]
    for k, z in enumerate(zs):
        grid[(z[5], z[6])] = k
    gpmin = min(z[5] for z in zs)
    gpmax = max(z[5] for z in zs)
    gqmin = min(z[6] for z in zs)
    gqmax = max(z[6] for z in zs)
    for i, (xa, xb, xn, xe, xw, _, _) in enumerate(xs):
        if xe + zemin > eps2:
            break
        m1 = M - xn
        for j, (ya, yb, yn, ye, yw, _, _) in enumerate(ys):
            e12 = xe + ye
            if e12 + zemin > eps2:
                break
            m2 = M - yn
            pa = xa * ya - xb * yb
            pb = xa * yb + xb * ya - xb * yb
            # conj(x1 y2) in the plane, then the scan radius with a unit guard
            cre = (pa - 0.5 * pb) / scale
            cim = -(S3 / 2) * pb / scale
            rho = (m1 + m2) / (2.0 * scale) + 1.0
            for u in range(6):
                cx = UNIT_RE[u] * cre - UNIT_IM[u] * cim
                cy = UNIT_RE[u] * cim + UNIT_IM[u] * cre
                qlo = max(gqmin, ceil(2.0 * (cy - rho) / S3))
                qhi = min(gqmax, floor(2.0 * (cy + rho) / S3))
                for Q in range(qlo, qhi + 1):
                    dy = S3 * Q / 2.0 - cy
                    w2 = rho * rho - dy * dy
                    if w2 < 0:
                        continue
                    w = sqrt(w2)
                    plo = max(gpmin, ceil(2.0 * (cx - w)))
                    phi = min(gpmax, floor(2.0 * (cx + w)))
                    if (plo + Q) % 2:
                        plo += 1
                    for P in range(plo, phi + 1, 2):
                        k = grid.get((P, Q))
                        if k is None:
                            continue
                        if e12 + zs[k][3] > eps2:
                            continue
                        cofactor_test(hits, i, j, k, u, xs[i], ys[j], zs[k], M, m1, m2, pa, pb)
    return hits


def cofactor_test(hits, i, j, k, u, X, Y, Z, M, m1, m2, pa, pb):
    """Append ``(i, j, k, u, a)`` for every root ``a`` passing all three cofactor norms."""
    xa, xb, _, _, xw, _, _ = X
    ya, yb, _, _, yw, _, _ = Y
    za, zb, zn, _, zw, _, _ = Z
    m3 = M - zn
    K = m1 + m2 - m3
    sa = pa - zw[2 * u]
    sb = pb - zw[2 * u + 1]
    disc = K * K - 4 * (sa * sa - sa * sb + sb * sb)
    if disc < 0:
        return
    r = isqrt(disc)
    if r * r != disc or (K + r) % 2:
        return
    qa = xa * za - xb * zb
    qb = xa * zb + xb * za - xb * zb
    ra = ya * za - yb * zb
    rb = ya * zb + yb * za - yb * zb
    for a in ((K - r) // 2, (K + r) // 2) if r else (K // 2,):
        b = m1 - a
        d = m3 - m1 + a
        e = m3 - m2 + a
        g = m2 - a
        if a < 0 or b < 0 or d < 0 or e < 0 or g < 0 or K - a < 0:
            continue
        ta = qa - yw[2 * u]
        tb = qb - yw[2 * u + 1]
        if ta * ta - ta * tb + tb * tb != b * e:
            continue
        ta = ra - xw[2 * u]
        tb = rb - xw[2 * u + 1]
        if ta * ta - ta * tb + tb * tb != d * g:
            continue
        hits.append((i, j, k, u, a))
