# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_kernels_py``.  Same signatures, same visiting order,
same floating-point predicates; 64-bit integer coordinates only (the caller
routes larger problems to the Python module)."""

from libc.math cimport sqrt, sqrtl, ceil, floor
from libc.stdlib cimport malloc, free

cdef extern from *:
    ctypedef long long int128 "__int128"

cdef double S3 = sqrt(3.0)
cdef double AXIS_EPS = 1e-6


cdef inline long long isqrt64(long long n):
    cdef long long r
    if n <= 0:
        return 0
    r = <long long> sqrt(<double> n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def solve_norm_doubled(long long N):
    cdef long long four_n = 4 * N
    cdef long long qmax = isqrt64(four_n // 3)
    cdef long long Q, rest, P
    for Q in range(qmax + 1):
        rest = four_n - 3 * Q * Q
        P = isqrt64(rest)
        if P * P == rest and ((P + Q) & 1) == 0:
            return P, Q
    return None


cdef inline double dmax(double a, double b):
    return a if a >= b else b


cdef inline double dmin(double a, double b):
    return a if a <= b else b


cdef bint _cap_extent(double c, double s, double r1, double r2, double* lo, double* hi):
    cdef double h, ya, yb
    if r1 > r2:
        return False
    if r1 <= -r2:
        lo[0] = -r2
        hi[0] = r2
        return True
    h = sqrt((r2 - r1) * (r2 + r1))
    ya = r1 * s + h * c
    yb = r1 * s - h * c
    hi[0] = r2 if r2 * s >= r1 else dmax(ya, yb)
    lo[0] = -r2 if -r2 * s >= r1 else dmin(ya, yb)
    lo[0] = dmax(lo[0], -r2)
    hi[0] = dmin(hi[0], r2)
    return True


def cap_extent(double c, double s, double r1, double r2):
    cdef double lo, hi
    if not _cap_extent(c, s, r1, r2, &lo, &hi):
        return None
    return lo, hi


cdef struct Bound:
    bint exact
    long long bi
    double bd


cdef inline Bound _make_bound(object bound4):
    cdef Bound b
    if isinstance(bound4, int):
        b.exact = True
        b.bi = bound4
        b.bd = <double> b.bi
    else:
        b.exact = False
        b.bi = 0
        b.bd = bound4
    return b


cdef inline bint _rest_negative(Bound b, long long used, double usedd):
    if b.exact:
        return b.bi - used < 0
    return b.bd - usedd < 0


cdef inline long long _rest_isqrt(Bound b, long long used):
    if b.exact:
        return isqrt64(b.bi - used)
    return <long long> floor(sqrt(b.bd - <double> used))


cdef inline bint _in_disk(Bound b, long long val):
    if b.exact:
        return val <= b.bi
    return <double> val <= b.bd


cdef int _scan_2d(double c, double s, double r1, double r2, Bound b, double guard,
                  list out, bint raw) except -1:
    # raw: emit every scanned point (the caller filters); else apply the 2D test
    cdef double lo, hi, t, g2
    cdef long long qlo, qhi, Q, pr, plo, phi, P
    cdef bint use_half
    if r1 > r2 + guard:
        return 0
    if not _cap_extent(c, s, dmin(r1 - guard, r2), r2 + guard, &lo, &hi):
        return 0
    qlo = <long long> ceil(2.0 * lo / S3 - guard)
    qhi = <long long> floor(2.0 * hi / S3 + guard)
    use_half = c > AXIS_EPS or c < -AXIS_EPS
    g2 = guard / (c if c > 0 else -c) if use_half else 0.0
    for Q in range(qlo, qhi + 1):
        if _rest_negative(b, 3 * Q * Q, <double> (3 * Q * Q)):
            continue
        pr = _rest_isqrt(b, 3 * Q * Q)
        plo = -pr
        phi = pr
        if use_half:
            t = (2.0 * r1 - S3 * Q * s) / c
            if c > 0:
                t = dmax(t - g2, <double> (plo - 1))
                plo = max(plo, <long long> ceil(t))
            else:
                t = dmin(t + g2, <double> (phi + 1))
                phi = min(phi, <long long> floor(t))
        if (plo + Q) & 1:
            plo += 1
        P = plo
        while P <= phi:
            if raw or (P * c + S3 * Q * s >= 2.0 * r1 and _in_disk(b, P * P + 3 * Q * Q)):
                out.append((P, Q))
            P += 2
    return 0


def enum_2d(double c, double s, double r1, double r2, object bound4, double guard):
    cdef list out = []
    cdef Bound b = _make_bound(bound4)
    _scan_2d(c, s, r1, r2, b, guard, out, False)
    return out


def contains_2d(long long P, long long Q, double c, double s, double r1, object bound4):
    cdef Bound b = _make_bound(bound4)
    return P * c + S3 * Q * s >= 2.0 * r1 and _in_disk(b, P * P + 3 * Q * Q)


def enum_cap4(double u0, double u1, double u2, double u3, double r1, double r2,
              object bound4, double guard):
    cdef list out = []
    cdef Bound b = _make_bound(bound4)
    cdef Bound inner
    cdef list plane
    cdef double rho = sqrt(u0 * u0 + u1 * u1)
    cdef double ci, si, lo, hi, lam1, lam2, g, restd
    cdef long long plo, phi, P2, P1, Q1, Q2, q2, rest, odd
    cdef Py_ssize_t t
    if r1 > r2 + guard:
        return out
    if rho > 0:
        ci = u0 / rho
        si = u1 / rho
    else:
        ci = 1.0
        si = 0.0
    if not _cap_extent(rho, u2, dmin(r1 - guard, r2), r2 + guard, &lo, &hi):
        return out
    plo = <long long> ceil(2.0 * lo - guard)
    phi = <long long> floor(2.0 * hi + guard)
    inner.exact = b.exact
    for P2 in range(plo, phi + 1):
        odd = P2 & 1
        if b.exact:
            inner.bi = b.bi - P2 * P2 - 3 * odd
            if inner.bi < 0:
                continue
            inner.bd = <double> inner.bi
        else:
            inner.bd = b.bd - <double> (P2 * P2) - <double> (3 * odd)
            if inner.bd < 0:
                continue
        lam2 = sqrt(inner.bd) / 2.0
        if rho > AXIS_EPS:
            lam1 = (r1 - u2 * P2 / 2.0) / rho
            g = guard / rho
        else:
            lam1 = -lam2 - 1.0
            g = guard
        plane = []
        _scan_2d(ci, si, lam1, lam2, inner, g, plane, True)
        for t in range(len(plane)):
            P1, Q1 = plane[t]
            if u0 * P1 + u1 * S3 * Q1 + u2 * P2 < 2.0 * r1:
                continue
            if b.exact:
                rest = b.bi - P1 * P1 - 3 * Q1 * Q1 - P2 * P2
                if rest < 0:
                    continue
                q2 = isqrt64(rest // 3)
            else:
                restd = b.bd - <double> (P1 * P1 + 3 * Q1 * Q1 + P2 * P2)
                if restd < 0:
                    continue
                q2 = <long long> floor(sqrt(restd / 3.0))
            if (q2 + odd) & 1:
                q2 -= 1
            Q2 = -q2
            while Q2 <= q2:
                if (u0 * P1 + u1 * S3 * Q1 + u2 * P2 + u3 * S3 * Q2 >= 2.0 * r1
                        and _in_disk(b, P1 * P1 + 3 * Q1 * Q1 + P2 * P2 + 3 * Q2 * Q2)):
                    out.append((P1, Q1, P2, Q2))
                Q2 += 2
    return out

cdef struct Entry:
    long long a
    long long b
    long long n
    double err
    long long w[12]
    long long P
    long long Q


cdef double UNIT_RE[6]
cdef double UNIT_IM[6]
UNIT_RE[:] = [1.0, -0.5, -0.5, -1.0, 0.5, 0.5]
UNIT_IM[:] = [0.0, S3 / 2, -S3 / 2, 0.0, -S3 / 2, S3 / 2]


cdef inline int128 isqrt128(int128 n):
    cdef int128 r
    if n <= 0:
        return 0
    r = <int128> sqrtl(<long double> n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


cdef inline int128 norm128(int128 a, int128 b):
    return a * a - a * b + b * b


cdef Entry* _load(list rows) except NULL:
    cdef Py_ssize_t n = len(rows), i, t
    cdef Entry* out = <Entry*> malloc((n + 1) * sizeof(Entry))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        a, b, nn, err, w, P, Q = rows[i]
        out[i].a = a
        out[i].b = b
        out[i].n = nn
        out[i].err = err
        for t in range(12):
            out[i].w[t] = w[t]
        out[i].P = P
        out[i].Q = Q
    return out


cdef int _cofactor_test(list hits, Py_ssize_t i, Py_ssize_t j, Py_ssize_t k, int u,
                        Entry* X, Entry* Y, Entry* Z, long long M, long long m1,
                        long long m2, int128 pa, int128 pb) except -1:
    cdef long long m3 = M - Z.n
    cdef long long K = m1 + m2 - m3
    cdef long long a, b, d, e, g
    cdef long long roots[2]
    cdef int nroots, ri
    cdef int128 sa, sb, disc, r, qa, qb, ra, rb, ta, tb
    sa = pa - Z.w[2 * u]
    sb = pb - Z.w[2 * u + 1]
    disc = <int128> K * K - 4 * norm128(sa, sb)
    if disc < 0:
        return 0
    r = isqrt128(disc)
    if r * r != disc or ((K + r) & 1):
        return 0
    qa = <int128> X.a * Z.a - <int128> X.b * Z.b
    qb = <int128> X.a * Z.b + <int128> X.b * Z.a - <int128> X.b * Z.b
    ra = <int128> Y.a * Z.a - <int128> Y.b * Z.b
    rb = <int128> Y.a * Z.b + <int128> Y.b * Z.a - <int128> Y.b * Z.b
    if r:
        nroots = 2
        roots[0] = <long long> ((K - r) // 2)
        roots[1] = <long long> ((K + r) // 2)
    else:
        nroots = 1
        roots[0] = K // 2
    for ri in range(nroots):
        a = roots[ri]
        b = m1 - a
        d = m3 - m1 + a
        e = m3 - m2 + a
        g = m2 - a
        if a < 0 or b < 0 or d < 0 or e < 0 or g < 0 or K - a < 0:
            continue
        ta = qa - Y.w[2 * u]
        tb = qb - Y.w[2 * u + 1]
        if norm128(ta, tb) != <int128> b * e:
            continue
        ta = ra - X.w[2 * u]
        tb = rb - X.w[2 * u + 1]
        if norm128(ta, tb) != <int128> d * g:
            continue
        hits.append((i, j, k, u, a))
    return 0


def triplet_hits(list xs, list ys, list zs, long long M, long long scale, double eps2):
    cdef list hits = []
    cdef Py_ssize_t nx = len(xs), ny = len(ys), nz = len(zs)
    cdef Entry* X = NULL
    cdef Entry* Y = NULL
    cdef Entry* Z = NULL
    cdef int* grid = NULL
    cdef Py_ssize_t i, j, k, gw, gh
    cdef long long gpmin, gpmax, gqmin, gqmax, Q, P, qlo, qhi, plo, phi, m1, m2
    cdef double zemin, e12, cre, cim, rho, cx, cy, dy, w2, w, dscale
    cdef int128 pa, pb
    cdef int u
    if nx == 0 or ny == 0 or nz == 0:
        return hits
    dscale = <double> scale
    try:
        X = _load(xs)
        Y = _load(ys)
        Z = _load(zs)
        zemin = Z[0].err
        gpmin = gpmax = Z[0].P
        gqmin = gqmax = Z[0].Q
        for k in range(nz):
            gpmin = min(gpmin, Z[k].P)
            gpmax = max(gpmax, Z[k].P)
            gqmin = min(gqmin, Z[k].Q)
            gqmax = max(gqmax, Z[k].Q)
        gw = gpmax - gpmin + 1
        gh = gqmax - gqmin + 1
        grid = <int*> malloc(gw * gh * sizeof(int))
        if grid == NULL:
            raise MemoryError()
        for k in range(gw * gh):
            grid[k] = -1
        for k in range(nz):
            grid[(Z[k].Q - gqmin) * gw + (Z[k].P - gpmin)] = <int> k
        for i in range(nx):
            if X[i].err + zemin > eps2:
                break
            m1 = M - X[i].n
            for j in range(ny):
                e12 = X[i].err + Y[j].err
                if e12 + zemin > eps2:
                    break
                m2 = M - Y[j].n
                pa = <int128> X[i].a * Y[j].a - <int128> X[i].b * Y[j].b
                pb = <int128> X[i].a * Y[j].b + <int128> X[i].b * Y[j].a - <int128> X[i].b * Y[j].b
                cre = (<double> pa - 0.5 * <double> pb) / dscale
                cim = -(S3 / 2) * <double> pb / dscale
                rho = (m1 + m2) / (2.0 * dscale) + 1.0
                for u in range(6):
                    cx = UNIT_RE[u] * cre - UNIT_IM[u] * cim
                    cy = UNIT_RE[u] * cim + UNIT_IM[u] * cre
                    qlo = max(gqmin, <long long> ceil(2.0 * (cy - rho) / S3))
                    qhi = min(gqmax, <long long> floor(2.0 * (cy + rho) / S3))
                    Q = qlo
                    while Q <= qhi:
                        dy = S3 * Q / 2.0 - cy
                        w2 = rho * rho - dy * dy
                        if w2 >= 0:
                            w = sqrt(w2)
                            plo = max(gpmin, <long long> ceil(2.0 * (cx - w)))
                            phi = min(gpmax, <long long> floor(2.0 * (cx + w)))
                            if (plo + Q) & 1:
                                plo += 1
                            P = plo
                            while P <= phi:
                                k = grid[(Q - gqmin) * gw + (P - gpmin)]
                                if k >= 0 and e12 + Z[k].err <= eps2:
                                    _cofactor_test(hits, i, j, k, u, &X[i], &Y[j], &Z[k],
                                                   M, m1, m2, pa, pb)
                                P += 2
                        Q += 1
    finally:
        free(grid)
        free(X)
        free(Y)
        free(Z)
    return hits
