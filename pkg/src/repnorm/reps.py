"""Matrix coefficients of the irreducible families on the diagonal flow.

Three families are implemented against one pair of conventions:

* circle model (principal / complementary): basis f_n(e^{i th}) = e^{-in th},
  compact character of f_n is 2n + 2 sigma, and

      coef(n, m) = <pi(a_x) f_m, f_n>          (L^2 pairing, linear slot first)

* disc model (holomorphic discrete family, lowest weight ell >= 2): basis
  f_n(z) = (-1)^(n-ell/2) binom(n+ell/2-1, n-ell/2)^(1/2) z^(n-ell/2) for
  n in ell/2 + N0, compact character 2n, and

      coef(n, m) = <f_n, pi(a_x) f_m>_ell      (weighted pairing, antilinear
                                                slot first)

Both give "apply the group to f_m, project on f_n", so a column at fixed m
is directly comparable with the oracle output.

Closed forms evaluate a Gamma prefactor (log space, signed) times a Gauss
hypergeometric factor.  Each family also has a first-principles oracle that
never touches the closed forms: Fourier analysis of the transformed circle
function, and Taylor extraction of the transformed disc function.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (ConvergenceError, DomainError, NormalizationError,
                     PreconditionError)
from .group import CartanCoord, cartan_from_x
from .specfun import (SERIES_KMAX, gamma_ratio_signed, hyp2f1,
                      is_nonpositive_int, log_gamma)

X_CUT = 0.98
ORACLE_TOL = 1e-9


# ---------------------------------------------------------------------------
# Representation descriptors


@dataclass(frozen=True)
class Principal:
    """Circle-model series with parity sigma in {0, 1/2} and spectral
    parameter lam in the open strip -1 < Re lam < 0 (uniformly bounded
    range).  Unitary on the line Re lam = -1/2; irreducible unless
    lam + sigma is an integer (the reducible points stay evaluable)."""
    sigma: float
    lam: complex

    def __post_init__(self):
        if self.sigma not in (0.0, 0.5):
            raise PreconditionError(f"sigma must be 0 or 1/2, got {self.sigma}")
        lam = complex(self.lam)
        if not (-1.0 < lam.real < 0.0):
            raise PreconditionError(f"need -1 < Re lam < 0, got {lam}")
        object.__setattr__(self, "lam", lam)


@dataclass(frozen=True)
class Complementary:
    """Deformed circle-model series, real lam in (-1/2, 0), unitary for the
    renormalized basis."""
    lam: float

    def __post_init__(self):
        if not (-0.5 < self.lam < 0.0):
            raise PreconditionError(f"need -1/2 < lam < 0, got {self.lam}")


@dataclass(frozen=True)
class Discrete:
    """Holomorphic disc-model representation with lowest weight ell >= 2."""
    ell: int

    def __post_init__(self):
        if int(self.ell) != self.ell or self.ell < 2:
            raise PreconditionError(f"need integer ell >= 2, got {self.ell}")
        object.__setattr__(self, "ell", int(self.ell))


@dataclass(frozen=True)
class CoefValue:
    value: complex
    method: str
    err_est: float


def is_unitary(r):
    if isinstance(r, Principal):
        return abs(complex(r.lam).real + 0.5) < 1e-12
    return isinstance(r, (Complementary, Discrete))


def k_spectrum(r, limit):
    """Compact characters of r with absolute value <= limit, ascending."""
    limit = int(limit)
    if isinstance(r, Principal):
        start = 1 if r.sigma == 0.5 else 0
        ks = [k for k in range(-limit, limit + 1) if (k - start) % 2 == 0]
        return ks
    if isinstance(r, Complementary):
        return [k for k in range(-limit, limit + 1) if k % 2 == 0]
    if isinstance(r, Discrete):
        return list(range(r.ell, limit + 1, 2))
    raise PreconditionError(f"unknown representation {r!r}")


def k_character(r, n):
    """Compact character of the basis vector with index n."""
    if isinstance(r, (Principal, Complementary)):
        sigma = r.sigma if isinstance(r, Principal) else 0.0
        return int(round(2 * n + 2 * sigma))
    if isinstance(r, Discrete):
        return int(round(2 * n))
    raise PreconditionError(f"unknown representation {r!r}")


def _discrete_index(ell, n):
    """Validate n in ell/2 + N0 and return the offset j = n - ell/2."""
    j2 = 2.0 * n - ell
    j = int(round(j2 / 2.0))
    if abs(j2 - 2 * j) > 1e-9 or j < 0:
        raise PreconditionError(f"index {n} not in ell/2 + N0 for ell={ell}")
    return j


# ---------------------------------------------------------------------------
# Closed forms


def _principal_params(sigma, lam, n, m):
    """Series parameters and Gamma prefactor of coef(n, m); the two index
    orders are mirror images of one another."""
    lam = complex(lam)
    if n >= m:
        a = -lam - m - sigma
        b = -lam + n + sigma
        c = float(n - m + 1)
        pref = gamma_ratio_signed([lam - m - sigma + 1.0],
                                  [c, lam - n - sigma + 1.0])
    else:
        a = -lam - n - sigma
        b = -lam + m + sigma
        c = float(m - n + 1)
        pref = gamma_ratio_signed([lam + m + sigma + 1.0],
                                  [c, lam + n + sigma + 1.0])
    return a, b, c, pref


def coef_principal(sigma, lam, n, m, coord, x_cut=X_CUT):
    """Circle-model coefficient <pi(a_x) f_m, f_n>.

    Closed form: pref * x^(|n-m|/2) (1-x)^(-lam) 2F1(a, b; |n-m|+1; x),
    evaluated by the direct series for x <= x_cut.  Beyond x_cut the series
    is impractically slow, so the circle oracle takes over; if the oracle
    cannot certify convergence the series is retried with a large budget.
    """
    if isinstance(coord, (int, float)):
        coord = cartan_from_x(float(coord))
    x = coord.x
    if x <= x_cut:
        return _coef_principal_series(sigma, lam, n, m, x, "series")
    try:
        column, err = coef_oracle_principal(sigma, lam, m, coord,
                                            n_max=abs(int(n)))
        return CoefValue(column[int(n)], "oracle", err)
    except ConvergenceError:
        try:
            return _coef_principal_series(sigma, lam, n, m, x,
                                          "series-fallback", tol=1e-13)
        except (ConvergenceError, DomainError) as exc:
            raise ConvergenceError(
                f"both oracle and series failed at x={x}: {exc}") from exc


def _coef_principal_series(sigma, lam, n, m, x, method, tol=1e-14):
    a, b, c, pref = _principal_params(sigma, lam, n, m)
    if pref == 0.0:
        return CoefValue(0.0 + 0.0j, method, 0.0)
    F, ferr = hyp2f1(a, b, c, x, tol=tol)
    lam = complex(lam)
    shell = (x ** (abs(n - m) / 2.0)) * cmath.exp(-lam * math.log1p(-x))
    value = pref * shell * F
    err = abs(pref * shell) * ferr + 1e-15 * abs(value)
    return CoefValue(value, method, err)


def complementary_normalizer(lam, n, m=0):
    """Ratio of renormalizations C(n, m) = sqrt(H(n)/H(m)).

    The defining quadratic form has H(k) = G(lam-k+1)/G(-lam-k) on the k-th
    basis vector; reflection turns this into G(|k|+1+lam)/G(|k|-lam), which
    is manifestly positive for -1 < lam < 0.  Positivity of the defining
    form is still checked on the requested indices.
    """
    lam = float(lam)

    def log_h(k):
        k = abs(int(k))
        return (log_gamma(k + 1.0 + lam) - log_gamma(k - lam)).real

    for k in (n, m):
        h_sign = gamma_ratio_signed([lam - int(k) + 1.0], [-lam - int(k)])
        if h_sign.real <= 0.0 or abs(h_sign.imag) > 1e-9 * abs(h_sign):
            raise NormalizationError(
                f"renormalizing form not positive at index {k}: {h_sign}")
    return math.exp(0.5 * (log_h(n) - log_h(m)))


def coef_complementary(lam, n, m, coord):
    """Coefficient of the unitarized complementary series: the sigma = 0
    circle coefficient rescaled by the normalizer ratio."""
    scale = complementary_normalizer(lam, n, m)
    base = coef_principal(0.0, complex(lam), n, m, coord)
    return CoefValue(scale * base.value, base.method, scale * base.err_est)


def _discrete_log_j(ell, p, q):
    """log of |J|, the symmetric Gamma prefactor of the disc closed form."""
    return 0.5 * (log_gamma(p + float(ell)).real + log_gamma(q + float(ell)).real
                  - log_gamma(p + 1.0).real - log_gamma(q + 1.0).real) \
        - log_gamma(float(ell)).real


def coef_discrete(ell, n, m, coord):
    """Disc-model coefficient <f_n, pi(a_x) f_m>_ell.

    With p = n - ell/2, q = m - ell/2 the value is the finite sum

      (-1)^p |J| sum_k g_k x^((p+q-2k)/2) (1-x)^(ell/2+k),   k <= min(p, q),

    g_k = (-1)^k (p choose-ish) ... concretely g_0 = 1 and
    g_{k+1} = -g_k (p-k)(q-k) / ((ell+k)(k+1)): the terminating Gauss
    polynomial in -(1-x)/x written out so the x -> 0 and x -> 1 limits are
    manifest.  The alternating sign is real: the column oscillates in n at
    fixed x, as the Fourier oracle confirms.
    """
    r = Discrete(ell)
    p = _discrete_index(r.ell, n)
    q = _discrete_index(r.ell, m)
    if isinstance(coord, (int, float)):
        coord = cartan_from_x(float(coord))
    x = coord.x
    ell = r.ell

    sign = -1.0 if p % 2 else 1.0
    j_mag = math.exp(_discrete_log_j(ell, p, q))
    half_ell = ell / 2.0

    total = 0.0
    g = 1.0
    for k in range(min(p, q) + 1):
        total += g * x ** ((p + q - 2 * k) / 2.0) * (1.0 - x) ** (half_ell + k)
        g *= -(p - k) * (q - k) / ((ell + k) * (k + 1.0))
    value = sign * j_mag * total
    return CoefValue(complex(value), "closed", 1e-14 * (abs(value) + j_mag))


def coef(r, n, m, coord):
    """Family dispatcher."""
    if isinstance(r, Principal):
        return coef_principal(r.sigma, r.lam, n, m, coord)
    if isinstance(r, Complementary):
        return coef_complementary(r.lam, n, m, coord)
    if isinstance(r, Discrete):
        return coef_discrete(r.ell, n, m, coord)
    raise PreconditionError(f"unknown representation {r!r}")


# ---------------------------------------------------------------------------
# Oracles


def _next_pow2(n):
    p = 1
    while p < n:
        p *= 2
    return p


def _circle_samples(sigma, lam, m, x, big_n):
    """The transformed circle function on a uniform theta grid."""
    lam = complex(lam)
    A = 1.0 / math.sqrt(1.0 - x)
    B = math.sqrt(x) / math.sqrt(1.0 - x)
    theta = 2.0 * np.pi * np.arange(big_n) / big_n
    e_pos = np.exp(1j * theta)
    base_pos = B * e_pos + A            # Re > 0: principal powers are safe
    base_neg = B * np.conj(e_pos) + A
    vals = np.exp((lam + sigma) * np.log(base_pos)
                  + (lam - sigma) * np.log(base_neg))
    if m != 0:
        moebius = base_pos / (A * e_pos + B)   # unit modulus on the circle
        vals = vals * moebius ** int(m)
    return vals


def coef_oracle_principal(sigma, lam, m, coord, n_max, tol=ORACLE_TOL):
    """Column of circle-model coefficients at fixed m by Fourier analysis.

    Returns ({n: value for |n| <= n_max}, err_est).  The sample count starts
    at the next power of two above 8(n_max+|m|)+64 and doubles (three times
    at most) until the requested coefficients move by less than tol.
    """
    if isinstance(coord, (int, float)):
        coord = cartan_from_x(float(coord))
    x = coord.x
    n_max = int(n_max)
    big_n = _next_pow2(8 * (n_max + abs(int(m))) + 64)

    def column(big_n):
        vals = _circle_samples(sigma, lam, m, x, big_n)
        spec = np.fft.fft(vals) / big_n
        ns = np.arange(-n_max, n_max + 1)
        return spec[(-ns) % big_n], float(np.max(np.abs(vals)))

    prev, scale = column(big_n)
    for _ in range(3):
        big_n *= 2
        cur, scale = column(big_n)
        delta = float(np.max(np.abs(cur - prev)))
        if delta <= tol:
            err = delta + 2e-16 * scale * math.sqrt(big_n)
            ns = range(-n_max, n_max + 1)
            return {n: complex(v) for n, v in zip(ns, cur)}, err
        prev = cur
    raise ConvergenceError(
        f"circle oracle not settled at N={big_n} (x={x}, n_max={n_max})")


def coef_oracle_discrete(ell, m, coord, n_max, tol=ORACLE_TOL):
    """Column of disc-model coefficients at fixed m by Taylor extraction.

    The transformed function F = pi(a_x) f_m is holomorphic across the
    closed unit disc with one pole of order ell + q at z = 1/sqrt(x); its
    Taylor coefficient of order j, divided by the leading coefficient of
    f_(ell/2+j), is the coefficient on the basis vector ell/2 + j.

    Extracting order j on a contour of radius r costs a factor r^-j against
    the fixed absolute noise of the samples, which grows near the pole like
    (1 - r/pole)^-(ell+q); the balance point is r/pole = j/(j + ell + q).
    No single radius serves both ends of a long column in double precision,
    so the orders are split into dyadic windows, each extracted on its own
    balanced contour with the same doubling certificate as the circle
    oracle.
    """
    r_spec = Discrete(ell)
    ell = r_spec.ell
    q = _discrete_index(ell, m)
    if isinstance(coord, (int, float)):
        coord = cartan_from_x(float(coord))
    x = coord.x
    j_max = max(0, int(math.floor(n_max - ell / 2.0 + 1e-9)))

    indices = [ell / 2.0 + j for j in range(j_max + 1)]
    if x == 0.0:
        vals = {idx: (1.0 + 0.0j if idx == ell / 2.0 + q else 0.0j)
                for idx in indices}
        return vals, 0.0

    A = 1.0 / math.sqrt(1.0 - x)
    B = math.sqrt(x) / math.sqrt(1.0 - x)
    pole = 1.0 / math.sqrt(x)
    pole_order = ell + q

    lg_ell = log_gamma(float(ell)).real
    d_m = (-1.0) ** q * math.exp(
        0.5 * (log_gamma(m + ell / 2.0).real - log_gamma(q + 1.0).real - lg_ell))

    def window_column(js, radius, big_n):
        theta = 2.0 * np.pi * np.arange(big_n) / big_n
        z = radius * np.exp(1j * theta)
        den = A - B * z
        w = (A * z - B) / den
        fvals = d_m * den ** (-ell) * w ** q
        spec = np.fft.fft(fvals) / big_n
        lead = np.array([(-1.0) ** j * math.exp(
            0.5 * (log_gamma(ell + j).real - log_gamma(j + 1.0).real - lg_ell))
            for j in js])
        taylor = spec[js] * radius ** (-js.astype(float))
        # sample noise is absolute; the worst relative hit in the window is
        # at its lowest order (smallest r^j and smallest |lead|)
        floor = 2e-16 * float(np.max(np.abs(fvals))) \
            * radius ** (-float(js[0])) / abs(lead[0])
        return taylor / lead, floor

    out = np.empty(j_max + 1, dtype=complex)
    err = 0.0
    j_lo = 0
    hi = 8
    while j_lo <= j_max:
        j_hi = min(hi - 1, j_max)
        js = np.arange(j_lo, j_hi + 1)
        top = j_hi + 1.0
        radius = pole * top / (top + pole_order)
        radius = min(radius, math.exp(500.0 / top))
        big_n = _next_pow2(8 * (j_hi + q + ell) + 64)
        prev, floor = window_column(js, radius, big_n)
        for attempt in range(3):
            big_n *= 2
            cur, floor = window_column(js, radius, big_n)
            delta = float(np.max(np.abs(cur - prev)))
            if delta <= tol:
                break
            prev = cur
        else:
            raise ConvergenceError(
                f"disc oracle not settled at N={big_n} "
                f"(x={x}, orders {j_lo}..{j_hi})")
        out[js] = cur
        err = max(err, delta + floor)
        j_lo = j_hi + 1
        hi *= 4
    return {idx: complex(v) for idx, v in zip(indices, out)}, err


def coef_oracle(r, m, coord, n_max, tol=ORACLE_TOL):
    """Oracle column dispatcher; complementary columns are rescaled circle
    columns."""
    if isinstance(r, Principal):
        return coef_oracle_principal(r.sigma, r.lam, m, coord, n_max, tol)
    if isinstance(r, Complementary):
        col, err = coef_oracle_principal(0.0, complex(r.lam), m, coord,
                                         n_max, tol)
        scaled = {n: complementary_normalizer(r.lam, n, m) * v
                  for n, v in col.items()}
        worst = max(complementary_normalizer(r.lam, n, m) for n in col)
        return scaled, err * worst
    if isinstance(r, Discrete):
        return coef_oracle_discrete(r.ell, m, coord, n_max, tol)
    raise PreconditionError(f"unknown representation {r!r}")


def parseval_defect(r, m, coord, tail_tol=1e-12):
    """|sum_n |coef(n, m)|^2 - 1| over the full column, oracle-evaluated.

    For a unitary member the column is a unit vector; the defect combines
    the oracle error with the (geometrically estimated) truncation tail.
    """
    if isinstance(coord, (int, float)):
        coord = cartan_from_x(float(coord))
    x = coord.x
    base = r.ell / 2.0 if isinstance(r, Discrete) else 0.0
    # column magnitudes decay like x^(n/2); pick the cut from that envelope
    n_span = max(64, int(2.0 * math.log(1e-14) / math.log(max(x, 1e-6))) + 64)
    n_span = min(n_span, 8192)
    col, err = coef_oracle(r, m, coord, n_max=base + n_span)
    total = sum(abs(v) ** 2 for v in col.values())
    ordered = [abs(col[k]) for k in sorted(col)]
    edge = max(ordered[-5:])
    if not isinstance(r, Discrete):     # two-sided column: low end tails too
        edge = max(edge, max(ordered[:5]))
    tail = edge ** 2 * 16.0 / max(1.0 - x, 1e-12)
    return abs(total - 1.0) + tail + 2.0 * err * len(col) * max(ordered)


# ---------------------------------------------------------------------------
# Vectorized evaluators (scan and quadrature fast paths)

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _f_series_vec(a, b, c, xs, tol=1e-15):
    """Gauss series over an array of arguments (max |x| safely below 1).

    Plain term recursion; the loop stops once the largest live term is
    below tol relative to the largest partial sum, with an iteration cap
    from the geometric envelope of the worst point.
    """
    xs = np.asarray(xs, dtype=float)
    x_hi = float(np.max(np.abs(xs))) if xs.size else 0.0
    if x_hi >= 0.995:
        raise PreconditionError(f"series batch needs |x| < 0.995, got {x_hi}")
    total = np.ones(xs.shape, dtype=complex)
    term = np.ones(xs.shape, dtype=complex)
    if x_hi == 0.0:
        return total
    k_cap = int(4 * abs(b) + 64 + math.log(1e-18) / math.log(x_hi))
    scale = 1.0
    for k in range(k_cap):
        term = term * (xs * ((a + k) * (b + k) / ((c + k) * (k + 1.0))))
        total += term
        if k % 16 == 15:
            scale = max(scale, float(np.max(np.abs(total))))
            if float(np.max(np.abs(term))) <= tol * scale:
                return total
    if float(np.max(np.abs(term))) > 1e-10 * scale:
        raise ConvergenceError(f"vector series stalled (x_hi={x_hi})")
    return total


def _f_connection_vec(a, b, c, xs, omx):
    """2F1 over an array of x near 1 through the two-term 1-x connection.

    Both transformed series run in the variable 1-x <= 1-X_CUT, so they
    converge in a handful of terms.  Requires c-a-b at distance > 0.05
    from the integers (the logarithmic case is excluded); prefactor poles
    that kill one of the terms are resolved by the signed Gamma ratio.
    """
    s = c - a - b
    pref1 = gamma_ratio_signed([c, s], [c - a, c - b])
    pref2 = gamma_ratio_signed([c, -s], [a, b])
    out = np.zeros(np.asarray(xs).shape, dtype=complex)
    if pref1 != 0.0:
        out += pref1 * _f_series_vec(a, b, a + b - c + 1.0, omx)
    if pref2 != 0.0:
        out += pref2 * np.exp(s * np.log(omx)) * _f_series_vec(
            c - a, c - b, s + 1.0, omx)
    return out


def _f_euler_vec(a, b, c, xs, omx):
    """2F1 over an array of x in (X_CUT, 1) via the Euler integral.

    Substituting t = 1 - e^{-v} gives

      2F1 = [G(c)/(G(b)G(c-b))] int_0^inf e^{-v(c-b)} (1-e^{-v})^{b-1}
                                          (1 - x(1-e^{-v}))^{-a} dv

    which is smooth for Re b > 0, Re(c-b) > 0 and concentrates near
    v* = log(1 + (b-1)/(c-b)).  Panels are graded to the local log-slope so
    a 16-point Gauss rule per panel resolves both the rise and the tail.
    omx carries 1-x at full precision; the inner factor is evaluated as
    (1-x) + x e^{-v}, which stays exact however close x is to 1.
    """
    a, b, c = complex(a), complex(b), complex(c)
    cb = c - b
    if not (b.real > 0.0 and cb.real > 0.05):
        raise PreconditionError(
            f"Euler path needs Re b > 0, Re(c-b) > 0.05; got b={b}, c={c}")
    xs = np.asarray(xs, dtype=float)

    br = b.real
    v_star = math.log1p(max(br - 1.0, 0.0) / cb.real)
    v_lo = max(1e-9, v_star - math.log1p(60.0 / cb.real))
    v_hi = v_star + 48.0 / cb.real
    osc = abs(cb.imag) + abs(a) + cb.real + 1.0

    pref = gamma_ratio_signed([c], [b, cb])
    acc = np.zeros(xs.shape, dtype=complex)

    # near v = 0 the factor (1-e^{-v})^{b-1} is an algebraic cusp that fixed
    # panels cannot see; run that stretch in y = log v, where it turns into
    # a plain exponential e^{by} (skipped when the truncation point already
    # exceeds the split, which happens only for large Re b, where the cusp
    # is flat and carries no mass anyway)
    if v_lo < 0.5:
        v_split = min(0.5, v_hi)
        y_lo = math.log(1e-19) / br
        y_hi = math.log(v_split)
        if y_hi > y_lo:
            h_y = min(2.5, 16.0 / (1.0 + abs(b - 1.0) + abs(cb) * v_split))
            n_panels = max(1, math.ceil((y_hi - y_lo) / h_y))
            h_y = (y_hi - y_lo) / n_panels
            for p in range(n_panels):
                mid = y_lo + (p + 0.5) * h_y
                for node, weight in zip(_GL_NODES, _GL_WEIGHTS):
                    vk = math.exp(mid + 0.5 * h_y * node)
                    s = -math.expm1(-vk)
                    t1 = cmath.exp((b - 1.0) * math.log(s) - cb * vk)
                    wk = omx + xs * math.exp(-vk)
                    acc += (weight * 0.5 * h_y * vk * t1) * np.exp(
                        -a * np.log(wk))
            v_lo = v_split
            if v_lo >= v_hi:
                return pref * acc

    v = v_lo
    while v < v_hi:
        slope = cb.real * math.exp(max(v_star - v, 0.0)) + osc
        h = min(2.5, 16.0 / slope, v_hi - v)
        mid, half = v + h / 2.0, h / 2.0
        for node, weight in zip(_GL_NODES, _GL_WEIGHTS):
            vk = mid + half * node
            s = -math.expm1(-vk)            # 1 - e^{-v}
            t1 = cmath.exp((b - 1.0) * math.log(s) - cb * vk)
            # e^{-v} enters on its own: recovering it as 1 - s would throw
            # away half the mantissa once v is past ~18
            wk = omx + xs * math.exp(-vk)   # real, in (1-x, 1]
            acc += (weight * half * t1) * np.exp(-a * np.log(wk))
        v += h
    return pref * acc


def principal_coef_vec(sigma, lam, n, m, xs, x_cut=X_CUT, omx=None):
    """Circle-model coefficients over an array of Cartan x (n >= m).

    Series below x_cut, Euler integral above; the a = 0 family (boundary of
    the parity-1/2 strip) short-circuits to the elementary closed form.
    Callers sitting extremely close to the boundary pass omx = 1-x directly
    so the boundary factor keeps its full precision.
    """
    if n < m:
        raise PreconditionError("vector path expects n >= m")
    lam = complex(lam)
    xs = np.asarray(xs, dtype=float)
    omx = 1.0 - xs if omx is None else np.asarray(omx, dtype=float)
    a, b, c, pref = _principal_params(sigma, lam, n, m)
    shell = xs ** ((n - m) / 2.0) * np.exp(-lam * np.log(omx))
    if pref == 0.0:
        return np.zeros(xs.shape, dtype=complex)
    if is_nonpositive_int(a) and round(a.real) == 0:
        return pref * shell
    F = np.empty(xs.shape, dtype=complex)
    low = xs <= x_cut
    if np.any(low):
        F[low] = _f_series_vec(a, b, c, xs[low])
    if np.any(~low):
        hi = ~low
        s = c - a - b
        if (c - b).real > 0.05:
            F[hi] = _f_euler_vec(a, b, c, xs[hi], omx[hi])
        elif abs(s.imag) > 0.05 or abs(s.real - round(s.real)) > 0.05:
            F[hi] = _f_connection_vec(a, b, c, xs[hi], omx[hi])
        else:
            F[hi] = [hyp2f1(a, b, c, float(xx), tol=1e-13)[0]
                     for xx in xs[hi]]
    return pref * shell * F


def complementary_coef_vec(lam, n, m, xs, omx=None):
    scale = complementary_normalizer(lam, n, m)
    return scale * principal_coef_vec(0.0, complex(lam), n, m, xs, omx=omx)


def discrete_coef_vec(ell, n, m, xs, omx=None):
    """Disc-model coefficients over an array of Cartan x."""
    r = Discrete(ell)
    ell = r.ell
    p = _discrete_index(ell, n)
    q = _discrete_index(ell, m)
    xs = np.asarray(xs, dtype=float)
    one_minus = 1.0 - xs if omx is None else np.asarray(omx, dtype=float)
    sign = -1.0 if p % 2 else 1.0
    j_mag = math.exp(_discrete_log_j(ell, p, q))
    total = np.zeros(xs.shape, dtype=float)
    g = 1.0
    for k in range(min(p, q) + 1):
        total += g * xs ** ((p + q - 2 * k) / 2.0) * one_minus ** (ell / 2.0 + k)
        g *= -(p - k) * (q - k) / ((ell + k) * (k + 1.0))
    return (sign * j_mag) * total.astype(complex)


def coef_vec(r, n, m, xs, omx=None):
    """Vectorized |family| dispatcher used by the scans and the integrals."""
    if isinstance(r, Principal):
        return principal_coef_vec(r.sigma, r.lam, n, m, xs, omx=omx)
    if isinstance(r, Complementary):
        return complementary_coef_vec(r.lam, n, m, xs, omx=omx)
    if isinstance(r, Discrete):
        return discrete_coef_vec(r.ell, n, m, xs, omx=omx)
    raise PreconditionError(f"unknown representation {r!r}")


def parse_rep(text):
    """Parse 'principal:SIGMA:LAM', 'complementary:LAM' or 'discrete:ELL'."""
    parts = str(text).strip().lower().split(":")
    kind = parts[0]
    try:
        if kind == "principal" and len(parts) == 3:
            lam = complex(parts[2].replace("i", "j"))
            return Principal(float(parts[1]), lam)
        if kind == "complementary" and len(parts) == 2:
            return Complementary(float(parts[1]))
        if kind == "discrete" and len(parts) == 2:
            return Discrete(int(parts[1]))
    except ValueError as exc:
        raise PreconditionError(f"cannot parse representation {text!r}: {exc}")
    raise PreconditionError(f"cannot parse representation {text!r}")
