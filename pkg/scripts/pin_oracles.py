"""Recompute the high-precision reference values used by the test suite.

Every number here comes from mpmath alone, independent of the package's
root finder, quadrature and homology code.
"""
import mpmath


def lehmer(dps=40):
    with mpmath.workdps(dps):
        roots = mpmath.polyroots([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1], maxsteps=400,
                                 extraprec=200)
        return mpmath.fprod(max(abs(r), 1) for r in roots)


def six_two_two(dps=25):
    """log M(u1 + u2 - 1 + 1/u1 + 1/u2) as an integral of one-variable Jensen sums.

    For fixed u1 = e(theta) the two roots in u2 leave the unit circle exactly
    when cos(2 pi theta) < -1/2, so the integrand is smooth on the three pieces.
    """
    with mpmath.workdps(dps):
        def inner(th):
            z = mpmath.expjpi(2 * th)
            roots = mpmath.polyroots([z, z * z - z + 1, z], maxsteps=300, extraprec=60)
            return sum(mpmath.log(abs(r)) for r in roots if abs(r) > 1 + mpmath.mpf(10) ** -15)
        third = mpmath.mpf(1) / 3
        return mpmath.quad(inner, [0, third, 2 * third, 1])


def resultant(coeffs, r, dps=60):
    with mpmath.workdps(dps):
        prod = mpmath.mpf(1)
        for j in range(r):
            z = mpmath.expjpi(mpmath.mpf(2 * j) / r)
            prod *= abs(mpmath.polyval(coeffs[::-1], z))
        return prod


if __name__ == "__main__":
    print("Lehmer M          ", mpmath.nstr(lehmer(), 21))
    v = six_two_two()
    print("6_2^2 log M, M    ", mpmath.nstr(v, 18), mpmath.nstr(mpmath.exp(v), 18))
    print("figure-8 |H1(M_r)|", [int(mpmath.nint(resultant([1, -3, 1], r))) for r in range(1, 13)])
    print("figure-8 log M    ", mpmath.nstr(mpmath.log((3 + mpmath.sqrt(5)) / 2), 18))
