"""Generate Taylor coefficients of the Riemann-Siegel kernel.

    Psi(p) = cos(2*pi*(p**2 - p - 1/16)) / cos(2*pi*p)

expanded around p = 1/2.  With x = p - 1/2 this is
-cos(2*pi*x**2 - 5*pi/8) / cos(2*pi*x), an even entire function, so only
even powers are emitted.  Output is pasted into src/jacobladder/_rs_coeffs.py.
"""
import mpmath as mp

mp.mp.dps = 250
NTERMS = 56  # coefficients of x**0 .. x**(2*NTERMS-2)


def series_cos_poly(a2, c0, n):
    # cos(a2*x^2 + c0) as a power series in x, n coefficients
    out = [mp.mpf(0)] * n
    # cos(c0 + y) = cos c0 cos y - sin c0 sin y, y = a2 x^2
    for k in range(0, n):
        deg = 2 * k
        if deg >= n:
            break
        term = a2 ** k / mp.factorial(k)
        # derivative cycle of cos at c0
        cyc = [mp.cos(c0), -mp.sin(c0), -mp.cos(c0), mp.sin(c0)][k % 4]
        out[deg] = cyc * term
    return out


def main():
    n = 2 * NTERMS
    num = [-c for c in series_cos_poly(2 * mp.pi, -5 * mp.pi / 8, n)]
    den = [mp.mpf(0)] * n
    for k in range(0, n, 2):
        den[k] = (-1) ** (k // 2) * (2 * mp.pi) ** k / mp.factorial(k)
    q = [mp.mpf(0)] * n
    for k in range(n):
        s = num[k] - sum(q[j] * den[k - j] for j in range(k))
        q[k] = s / den[0]
    # sanity: compare with direct evaluation at a few points
    for x in (mp.mpf("0.1"), mp.mpf("0.3"), mp.mpf("0.49")):
        direct = -mp.cos(2 * mp.pi * x * x - 5 * mp.pi / 8) / mp.cos(2 * mp.pi * x)
        ser = mp.polyval(q[::-1], x)
        assert abs(direct - ser) < mp.mpf(10) ** -40, (x, direct - ser)
    print("PSI_EVEN = (")
    for k in range(0, n, 2):
        print(f"    {mp.nstr(q[k], 20, min_fixed=-1, max_fixed=-1)},")
    print(")")


if __name__ == "__main__":
    main()
