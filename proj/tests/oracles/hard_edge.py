# mpmath reference values for the hard-edge kernels: the Bessel kernel and the
# interpolating kernel from its literal double residue sums (60 digits).
from mpmath import mp, mpf, besselj, besseli, besselk, factorial, gamma, sqrt, pi

mp.dps = 60


def bessel_kernel(nu, x, y):
    sx, sy = sqrt(x), sqrt(y)
    a = 2 * sx * besselj(nu - 1, 2 * sx) * besselj(nu, 2 * sy)
    b = 2 * sy * besselj(nu - 1, 2 * sy) * besselj(nu, 2 * sx)
    return -(a - b) / ((x - y) * sx * sy) * (y / x) ** (mpf(nu) / 2)


def bessel_density(nu, x):
    z = 2 * sqrt(x)
    return 2 * (besselj(nu, z) ** 2 - besselj(nu + 1, z) * besselj(nu - 1, z)) / x


def cal_p(s, t, nu):
    return (t - s) * (t * t + s * s + (t + s) * (nu - 1) - nu) / 4


def residue_sum(nu, g, x, y, shift, terms):
    # both contours encircle the nonnegative integers; Res Gamma(-z) at z = k is -(-1)^k/k!
    tot = mpf(0)
    for k in range(terms):
        ik = besseli(abs(k - shift), x / (2 * g))
        ck = (-1) ** k / factorial(k) * x ** k / gamma(k + nu + 1) * ik
        for l in range(terms):
            cl = (-1) ** l / factorial(l) * y ** (l + nu) / gamma(l + nu + 1) * besselk(l + nu, y / (2 * g))
            tot += ck * cl * (cal_p(l, k, nu) - g * (l * l + k * k + nu * l - l * k))
    return tot


def interp_kernel_printed(nu, g, x, y, terms=90):
    return 4 / ((x * x - y * y) * g) * residue_sum(nu, g, x, y, 0, terms)


def interp_density_printed(nu, g, x, terms=90):
    return residue_sum(nu, g, x, x, 1, terms) / (g * g * x)


if __name__ == "__main__":
    print("bessel_kernel(1,1.3,0.6)", mp.nstr(bessel_kernel(1, mpf("1.3"), mpf("0.6")), 20))
    print("bessel_density(0,1)", mp.nstr(bessel_density(0, mpf(1)), 20))
    print("bessel_density(2,7.5)", mp.nstr(bessel_density(2, mpf("7.5")), 20))
    for nu, g, x, y in [(0, 1, 1, 2), (1, mpf("0.5"), mpf("0.7"), mpf("1.9")), (2, 2, 3, mpf("1.5"))]:
        print("S_printed(nu=%s,g=%s,%s,%s)" % (nu, g, x, y), mp.nstr(interp_kernel_printed(nu, mpf(g), mpf(x), mpf(y)), 20))
    for nu, g, x in [(0, 1, 1), (1, mpf("0.5"), 2), (2, 2, mpf("0.8"))]:
        print("Sxx_printed(nu=%s,g=%s,x=%s)" % (nu, g, x), mp.nstr(interp_density_printed(nu, mpf(g), mpf(x)), 20))
