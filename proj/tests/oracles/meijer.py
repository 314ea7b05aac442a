# mpmath reference values for the comparison kernels: the independent-product
# Meijer-G kernel (u-integral form), the Wright-function kernel of the Muttalib-Borodin ensemble and the
# finite-N independent-product kernel as a sum over biorthogonal pairs (30 digits).
from mpmath import mp, mpf, meijerg, quad, gamma, factorial, nsum, inf, sin, pi, besselk, sqrt, binomial

mp.dps = 30


def g103(b1, b2, b3, z):
    return meijerg([[], []], [[b1], [b2, b3]], z)


def g203(b1, b2, b3, z):
    return meijerg([[], []], [[b1, b2], [b3]], z)


def meijer_kernel(nu1, nu2, x, y):
    return quad(lambda u: g103(0, -nu1, -nu2, u * x) * g203(nu1, nu2, 0, u * y), [0, 1])


def wright(a, b, x):
    return nsum(lambda j: (-x) ** j / (factorial(j) * gamma(a + b * j)), [0, inf])


def borodin_kernel(alpha, theta, x, y):
    f = lambda u: wright((alpha + 1) / theta, 1 / theta, x * u) * wright(alpha + 1, theta, (y * u) ** theta) * u ** alpha
    return theta * x ** alpha * quad(f, [0, 1])


def rho_micro_mb(alpha, theta, x):
    X = x ** (theta + 1)
    return x * borodin_kernel(alpha, theta, X, X) * theta ** (-1 / (1 + theta)) / sin(pi / (theta + 1))


if __name__ == "__main__":
    print("S_Ind(0,0;0.5,1.2)", mp.nstr(meijer_kernel(0, 0, mpf("0.5"), mpf("1.2")), 20))
    print("S_Ind(1,0.5;2,0.7)", mp.nstr(meijer_kernel(1, mpf("0.5"), 2, mpf("0.7")), 20))
    print("G20_03(1,0,0|1.5)", mp.nstr(g203(1, 0, 0, mpf("1.5")), 20))
    print("K_MB(0,1.5;1.2,0.8)", mp.nstr(borodin_kernel(0, mpf("1.5"), mpf("1.2"), mpf("0.8")), 20))
    print("K_MB(0.5,0.7;0.9,1.6)", mp.nstr(borodin_kernel(mpf("0.5"), mpf("0.7"), mpf("0.9"), mpf("1.6")), 20))
    print("rho_MB(0,1.2;1.5)", mp.nstr(rho_micro_mb(0, mpf("1.2"), mpf("1.5")), 20))
