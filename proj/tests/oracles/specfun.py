# mpmath reference values for the special-function tests (40 digits).
from mpmath import mp, mpf, besselj, besseli, besselk, loggamma, gamma, factorial, hyp1f1, laguerre, exp, nsum, inf

mp.dps = 40


def wright(a, b, x):
    # J_{a,b}(x) = sum (-x)^j / (j! Gamma(a + b j)); reciprocal gamma is 0 at poles
    return nsum(lambda j: (-x) ** j / (factorial(j) * gamma(a + b * j)) if (a + b * j) > 0 or (a + b * j) % 1 else 0,
                [0, inf])


if __name__ == "__main__":
    print("J_2.5(3.7)", mp.nstr(besselj(mpf("2.5"), mpf("3.7")), 20))
    print("J_-3(2.1)", mp.nstr(besselj(-3, mpf("2.1")), 20))
    print("e^-5 I_3(5)", mp.nstr(exp(-5) * besseli(3, 5), 20))
    print("e^0.7 K_2(0.7)", mp.nstr(exp(mpf("0.7")) * besselk(2, mpf("0.7")), 20))
    print("e^40 K_5(40)", mp.nstr(exp(40) * besselk(5, 40), 20))
    print("lgamma(7.3)", mp.nstr(loggamma(mpf("7.3")), 20))
    print("lgamma(0.01)", mp.nstr(loggamma(mpf("0.01")), 20))
    print("wright(0.5,1.5,2)", mp.nstr(wright(mpf("0.5"), mpf("1.5"), mpf(2)), 20))
    print("wright(2,0.8,10)", mp.nstr(wright(mpf(2), mpf("0.8"), mpf(10)), 20))
    print("L_5^1.5(2.3)", mp.nstr(laguerre(5, mpf("1.5"), mpf("2.3")), 20))
    print("M(0.7;2.1|3.3)", mp.nstr(hyp1f1(mpf("0.7"), mpf("2.1"), mpf("3.3")), 20))
    print("M(-2.5;1.5|4)", mp.nstr(hyp1f1(mpf("-2.5"), mpf("1.5"), mpf(4)), 20))
