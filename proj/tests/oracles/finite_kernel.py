# mpmath reference values for the finite-N kernel tests (printed finite sums, 40 digits).
from mpmath import mp, mpf, besseli, besselk, factorial, rf, sqrt

mp.dps = 40


def P(n, nu, mu, x):
    z = (1 - mu) / mu * sqrt(x)
    s = sum((2 * sqrt(x) / (1 - mu)) ** k * rf(-n, k) / (rf(nu + 1, k) * factorial(k)) * besseli(k, z)
            for k in range(n + 1))
    return (-1) ** n * factorial(nu + n) * factorial(n) / factorial(nu) / sqrt(mu) * s


def Q(n, nu, mu, y):
    w = (1 + mu) / mu * sqrt(y)
    s = sum((2 * sqrt(y) / (1 + mu)) ** (l + nu) * rf(-n, l) / (rf(nu + 1, l) * factorial(l)) * besselk(l + nu, w)
            for l in range(n + 1))
    return (-1) ** n * 2 / (factorial(n) ** 2 * factorial(nu)) / sqrt(mu) * s


def K(N, nu, mu, x, y):
    return sum(P(n, nu, mu, x) * Q(n, nu, mu, y) for n in range(N))


def A(N, nu, mu, s, t):
    op, om = (1 + mu) ** 2, (1 - mu) ** 2
    return (-op / 4 * (t - N) * (t - N + 1) - op / 4 * (nu + N + 1) * (N + 1) * (t - N) / (s - N - 1)
            - mu * (3 * N + nu) * (t - N) - om / 2 * (2 * N + nu) * (t - N) + mu * N * (s - N)
            + om / 2 * (2 * N + nu) * (s - N) + om / 4 * (s - N) * (s - N + 1)
            + om / 4 * (N + 1) * (nu + N + 1) * (s - N) / (t - N - 1))


if __name__ == "__main__":
    h = mpf(1) / 2
    print("P_2(N=4,nu=1,mu=.5,x=1)", mp.nstr(P(2, 1, h, mpf(1)), 20))
    print("Q_3(N=4,nu=0,mu=.5,y=2)", mp.nstr(Q(3, 0, h, mpf(2)), 20))
    print("K(N=6,nu=2,mu=.4,1.3,.7)", mp.nstr(K(6, 2, mpf("0.4"), mpf("1.3"), mpf("0.7")), 20))
    print("K(N=1,nu=0,mu=.5,1,1)", mp.nstr(K(1, 0, h, mpf(1), mpf(1)), 20))
    print("A(N=2,nu=1,mu=.5,.3,.7)", mp.nstr(A(2, 1, h, mpf("0.3"), mpf("0.7")), 20))
    print("K(N=30,nu=1,mu=.05,.01,.02)", mp.nstr(K(30, 1, mpf("0.05"), mpf("0.01"), mpf("0.02")), 20))
