"""Independent high-precision derivation of the golden values frozen in the C++ tests.

Nothing here reuses the library's closed forms: point effects come from the
mediation formula on probabilities, bound endpoints from the psi -> +/-inf limits
of the odds factor evaluated at 50-digit precision, and the derivative matrix from
mpmath numerical differentiation.
"""
import mpmath as mp

mp.mp.dps = 50

beta = dict(c=-3.925, x=0.020, m=1.250, bmi=-0.064, g=0.587)
gamma = dict(c=0.418, x=0.017, bmi=-0.098, g=0.595)
se_b = [0.899, 0.004, 0.264, 0.034, 0.376]
se_g = [0.296, 0.002, 0.012, 0.114]
x, xs, bmi, g = 50, 10, mp.mpf("28.5"), 1


def rb(a, m):
    return beta["c"] + beta["x"] * a + beta["m"] * m + beta["bmi"] * bmi + beta["g"] * g


def rg(a):
    return gamma["c"] + gamma["x"] * a + gamma["bmi"] * bmi + gamma["g"] * g


theta = [mp.mpf(v) for v in (rb(x, 0), rb(xs, 0), rb(x, 1), rb(xs, 1), rg(x), rg(xs))]
A = mp.zeros(6, 9)
for i, (a, m) in enumerate([(x, 0), (xs, 0), (x, 1), (xs, 1)]):
    for j, v in enumerate([1, a, m, bmi, g]):
        A[i, j] = v
for i, a in enumerate([x, xs]):
    for j, v in enumerate([1, a, bmi, g]):
        A[4 + i, 5 + j] = v
B = mp.diag([s * s for s in se_b + se_g])
Sigma = A * B * A.T

expit = lambda t: 1 / (1 + mp.exp(-t))
logit = lambda p: mp.log(p / (1 - p))
sp = lambda t: mp.log(1 + mp.exp(t))


def idx(a):
    return {"x": (0, 2, 4), "xs": (1, 3, 5)}[a]


def nem(t, a, b):
    # logit of sum_m P(Y=1 | a, m) P(M=m | b)
    i0, i1, _ = idx(a)
    pm = expit(t[idx(b)[2]])
    return logit((1 - pm) * expit(t[i0]) + pm * expit(t[i1]))


def point(t):
    nde = nem(t, "x", "xs") - nem(t, "xs", "xs")
    nie = nem(t, "x", "x") - nem(t, "x", "xs")
    return nde, nie, nde + nie


def log_factor(t, psi, a, b):
    i0, i1, _ = idx(a)
    g0 = sp(psi + t[i0]) - sp(psi + t[i1]) + t[idx(b)[2]]
    g1 = g0 + (t[i1] - t[i0])
    return sp(g1) - sp(g0)


def pair_limits(t, a, b, far=mp.mpf(200)):
    lo, hi = sorted([log_factor(t, far, a, b), log_factor(t, -far, a, b)])
    return lo, hi


def tau(t):
    c = pair_limits(t, "x", "xs")
    aa = pair_limits(t, "x", "x")
    rr = pair_limits(t, "xs", "xs")
    s = t[0] - t[1]
    return [s + c[0] - rr[1], s + c[1] - rr[0], aa[0] - c[1], aa[1] - c[0]]


def p_range(t):
    # pair (x, x*): outcome predictors at x, mediator predictor at x*
    i0, i1, _ = idx("x")
    ig = idx("xs")[2]
    ends = []
    for psi in (mp.mpf(200), mp.mpf(-200)):
        g0 = sp(psi + t[i0]) - sp(psi + t[i1]) + t[ig]
        ends.append(expit(-g0))
    return sorted(ends)


def derivative_matrix(t):
    D = mp.zeros(6, 4)
    for k in range(4):
        for i in range(6):
            f = lambda h, i=i, k=k: tau([t[j] + (h if j == i else 0) for j in range(6)])[k]
            D[i, k] = mp.diff(f, 0)
    return D


def show(name, values):
    print(name + " = " + ", ".join(mp.nstr(v, 17) for v in values))


show("theta", theta)
show("point NDE NIE TE", point(theta))
show("p range", p_range(theta))
show("odds factor (x,x*)", [mp.exp(v) for v in pair_limits(theta, "x", "xs")])
T = tau(theta)
show("tau", T)
show("TE bounds", [T[0] + T[2], T[1] + T[3]])
D = derivative_matrix(theta)
for i in range(6):
    show("D row %d" % (i + 1), [D[i, k] for k in range(4)])
V0 = D.T * Sigma * D
for i in range(4):
    show("V0 row %d" % (i + 1), [V0[i, k] for k in range(4)])
z = mp.sqrt(2) * mp.erfinv(1 - mp.mpf("0.05"))
show("z", [z])
show("NDE interval", [T[0] - z * mp.sqrt(V0[0, 0]), T[1] + z * mp.sqrt(V0[1, 1])])
show("NIE interval", [T[2] - z * mp.sqrt(V0[2, 2]), T[3] + z * mp.sqrt(V0[3, 3])])
vl = V0[0, 0] + V0[2, 2] + 2 * V0[0, 2]
vu = V0[1, 1] + V0[3, 3] + 2 * V0[1, 3]
show("TE interval", [T[0] + T[2] - z * mp.sqrt(vl), T[1] + T[3] + z * mp.sqrt(vu)])
