#!/usr/bin/env python3
"""Independent high-precision reference values for the test suites.

Everything here is computed with mpmath at 50 digits using code paths that
share nothing with the C++ library: Frobenius coefficients come from a full
Laurent-series convolution of x^2 P(p+x) rather than the banded polynomial
recurrence, and connection coefficients from the Wronskian of those series.
The printed values are frozen into tests/*.cpp.
"""
import mpmath as mp

mp.mp.dps = 50


def geom(c, m, n):
    """Taylor coefficients of (c + x)^-m, m in {1, 2}, up to x^n."""
    out = []
    for k in range(n + 1):
        base = (-1) ** k / c ** (k + m)
        out.append(base * (k + 1 if m == 2 else 1))
    return out


def mul(a, b, n):
    return [mp.fsum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1)]


def add(*series):
    n = min(len(s) for s in series)
    return [mp.fsum(s[k] for s in series) for k in range(n)]


def scale(s, c):
    return [c * v for v in s]


def shifted_x(n, p):
    """Taylor coefficients of z = p + x."""
    out = [mp.mpf(0)] * (n + 1)
    out[0] = p
    out[1] = 1
    return out


def x2P(fam, par, p, n):
    """Coefficients of x^2 P(p + x) where P is the normal-form potential."""
    t0, t1 = par['t0'], par['t1']
    one = [mp.mpf(1)] + [mp.mpf(0)] * n
    z = shifted_x(n, p)
    zm1 = shifted_x(n, p - 1)
    # 1/z^2, 1/(z-1)^2, 1/(z(z-1)) as series in x, multiplied by x^2
    def inv(poly_const, m):
        return geom(poly_const, m, n)
    xx = [mp.mpf(0), mp.mpf(0), mp.mpf(1)] + [mp.mpf(0)] * (n - 2)
    if p == 0:
        iz2x2 = one[:]                       # x^2 / z^2 = 1
        izm12x2 = mul(xx, geom(-1, 2, n), n)  # x^2/(x-1)^2
        izzm1x2 = mul([mp.mpf(0), mp.mpf(1)] + [mp.mpf(0)] * (n - 1), geom(-1, 1, n), n)  # x/(x-1)
    else:
        iz2x2 = mul(xx, geom(1, 2, n), n)
        izm12x2 = one[:]
        izzm1x2 = mul([mp.mpf(0), mp.mpf(1)] + [mp.mpf(0)] * (n - 1), geom(1, 1, n), n)  # x/(1+x)
    res = add(scale(iz2x2, mp.mpf(1) / 4 - t0 ** 2), scale(izm12x2, mp.mpf(1) / 4 - t1 ** 2))
    if fam == 'hyp':
        U = t0 ** 2 + t1 ** 2 - par['tinf'] ** 2 - mp.mpf(1) / 4
        res = add(res, scale(izzm1x2, U))
    elif fam == 'rche':
        U = t0 ** 2 + t1 ** 2 - par['om'] ** 2 - mp.mpf(1) / 4
        Uz = add(scale(one, U), scale(z, -par['lam']))
        res = add(res, mul(izzm1x2, Uz, n))
    elif fam == 'che':
        U = t0 ** 2 + t1 ** 2 - par['om'] ** 2 - mp.mpf(1) / 4
        res = add(res, scale(izzm1x2, U))
        res = add(res, scale(xx, -par['lam'] ** 2 / 4))
        # -lam*ts/z times x^2
        if p == 0:
            term = [mp.mpf(0), mp.mpf(1)] + [mp.mpf(0)] * (n - 1)
        else:
            term = mul(xx, geom(1, 1, n), n)
        res = add(res, scale(term, -par['lam'] * par['ts']))
    elif fam == 'he':
        t = 1 / par['lam']
        tt, ti, om = par['tt'], par['ti'], par['om']
        c1 = t0 ** 2 + t1 ** 2 + tt ** 2 - ti ** 2 - mp.mpf(1) / 2
        c2 = (t - 1) * (om ** 2 + tt ** 2 - ti ** 2 - mp.mpf(1) / 4)
        res = add(res, scale(izzm1x2, c1))
        # x^2/(z-t)^2 = x^2/(x + p - t)^2
        res = add(res, scale(mul(xx, geom(p - t, 2, n), n), mp.mpf(1) / 4 - tt ** 2))
        res = add(res, scale(mul(izzm1x2, geom(p - t, 1, n), n), c2))
    return res


def frob(fam, par, p, sign, n):
    th = par['t0'] if p == 0 else par['t1']
    rho = mp.mpf(1) / 2 - sign * th
    g = x2P(fam, par, p, n)
    c = [mp.mpf(1)]
    for m in range(1, n + 1):
        s = mp.fsum(g[j] * c[m - j] for j in range(1, m + 1))
        c.append(-s / ((m + rho) * (m + rho - 1) + g[0]))
    return rho, c


def eval_frob(rho, c, p, z):
    x = z - p
    base = z if p == 0 else 1 - z
    S = mp.fsum(ck * x ** k for k, ck in enumerate(c))
    dS = mp.fsum(k * ck * x ** (k - 1) for k, ck in enumerate(c) if k > 0)
    val = base ** rho * S
    dbase = 1 if p == 0 else -1
    der = dbase * rho * base ** (rho - 1) * S + base ** rho * dS
    return val, der


def connection(fam, par, n=260, z=mp.mpf('0.5')):
    out = {}
    for e in (+1, -1):
        for ep in (+1, -1):
            r0, c0 = frob(fam, par, 0, e, n)
            r1, c1 = frob(fam, par, 1, -ep, n)
            a, da = eval_frob(r0, c0, 0, z)
            b, db = eval_frob(r1, c1, 1, z)
            W = a * db - da * b
            out[(e, ep)] = -W / (2 * ep * par['t1'])
    return out


def fcl(t0, t1, ti):
    return mp.gamma(1 - 2 * t0) * mp.gamma(2 * t1) / (
        mp.gamma(mp.mpf(1) / 2 + t1 - t0 + ti) * mp.gamma(mp.mpf(1) / 2 + t1 - t0 - ti))


def show(name, v):
    v = mp.mpc(v)
    print(f"{name}: {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}")


M = mp.mpf
RCHE = dict(t0=M('0.1'), t1=M('0.2'), om=M('0.3'), lam=M('0.1'))
CHE = dict(t0=M('0.1'), t1=M('0.2'), om=M('0.3'), lam=M('0.1'), ts=M('0.25'))
HE = dict(t0=M('0.11'), t1=M('0.27'), tt=M('0.33'), ti=M('0.41'), om=M('0.37'), lam=M('0.1'))

if __name__ == '__main__':
    show('gamma(1+i)', mp.gamma(1 + 1j))
    show('loggamma(10.5)', mp.loggamma(M('10.5')))
    show('loggamma(-2.5+0.3i)', mp.loggamma(mp.mpc('-2.5', '0.3')))
    show('gamma(-2.5+0.3i)', mp.gamma(mp.mpc('-2.5', '0.3')))
    show('psi(0, 3-2i)', mp.psi(0, mp.mpc(3, -2)))
    show('psi(3, 0.7+0.4i)', mp.psi(3, mp.mpc('0.7', '0.4')))
    show('fcl(0.1,0.2,0.3)', fcl(M('0.1'), M('0.2'), M('0.3')))
    D = lambda k: (k + M('0.5') - M('0.1') + M('0.2')) ** 2 - M('0.3') ** 2
    show('beta1 rche', 1 * (1 - 2 * M('0.1')) / (D(1) * D(0)))
    r, c = frob('rche', RCHE, 0, +1, 2)
    show('rche frob0+ c1', c[1])
    show('rche frob0+ c2', c[2])
    r, c = frob('rche', RCHE, 0, +1, 300)
    show('rche psi0+(0.5)', eval_frob(r, c, 0, M('0.5'))[0])
    for fam, par in (('rche', RCHE), ('che', CHE), ('he', HE)):
        C = connection(fam, par)
        for k, v in C.items():
            show(f'{fam} C{k}', v)
        det = C[(1, 1)] * C[(-1, -1)] - C[(1, -1)] * C[(-1, 1)]
        show(f'{fam} det+t0/t1', det + par['t0'] / par['t1'])
