"""Independent numpy oracle for the derived constants frozen into the C++ tests."""
import numpy as np, itertools
s2 = np.sqrt(2)
k0 = np.array([1, 0], complex); k1 = np.array([0, 1], complex)
K = {'x': ((k0 + k1) / s2, (k0 - k1) / s2), 'y': ((k0 + 1j * k1) / s2, (k0 - 1j * k1) / s2)}

def tn(m): return np.abs(np.linalg.eigvalsh(m)).sum()
def h2(p): return 0 if p in (0, 1) else -p*np.log2(p)-(1-p)*np.log2(1-p)
def mi(p): return 1 - h2(p)

plus = np.outer(K['x'][0], K['x'][0].conj()); zero = np.outer(k0, k0)
print("trace_norm(1/2(|+><+|-|0><0|)) =", repr(tn(0.5 * (plus - zero))))
pe = 0.5 - 0.5 * tn(0.5 * plus - 0.5 * zero)
print("helstrom(|0>,|+>) =", repr(pe), " MI =", repr(mi(pe)))
print("gap sqrt(.6)-sqrt(.4) =", repr(np.sqrt(.6) - np.sqrt(.4)))

# Escaping-family spec with |a00|=|a11|=c and orthogonal eps = |ij>
def spec(c, ph=(0, 0, 0, 0)):
    s = np.sqrt(0.5 - c * c)
    a = np.array([c, s, s, c]) * np.exp(1j * np.array(ph))
    eps = np.eye(4, dtype=complex)
    return a, eps
def global_state(a, eps):
    psi = np.zeros((2, 2, len(eps[0])), complex)
    for i in (0, 1):
        for j in (0, 1): psi[i, j] = a[2*i+j] * eps[2*i+j]
    return psi
def rho_pair(psi, alice, bob):
    rs = []; ps = []
    for sa in (0, 1):
        r = 0; p = 0
        for sb in (0, 1):
            v = np.einsum('i,j,ijk->k', K[alice][sa].conj(), K[bob][sb].conj(), psi)
            r = r + np.outer(v, v.conj()); p += np.vdot(v, v).real
        rs.append(r / p); ps.append(p)
    return rs, ps
def pe_num(psi):
    out = []
    for al, bo in [('x','x'), ('x','y'), ('y','x'), ('y','y')]:
        (r1, r2), (p1, p2) = rho_pair(psi, al, bo)
        out.append(0.5 - 0.5 * tn(p2 * r2 - p1 * r1))
    return out
c = 0.6; s = np.sqrt(0.5 - c*c)
print("c=0.6: s =", repr(s), " closed =", repr(0.5*(1-4*c*s)), " numeric =", pe_num(global_state(*spec(c, (0.3, 1.1, -0.7, 2.0)))))
print("   info =", repr(mi(0.5*(1-4*c*s))))

# partial trace of |Psi1><Psi1| over E: rank
psi1 = np.zeros(16, complex); psi1[[0, 5, 10]] = .5; psi1[15] = -.5
r = np.outer(psi1, psi1.conj()).reshape(8, 2, 8, 2)
red = np.einsum('aibi->ab', r)
print("tr_E |Psi1><Psi1| rank", np.linalg.matrix_rank(red), "trace", np.trace(red).real)

# optimizer boundary: on [0.65, 1/sqrt2] objective monotone decreasing?
cs = np.linspace(0.65, 1/np.sqrt(2), 10001)
vals = [mi(0.5*(1-4*x*np.sqrt(max(0, .5-x*x)))) for x in cs]
print("argmax on [0.65,1/sqrt2] =", cs[int(np.argmax(vals))], " value", vals[int(np.argmax(vals))])

# ---- intercept-resend enumeration (no quantum memory) ----
# Charlie* measures B in beta and C in gamma (gamma is the basis he announces),
# forwards the B eigenstate. Alice measures A in alpha, Bob measures B in b.
ghz = np.zeros((2, 2, 2), complex); ghz[0, 0, 0] = ghz[1, 1, 1] = 1/s2
def required(alpha, b, sa, sb):
    nx = [alpha, b].count('x')
    cb = 'x' if nx != 1 else 'y'
    prod = 1 if (nx == 2) else -1   # XXX -> +1, any two-y triple -> -1
    return cb, (0 if (1-2*sa)*(1-2*sb)*prod == 1 else 1)
def infer(bob_b, sb, ch_b, sc):
    # Alice's basis completes odd parity; Alice sign from the same parity product rule
    nx = [bob_b, ch_b].count('x')
    al = 'x' if nx != 1 else 'y'
    prod = 1 if [al, bob_b, ch_b].count('x') == 3 else -1
    return al, (0 if (1-2*sb)*(1-2*sc)*prod == 1 else 1)
p_sift = 0; p_err = 0; p_guess_wrong = 0
for alpha, b, beta, gamma in itertools.product('xy', repeat=4):
    w = 1/16
    if [alpha, b, gamma].count('x') % 2 == 0: continue
    for sbeta, sgamma, sa in itertools.product((0, 1), repeat=3):
        v = np.einsum('i,j,k,ijk->', K[alpha][sa].conj(), K[beta][sbeta].conj(), K[gamma][sgamma].conj(), ghz)
        p = abs(v)**2
        for sb in (0, 1):
            pb = abs(np.vdot(K[b][sb], K[beta][sbeta]))**2
            q = w * p * pb
            p_sift += q
            if required(alpha, b, sa, sb) != (gamma, sgamma): p_err += q
            if beta == b:
                g = infer(beta, sbeta, gamma, sgamma)[1]
            else:
                g = sbeta          # fallback guess: own B sign
            if g != sa: p_guess_wrong += q
print("intercept-resend: P(sift) =", p_sift, " check error =", p_err/p_sift, " key-guess error =", p_guess_wrong/p_sift, " info =", mi(p_guess_wrong/p_sift))
