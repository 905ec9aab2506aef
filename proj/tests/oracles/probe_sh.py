import numpy as np, itertools
s2=np.sqrt(2)
H=np.array([[1,1],[1,-1]])/s2
S=np.diag([1,1j])
I2=np.eye(2)
ket0=np.array([1,0]);ket1=np.array([0,1])
xp=(ket0+ket1)/s2; xm=(ket0-ket1)/s2; yp=(ket0+1j*ket1)/s2; ym=(ket0-1j*ket1)/s2
K={'x':(xp,xm),'y':(yp,ym)}
# state after the entangling circuit, ABCE
psi=np.zeros(16,complex)
for idx,amp in [(0,.5),(5,.5),(10,.5),(15,-.5)]: psi[idx]=amp
psi=psi.reshape(2,2,4)
def phi(a,b,sa,sb):
    ka=K[a][sa];kb=K[b][sb]
    v=np.einsum('i,j,ijk->k',ka.conj(),kb.conj(),psi)
    return v/np.linalg.norm(v)
CNOT=np.array([[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]])
def req(a,b,sa,sb):
    # correlation table via parity: product of eigenvalues
    nx=[a,b].count('x')
    charlie='x' if nx%2==0 else 'y'
    prod = 1 if charlie=='x' and nx==2 else -1
    if charlie=='x' and nx==0: prod=-1
    if charlie=='y': prod=-1
    sA=1-2*sa; sB=1-2*sb
    return charlie, (0 if sA*sB*prod==1 else 1)
detection_table={'I':{0:['10','01'],1:['00','11']},'II':{0:['10','11'],1:['00','01']},'III':{0:['10','01'],1:['00','11']},'IV':{0:['10','11'],1:['00','01']}}
info_table={'I':{0:['00','11'],1:['10','01']},'II':{0:['00','11'],1:['10','01']},'III':{0:['10','01'],1:['00','11']},'IV':{0:['10','01'],1:['00','11']}}
cases={'I':('x','x'),'II':('x','y'),'III':('y','x'),'IV':('y','y')}
cand={'S@H':S@H,'H@S':H@S,'H@Sdag':H@S.conj().T,'Sdag@H':S.conj().T@H}
def probs(v): return {f'{i>>1}{i&1}':abs(v[i])**2 for i in range(4)}
for name,SH in cand.items():
    okdet=okinf=True
    for c,(a,b) in cases.items():
        G={'H':H,'SH':SH}
        U,V,W={'I':('H','H','H'),'II':('H','SH','SH'),'III':('SH','H','SH'),'IV':('SH','SH','H')}[c]
        for sa in (0,1):
            for sb in (0,1):
                f=phi(a,b,sa,sb)
                d=np.kron(G[W],I2)@(CNOT@f)
                _,ann=req(a,b,sa,sb)
                p=probs(d)
                if abs(sum(p[o] for o in detection_table[c][ann])-1)>1e-12: okdet=False
                g=np.kron(G[U],I2)@f
                p=probs(g)
                if abs(sum(p[o] for o in info_table[c][sa])-1)>1e-12: okinf=False
    print(name,'det',okdet,'info',okinf)
# correlation table check by GHZ
ghz=np.zeros(8,complex);ghz[0]=ghz[7]=1/s2;g3=ghz.reshape(2,2,2)
for a in 'xy':
  for b in 'xy':
    for sa in (0,1):
      for sb in (0,1):
        c,ann=req(a,b,sa,sb)
        v=np.einsum('i,j,ijk->k',K[a][sa].conj(),K[b][sb].conj(),g3)
        p=abs(np.vdot(K[c][ann],v))**2/np.linalg.norm(v)**2
        assert abs(p-1)<1e-12,(a,b,sa,sb)
print("parity rule matches GHZ")
