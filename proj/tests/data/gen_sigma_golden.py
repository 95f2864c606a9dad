# Regenerates sigma_scale4_s2_golden.json from an explicit atom-sum quadrature.
# Independent of the C++ code on purpose: run with numpy from tests/data/.
import numpy as np, json
atoms=np.zeros(1)
for k in range(12):
    atoms=np.concatenate([atoms, atoms+0.5/4**k])
def mu_quad(t):
    ph=np.outer(t,atoms); ph-=np.floor(ph)
    return np.exp(2j*np.pi*ph).mean(axis=1)
rows=[]
for n in range(4,13):
    xi=np.zeros(1)
    for k in range(n):
        xi=np.concatenate([xi, xi+4**k])
    rows.append({"enum_depth":n,"sigma":float(np.sum(np.abs(mu_quad(2-xi))**2))})
json.dump({"spec":"scale4","s":["2"],"oracle":"quadrature over the 4096 atoms of the depth-12 measure","values":rows},open("./sigma_scale4_s2_golden.json","w"),indent=2)
