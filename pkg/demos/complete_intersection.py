# Two equations in three variables: the Cayley trick turns the system into a
# single subdivided polytope of dimension n + k - 1.
from newtonhodge import CISystem, CayleyData, multiplicity_product, parse_poly
from newtonhodge.monodromy import concentrated_E, jordan_via_E, jordan_via_formula, refined_E_ci

f = parse_poly("x1^2 + x2^2 + x3^2 + x1^-2*x2^-2*x3^-2 + t^-1", "torus", 3)
g = parse_poly("x1 + x2 + x3 + 1", "torus", 3)
cd = CayleyData(CISystem((f, g)))

print("Cayley polytope dim:", cd.cayley.P.dim, " vertices:", len(cd.cayley.P.vertices))
print("bad orders, Minkowski side:", sorted(cd.R_f), " Cayley side:", sorted(cd.R_tilde))

for lam in cd.supported_spectrum():
    E = refined_E_ci(cd, lam)
    print(lam, "refined E =", E.E_uvw, "(bad)" if E.bad else "")
    if E.bad:
        continue
    conc = concentrated_E(cd, lam)
    print("   concentrated E agrees:", conc.E_uvw == E.E_uvw)
    print("   Jordan via E:", jordan_via_E(conc).blocks, " via formula:", jordan_via_formula(cd, lam).blocks)

print("multiplicities:", multiplicity_product(cd))
