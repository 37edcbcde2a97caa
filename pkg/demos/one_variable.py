# Roots of a one-variable family circling t = 0, read off the lower hull.
from newtonhodge import build_newton_data, multiplicity_product, parse_poly
from newtonhodge.monodromy import concentrated_E, jordan_via_E, jordan_via_formula, refined_E_torus
from newtonhodge.oracle import monodromy_n1

f = parse_poly("1 - t*x1^3", "torus", 1)
nd = build_newton_data(f)

print("cells and m_F:")
for cell, m in nd.m.items():
    print("  ", [nd.S.points[i] for i in sorted(cell)], m)   # the edge carries nu = x/3
print("R_f orders:", sorted(nd.R_orders))
print("spectrum:", [str(x) for x in nd.spectrum()])

# E for every eigenvalue; lambda = 1 is always bad but the refined formula still applies
for lam in nd.spectrum():
    print(lam, "E =", refined_E_torus(nd, lam).E_uvw, "(bad)" if nd.is_bad(lam) else "")

for lam in nd.spectrum():
    if nd.is_bad(lam):
        continue
    a = jordan_via_E(concentrated_E(nd, lam))
    b = jordan_via_formula(nd, lam)
    print(lam, "Jordan blocks", a.blocks, "agree:", a.blocks == b.blocks)

print("characteristic polynomial:", multiplicity_product(nd))

# the three roots x = zeta * t^(-1/3) are permuted cyclically
track = monodromy_n1(f)
print("root tracking cycles:", track.cycles,
      "eigenvalues:", sorted(str(x) for x in track.eigenvalues))

# affine: x^2 = t swaps its two roots
g = parse_poly("x1^2 - t", "affine", 1)
nd = build_newton_data(g)
print()
print("x1^2 - t  P_inf facets:", [[nd.S.points[i] for i in f] for f in nd.region_facets])
print("  multiplicity:", multiplicity_product(nd))
print("  root tracking:", monodromy_n1(g).cycles)
