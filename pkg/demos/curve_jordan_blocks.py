# A plane curve degenerating to a union of three lines through a common
# interior vertex: the monodromy has Jordan blocks of size 2.
from newtonhodge import build_newton_data, multiplicity_product, parse_poly
from newtonhodge.kspoly import local_h, ltilde
from newtonhodge.monodromy import concentrated_E, jordan_via_E, jordan_via_formula, refined_E_torus

f = parse_poly("x1^2 + x2^2 + x1^-2*x2^-2 + t^-1", "torus", 2)
nd = build_newton_data(f)
S = nd.S

# the interior point sits below the plane through the corners
for cell in nd.cells(include_empty=False):
    dim = S.lattice.dim(cell)
    l = local_h(S, cell)
    print(f"dim {dim}  m_F {nd.m[cell]}  local h {l}  staircase {ltilde(l, S.dim - dim)}",
          [S.points[i] for i in sorted(cell)])

print("R_f orders:", sorted(nd.R_orders))
print("supported spectrum:", [str(x) for x in nd.supported_spectrum()])

for lam in nd.supported_spectrum():
    if nd.is_bad(lam):
        print(lam, "in R_f; refined E =", refined_E_torus(nd, lam).E_uvw)
        continue
    h = concentrated_E(nd, lam)
    print(lam, "E =", h.E_uvw, " diagonal:", h.E_diag)
    print("   via E:      ", jordan_via_E(h).blocks)
    print("   via formula:", jordan_via_formula(nd, lam).blocks)

mult = multiplicity_product(nd)
print("characteristic polynomial on the middle cohomology:", mult)
