# Short and long forms on monomial spaces: exact inertia degree by degree.
from crsphere.certify import inertia, jacobi_spectrum, kernel_basis
from crsphere.forms import block_decompose, long_form, short_form

print("short forms (axis, degree) -> inertia")
for i in (1, 2, 3):
    print(i, [inertia(short_form(i, l)).as_tuple() for l in range(7)])

# the degree-1 kernel of the axis-1 short form: (f, h) = (x2, x3) and (x3, -x2)
for v in kernel_basis(short_form(1, 1)):
    print([str(x) for x in v])

print("long forms: dim, blocks, inertia")
for l in range(6):
    Q = long_form(l)
    print(l, Q.dim, [len(b) for b in block_decompose(Q)], inertia(Q).as_tuple())

# smallest Jacobi eigenvalues of the degree-3 long form sit at rounding level
w, _ = jacobi_spectrum(long_form(3))
print(w[-10:])
