# The ten-variable quadratic F against the exact degree-3 block.
#
# F keeps most of the block, scaled by 1/105 in Hessian units, but four
# couplings are missing.  With them back in, the block has no negative
# direction, and neither candidate vector evaluates below zero.
from fractions import Fraction

import numpy as np

from crsphere.certify import inertia, instability_certificate, jacobi_spectrum
from crsphere.forms import (
    F_VARIABLES,
    REFERENCE_WITNESS,
    counterexample_functions,
    embed_f_vector,
    embed_functions,
    f_block,
    f_hessian,
    f_hessian_form,
    f_value,
    long_form,
)

H = np.array(f_hessian())
print("F(witness) =", f_value(REFERENCE_WITNESS))
print("Hessian inertia", inertia(f_hessian()).as_tuple(), "trace", np.trace(H))
w, _ = jacobi_spectrum(f_hessian_form())
print(w)

cert = instability_certificate(f_hessian_form())
print("integer witness for Hess F:", cert.witness, "value", cert.value)

# compare entry by entry in Hessian units
blk = f_block()
B = np.array([[float(210 * x) for x in row] for row in blk.matrix])
diff = B - H
for i, j in zip(*np.nonzero(np.triu(diff))):
    print(f"{F_VARIABLES[i]}{F_VARIABLES[j]}: block {B[i, j]:+.0f}, F {H[i, j]:+.0f}")

print("block inertia", inertia(blk).as_tuple())
Q = long_form(3)
print("embedded witness:", Q.evaluate(embed_f_vector(REFERENCE_WITNESS)))
fs = counterexample_functions()
print("stated functions:", Q.evaluate(embed_functions(fs, 3).to_vector()))
print("same vector under F scaled to the block:", Fraction(f_value(REFERENCE_WITNESS), 105))
