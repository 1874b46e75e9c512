# Certify long forms of degree 4 and 5 block by block.
import time

from crsphere.reproduce import cmd_extend

for l in (4, 5):
    t = time.perf_counter()
    d = cmd_extend(l).items[0].details
    print(f"degree {l}: dim {d['dim']}, blocks {d['block_sizes']}, "
          f"inertia {d['inertia']}, {d['verdict']} ({time.perf_counter() - t:.2f}s)")
    for b in d["blocks"]:
        print("   ", b["labels"][:3], "...", b["inertia"], "smallest eigenvalue", b["eigenvalues"][-1])
