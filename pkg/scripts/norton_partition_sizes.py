"""Sizes of the atom partition (psi2, psi3, psi_top) for every instance,
and the d = 2 probe comparing the two readings of "rank 3".

At d = 2 the top element has rank 3, so the two-space formula can be read
with psi3 = isotropic 3-spaces (empty) or with the top included.  The
probe counts, over the checked pairs, how often each reading matches the
computed product.
"""

from dualpolar.norton import verify_norton
from dualpolar.verify import DEFAULT_MATRIX, Instance, InstanceSpec


def main():
    for t in DEFAULT_MATRIX:
        spec = InstanceSpec(*t)
        inst = Instance(spec)
        rep = verify_norton(inst.lattice, inst.decomp)
        line = f"{spec.name:12s} pairs={rep['pairs']:5d} psi sizes (psi2, psi3, psi_top) = {rep['psi_sizes']}"
        probe = rep["d2_probe"]
        if probe:
            line += (f"  d=2 probe: isotropic reading {probe['isotropic_rank3']}/{probe['pairs']},"
                     f" top-included reading {probe['rank3_incl_top']}/{probe['pairs']}")
        print(line)


if __name__ == "__main__":
    main()
