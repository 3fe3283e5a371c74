"""Eliminate the 14 pivots of the optimal matching on the 6-vertex RP^2 and show what is left."""

from topinv.chains import boundary_matrix
from topinv.generators import RP2_6_MATCHING, rp2_6
from topinv.homology import groups_from_matrices
from topinv.morse import MorseMatching, critical_faces, reduce_with_matching, validate_matching
from topinv.rings import ZZ


def show(M, name):
    print(f"{name}: {M.nrows}x{M.ncols}")
    for lab, row in zip(M.row_labels, M.to_dense()):
        print("  " + "".join(map(str, lab)).ljust(4) + " ".join(f"{x:>2}" for x in row))


def main():
    K = rp2_6()
    m = MorseMatching(RP2_6_MATCHING)
    print("valid:", validate_matching(K, m).describe())
    print("critical:", critical_faces(K, m))
    show(boundary_matrix(K, 1, ZZ), "d1 before")
    R = reduce_with_matching(K, m, ZZ)
    show(R.matrices[2], "d2 after")
    show(R.matrices[1], "d1 after")
    print("homology:", ", ".join(g.format() for g in groups_from_matrices(ZZ, R.matrices, 2)))
    ext = m.add((4,), (4, 5))
    print("with (4, 45):", validate_matching(K, ext).describe())


if __name__ == "__main__":
    main()
