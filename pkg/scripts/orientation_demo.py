"""Walk through the orientation calculus on small examples over Q[x, y].

Lifts an orientation to a point of Q_4, forms a star product, moves an
orientation away from a given ideal and takes a pseudo-difference, printing
each certified result.

    python3 scripts/orientation_demo.py --seed 3
"""

import argparse

from obstruct.arith import RingCtx
from obstruct.certs import check, lift_to_cert, sumrep_to_cert
from obstruct.groebner import Ideal
from obstruct.orientation import (eta_of, lift_orientation, move_orientation, orientations_equal,
                                  pseudo_difference, star_product, validate_orientation)


def main(seed: int):
    R = RingCtx(("x", "y"))
    P = R.parse

    def orient(ideal, row):
        return validate_orientation(Ideal([P(g) for g in ideal], R), [P(r) for r in row])

    o = orient(["x", "y"], ["x+x^2", "y+y^2"])
    w = lift_orientation(o)
    print("orientation       ", o)
    print("lifted point      ", w.point)
    print("  eta(point) == o ", orientations_equal(eta_of(w.point), o),
          " checker:", check(lift_to_cert(w))[0])

    K = orient(["x", "y"], ["x", "y"])
    I = orient(["x-1", "y"], ["x-1", "y"])
    sr = star_product(K, I)
    print("star product row  ", ", ".join(map(str, sr.f)), " checker:", check(sumrep_to_cert(sr))[0])

    target = Ideal([P("x+1"), P("y+2")], R)
    mv = move_orientation(o, target, seed=seed)
    print(f"moved (attempt {mv.attempt}) ", mv.witness.point, " height(J) =", mv.height)

    d = pseudo_difference(K, o, seed=seed)
    print("pseudo-difference ", ", ".join(map(str, d.f)))
    print("  over ideal      ", ", ".join(map(str, d.orientation.I.gb)))
    print("  checker:", check(sumrep_to_cert(d))[0])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    main(ap.parse_args().seed)
