"""-psi preserves every invariant of a simple Lie algebra but is not an automorphism.

Usage: python demos/adjoint_minus_psi.py [TYPE ...]   (default: A2 B2 G2 D4)
"""

from __future__ import annotations

import sys

from gprime.adjoint import adjoint_generators, verify_minus_psi
from gprime.chevalley import build_algebra
from gprime.classical import rais_transpose_check


def main(types: list[str]) -> None:
    for t in types:
        alg = build_algebra(t)
        gs = adjoint_generators(t)
        r = verify_minus_psi(alg)
        print(f"{t}: dim {alg.dimension}, generator degrees {gs.degrees}")
        print(f"  -psi fixes generators: {r['minusPsiFixesGenerators']} ({r['method']})")
        print(f"  -psi is an automorphism: {r['minusPsiIsAutomorphism']}; "
              f"bracket fails on {r['minusPsiBracketFailure']}")
    r = rais_transpose_check(3)
    print(f"sl3: transpose fixes generators {r['transposeFixesGenerators']}, "
          f"-transpose = psi {r['minusTransposeEqualsPsi']}")


if __name__ == "__main__":
    main(sys.argv[1:] or ["A2", "B2", "G2", "D4"])
