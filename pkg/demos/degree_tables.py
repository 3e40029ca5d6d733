"""Invariant degrees from Coxeter exponents, checked against Molien series where W is small."""

from __future__ import annotations

from gprime.rootsystem import (
    GroupTooLargeError,
    admissible_types,
    invariant_degrees,
    is_self_dual_type,
    longest_element,
    molien_degrees,
    root_system,
)


def main(max_rank: int = 6) -> None:
    print(f"{'type':5} {'degrees':28} {'molien':8} {'self-dual':9} w0=-1")
    for t in admissible_types(max_rank):
        rs = root_system(t)
        degs = invariant_degrees(t)
        try:
            mol = "agrees" if molien_degrees(rs) == degs else "DIFFERS"
        except GroupTooLargeError:
            mol = "skipped"
        w0 = longest_element(rs).is_minus_identity()
        print(f"{str(t):5} {str(degs):28} {mol:8} {str(is_self_dual_type(t)):9} {w0}")


if __name__ == "__main__":
    main()
