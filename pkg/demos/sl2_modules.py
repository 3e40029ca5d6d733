"""Invariants and extra symmetries of the SL2 modules with G' != G, plus R4 where G' = G."""

from __future__ import annotations

from gprime.sl2modules import CASES, generic_stabilizer_dim, verify_case


def main() -> None:
    for case in sorted(CASES):
        report = verify_case(case)
        for m in report["modules"]:
            gens = ", ".join(g["polynomial"] for g in m["generators"]) or "(none)"
            print(f"case {case} {m['module']}: {m['statement']}")
            print(f"  generators: {gens}")
            print(f"  Lie stabilizer dim {m['lieStabilizerDimension']}, "
                  f"scalars {m['scalarSubgroup']['description']}, "
                  f"generic stabilizer dim {generic_stabilizer_dim(m['module'])}, "
                  f"passed {m['passed']}")


if __name__ == "__main__":
    main()
