"""Independent check of every closed-form spectrum by finite differences.

Nothing in the library's analytic layer is trusted blind: each model's
Sturm-Liouville form is discretized with a flux-conserving stencil and the
lowest eigenvalues are compared against the ladder formula.  Halving the
grid spacing should cut the error about fourfold (second-order stencil);
the table prints the observed ratios.
"""

from gcstates import models, oracle


def main():
    cases = [
        models.make_model("nonlinear-osc", nonlinearity=0.07),
        models.make_model("nonlinear-osc", nonlinearity=0.27),
        models.make_model("bounded-osc", nonlinearity=0.17),
        models.make_model("exp-mass", alpha=2.0, mu=1.0),
    ]
    for spec in cases:
        tag = spec.nonlinearity if spec.nonlinearity is not None else spec.mu
        print(f"\n{spec.id} ({tag}):")
        print("  n   E_analytic     rel err @2000   rel err @4000   ratio")
        coarse = oracle.compare_spectrum(spec, k=4, points=2000)
        fine = oracle.compare_spectrum(spec, k=4, points=4000)
        for c, f in zip(coarse, fine):
            ratio = c.rel_error / f.rel_error if f.rel_error else float("inf")
            print(
                f"  {c.n}  {c.analytic:11.6f}   {c.rel_error:12.3e}"
                f"   {f.rel_error:12.3e}   {ratio:5.2f}"
            )
    print("\nratios near 4 or better confirm clean second-order convergence")
    print("(the walls sit close enough to the singular points not to bias it)")


if __name__ == "__main__":
    main()
