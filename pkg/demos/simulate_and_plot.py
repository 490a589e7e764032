"""Iterate the system exactly and (optionally) plot the orbit.

The orbit is computed in exact rationals.  Floats appear only at the very
end, for the plot.  Run::

    python3 demos/simulate_and_plot.py            # prints the table
    python3 demos/simulate_and_plot.py --plot out.png
"""
import argparse
from ratsys import CoefficientSpec, InitialState, iterate
from ratsys.orbit import orbit_csv

parser = argparse.ArgumentParser()
parser.add_argument("--plot", metavar="PNG", help="write a plot (needs matplotlib)")
parser.add_argument("--steps", type=int, default=30)
args = parser.parse_args()

# Coefficients with period 2, so the system is genuinely nonautonomous.
spec = CoefficientSpec.periodic(["1/2", 2], [1, "1/3"], [3, "1/2"], ["-1/4", 1])
init = InitialState.parse("1,2,1/3,1/2,3,2")

orbit = iterate(spec, init, args.steps)
print(orbit_csv(orbit), end="")

# How fast do the exact values grow?  Digits of the largest denominator so far:
digits = [len(str(max(orbit.x(n).denominator, orbit.y(n).denominator))) for n in orbit.indices()]
print(f"\ndenominator digits at n = {orbit.last}: {digits[-1]}")

if args.plot:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = list(orbit.indices())
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.plot(ns, [float(orbit.x(n)) for n in ns], "o-", label="x_n")
    ax.plot(ns, [float(orbit.y(n)) for n in ns], "s--", label="y_n")
    ax.set_xlabel("n")
    ax.set_yscale("symlog", linthresh=0.1)
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.plot, dpi=120)
    print(f"plot written to {args.plot}")
