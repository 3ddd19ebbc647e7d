"""Coverage versus interferer density for the three equal-area shapes.

    python3 demos/04_coverage_sweep.py

Reproduces the bundled experiment: sweep the density over 0.1..2.0 for
the disk, the triangle, and the irregular multi-polygon (all of area
4*pi) at alpha=3.2, beta=0 dB, SNR=10 dB, and compare fixed-count and
Poisson coverage. Writes one CSV per shape next to this script, plus
coverage_sweep.png when matplotlib is importable.
"""

import pathlib

from outagekit import ChannelParams, bundled_region
from outagekit.cli import compute_sweep, sweep_to_csv

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

params = ChannelParams(alpha=3.2, beta=1.0, snr=10.0, p=1.0)
lams = [round(0.1 * k, 10) for k in range(1, 21)]
here = pathlib.Path(__file__).parent

sweeps = {}
for name in ("disk2", "triangle", "irregular"):
    region = bundled_region(name)
    method = "grid" if name == "irregular" else "closed"
    sweeps[name] = compute_sweep(params, region, lams, over="lambda", method=method)
    out = here / f"sweep_{name}.csv"
    out.write_text(sweep_to_csv(sweeps[name]))
    print(f"wrote {out}")

print()
print("Poisson coverage by density (fixed-count values in parentheses)")
header = "  ".join(f"{name:>22}" for name in sweeps)
print(f"{'lambda':>6}  {header}")
for i, lam in enumerate(lams):
    cells = []
    for name in sweeps:
        rec = sweeps[name][i]
        cells.append(f"{rec.coverage_ppp:11.4f} ({rec.coverage_bpp:.4f})")
    print(f"{lam:6.1f}  " + "  ".join(f"{c:>22}" for c in cells))

print()
print("two things to notice:")
print(" * the ordering irregular > triangle > disk holds at every density;")
print("   spreading the same area away from the receiver dilutes the")
print("   interference.")
print(" * Poisson coverage beats the matched fixed count except at")
print("   lambda=0.1, where the mean count 1.257 rounds down to m=1 and the")
print("   comparison flips. Matching the count exactly (m real-valued)")
print("   restores the inequality everywhere.")

if plt is not None:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, records in sweeps.items():
        ax.plot(lams, [r.coverage_ppp for r in records], label=f"{name} (Poisson)")
        ax.plot(
            lams,
            [r.coverage_bpp for r in records],
            linestyle="--",
            alpha=0.6,
            label=f"{name} (fixed count)",
        )
    ax.set_xlabel("interferer density")
    ax.set_ylabel("coverage probability")
    ax.set_title("equal-area regions, alpha=3.2, beta=0 dB, SNR=10 dB")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    out = here / "coverage_sweep.png"
    fig.tight_layout()
    fig.savefig(out, dpi=110)
    print(f"\nwrote {out}")
else:
    print("\nmatplotlib not installed; skipped the figure")
