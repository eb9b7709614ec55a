"""Regenerate src/cbddl/data/kelvin_rgb.tsv.

Black-body white points from Tanner Helland's curve fit (1000 K - 40000 K),
sampled every 100 K and rounded to 4 decimals on the 0-255 scale.
"""

import math
import sys


def helland(kelvin: float) -> tuple:
    t = kelvin / 100.0
    if t <= 66:
        r = 255.0
        g = 99.4708025861 * math.log(t) - 161.1195681661
    else:
        r = 329.698727446 * (t - 60) ** -0.1332047592
        g = 288.1221695283 * (t - 60) ** -0.0755148492
    if t >= 66:
        b = 255.0
    elif t <= 19:
        b = 0.0
    else:
        b = 138.5177312231 * math.log(t - 10) - 305.0447927307
    clamp = lambda v: min(255.0, max(0.0, v))
    return clamp(r), clamp(g), clamp(b)


def main(out) -> None:
    out.write("kelvin\tr\tg\tb\n")
    for k in range(1000, 40001, 100):
        r, g, b = helland(k)
        out.write(f"{k}\t{r:.4f}\t{g:.4f}\t{b:.4f}\n")


if __name__ == "__main__":
    main(sys.stdout)
