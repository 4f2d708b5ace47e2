"""Regenerate src/heegaard/data/mxi_catalog.json.

Enumerates simple chord curves with at most three chords (endpoints at
t in {1/4, 1/2, 3/4}) and, for each slope tuple (a0, a1, b0, b1) over
{0, inf, 1, -1}, keeps the first pair of disjoint curves and meridian frames
(fa, fb) whose words are the slope words, provided every band-sum disk needed
by the distance certificate exists.

Usage: python tools/build_mxi_catalog.py [output-path]
"""

import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

from heegaard.farey import Slope
from heegaard.fixtures import dual_meridian
from heegaard.splittings import slope_word
from heegaard.surface import ChordCurve, MeridianSystem, SurfaceError, crossings, shared_points, validate, word_of

FRAMES = ("bd", "bc", "ad", "ac")
SLOPES = [Slope(0, 1), Slope(1, 0), Slope(1, 1), Slope(-1, 1)]
GRID = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]


def curves():
    words = {str(slope_word(s)) for s in SLOPES}
    ms = {f: MeridianSystem.parse(f) for f in FRAMES}
    for k in range(1, 4):
        for sides in itertools.product(range(8), repeat=k):
            if sides[0] != min(sides):
                continue
            for ts in itertools.product(GRID, repeat=k):
                try:
                    c = ChordCurve.from_exits(list(zip(sides, ts)))
                except SurfaceError:
                    continue
                if validate(c):
                    continue
                w = {f: str(word_of(c, m)) for f, m in ms.items()}
                if words & set(w.values()):
                    yield c, w, [[s, str(t)] for s, t in zip(sides, ts)]


def main(out: Path):
    pool = list(curves())
    sw = {s: str(slope_word(s)) for s in SLOPES}
    table = {}
    for a0, a1, b0, b1 in itertools.product(SLOPES, repeat=4):
        key = "|".join(str(s) for s in (a0, a1, b0, b1))
        for fa, fb in itertools.product(FRAMES, repeat=2):
            ma, mb = MeridianSystem.parse(fa), MeridianSystem.parse(fb)
            c0s = [x for x in pool if x[1][fa] == sw[a0] and x[1][fb] == sw[b0]]
            c1s = [x for x in pool if x[1][fa] == sw[a1] and x[1][fb] == sw[b1]]
            hit = None
            for x, y in itertools.product(c0s, c1s):
                if x[0] == y[0] or shared_points(x[0], y[0]) or crossings(x[0], y[0]):
                    continue
                need = [(ma, x[0]), (mb, y[0]), (ma, y[0]), (mb, x[0])]
                if all(dual_meridian(m, c) is not None for m, c in need):
                    hit = {"frame_a": fa, "frame_b": fb, "lambda0": x[2], "lambda1": y[2]}
                    break
            if hit:
                table[key] = hit
                break
    lines = [f" {json.dumps(k)}: {json.dumps(v, sort_keys=True)}" for k, v in sorted(table.items())]
    out.write_text("{\n" + ",\n".join(lines) + "\n}\n")
    print(f"{len(table)} of {len(SLOPES) ** 4} slope tuples realized", file=sys.stderr)


if __name__ == "__main__":
    default = Path(__file__).resolve().parents[1] / "src" / "heegaard" / "data" / "mxi_catalog.json"
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else default)
