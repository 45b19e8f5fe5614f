#!/usr/bin/env python3
"""Write a synthetic 49-module YAL benchmark shaped like ami49.

The real ami49.yal is not redistributed here. This file has the same module
count, the same 170..3200 dimension range and a PARENT netlist, so the
area-driven experiments can run end to end. Results on it are not comparable
with published ami49 numbers.

Usage: gen_synth_yal.py [out.yal]   (default: data/synth49.yal)
Prints the total block area, summed back from the written file.
"""

import random
import re
import sys
from pathlib import Path

N_MODULES = 49
N_SIGNALS = 400
SEED = 49


def make_dims(rng):
    dims = []
    for _ in range(N_MODULES):
        w = round(170 * (1800 / 170) ** rng.random())
        h = round(170 * (1800 / 170) ** rng.random())
        dims.append((w, h))
    # pin both extremes of the range
    dims[0] = (3200, dims[0][1])
    dims[N_MODULES - 1] = (dims[N_MODULES - 1][0], 170)
    return dims


def module_text(name, w, h, pins):
    lines = [f"MODULE {name};", "TYPE GENERAL;",
             f"DIMENSIONS 0 0 {w} 0 {w} {h} 0 {h};", "IOLIST;"]
    for p in pins:
        lines.append(f"  P{p} B 0 0 1 METAL2;")
    lines += ["ENDIOLIST;", "ENDMODULE;", ""]
    return "\n".join(lines)


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data/synth49.yal")
    rng = random.Random(SEED)
    dims = make_dims(rng)

    # each signal touches 2..5 distinct modules
    signals = {i: [] for i in range(N_MODULES)}
    for s in range(N_SIGNALS):
        k = min(N_MODULES, 2 + int(rng.expovariate(1.0)))
        for m in rng.sample(range(N_MODULES), k):
            signals[m].append(f"n{s}")

    parts = ["/* synthetic 49-module benchmark, not the MCNC ami49 data */", ""]
    for i, (w, h) in enumerate(dims):
        parts.append(module_text(f"bk{i + 1}", w, h, range(len(signals[i]))))
    parts += ["MODULE synth49;", "TYPE PARENT;",
              "DIMENSIONS 0 0 10000 0 10000 10000 0 10000;", "IOLIST;",
              "ENDIOLIST;", "NETWORK;"]
    for i in range(N_MODULES):
        sig = " ".join(signals[i]) if signals[i] else ""
        parts.append(f"  C{i} bk{i + 1} {sig};")
    parts += ["ENDNETWORK;", "ENDMODULE;", ""]

    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(parts))

    # read back independently of the generator state
    total = 0
    for name, coords in re.findall(
            r"MODULE (bk\d+);.*?DIMENSIONS ([^;]*);", out.read_text(), re.S):
        xs = [int(v) for v in coords.split()[0::2]]
        ys = [int(v) for v in coords.split()[1::2]]
        total += (max(xs) - min(xs)) * (max(ys) - min(ys))
    print(total)


if __name__ == "__main__":
    main()
