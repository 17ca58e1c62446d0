"""Regenerate data/curves_fixture.csv, the offline census dataset.

Each record is a real elliptic curve over Q given by its global minimal Weierstrass
model; conductor and torsion subgroup are computed with PARI/GP (needs `cypari2`,
which is not a runtime dependency of the package). Labels encode the minimal
a-invariants, prefixed with the conductor:  "<N>:[a1,a2,a3,a4,a6]".

Curves come from Tate normal forms E(b, c) at small rational parameters, which
supply larger torsion, plus short Weierstrass curves with small coefficients.
"""

import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

import cypari2

pari = cypari2.Pari()
OUT = Path(__file__).resolve().parents[1] / "data" / "curves_fixture.csv"


def tate_normal(b, c):
    return [1 - c, -b, -b, 0, 0]


def tate_families(t):
    fams = [(t, 0), (t, t), (t + t * t, t), (t**3 - t**2, t * t - t)]
    if t not in (0, 1):
        r = (2 * t - 1) * (t - 1)
        fams.append((r, r / t))
        c = t * t * (t - 1)
        fams.append((c * (t * t - t + 1), c))
    return fams


def record(ainvs):
    try:
        e = pari.ellinit([pari(str(a)) for a in ainvs])
    except cypari2.PariError:
        return None
    if len(e) == 0 or e.disc() == 0:
        return None
    e = pari.ellminimalmodel(e)
    a = [int(x) for x in e[:5]]
    n = int(pari.ellglobalred(e)[0])
    tors = sorted(int(x) for x in pari.elltors(e)[1]) or [1]
    return {"label": f"{n}:[{','.join(map(str, a))}]", "conductor": n, "torsion": tors}


def main(target=1500):
    seen = {}
    params = sorted({Fraction(p, q) for q in range(1, 6) for p in range(-12, 13)},
                    key=lambda f: (f.denominator, abs(f.numerator), f.numerator))
    for t in params:
        for b, c in tate_families(t):
            r = record(tate_normal(b, c))
            if r:
                seen.setdefault(r["label"], r)
    for bound in range(1, 40):
        for a in range(-bound, bound + 1):
            for b in range(-bound, bound + 1):
                if max(abs(a), abs(b)) != bound:
                    continue
                r = record([0, 0, 0, a, b])
                if r:
                    seen.setdefault(r["label"], r)
        if len(seen) >= target:
            break
    rows = sorted(seen.values(), key=lambda r: (r["conductor"], r["label"]))
    with open(OUT, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label", "conductor", "torsion"])
        for r in rows:
            w.writerow([r["label"], r["conductor"], json.dumps(r["torsion"])])
    print(f"wrote {len(rows)} curves to {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
