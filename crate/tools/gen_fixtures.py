#!/usr/bin/env python3
"""Regenerate the Hecke datasets under fixtures/.

Requires PARI/GP through the `cypari` wheel (`pip install cypari`). Every
record is the characteristic polynomial of the Hecke eigenvalue a_ell over
one Galois orbit of newforms in S_2(Gamma_0(level))^new, together with the
Atkin-Lehner eigenvalue of W_level on that orbit.

Usage: python3 tools/gen_fixtures.py [OUTDIR]
"""
import os
import sys

from cypari import pari

pari.allocatemem(2 * 10**9)

_cache = {}


def orbits(level, ell):
    key = (level, ell)
    if key in _cache:
        return _cache[key]
    mf = pari(f"mfinit([{level},2],0)")
    basis = pari.mfeigenbasis(mf)
    fields = pari.mffields(mf)
    signs = pari.mfatkineigenvalues(mf, level)
    out = []
    for i in range(len(basis)):
        a = pari.mfcoefs(basis[i], ell)[ell]
        field = fields[i]
        if pari.poldegree(field) > 0:
            a = pari.Mod(pari.lift(a), field)
        h = pari.charpoly(a, "t")
        sign = int(signs[i][0])
        out.append(
            {
                "label": f"{level}.2.o{i + 1}",
                "level": level,
                "al": sign,
                "h": [int(c) for c in pari.Vecrev(h)],
            }
        )
    _cache[key] = out
    return out


def kronecker(a, b):
    return int(pari.kronecker(a, b))


HEADER = """# provenance: PARI/GP {version} (cypari), tools/gen_fixtures.py
# query: mf=mfinit([L,2],0); B=mfeigenbasis(mf); K=mffields(mf);
#        h_i=charpoly(Mod(lift(mfcoefs(B[i],{ell})[{ell}+1]),K[i]));
#        al_i=mfatkineigenvalues(mf,L)[i][1]
# labels: <level>.2.o<i> is the i-th orbit in PARI's mfeigenbasis order
#         (opaque; not the Magma numbering)
# selection: {selection}
"""


def write_dataset(outdir, curve_id, genus, ell, records, selection, k=1):
    deg = sum(len(r["h"]) - 1 for r in records)
    assert deg == genus, (curve_id, deg, genus)
    version = ".".join(str(v) for v in pari.version())
    lines = [HEADER.format(version=version, ell=ell, selection=selection)]
    lines.append(f"curve_id={curve_id}")
    lines.append(f"expected_genus={genus}")
    lines.append(f"ell={ell}")
    if k != 1:
        lines.append(f"base_change_k={k}")
    for r in records:
        h = ",".join(str(c) for c in r["h"])
        al = "+1" if r["al"] == 1 else "-1"
        lines.append(
            f"record label={r['label']} level={r['level']} al={al} h={h} mult=1"
        )
    path = os.path.join(outdir, f"{curve_id}.txt")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(path, genus)


X0PLUS_GENUS = {
    163: 6, 193: 7, 197: 6, 211: 6, 223: 6, 227: 5, 229: 7, 269: 6, 331: 11,
    347: 10, 359: 6, 383: 8, 389: 11, 431: 8, 461: 12, 563: 15, 571: 19, 607: 19,
}

XNS_GENUS = {13: 8, 17: 15, 19: 20, 23: 31, 29: 54, 31: 63}
XNSPLUS_GENUS = {13: 3, 17: 6, 19: 8, 23: 13, 29: 24, 31: 28}

# (p, ell) pairs used by the X_ns tables.
XNS_PRIMES = [(13, 3), (17, 2), (19, 5), (23, 2), (29, 5), (31, 2)]
XNSPLUS_PRIMES = [(17, 2), (19, 5), (19, 2), (23, 2), (29, 5), (31, 2)]
# smallest prime ell != p split in Q(sqrt(p*))
XS_PRIMES = [17, 19, 23, 29, 31]


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "fixtures"
    os.makedirs(outdir, exist_ok=True)

    for p, g in X0PLUS_GENUS.items():
        recs = [r for r in orbits(p, 2) if r["al"] == 1]
        write_dataset(outdir, f"x0plus_{p}", g, 2, recs,
                      f"X_0^+({p}): level {p} newforms with W_{p} eigenvalue +1")

    for p, ell in XNS_PRIMES:
        recs = orbits(p * p, ell)
        write_dataset(outdir, f"xns_{p}_l{ell}", XNS_GENUS[p], ell, recs,
                      f"X_ns({p}): all level {p * p} newforms")

    for p, ell in XNSPLUS_PRIMES:
        recs = [r for r in orbits(p * p, ell) if r["al"] == 1]
        sel = f"X_ns^+({p}): level {p * p} newforms with W_{p * p} eigenvalue +1"
        write_dataset(outdir, f"xnsplus_{p}_l{ell}", XNSPLUS_GENUS[p], ell, recs, sel)
        if p == 19:
            write_dataset(outdir, f"xnsplus_{p}_l{ell}_k2", XNSPLUS_GENUS[p], ell,
                          recs, sel + "; base change to F_{ell^2}", k=2)

    for p in XS_PRIMES:
        pstar = p if p % 4 == 1 else -p
        ell = next(l for l in range(2, 1000)
                   if l != p and pari.isprime(l) and kronecker(pstar, l) == 1)
        recs = [r for r in orbits(p * p, ell) if r["al"] == 1] + orbits(p, ell)
        g = sum(len(r["h"]) - 1 for r in recs)
        write_dataset(outdir, f"xs_{p}_l{ell}", g, ell, recs,
                      f"X_s({p}) = X_0^+({p * p}): level {p * p} newforms with "
                      f"W eigenvalue +1, plus all level {p} newforms")


if __name__ == "__main__":
    main()
