#!/usr/bin/env python3
"""Smoke test for the shimura_py extension module.

Builds nothing itself: expects `cargo build -p shimura-volumes-py` (or
--release) to have produced libshimura_py.so, which this script copies next
to itself under the importable name shimura_py.so.

Run from the repository root:

    cargo build -p shimura-volumes-py
    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import sys

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent


def locate_extension() -> pathlib.Path:
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libshimura_py.so", "shimura_py.so", "libshimura_py.dylib")
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit(
            "shimura_py extension not found; run `cargo build -p shimura-volumes-py` first"
        )
    newest = max(built, key=lambda p: p.stat().st_mtime)
    target = HERE / "shimura_py.so"
    if not target.exists() or target.stat().st_mtime < newest.stat().st_mtime:
        shutil.copy2(newest, target)
    return target


locate_extension()
sys.path.insert(0, str(HERE))

import shimura_py  # noqa: E402

failures = []


def check(name, actual, expected):
    ok = actual == expected
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {actual!r}")
    if not ok:
        failures.append(f"{name}: expected {expected!r}, got {actual!r}")


# Symbols.
check("legendre(-1, 7)", shimura_py.legendre(-1, 7), -1)
check("legendre(2, 5)", shimura_py.legendre(2, 5), -1)
check("hilbert(-1, -7)_7", shimura_py.hilbert_symbol("-1", "-7", "7"), -1)
check("hilbert(-1, -1)_inf", shimura_py.hilbert_symbol("-1", "-1", "inf"), -1)
check("hilbert(3/5, -7/2)_2", shimura_py.hilbert_symbol("3/5", "-7/2", "2"),
      shimura_py.hilbert_symbol("-7/2", "3/5", "2"))

# Field arithmetic.
f7 = shimura_py.Field(-7)
check("h(-7)", f7.class_number(), 1)
check("unit count at -3", shimura_py.Field(-3).unit_count(), 6)
f455 = shimura_py.Field(-455)
check("h(-455)", f455.class_number(), 20)
check("|CL_0(-455)|", len(f455.principal_genus()), 5)
check("disc primes of -455", f455.disc_primes(), [5, 7, 13])

try:
    shimura_py.Field(-4)
    failures.append("Field(-4) should raise")
    print("[FAIL] Field(-4) accepted")
except ValueError as e:
    check("Field(-4) rejected", "even" in str(e), True)

# Spaces, degrees, volumes.
spaces = f7.spaces()
check("one space at -7", len(spaces), 1)
w = spaces[0]
check("isotropic at -7", w.is_globally_isotropic(), True)
check("disc(B) at -7", w.disc_b(), 1)
check("level at -7", w.level(), 7)
check("degree at -7", w.degree(), "1/3")
vol = w.volume()
check("c_log(7)", vol["c_log"][7], "1/8")
check("c_const", vol["c_const"], "-1/3")

spaces15 = shimura_py.Field(-15).spaces()
aniso = [s for s in spaces15 if not s.is_globally_isotropic()][0]
check("p_circ of anisotropic -15", aniso.p_circ(), [(3, -3), (5, -5)])
check("degree of anisotropic -15", aniso.degree(), "1/3")
check("disc(B) of anisotropic -15", aniso.disc_b(), 15)

# Eichler order round trip: level * disc(B) = |D|.
lat_classes = aniso.lattice_classes()
check("one lattice class", len(lat_classes), 1)
level, abs_d = aniso.eichler_order_level(lat_classes[0])
check("Eichler level at -15", level * aniso.disc_b(), abs_d)

# Zeta constant and numeric evaluation.
zp = shimura_py.zeta_prime_minus_one(30)
check("zeta'(-1) to 30 digits", zp, "-0.165421143700450929213919660243")
num = w.volume_numeric(25)
check(
    "volume numeric re-derivable",
    shimura_py.evaluate_volume(json.dumps({
        "c_const": vol["c_const"],
        "c_zeta": vol["c_zeta"],
        "c_log": {str(p): c for p, c in vol["c_log"].items()},
    }), 25),
    num,
)

# Census record consistency through JSON.
record = json.loads(f455.census_record_json(12))
check("census components", len(record["components"]), 20)
check("census checksum length", len(record["checksum"]), 64)

# Discriminant enumeration.
check("discriminants", shimura_py.discriminants(-25, -3), [-3, -7, -11, -15, -19, -23])

print()
if failures:
    print(f"{len(failures)} failure(s):")
    for f in failures:
        print(" -", f)
    sys.exit(1)
print("all smoke tests passed")
