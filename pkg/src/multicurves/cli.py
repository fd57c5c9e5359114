"""Command-line driver: ``series``, ``count`` and ``verify``.

Output is deterministic for a fixed configuration.  The exit code is 0 iff
every check performed by the run passed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import charvar, polygraph
from .cache import DiagramCache, cached_enumerate, default_cache_dir
from .diagrams import extract_multicurve, nonperipheral_from_all, peripheral_set
from .genfun import RationalGF, check_reciprocal_symmetry, is_palindromic, series_coeffs
from .surface import SurfaceSig, genus_zero

SERIES_NAMES = ("Z", "Zgn", "Z0", "G", "F", "H", "h", "c_all")
SUITES = ("symmetry", "euler", "duality", "basis", "identities", "collapse")
FORMATS = ("json", "csv", "plain")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    suite: Optional[str] = None
    g: Optional[int] = None
    n: Optional[int] = None
    m: Optional[int] = None
    which: str = "Z"
    max_degree: int = 10
    m_max: int = 8
    prime: int = charvar.DEFAULT_PRIME
    samples: Optional[int] = None
    seed: int = 0
    trials: int = 1000
    fmt: str = "json"
    cache_dir: Optional[str] = None
    use_cache: bool = True

    def validate(self):
        has_gn = self.g is not None or self.n is not None
        if has_gn and (self.g is None or self.n is None):
            raise ConfigError("--g and --n must be given together")
        if self.command in ("series", "count") or self.suite == "basis":
            if has_gn == (self.m is not None):
                if self.command == "count" and not has_gn:
                    raise ConfigError("count needs --g and --n")
                raise ConfigError("give exactly one of (--g, --n) or --m")
        if self.command == "count" and self.m is not None:
            raise ConfigError("count needs --g and --n")
        if self.max_degree < 0:
            raise ConfigError("degree bound must be nonnegative")
        if self.prime <= 2:
            raise ConfigError("prime must be > 2")
        if self.fmt not in FORMATS:
            raise ConfigError(f"unknown format {self.fmt!r}")
        if has_gn:
            try:
                SurfaceSig(self.g, self.n)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        if self.m is not None and self.m < 2:
            raise ConfigError("m must be >= 2")

    @property
    def rank(self) -> int:
        return self.m if self.m is not None else SurfaceSig(self.g, self.n).m

    def sig(self) -> SurfaceSig:
        return SurfaceSig(self.g, self.n) if self.g is not None else genus_zero(self.m)

    def cache(self) -> Optional[DiagramCache]:
        if not self.use_cache:
            return None
        return DiagramCache(self.cache_dir or default_cache_dir())


# --- series ---------------------------------------------------------------


def expected_symmetry(name: str, m: int) -> tuple[int, int]:
    """(sign, exponent) with ``f(1/t) = sign * t^exponent * f(t)``."""
    if name in ("Z", "Zgn", "Z0"):
        return 1, 0
    if name == "G":
        return (-1) ** (2 * m - 3), m
    if name == "F":
        return (-1) ** (m - 3), 0
    if name == "H":
        return (-1) ** (3 * m - 2), 2 * m + 1
    if name == "h":
        return -1, 4 * m
    if name == "c_all":
        return (-1) ** (3 * m - 1), 2 * m
    raise ConfigError(f"unknown series {name!r}")


def build_series(cfg: RunConfig) -> tuple[RationalGF, dict]:
    name, m = cfg.which, cfg.rank
    surface = {"g": cfg.g, "n": cfg.n, "m": m}
    if name == "Z":
        name = "Zgn" if cfg.g is not None else "Z0"
    if name == "Zgn":
        if cfg.g is None:
            raise ConfigError("Zgn needs --g and --n")
        gf = polygraph.Zgn_gf(cfg.g, cfg.n)
    elif name == "Z0":
        gf = polygraph.Z_gf(m)
        surface = {"g": 0, "n": m + 1, "m": m}
    elif name == "G":
        gf = polygraph.G_gf(m)
    elif name == "F":
        if m < 3:
            raise ConfigError("F_m needs m >= 3")
        gf = polygraph.F_gf(m)
    elif name == "H":
        gf = polygraph.H_gf_m(m)
    elif name == "h":
        gf = polygraph.h_gf(m)
    elif name == "c_all":
        gf = polygraph.c_all_gf(m)
    else:
        raise ConfigError(f"unknown series {name!r}")
    return gf, surface


def cmd_series(cfg: RunConfig) -> tuple[dict, bool]:
    gf, surface = build_series(cfg)
    sign, exp = expected_symmetry(cfg.which, cfg.rank)
    ok = check_reciprocal_symmetry(gf, sign, exp)
    report = {
        "surface": surface,
        "series": cfg.which,
        "num": [str(c) for c in gf.num.coeffs],
        "den": [[a, e] for a, e in gf.den],
        "coeffs": [str(c) for c in series_coeffs(gf, cfg.max_degree)],
        "symmetry": {"sign": sign, "exp": exp, "pass": ok},
    }
    return report, ok


def render_series(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["series", "degree", "coefficient"])
        for k, c in enumerate(report["coeffs"]):
            w.writerow([report["series"], k, c])
        return buf.getvalue().rstrip("\n")
    gf = RationalGF.make([int(c) for c in report["num"]], [tuple(x) for x in report["den"]])
    s = report["surface"]
    sym = report["symmetry"]
    where = f"g={s['g']} n={s['n']} m={s['m']}" if s["g"] is not None else f"m={s['m']}"
    lines = [
        f"{report['series']}({where}) = {gf}",
        "coefficients: " + " ".join(report["coeffs"]),
        f"f(1/t) = {'+' if sym['sign'] > 0 else '-'}t^{sym['exp']} f(t): {'pass' if sym['pass'] else 'FAIL'}",
    ]
    return "\n".join(lines)


# --- count ---------------------------------------------------------------


def cmd_count(cfg: RunConfig) -> tuple[dict, bool]:
    sig = cfg.sig()
    cache = cfg.cache()
    periph = peripheral_set(sig)
    c_all, c_direct = [], []
    for r in range(cfg.max_degree + 1):
        diagrams = cached_enumerate(sig, r, cache)
        c_all.append(len(diagrams))
        c_direct.append(
            sum(1 for d in diagrams if not any(c in periph for c in extract_multicurve(d).components))
        )
    c_series = nonperipheral_from_all(sig, c_all)
    closed_all = series_coeffs(polygraph.c_all_gf(sig.m), cfg.max_degree)
    closed_z = series_coeffs(polygraph.Zgn_gf(sig.g, sig.n), cfg.max_degree)
    rows = []
    for r in range(cfg.max_degree + 1):
        agree = c_all[r] == closed_all[r] and c_series[r] == c_direct[r] == closed_z[r]
        rows.append(
            {
                "r": r,
                "c_all": c_all[r],
                "c_all_closed": closed_all[r],
                "c_series": c_series[r],
                "c_direct": c_direct[r],
                "c_closed": closed_z[r],
                "agree": agree,
            }
        )
    ok = all(row["agree"] for row in rows)
    return {"surface": {"g": sig.g, "n": sig.n, "m": sig.m}, "rows": rows, "pass": ok}, ok


def render_table(rows: list[dict], fmt: str) -> str:
    cols = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    lines = ["  ".join(c.rjust(widths[c]) for c in cols)]
    lines += ["  ".join(str(r[c]).rjust(widths[c]) for c in cols) for r in rows]
    return "\n".join(lines)


# --- verify ---------------------------------------------------------------


def _item(key: str, ok: bool, **detail) -> dict:
    return {"key": key, "pass": bool(ok), **detail}


def suite_symmetry(cfg: RunConfig) -> list[dict]:
    items = []
    for m in range(2, cfg.m_max + 1):
        for name, gf in (
            ("G", polygraph.G_gf(m)),
            ("Z0", polygraph.Z_gf(m)),
            ("H", polygraph.H_gf_m(m)),
            ("h", polygraph.h_gf(m)),
        ):
            sign, exp = expected_symmetry(name, m)
            items.append(_item(f"{name}/m={m:02d}", check_reciprocal_symmetry(gf, sign, exp), sign=sign, exp=exp))
    return items


def suite_euler(cfg: RunConfig) -> list[dict]:
    items = []
    m_max = max(cfg.m_max, 4)
    for m in range(3, m_max + 1):
        f = polygraph.f_poly(m)
        items.append(_item(f"f_palindromic/m={m:02d}", is_palindromic(f, m - 3) and f.degree == m - 3 and f[0] == 1))
    for m in range(4, m_max + 1):
        got = polygraph.euler_altsum(m)
        items.append(_item(f"altsum/m={m:02d}", got == 1 + (-1) ** (m - 4), value=got))
    rng = random.Random(cfg.seed)
    for i in range(min(cfg.trials, 50)):
        m = rng.randint(3, min(m_max, 9))
        r0 = rng.randint(0, m - 3)
        pool = polygraph.enumerate_dissections(m, r0)
        gamma = rng.choice(pool)
        got = polygraph.altsum_containing(m, gamma)
        items.append(_item(f"altsum_containing/{i:03d}", got == (-1) ** (m - 3 - r0), m=m, gamma=str(gamma), value=got))
    return items


def duality_checks(m: int) -> list[dict]:
    items = []
    for gamma in polygraph.enumerate_B_simple(m):
        dual = polygraph.dual(gamma, m)
        back = polygraph.dual(dual, m)
        same_faces = polygraph.faces(gamma, m).face_sizes == polygraph.faces(dual, m).face_sizes
        degree_sum = polygraph.d_value(gamma, m) + gamma.e + dual.e
        in_bs = dual.is_simple() and dual.is_even() and dual.is_noncrossing()
        ok = back == gamma and same_faces and degree_sum == 3 * m - 6 and in_bs
        items.append(_item(f"m={m:02d}/{gamma}", ok))
    return items


def suite_duality(cfg: RunConfig) -> list[dict]:
    items = []
    for m in range(2, cfg.m_max + 1):
        checks = duality_checks(m)
        items.append(_item(f"m={m:02d}", all(c["pass"] for c in checks), graphs=len(checks)))
    return items


def suite_basis(cfg: RunConfig) -> list[dict]:
    sig = cfg.sig()
    expected = series_coeffs(polygraph.H_gf_m(sig.m), cfg.max_degree)
    items = []
    for r in range(cfg.max_degree + 1):
        rows = len(charvar.multicurves_up_to(sig, r))
        samples = cfg.samples if cfg.samples is not None else rows + 20
        rank = charvar.dim_fil(sig, r, cfg.prime, samples, cfg.seed)
        items.append(_item(f"r={r:02d}", rank == expected[r], rank=rank, expected=expected[r]))
    return items


def suite_identities(cfg: RunConfig) -> list[dict]:
    reports = (
        charvar.verify_fricke(cfg.prime, cfg.trials, cfg.seed)
        + charvar.verify_trace_identities(cfg.prime, cfg.trials, cfg.seed)
        + charvar.verify_singular_products(cfg.prime, cfg.trials, cfg.seed)
    )
    return [_item(r.name, r.passed, trials=r.trials, failures=r.failures) for r in reports]


def suite_collapse(cfg: RunConfig) -> list[dict]:
    from .genfun import IntPoly

    items = []
    cache = cfg.cache()
    for m in range(2, cfg.m_max + 1):
        sig = genus_zero(m)
        c_all = [len(cached_enumerate(sig, r, cache)) for r in range(cfg.max_degree + 1)]
        prod = IntPoly(tuple(c_all)) * IntPoly((1, -1)) ** m
        lhs = [prod[r] for r in range(cfg.max_degree + 1)]
        rhs = [polygraph.count_B(m, r) for r in range(cfg.max_degree + 1)]
        items.append(_item(f"m={m:02d}", lhs == rhs, diagrams=lhs, multigraphs=rhs))
    return items


SUITE_FUNCS = {
    "symmetry": suite_symmetry,
    "euler": suite_euler,
    "duality": suite_duality,
    "basis": suite_basis,
    "identities": suite_identities,
    "collapse": suite_collapse,
}


def cmd_verify(cfg: RunConfig) -> tuple[dict, bool]:
    items = sorted(SUITE_FUNCS[cfg.suite](cfg), key=lambda it: it["key"])
    ok = all(it["pass"] for it in items)
    return {"suite": cfg.suite, "items": items, "pass": ok}, ok


# --- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multicurves", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, degree_flag="--max-deg"):
        p.add_argument("--g", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--m", type=int)
        p.add_argument(degree_flag, dest="max_degree", type=int, default=None)
        p.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
        p.add_argument("--cache-dir")
        p.add_argument("--no-cache", dest="use_cache", action="store_false")

    ps = sub.add_parser("series", help="closed form, coefficients and functional equation")
    common(ps)
    ps.add_argument("--which", choices=SERIES_NAMES, default="Z")

    pc = sub.add_parser("count", help="multicurve counts by enumeration vs closed form")
    common(pc, "--max-len")

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", choices=SUITES)
    common(pv)
    pv.add_argument("--r", dest="r", type=int, help="largest filtration degree (basis suite)")
    pv.add_argument("--m-max", type=int, default=None)
    pv.add_argument("--prime", type=int, default=charvar.DEFAULT_PRIME)
    pv.add_argument("--samples", type=int)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--trials", type=int, default=1000)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=ns.command,
        suite=getattr(ns, "suite", None),
        g=ns.g,
        n=ns.n,
        m=ns.m,
        which=getattr(ns, "which", "Z"),
        fmt=ns.fmt,
        cache_dir=ns.cache_dir,
        use_cache=ns.use_cache,
    )
    if ns.command == "verify":
        cfg.prime, cfg.samples, cfg.seed, cfg.trials = ns.prime, ns.samples, ns.seed, ns.trials
        defaults = {"symmetry": 8, "euler": 12, "duality": 8, "collapse": 4}
        cfg.m_max = ns.m_max if ns.m_max is not None else defaults.get(cfg.suite, 8)
        degree = ns.r if ns.r is not None else ns.max_degree
        cfg.max_degree = degree if degree is not None else (3 if cfg.suite == "basis" else 6)
    else:
        cfg.max_degree = ns.max_degree if ns.max_degree is not None else 10
    return cfg


def run(cfg: RunConfig) -> tuple[str, bool]:
    cfg.validate()
    if cfg.command == "series":
        report, ok = cmd_series(cfg)
        return render_series(report, cfg.fmt), ok
    if cfg.command == "count":
        report, ok = cmd_count(cfg)
        if cfg.fmt == "json":
            return json.dumps(report), ok
        return render_table(report["rows"], cfg.fmt), ok
    report, ok = cmd_verify(cfg)
    if cfg.fmt == "json":
        return json.dumps(report), ok
    rows = [{"key": it["key"], "pass": it["pass"]} for it in report["items"]]
    return render_table(rows, cfg.fmt), ok


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(ns)
        text, ok = run(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(text)
    if not ok:
        print("one or more checks failed", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
