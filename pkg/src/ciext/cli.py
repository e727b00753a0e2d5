"""Command-line runner: ``ciext SUBCOMMAND --config PATH [--out DIR] ...``.

Exit codes: 0 success, 1 usage or config error, 2 verification failure.
"""

import argparse
import json
import os
import sys

from . import asymptotics, support
from .asymptotics import PrimeIdeal, certify_prime
from .config import ConfigError, PreconditionError, load_config
from .ext import DegreeCapError, certify_generation_box, family_ext_table, gulliksen_column_check
from .family import build_family
from .ideals import Ideal
from .modules import Module
from .operators import check_lift_identity, eisenbud_operators, verify_chain_map
from .resolution import check_complex, detect_periodicity, exactness_certificate, resolve

SUBCOMMANDS = ("gb", "resolve", "ext-table", "certify-fg", "ass-table", "theta", "cx-table",
               "explore-quotient")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="ciext", description="Ext over complete intersections: tables and certificates")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--config", required=True)
    p.add_argument("--out", default="out")
    p.add_argument("--imax", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--degcap", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=1)
    return p


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def _family(cfg, n_max):
    kind = cfg.family_kind
    if kind == "constant":
        return build_family(None, cfg.N, "constant", n_max)
    return build_family(cfg.I, cfg.N, kind, n_max)


def _table(cfg, jobs):
    b = cfg.bounds
    fam = _family(cfg, b["n_max"])
    res = resolve(cfg.M, b["i_max"] + 1, b["degree_cap"])
    return family_ext_table(cfg.M, fam, b["i_max"], res=res, jobs=jobs)


def _candidates(cfg):
    out = []
    for gens in cfg.candidates:
        J = Ideal(cfg.ring, gens)
        try:
            out.append(certify_prime(J))
        except ValueError:
            out.append(PrimeIdeal(J, "user-asserted"))
    return out


# --- subcommands: each returns (files, text, ok) --------------------------------------

def cmd_gb(cfg, jobs):
    I = cfg.I
    rep = {"ideal": str(I), "ideal_gb": [str(g) for g in I.reduced_gb()],
           "modulus": [str(f) for f in cfg.f], "regular_sequence": True,
           "hilbert_A": str(Ideal.zero(cfg.ring).hilbert_series()),
           "hilbert_A_mod_I": str(I.hilbert_series()), "dim_A_mod_I": I.krull_dim(),
           "module_presentation": str(cfg.M.presentation())}
    text = "\n".join(f"{k}: {v}" for k, v in sorted(rep.items())) + "\n"
    return {"gb.json": rep}, text, True


def cmd_resolve(cfg, jobs):
    b = cfg.bounds
    res = resolve(cfg.M, b["i_max"], b["degree_cap"])
    rep = res.to_dict()
    rep["complex_defects"] = check_complex(res)
    rep["exact"] = [exactness_certificate(res, i) for i in range(1, res.length)]
    rep["periodicity"] = detect_periodicity(res)
    ok = not rep["complex_defects"] and all(rep["exact"])
    if cfg.ring.codim and res.length >= 2:
        ops = eisenbud_operators(res)
        rep["operators"] = ops.to_dict()["operators"]
        rep["lift_identity"] = check_lift_identity(ops)
        chain = verify_chain_map(ops, b["i_max"])
        rep["chain_map_ok"] = chain["ok"]
        ok = ok and rep["lift_identity"] and chain["ok"]
    text = f"betti: {res.betti()}\nprojdim: {res.projdim}\nperiodicity: {rep['periodicity']}\n"
    return {"resolve.json": rep}, text, ok


def cmd_ext_table(cfg, jobs):
    T = _table(cfg, jobs)
    rep = T.to_dict()
    rep["stabilization"] = {str(k): v for k, v in T.stabilization().items()}
    grid = T.mu_grid()
    text = "mu(Ext^i(M, N_n)) rows i, columns n\n" + "\n".join(
        f"i={i:2d}  " + " ".join(f"{m:3d}" for m in row) for i, row in enumerate(grid)) + "\n"
    text += f"commuting squares: {T.square_report}\n"
    return {"ext-table.csv": T.to_csv(), "ext-table.json": rep}, text, T.square_report["ok"]


def cmd_certify(cfg, jobs):
    T = _table(cfg, jobs)
    b = cfg.bounds
    box = tuple(cfg.box) if cfg.box else (max(0, b["i_max"] - 4), max(0, b["n_max"] - 2))
    big = (b["i_max"] - 2, b["n_max"] - 1)
    c1 = certify_generation_box(T, box)
    rep = {"certificate": c1.to_dict(), "generator_bidegrees": [list(x) for x in c1.generator_bidegrees()]}
    if big != box and big[0] >= box[0] and big[1] >= box[1]:
        c2 = certify_generation_box(T, big)
        rep["larger_box"] = c2.to_dict()
        rep["larger_box_adds_generators"] = c2.generator_bidegrees() != c1.generator_bidegrees()
    rep["gulliksen"] = [gulliksen_column_check(T, n) for n in range(T.n_max + 1)]
    rep["squares"] = T.square_report
    text = (f"box {list(box)}: {c1.status}\ngenerators at {[list(x) for x in c1.generator_bidegrees()]}\n"
            + "".join(f"column {g['column']}: bound {g['bound']} generated={g['generated']}\n"
                      for g in rep["gulliksen"]))
    return {"certify-fg.json": rep}, text, T.square_report["ok"]


def cmd_ass(cfg, jobs):
    T = _table(cfg, jobs)
    rep = asymptotics.ass_stability_report(T, _candidates(cfg))
    rep["p_stable"] = asymptotics.p_stable_injectivity(T)
    rows = ["cell,primes"] + [f"{k},{' '.join(v)}" for k, v in rep["cells"].items()]
    text = (f"even stable set: {rep['even']}\nodd stable set: {rep['odd']}\n"
            f"onset (i0, n0) = ({rep['i0']}, {rep['n0']}) [empirical]\nunion: {rep['union']}\n"
            f"p-stable injectivity onset: {rep['p_stable']['onset']}\n")
    return {"ass-table.json": rep, "ass-table.csv": "\n".join(rows) + "\n"}, text, T.square_report["ok"]


def cmd_theta(cfg, jobs):
    b = cfg.bounds
    kind = cfg.family_kind if cfg.family_kind != "constant" else "ideal-power-module"
    fam = build_family(cfg.I, cfg.N, kind, b["n_max"])
    L, onset, stab = asymptotics.stable_annihilator(fam)
    rep = {"stable_annihilator": str(L), "onset": onset, "stabilized": stab,
           "limdim": L.krull_dim(), "mu_ideal": fam.mu_ideal}
    try:
        rep["spread"] = asymptotics.analytic_spread(fam)
    except ValueError as e:
        rep["spread"] = None
        rep["spread_error"] = str(e)
    fr = asymptotics.filter_regular_search(fam, seed=cfg.random_seed)
    fr.pop("terms_raw", None)
    rep["filter_regular"] = fr
    a = Ideal(cfg.ring, [cfg._poly(p) for p in cfg.theta_cfg["ideal"]]) if "ideal" in cfg.theta_cfg else L
    lo, hi = cfg.theta_cfg.get("window", [max(onset, 1), b["n_max"]])
    window = range(lo, hi + 1)
    ok = True
    try:
        rep["d_values"] = {str(k): v for k, v in asymptotics.d_invariant(fam, a, window).items()}
        rep["theta"] = asymptotics.theta(a, fam, window)
        ok = rep["theta"] <= fam.mu_ideal - 1
    except ValueError as e:
        rep["theta"] = None
        rep["theta_error"] = str(e)
        ok = False
    rep["ideal_a"] = str(a)
    text = "\n".join(f"{k}: {rep[k]}" for k in sorted(rep)) + "\n"
    return {"theta.json": rep}, text, ok


def _cx_rows(report):
    return [{"j": r["j"], "cx": r["cx"], "vdim": r["vdim"], "ann": str(r["ann"]), "mu": r["mu"]}
            for r in report["rows"]]


def cmd_cx(cfg, jobs):
    b = cfg.bounds
    rep = support.cx_stability_report(cfg.M, cfg.I, cfg.N, b["j_max"], b["i_max"], jobs)
    out = {"rows": _cx_rows(rep), "onset": rep["onset"], "empirical": True}
    ok = all(r["cx"] is None or r["vdim"] == r["cx"] or r["vdim"] == -1 for r in rep["rows"])
    return ({"cx-table.json": out, "cx-table.csv": support.report_csv(rep["rows"])},
            support.report_text(rep, "cx stability"), ok)


def cmd_explore(cfg, jobs):
    b = cfg.bounds
    rep = support.open_question_table(cfg.M, cfg.I, cfg.N, b["j_max"], b["i_max"], jobs)
    out = {"label": rep["label"], "rows": _cx_rows(rep)}
    return ({"explore-quotient.json": out, "explore-quotient.csv": support.report_csv(rep["rows"])},
            support.report_text(rep, "cx of N / I^j N"), True)


COMMANDS = {"gb": cmd_gb, "resolve": cmd_resolve, "ext-table": cmd_ext_table, "certify-fg": cmd_certify,
            "ass-table": cmd_ass, "theta": cmd_theta, "cx-table": cmd_cx, "explore-quotient": cmd_explore}


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    try:
        cfg = load_config(args.config)
        cfg.apply_overrides(args.imax, args.nmax, args.degcap, args.seed)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    except PreconditionError as e:
        print(f"verification failure [{e.invariant}]: {e}", file=sys.stderr)
        return 2
    try:
        files, text, ok = COMMANDS[args.subcommand](cfg, args.jobs)
    except (PreconditionError, DegreeCapError) as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    os.makedirs(args.out, exist_ok=True)
    header = cfg.header()
    for name, content in files.items():
        path = os.path.join(args.out, name)
        if isinstance(content, dict):
            content = _dump({"header": header, "report": content})
        else:
            content = f"# config_hash={header['config_hash']} bounds={json.dumps(header['bounds'], sort_keys=True)}\n" \
                + content
        with open(path, "w") as fh:
            fh.write(content)
    summary = f"config_hash: {header['config_hash']}\n" + text
    with open(os.path.join(args.out, f"{args.subcommand}.txt"), "w") as fh:
        fh.write(summary)
    stdout.write(summary)
    if not ok:
        print("verification failure: see report", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
