"""
Evaluation of the rows of a run, spread over worker processes.

Every row is a pure function of its task, so rows come out in grid order and identical whatever the number of
workers.
"""

import concurrent.futures
import logging
import os

from .attack import (
    random_attack,
    symmetric_attack,
)
from .bound import (
    FLAG_INFEASIBLE,
    GridSpec,
    h_a_given_b,
    key_rate,
    sae_lower,
)
from .channel import depolarize_statistics
from .config import (
    MODE_INTERCEPT,
    MODE_KEYRATE,
    MODE_SOUNDNESS,
    MODE_SWEEP,
)
from .errors import (
    AsymmetricStatisticsError,
    ConsistencyError,
)
from .intercept import ir_report
from .protocol import ProtocolParams
from .simulator import (
    build_rho_abe,
    simulate_statistics,
)

log = logging.getLogger(__name__)

SWEEP_COLUMNS = (
    "alpha",
    "q_f",
    "q_r",
    "q_x",
    "sae_lower",
    "hab",
    "rate",
    "argmin_q3",
    "argmin_e2",
    "argmin_f3",
    "flags",
)
KEYRATE_COLUMNS = SWEEP_COLUMNS[:-1] + (
    "p",
    "q0",
    "q1",
    "q2",
    "re_g1g3",
    "chi_abs_max",
    "re_e0e3",
    "re2_e0g0",
    "lambda",
    "grid_points_evaluated",
    "flags",
)
SOUNDNESS_COLUMNS = ("seed", "kind", "alpha", "sae_exact", "sae_lower", "margin", "hab_exact", "hab", "flags")
INTERCEPT_COLUMNS = ("alpha", "h_a_e", "h_a_b", "rate", "flags")

SOUNDNESS_SLACK = 1e-6
HAB_TOLERANCE = 1e-9
FLAG_SKIPPED = "skipped-asymmetric"
FLAG_UNSOUND = "bound-exceeds-exact"

KIND_SYMMETRIC = "symmetric"
KIND_GENERIC = "generic"


def grid_from_config(cfg):
    """
    @param cfg: Run settings.
    @type  cfg: L{SweepConfig}

    @rtype: L{GridSpec}
    """
    return GridSpec(
        points=cfg.grid_points, refine_passes=cfg.refine_passes, reading=cfg.symmetry, cs_clamp=cfg.cs_clamp
    )


def keyrate_row(task):
    """
    Key rate of the depolarization model at one grid point.

    @param task: Tuple (alpha, noise, p, grid, detailed), where C{p} may be C{None} and C{detailed} adds the
                 breakdown of the bound.
    @type  task: C{tuple}

    @rtype: C{dict}
    """
    alpha, noise, p, grid, detailed = task
    stats = depolarize_statistics(alpha, noise, p)
    report = key_rate(stats, alpha, grid)
    argmin = report.argmin
    row = {
        "alpha": alpha,
        "q_f": noise.q_f,
        "q_r": noise.q_r,
        "q_x": noise.q_x,
        "sae_lower": report.sae_lower,
        "hab": report.hab,
        "rate": report.rate if report.feasible else None,
        "argmin_q3": None if argmin is None else argmin.q3,
        "argmin_e2": None if argmin is None else argmin.e2_sq,
        "argmin_f3": None if argmin is None else argmin.f3_sq,
        "flags": list(report.flags),
    }
    if detailed:
        breakdown = report.breakdown
        row["p"] = report.p
        row["grid_points_evaluated"] = report.grid_points_evaluated
        for name, attribute in (
            ("q0", "q0"),
            ("q1", "q1"),
            ("q2", "q2"),
            ("re_g1g3", "re_g1g3"),
            ("chi_abs_max", "chi_abs_max"),
            ("re_e0e3", "re_e0e3"),
            ("re2_e0g0", "re2_e0g0"),
            ("lambda", "lambda_val"),
        ):
            row[name] = None if breakdown is None else getattr(breakdown, attribute)
    log.debug("alpha=%s %r rate=%s", alpha, noise, report.rate)
    return row


def soundness_row(task):
    """
    Compare the bound with the exact S(A|E) for one random attack.

    @param task: Tuple (seed, kind, d_e, alpha, p, grid).
    @type  task: C{tuple}

    @rtype: C{dict}
    """
    seed, kind, d_e, alpha, p, grid = task
    if kind == KIND_SYMMETRIC:
        attack = symmetric_attack(d_e, seed)
    else:
        attack = random_attack(d_e, seed)
    params = ProtocolParams(alpha, p)
    stats = simulate_statistics(attack, params)
    oracle = build_rho_abe(attack, params)

    hab = h_a_given_b(stats)
    if abs(hab - oracle.hab_exact) > HAB_TOLERANCE:
        raise ConsistencyError("H(A|B) {!r} differs from the exact {!r} (seed {})".format(hab, oracle.hab_exact, seed))

    row = {
        "seed": seed,
        "kind": kind,
        "alpha": alpha,
        "sae_exact": oracle.sae_exact,
        "sae_lower": None,
        "margin": None,
        "hab_exact": oracle.hab_exact,
        "hab": hab,
        "flags": [],
    }
    try:
        result = sae_lower(stats, alpha, grid)
    except AsymmetricStatisticsError as e:
        log.debug("Skipped seed %s: %s", seed, "; ".join(e.violations))
        row["flags"].append(FLAG_SKIPPED)
        return row

    row["sae_lower"] = result.value
    row["margin"] = oracle.sae_exact - result.value
    row["flags"].extend(result.flags)
    if row["margin"] < -SOUNDNESS_SLACK:
        log.warning("Bound %s exceeds the exact S(A|E) %s for seed %s", result.value, oracle.sae_exact, seed)
        row["flags"].append(FLAG_UNSOUND)
    return row


def intercept_row(alpha):
    """
    @param alpha: Amplitude of |0> in |a>.
    @type  alpha: C{float}

    @rtype: C{dict}
    """
    report = ir_report(alpha)
    return {"alpha": alpha, "h_a_e": report.h_a_e, "h_a_b": report.h_a_b, "rate": report.rate, "flags": []}


def soundness_summary(rows):
    """
    Summary row of a soundness run, with the smallest margin.

    @param rows: Rows of the evaluated attacks.
    @type  rows: C{list} of C{dict}

    @rtype: C{dict}
    """
    margins = [row["margin"] for row in rows if row["margin"] is not None]
    skipped = sum(1 for row in rows if FLAG_SKIPPED in row["flags"])
    summary = {column: None for column in SOUNDNESS_COLUMNS}
    summary["seed"] = "summary"
    summary["margin"] = min(margins) if margins else None
    summary["flags"] = ["evaluated={}".format(len(margins)), "skipped={}".format(skipped)]
    return summary


def _map(function, tasks, workers):
    """Apply L{function} to all tasks, in order."""
    if workers is None:
        workers = os.cpu_count() or 1
    if workers == 1 or len(tasks) < 2:
        return [function(task) for task in tasks]
    chunk = max(1, len(tasks) // (4 * workers))
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, tasks, chunksize=chunk))


def evaluate(cfg):
    """
    Evaluate all rows of a run.

    @param cfg: Validated run settings.
    @type  cfg: L{SweepConfig}

    @return: Column names and rows.
    @rtype:  C{tuple} of C{tuple} of C{str} and C{list} of C{dict}
    """
    alphas = cfg.alphas()
    if cfg.mode == MODE_INTERCEPT:
        log.info("Intercept-resend rates at %d alpha values", len(alphas))
        return INTERCEPT_COLUMNS, _map(intercept_row, alphas, cfg.workers)

    grid = grid_from_config(cfg)
    if cfg.mode == MODE_SOUNDNESS:
        tasks = []
        for index in range(cfg.attacks):
            kind = KIND_GENERIC if index % 3 == 2 else KIND_SYMMETRIC
            for alpha in alphas:
                tasks.append((cfg.seed + index, kind, cfg.d_e, alpha, cfg.p_override, grid))
        log.info("Soundness check of %d attacks, %d grid points per axis", cfg.attacks, grid.points)
        rows = _map(soundness_row, tasks, cfg.workers)
        summary = soundness_summary(rows)
        log.info("Smallest margin %s, %s", summary["margin"], ", ".join(summary["flags"]))
        return SOUNDNESS_COLUMNS, rows + [summary]

    detailed = cfg.mode == MODE_KEYRATE
    tasks = [(alpha, noise, cfg.p_override, grid, detailed) for noise in cfg.noise_points() for alpha in alphas]
    log.info("Key rates at %d points, %d grid points per axis", len(tasks), grid.points)
    rows = _map(keyrate_row, tasks, cfg.workers)
    infeasible = sum(1 for row in rows if FLAG_INFEASIBLE in row["flags"])
    if infeasible:
        log.warning("%d points have an empty hidden-parameter range", infeasible)
    if cfg.mode == MODE_SWEEP:
        return SWEEP_COLUMNS, rows
    return KEYRATE_COLUMNS, rows
