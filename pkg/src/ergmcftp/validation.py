"""Correctness checks of the sampler against exact and closed-form results.

Each check returns a plain dict with a ``passed`` flag and the measured
statistics, so it can be printed, serialized to JSON or asserted on.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import stats

from .cftp import run_cftp_batch
from .graph import n_slots
from .mcmc import erdos_renyi, forward_coalescence_times, forward_run
from .model import ErgmModel, NotMonotoneError
from .motifs import EDGE, TRIANGLE, TWO_STAR
from .oracle import (
    empirical_distribution,
    exact_distribution,
    exact_t_mix,
    exact_transition_matrix,
    tv_distance,
)

ORACLE_MODEL = ErgmModel(4, (EDGE, TRIANGLE), (0.2, 0.3))
TWO_STAR80_MODEL = ErgmModel(80, (EDGE, TWO_STAR), (-1.1, 0.4))
TWO_STAR80_MEAN_STOP = 130_500
TWO_STAR80_EDGE_PROPORTION = 0.86


def _seeds(base: int, count: int) -> list[int]:
    return [base + r for r in range(count)]


def check_oracle_tv(samples: int = 100_000, tol: float = 0.03, seed: int = 10_000_000,
                    model: ErgmModel = ORACLE_MODEL, schedule: str = "doubling",
                    sampler=None) -> dict:
    """TV distance between sampler frequencies and the exact law.

    ``sampler(model, seed) -> Graph`` replaces CFTP when given.
    """
    seeds = _seeds(seed, samples)
    if sampler is None:
        draws = [r.sample for r in run_cftp_batch(model, seeds, schedule)]
    else:
        draws = [sampler(model, s) for s in seeds]
    emp = empirical_distribution(draws, model.n_vertices)
    tv = tv_distance(emp, exact_distribution(model).probabilities)
    return {"check": "oracle_tv", "samples": samples, "tv": tv, "tol": tol,
            "passed": tv <= tol}


def check_independent_edges(samples: int = 10_000, betas=(-1.1, 0.0, 0.7), n: int = 5,
                            seed: int = 20_000_000, z: float = 3.0) -> dict:
    """Edge-only models: per-slot Bernoulli(e^{2b}/(1+e^{2b})) and no correlation."""
    out = {"check": "independent_edges", "samples": samples, "per_beta": []}
    ok = True
    for idx, b in enumerate(betas):
        model = ErgmModel(n, (EDGE,), (b,))
        results = run_cftp_batch(model, _seeds(seed + idx * samples, samples))
        x = np.array([r.sample.to_slot_array() for r in results], dtype=float)
        p = math.exp(2 * b) / (1 + math.exp(2 * b))
        se = math.sqrt(p * (1 - p) / samples)
        freq = x.mean(axis=0)
        freq_z = np.abs(freq - p) / se
        corr = np.corrcoef(x, rowvar=False)
        iu = np.triu_indices(n_slots(n), 1)
        # under independence the sample correlation has sd ~ 1/sqrt(samples)
        corr_z = np.abs(corr[iu]) * math.sqrt(samples)
        passed = bool(freq_z.max() <= z and corr_z.max() <= z)
        ok &= passed
        out["per_beta"].append({
            "beta1": b, "p": p, "max_freq_z": float(freq_z.max()),
            "max_corr_z": float(corr_z.max()), "passed": passed,
        })
    out["passed"] = ok
    return out


def random_monotone_model(rng, n: int = 4) -> ErgmModel:
    b1 = rng.uniform(-1.0, 1.0)
    b2, b3 = rng.uniform(0.0, 1.0, size=2)
    return ErgmModel(n, (EDGE, TWO_STAR, TRIANGLE), (b1, b2, b3))


def check_stationarity(draws: int = 5, seed: int = 30_000_000, tol: float = 1e-12) -> dict:
    """``||p P - p||_inf`` for the exact law ``p`` and exact kernel ``P``."""
    rng = np.random.default_rng(seed)
    errors = []
    for _ in range(draws):
        model = random_monotone_model(rng)
        p = exact_distribution(model).probabilities
        P = exact_transition_matrix(model)
        errors.append(float(np.max(np.abs(p @ P - p))))
    return {"check": "stationarity", "draws": draws, "max_error": max(errors),
            "tol": tol, "passed": max(errors) <= tol}


def check_stopping_time_bound(runs: int = 10_000, seed: int = 40_000_000, model: ErgmModel = ORACLE_MODEL,
                   confidence: float = 0.99, ks_level: float = 0.01) -> dict:
    """Mean minimal stopping time against ``2 (log(N(N-1)/2) + 1) T_mix``, plus
    equality in law of backward and forward coupling times."""
    results = run_cftp_batch(model, _seeds(seed, runs), "unit")
    t_stop = np.array([r.stop_time for r in results], dtype=float)
    mean = float(t_stop.mean())
    ucl = mean + float(stats.norm.ppf(confidence)) * float(t_stop.std(ddof=1)) / math.sqrt(runs)
    t_mix = exact_t_mix(exact_transition_matrix(model))
    bound = 2 * (math.log(n_slots(model.n_vertices)) + 1) * t_mix
    fwd = forward_coalescence_times(model, runs, seed + runs, max_steps=100 * bound)
    fwd_ok = bool(np.all(fwd > 0))
    ks = stats.ks_2samp(t_stop, fwd)
    return {
        "check": "stopping_time_bound", "runs": runs, "mean_stop": mean, "ucl99": ucl,
        "t_mix": t_mix, "bound": bound, "bound_ok": bool(ucl <= bound),
        "forward_mean": float(fwd.mean()), "ks_statistic": float(ks.statistic),
        "ks_pvalue": float(ks.pvalue), "ks_ok": bool(ks.pvalue >= ks_level) and fwd_ok,
        "passed": bool(ucl <= bound and ks.pvalue >= ks_level and fwd_ok),
    }


def check_gate(beta=(0.0, -0.5)) -> dict:
    model = ErgmModel(4, (EDGE, TWO_STAR), beta)
    try:
        run_cftp_batch(model, [0])
    except NotMonotoneError as exc:
        return {"check": "gate", "beta": list(beta), "message": str(exc), "passed": True}
    return {"check": "gate", "beta": list(beta), "passed": False}


def check_two_star_regime(runs: int = 100, mcmc_replicates: int = 100, mcmc_steps: int = 130_000,
               seed: int = 50_000_000, model: ErgmModel = TWO_STAR80_MODEL) -> dict:
    """The N=80 two-star regime: density, stopping time, and agreement of a
    forward chain started from Erdos-Renyi(0.8) with the exact samples."""
    results = run_cftp_batch(model, _seeds(seed, runs), "doubling")
    m = n_slots(model.n_vertices)
    edges = np.array([r.sample.edge_count() for r in results], dtype=float)
    stop = np.array([r.stop_time for r in results], dtype=float)
    density = float(edges.mean() / m)
    mean_stop = float(stop.mean())
    q1, q3 = np.percentile(edges, [25, 75])
    mcmc_edges = []
    for r in range(mcmc_replicates):
        s = seed + runs + r
        x0 = erdos_renyi(model.n_vertices, 0.8, [s, 0])
        x, _ = forward_run(model, x0, mcmc_steps, [s, 1], record_stride=0)
        mcmc_edges.append(x.edge_count())
    med = float(np.median(mcmc_edges))
    density_ok = abs(density - TWO_STAR80_EDGE_PROPORTION) <= 0.02
    stop_ok = TWO_STAR80_MEAN_STOP / 3 <= mean_stop <= 3 * TWO_STAR80_MEAN_STOP
    mcmc_ok = bool(q1 <= med <= q3)
    return {
        "check": "two_star_regime", "runs": runs, "edge_proportion": density,
        "edge_proportion_ok": density_ok, "mean_stop_time": mean_stop,
        "stop_time_ok": stop_ok, "cftp_edge_iqr": [float(q1), float(q3)],
        "mcmc_median_edges": med, "mcmc_ok": mcmc_ok,
        "passed": bool(density_ok and stop_ok and mcmc_ok),
    }
