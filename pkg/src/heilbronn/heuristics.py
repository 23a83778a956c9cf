"""Feasible configurations and lower bounds on the optimal minimum area.

Three sources of incumbents live here: uniform random sampling, a cheap
hill-climbing refiner, and a registry of published optimal or best-known
placements for n = 3..10.
"""
from __future__ import annotations

import enum
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import UnknownInstance
from .geometry import Configuration, min_area, min_area_batch, min_triangle_area, triples

SAMPLE_CHUNK = 4096


class Status(enum.Enum):
    PROVEN_OPTIMAL = "ProvenOptimal"
    CERTIFIED_EXTERNALLY = "CertifiedExternally"
    BEST_KNOWN = "BestKnown"


class UpperProvenance(enum.Enum):
    PREVIOUS_OPTIMUM = "PreviousOptimum"
    TRIVIAL = "Trivial(0.5)"
    CERTIFIED = "Certified"
    USER_SUPPLIED = "UserSupplied"


@dataclass(frozen=True)
class KnownConfiguration:
    n: int
    points: Configuration
    published_area: float
    status: Status

    def computed_area(self) -> float:
        return min_triangle_area(self.points).min_abs


@dataclass
class BoundsH:
    """Interval [lower, upper] for the optimal minimum area H_n^*."""

    n: int
    lower: float
    upper: float
    lower_witness: Configuration | None = None
    upper_provenance: UpperProvenance = UpperProvenance.TRIVIAL
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (0.0 < self.lower <= self.upper <= 0.5):
            raise ValueError(f"invalid bounds [{self.lower}, {self.upper}]")


# Full-precision coordinates of the best-known placements (the 7-decimal
# rounding of the same points gives areas within 1.5e-8).
_PUBLISHED = {
    3: ([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], 0.5, Status.PROVEN_OPTIMAL),
    4: ([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)], 0.5, Status.PROVEN_OPTIMAL),
    5: (
        [
            (0.3339240927352503, 0.0),
            (1.0, 0.0),
            (0.0, 0.5778621196377186),
            (1.0, 0.6660759072647495),
            (0.4221376453891849, 1.0),
        ],
        0.1924499,
        Status.PROVEN_OPTIMAL,
    ),
    6: (
        [
            (0.0, 0.5002079002445663),
            (0.9583794963842281, 0.000009489865608419215),
            (1.0, 0.5002257602104074),
            (0.4585968225886384, 0.0),
            (0.0415841747655408, 0.9999908730285099),
            (0.5418012832835395, 1.0),
        ],
        0.1249999,
        Status.PROVEN_OPTIMAL,
    ),
    7: (
        [
            (0.0, 0.0),
            (0.8191740916746527, 0.0),
            (0.41614167326405116, 0.2872578887602705),
            (1.0, 0.2872582794565236),
            (0.507413965213032, 0.8060633265680573),
            (0.8648098677507948, 1.0),
            (0.0, 1.0),
        ],
        0.0838584,
        Status.PROVEN_OPTIMAL,
    ),
    8: (
        [
            (0.0, 0.0),
            (0.8114202566960157, 0.0),
            (1.0, 0.2324081561857156),
            (0.37716169952048906, 0.23240815618571525),
            (0.0, 0.7675903042903774),
            (0.6228391395467414, 0.7675911648645654),
            (0.18858118900903162, 1.0),
            (1.0, 1.0),
        ],
        0.0723758,
        Status.PROVEN_OPTIMAL,
    ),
    9: (
        [
            (0.1734433903651553, 0.0),
            (0.8062260941999951, 0.0),
            (1.0, 0.17344395573013657),
            (0.0, 0.17344394237353644),
            (0.6531127134403488, 0.6531128229910201),
            (1.0, 0.7398341002188249),
            (0.0, 0.806226928561121),
            (0.17344290319510058, 1.0),
            (0.7398354599600717, 1.0),
        ],
        0.0548756,
        Status.CERTIFIED_EXTERNALLY,
    ),
    10: (
        [
            (0.15768906661548968, 0.0),
            (0.7479323353900781, 0.0),
            (0.0, 0.1576884322844123),
            (1.0, 0.2520799751572953),
            (0.6846219009192053, 0.31538516443587444),
            (0.3153850579539533, 0.684620952702754),
            (0.0, 0.7479304762954191),
            (1.0, 0.8423081336124026),
            (0.8423085297469296, 1.0),
            (0.2520782200363807, 1.0),
        ],
        0.0465369,
        Status.BEST_KNOWN,
    ),
}

# Optimal values H_n^* as proven in the literature (used as upper bounds for
# n + 1). sqrt(3)/9 for n = 5, 1/8 for n = 6.
PROVEN_OPTIMA = {
    3: 0.5,
    4: 0.5,
    5: 0.1924500,
    6: 0.125,
    7: 0.0838591,
    8: 0.0723764,
    9: 0.0548767,
}


def _load_user_registry(n: int) -> KnownConfiguration | None:
    root = os.environ.get("HEILBRONN_DATA_DIR")
    if not root:
        return None
    path = Path(root) / f"n{n}.json"
    if not path.exists():
        return None
    from .fileio import read_configuration

    conf, meta = read_configuration(path)
    area = float(meta.get("published_area", min_triangle_area(conf).min_abs))
    status = Status(meta.get("status", Status.BEST_KNOWN.value))
    return KnownConfiguration(n, conf, area, status)


def known_configuration(n: int) -> KnownConfiguration:
    """Published placement for ``n`` in 3..10.

    ``HEILBRONN_DATA_DIR/n{n}.json`` overrides the embedded entry when present.
    """
    user = _load_user_registry(n)
    if user is not None:
        return user
    if n not in _PUBLISHED:
        raise UnknownInstance(f"no known configuration for n={n} (have 3..10)")
    xy, area, status = _PUBLISHED[n]
    return KnownConfiguration(n, Configuration.from_xy(xy), area, status)


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def sample_lower_bound(
    n: int, samples: int = 10**6, seed: int = 0, threads: int = 1
) -> tuple[float, Configuration]:
    """Best minimum area over ``samples`` i.i.d. uniform n-point configurations.

    Samples are drawn in fixed-size chunks, each from its own PCG64 stream
    keyed by (seed, chunk index), so the result does not depend on
    ``threads``. Ties keep the lowest sample index.

    Returns
    -------
    lower : float
        The best minimum triangle area seen.
    witness : Configuration
        A configuration attaining ``lower``.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    tri = triples(n)
    n_chunks = -(-samples // SAMPLE_CHUNK)
    best = [-1.0, None, -1]  # value, xy, global index
    lock = threading.Lock()

    def work(chunk):
        size = min(SAMPLE_CHUNK, samples - chunk * SAMPLE_CHUNK)
        xy = _chunk_rng(seed, chunk).random((size, n, 2))
        vals = min_area_batch(xy, tri)
        k = int(np.argmax(vals))
        gidx = chunk * SAMPLE_CHUNK + k
        with lock:
            v = float(vals[k])
            if v > best[0] or (v == best[0] and gidx < best[2]):
                best[:] = [v, xy[k].copy(), gidx]

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            list(ex.map(work, range(n_chunks)))
    else:
        for c in range(n_chunks):
            work(c)
    witness = Configuration.from_xy(best[1])
    return min_triangle_area(witness).min_abs, witness


def default_schedule(iterations: int, rounds: int = 10, start: float = 0.3, stop: float = 1e-5) -> np.ndarray:
    """Sawtooth of geometric decays from ``start`` to ``stop``, one tooth per round."""
    if iterations <= 0:
        return np.empty(0)
    rounds = max(1, min(rounds, iterations))
    sizes = np.full(rounds, iterations // rounds)
    sizes[: iterations % rounds] += 1
    return np.concatenate([np.geomspace(start, stop, k) for k in sizes])


def _score(xy, tri):
    return min_area_batch(xy, tri)


def refine_batch(
    xy: np.ndarray,
    iterations: int,
    seeds,
    step_schedule=None,
    rounds: int = 10,
    kick: float = 0.2,
) -> np.ndarray:
    """Iterated hill climbing on a batch of configurations (B, n, 2).

    Each round perturbs one random coordinate per step and keeps the move
    when the minimum area does not drop. Every round after the first starts
    from the best configuration so far, shaken by Gaussian noise of scale
    ``kick`` on all coordinates. The best configuration seen is returned.
    Members of the batch use independent generators seeded by ``seeds[b]``.
    """
    xy = np.array(xy, dtype=float, copy=True)
    B, n, _ = xy.shape
    if iterations <= 0:
        return xy
    if step_schedule is None:
        steps = default_schedule(iterations, rounds)
    else:
        steps = np.asarray(step_schedule, dtype=float)
        if steps.shape != (iterations,):
            raise ValueError("step_schedule must have one entry per iteration")
    # a round starts wherever the step size jumps up
    restart = np.zeros(iterations, dtype=bool)
    restart[1:] = steps[1:] > steps[:-1]
    tri = triples(n)
    rngs = [np.random.Generator(np.random.PCG64(s)) for s in seeds]
    moves = np.stack([r.integers(0, 2 * n, iterations) for r in rngs])
    noise = np.stack([r.standard_normal(iterations) for r in rngs])
    n_kicks = int(restart.sum())
    kicks = np.stack([r.standard_normal((max(n_kicks, 1), n, 2)) for r in rngs])
    rows = np.arange(B)
    best = xy.copy()
    best_val = _score(best, tri)
    cur_val = best_val.copy()
    k = 0
    for it in range(iterations):
        if restart[it]:
            better = cur_val > best_val
            best[better] = xy[better]
            best_val = np.where(better, cur_val, best_val)
            xy = np.clip(best + kick * kicks[:, k], 0.0, 1.0)
            cur_val = _score(xy, tri)
            k += 1
        flat = xy.reshape(B, 2 * n)
        m = moves[:, it]
        old = flat[rows, m]
        flat[rows, m] = np.clip(old + steps[it] * noise[:, it], 0.0, 1.0)
        val = _score(xy, tri)
        keep = val >= cur_val
        cur_val = np.where(keep, val, cur_val)
        flat[rows[~keep], m[~keep]] = old[~keep]
    better = cur_val > best_val
    best[better] = xy[better]
    return best


def local_refine(
    c: Configuration,
    iterations: int = 10_000,
    step_schedule=None,
    seed: int = 0,
    rounds: int = 10,
    kick: float = 0.2,
) -> Configuration:
    """Improve ``c`` by iterated single-coordinate hill climbing.

    The output is never worse than the input. Deterministic given ``seed``.
    """
    if iterations <= 0:
        return c
    out = refine_batch(c.as_array()[None], iterations, [seed], step_schedule, rounds, kick)[0]
    result = Configuration.from_xy(out)
    if min_triangle_area(result).min_abs < min_triangle_area(c).min_abs:
        return c
    return result


def bounds_for(
    n: int,
    samples: int = 10**6,
    seed: int = 0,
    refine_iters: int = 0,
    use_registry: bool = True,
    upper: float | None = None,
) -> BoundsH:
    """Lower and upper bounds for H_n^* with the default policy.

    The lower bound comes from sampling, optionally refined and then
    improved by the registry placement. The upper bound is the proven
    optimum for n - 1 (monotonicity in n), or 0.5 when n = 3, unless an
    explicit ``upper`` is supplied.
    """
    lower, wit = sample_lower_bound(n, samples, seed)
    notes = {"sampled": lower, "samples": samples, "seed": seed}
    if refine_iters > 0:
        wit = local_refine(wit, refine_iters, seed=seed)
        lower = min_triangle_area(wit).min_abs
        notes["refined"] = lower
    if use_registry:
        try:
            kc = known_configuration(n)
        except UnknownInstance:
            kc = None
        if kc is not None:
            a = kc.computed_area()
            if a > lower:
                lower, wit = a, kc.points
                notes["registry"] = a
    if upper is not None:
        up, prov = float(upper), UpperProvenance.USER_SUPPLIED
    elif n == 3 or (n - 1) not in PROVEN_OPTIMA:
        up, prov = 0.5, UpperProvenance.TRIVIAL
    else:
        up, prov = PROVEN_OPTIMA[n - 1], UpperProvenance.PREVIOUS_OPTIMUM
    return BoundsH(n, lower, up, wit, prov, notes)

