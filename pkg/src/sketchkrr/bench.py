"""Experiment harness: data generation, error-vs-n sweeps, CSV persistence.

A sweep is a pure function of its :class:`ExperimentConfig`: every trial
derives its seed injectively from (base_seed, n, sketch kind, trial index)
via splitmix64 mixing, so reruns are byte-identical and arms never share
randomness.  Each trial generates a dataset y_i = f*(x_i) + sigma * w_i,
builds the kernel matrix, computes the critical radius and statistical
dimension from its spectrum, sets the projection dimension m and the
regularization (default 2 * delta_n^2) by rule, solves, and records the
squared empirical prediction error against the stored f* values, together
with the rescaled error (error times the kernel's known rate factor:
n^(2/3) for sobolev1, n/sqrt(ln n) for the gaussian kernel, n for the
finite-rank polynomial kernel).

Failed trials record a marker row (NaN error) instead of aborting, so a
sweep always emits exactly |n_grid| * |kinds| * trials rows.  Wall-clock
timing is off by default because measured times would break the
byte-identical reproducibility of the output; pass ``timing=True`` (or
``--timing`` on the CLI) to record real milliseconds.
"""

from __future__ import annotations

import math
import time
from collections import OrderedDict
from dataclasses import dataclass, fields

import numpy as np

from ._util import ceil_int
from .complexity import ComplexityProfile, complexity_profile
from .errors import DomainError
from .kernels import DesignPoints, KernelMatrix, KernelSpec, build_kernel_matrix
from .sketch import draw_sketch
from .solver import (
    RegressionSample,
    empirical_error,
    solve_krr,
    solve_sketched_krr,
)

__all__ = [
    "ARM_KINDS",
    "FSTAR_CHOICES",
    "DESIGN_CHOICES",
    "M_RULES",
    "LAMBDA_RULES",
    "CSV_HEADER",
    "ExperimentConfig",
    "TrialRecord",
    "ArmSummary",
    "NystromFailureResult",
    "fstar_values",
    "rate_factor",
    "generate_data",
    "derive_seed",
    "run_error_vs_n",
    "run_nystrom_failure_demo",
    "summarize_records",
    "flatness_ratio",
    "emit_plot_script",
    "write_csv",
    "read_csv",
    "parse_config",
    "load_config",
]

ARM_KINDS = ("exact", "gaussian", "ros", "subsample")
FSTAR_CHOICES = ("abs_shift", "quad")
DESIGN_CHOICES = ("uniform_grid", "irregular", "iid_uniform")
M_RULES = ("cuberoot", "loggauss", "logfour", "fixed", "statdim")
LAMBDA_RULES = ("two_delta_sq", "fixed")

CSV_HEADER = "n,m,sketch,trial,seed,lambda,delta_n_sq,d_n,error,rescaled_error,wall_time_ms"

_MASK64 = (1 << 64) - 1
_KIND_CODE = {kind: i for i, kind in enumerate(ARM_KINDS)}


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a sweep depends on; see the module docstring for semantics."""

    kernel: KernelSpec
    fstar: str = "abs_shift"
    design: str = "uniform_grid"
    sigma: float = 1.0
    n_grid: tuple[int, ...] = (32, 64, 128, 256, 512, 1024)
    sketch_kinds: tuple[str, ...] = ("exact", "gaussian", "ros")
    m_rule: str = "cuberoot"
    m_fixed: int | None = None
    c_statdim: float | None = None
    lambda_rule: str = "two_delta_sq"
    lambda_fixed: float | None = None
    trials: int = 100
    base_seed: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.kernel, KernelSpec):
            raise DomainError("kernel must be a KernelSpec")
        if self.fstar not in FSTAR_CHOICES:
            raise DomainError(f"unknown fstar {self.fstar!r}")
        if self.design not in DESIGN_CHOICES:
            raise DomainError(f"unknown design {self.design!r}")
        if not self.sigma >= 0.0:
            raise DomainError(f"sigma must be >= 0, got {self.sigma}")
        n_grid = tuple(int(n) for n in self.n_grid)
        if len(n_grid) == 0 or any(n < 2 for n in n_grid):
            raise DomainError("n_grid entries must all be >= 2")
        object.__setattr__(self, "n_grid", n_grid)
        kinds = tuple(self.sketch_kinds)
        if len(kinds) == 0 or len(set(kinds)) != len(kinds):
            raise DomainError("sketch_kinds must be nonempty and without duplicates")
        for kind in kinds:
            if kind not in ARM_KINDS:
                raise DomainError(f"unknown sketch kind {kind!r}")
        object.__setattr__(self, "sketch_kinds", kinds)
        if self.m_rule not in M_RULES:
            raise DomainError(f"unknown m_rule {self.m_rule!r}")
        if self.m_rule == "fixed" and (self.m_fixed is None or self.m_fixed < 1):
            raise DomainError("m_rule 'fixed' needs m_fixed >= 1")
        if self.m_rule == "statdim" and (self.c_statdim is None or not self.c_statdim > 0):
            raise DomainError("m_rule 'statdim' needs c_statdim > 0")
        if self.lambda_rule not in LAMBDA_RULES:
            raise DomainError(f"unknown lambda_rule {self.lambda_rule!r}")
        if self.lambda_rule == "fixed" and (
            self.lambda_fixed is None or not self.lambda_fixed > 0
        ):
            raise DomainError("lambda_rule 'fixed' needs lambda_fixed > 0")
        if self.trials < 1:
            raise DomainError("trials must be >= 1")


@dataclass(frozen=True)
class TrialRecord:
    """One CSV row.  A failed trial has error = NaN (marker row)."""

    n: int
    m: int
    sketch: str
    trial: int
    seed: int
    lambda_n: float
    delta_n_sq: float
    d_n: int
    error: float
    rescaled_error: float
    wall_time_ms: float


def fstar_values(name: str, x) -> np.ndarray:
    """Evaluate a built-in target function on an array of covariates."""
    xv = np.asarray(x, dtype=np.float64)
    if name == "abs_shift":
        return np.abs(xv + 0.5) - 0.5
    if name == "quad":
        return -1.0 + 2.0 * xv**2
    raise DomainError(f"unknown fstar {name!r}")


def rate_factor(spec: KernelSpec, n: int) -> float:
    """Known decay rate of the prediction error, used to flatten curves."""
    if spec.kind == "sobolev1":
        return float(n) ** (2.0 / 3.0)
    if spec.kind == "gaussian":
        return n / math.sqrt(math.log(n))
    return float(n)


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(base_seed: int, n: int, kind: str, trial: int) -> int:
    """Injectively mix (base_seed, n, kind, trial) into a 64-bit trial seed."""
    z = base_seed & _MASK64
    for part in (n, _KIND_CODE[kind], trial):
        z = _splitmix64(z ^ _splitmix64(part & _MASK64))
    return z


def _trial_streams(seed: int) -> tuple[int, int]:
    # separate data and sketch streams so the arms differ only in the sketch
    return _splitmix64(seed ^ 1), _splitmix64(seed ^ 2)


def generate_data(config: ExperimentConfig, n: int, seed: int) -> RegressionSample:
    """Draw one dataset: design points per the config, then Gaussian noise.

    Designs: ``uniform_grid`` x_i = i/n; ``iid_uniform`` x_i ~ Unif[0, 1];
    ``irregular`` the clustered design with k = ceil(sqrt(n)) points moved
    to 1 + N(0, 1/n) and the remaining n - k drawn from Unif[0, 1/2].
    """
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    rng = np.random.default_rng(seed & _MASK64)
    if config.design == "uniform_grid":
        x = np.arange(1, n + 1, dtype=np.float64) / n
    elif config.design == "iid_uniform":
        x = rng.uniform(0.0, 1.0, size=n)
    else:
        k = ceil_int(math.sqrt(n))
        x = np.empty(n)
        x[: n - k] = rng.uniform(0.0, 0.5, size=n - k)
        x[n - k :] = 1.0 + rng.normal(0.0, 1.0 / math.sqrt(n), size=k)
    fstar = fstar_values(config.fstar, x)
    if config.sigma == 0.0:
        y = fstar.copy()
    else:
        y = fstar + config.sigma * rng.standard_normal(n)
    return RegressionSample(DesignPoints(x), y, fstar=fstar, sigma=config.sigma)


def _sketch_dim(config: ExperimentConfig, n: int, d_n: int) -> int:
    if config.m_rule == "cuberoot":
        m = ceil_int(n ** (1.0 / 3.0))
    elif config.m_rule == "loggauss":
        m = ceil_int(1.25 * math.sqrt(math.log(n)))
    elif config.m_rule == "logfour":
        m = ceil_int(4.0 * math.sqrt(math.log(n)))
    elif config.m_rule == "fixed":
        m = int(config.m_fixed)
    else:  # statdim
        m = ceil_int(config.c_statdim * max(d_n, 1))
    return max(1, min(m, n))


def _regularization(config: ExperimentConfig, profile: ComplexityProfile | None) -> float:
    if config.lambda_rule == "two_delta_sq":
        if profile is None:
            raise DomainError("lambda rule 'two_delta_sq' needs sigma > 0")
        return 2.0 * profile.delta_n_sq
    return float(config.lambda_fixed)


class _KernelMatrixCache:
    """Bounded cache of kernel matrices keyed by (spec, design bytes).

    Deterministic designs repeat the same points across trials; reusing the
    matrix also reuses its cached eigendecomposition.
    """

    def __init__(self, maxsize: int = 8):
        self.maxsize = maxsize
        self._store: OrderedDict = OrderedDict()

    def get(self, spec: KernelSpec, pts: DesignPoints) -> KernelMatrix:
        key = (spec, pts.x.tobytes())
        if key in self._store:
            self._store.move_to_end(key)
            return self._store[key]
        K = build_kernel_matrix(spec, pts)
        self._store[key] = K
        if len(self._store) > self.maxsize:
            self._store.popitem(last=False)
        return K


def run_error_vs_n(config: ExperimentConfig, timing: bool = False) -> list[TrialRecord]:
    """Run the full sweep; one record per (n, kind, trial), sorted in that order."""
    cache = _KernelMatrixCache()
    records: list[TrialRecord] = []
    for n in config.n_grid:
        for kind in config.sketch_kinds:
            for trial in range(config.trials):
                seed = derive_seed(config.base_seed, n, kind, trial)
                start = time.perf_counter() if timing else 0.0
                try:
                    records.append(
                        _run_trial(config, cache, n, kind, trial, seed)
                    )
                except Exception:
                    records.append(
                        TrialRecord(
                            n=n, m=0, sketch=kind, trial=trial, seed=seed,
                            lambda_n=math.nan, delta_n_sq=math.nan, d_n=0,
                            error=math.nan, rescaled_error=math.nan,
                            wall_time_ms=0.0,
                        )
                    )
                if timing:
                    elapsed = (time.perf_counter() - start) * 1e3
                    records[-1] = _with_wall_time(records[-1], elapsed)
    order = {kind: i for i, kind in enumerate(config.sketch_kinds)}
    records.sort(key=lambda r: (r.n, order[r.sketch], r.trial))
    return records


def _run_trial(
    config: ExperimentConfig, cache: _KernelMatrixCache,
    n: int, kind: str, trial: int, seed: int,
) -> TrialRecord:
    data_seed, sketch_seed = _trial_streams(seed)
    sample = generate_data(config, n, data_seed)
    K = cache.get(config.kernel, sample.pts)
    # sigma = 0 leaves the critical radius undefined; the fit still works
    # with a fixed regularization, so the profile columns become NaN/0
    profile = complexity_profile(K.eigenvalues, n, config.sigma) if config.sigma > 0 else None
    lam = _regularization(config, profile)
    if kind == "exact":
        m = n
        fit = solve_krr(K, sample.y, lam)
    else:
        if config.m_rule == "statdim" and profile is None:
            raise DomainError("m rule 'statdim' needs sigma > 0")
        m = _sketch_dim(config, n, profile.d_n if profile else 0)
        S = draw_sketch(kind, m, n, sketch_seed)
        fit = solve_sketched_krr(K, sample.y, S, lam)
    err = empirical_error(fit.fitted, sample.fstar)
    return TrialRecord(
        n=n, m=m, sketch=kind, trial=trial, seed=seed,
        lambda_n=lam,
        delta_n_sq=profile.delta_n_sq if profile else math.nan,
        d_n=profile.d_n if profile else 0,
        error=err, rescaled_error=err * rate_factor(config.kernel, n),
        wall_time_ms=0.0,
    )


def _with_wall_time(rec: TrialRecord, ms: float) -> TrialRecord:
    values = {f.name: getattr(rec, f.name) for f in fields(TrialRecord)}
    values["wall_time_ms"] = ms
    return TrialRecord(**values)


@dataclass(frozen=True)
class NystromFailureResult:
    """Outcome of the block-diagonal comparison of sub-sampling vs Gaussian."""

    n: int
    m: int
    k: int
    seed: int
    missed_second_block: bool
    subsample_error: float
    gaussian_error: float
    subsample_block2_sensitivity: float
    gaussian_block2_sensitivity: float


def run_nystrom_failure_demo(n: int, m: int, k: int, seed: int) -> NystromFailureResult:
    """Sub-sampling versus Gaussian sketching on a block-diagonal kernel.

    The kernel matrix is an exact direct sum diag(K1, K2) (first-order
    Sobolev within each block), with the second block holding the last k
    coordinates.  A sub-sampling sketch that draws no row from the second
    block yields an objective that ignores the last k observations: its
    fitted values there are identically zero and insensitive to those
    responses.  Sensitivities are measured by bumping the block-2 responses
    by one and refitting with the same sketches.
    """
    if not (1 <= m <= n):
        raise DomainError(f"need 1 <= m <= n, got m={m}, n={n}")
    if not (1 <= k <= n - 1):
        raise DomainError(f"need 1 <= k <= n - 1, got k={k}")
    if k > ceil_int((n / m) * math.log(2.0)):
        raise DomainError(
            f"k={k} exceeds ceil((n/m) ln 2)={ceil_int((n / m) * math.log(2.0))}; "
            "the miss probability argument needs a small second block"
        )
    n1 = n - k
    x1 = np.arange(1, n1 + 1, dtype=np.float64) / n1
    x2 = np.arange(1, k + 1, dtype=np.float64) / k
    Kmat = np.zeros((n, n))
    Kmat[:n1, :n1] = np.minimum.outer(x1, x1) / n
    Kmat[n1:, n1:] = np.minimum.outer(x2, x2) / n
    K = KernelMatrix(Kmat)

    rng = np.random.default_rng(seed & _MASK64)
    z_star = np.concatenate([x1, np.ones(k)])
    y = z_star + 0.5 * rng.standard_normal(n)

    profile = complexity_profile(K.eigenvalues, n, 0.5)
    lam = 2.0 * profile.delta_n_sq
    sub_seed, gauss_seed = _trial_streams(seed)
    S_sub = draw_sketch("subsample", m, n, sub_seed)
    S_gauss = draw_sketch("gaussian", m, n, gauss_seed)
    missed = bool((S_sub.indices < n1).all())

    fit_sub = solve_sketched_krr(K, y, S_sub, lam)
    fit_gauss = solve_sketched_krr(K, y, S_gauss, lam)
    bump = np.zeros(n)
    bump[n1:] = 1.0
    refit_sub = solve_sketched_krr(K, y + bump, S_sub, lam)
    refit_gauss = solve_sketched_krr(K, y + bump, S_gauss, lam)

    def block2_shift(a, b):
        return float(np.abs(a.fitted[n1:] - b.fitted[n1:]).max())

    return NystromFailureResult(
        n=n, m=m, k=k, seed=seed,
        missed_second_block=missed,
        subsample_error=empirical_error(fit_sub.fitted, z_star),
        gaussian_error=empirical_error(fit_gauss.fitted, z_star),
        subsample_block2_sensitivity=block2_shift(refit_sub, fit_sub),
        gaussian_block2_sensitivity=block2_shift(refit_gauss, fit_gauss),
    )


# --- aggregation -------------------------------------------------------------

@dataclass(frozen=True)
class ArmSummary:
    """Per-(n, sketch) aggregate over trials: mean and standard error."""

    n: int
    sketch: str
    trials: int
    mean_error: float
    stderr_error: float
    mean_rescaled: float
    stderr_rescaled: float


def summarize_records(records) -> list[ArmSummary]:
    """Mean and standard error per (n, sketch kind), skipping marker rows."""
    groups: dict[tuple[int, str], list[TrialRecord]] = {}
    for r in records:
        if math.isnan(r.error):
            continue
        groups.setdefault((r.n, r.sketch), []).append(r)
    out = []
    for (n, kind), rows in sorted(groups.items()):
        err = np.array([r.error for r in rows])
        resc = np.array([r.rescaled_error for r in rows])
        t = len(rows)
        se_err = float(err.std(ddof=1)) / math.sqrt(t) if t > 1 else 0.0
        se_resc = float(resc.std(ddof=1)) / math.sqrt(t) if t > 1 else 0.0
        out.append(
            ArmSummary(
                n=n, sketch=kind, trials=t,
                mean_error=float(err.mean()), stderr_error=se_err,
                mean_rescaled=float(resc.mean()), stderr_rescaled=se_resc,
            )
        )
    return out


def flatness_ratio(records, kind: str) -> float:
    """Max/min of the trial-mean rescaled error over the upper half of the
    n values present for one arm; near 1 means the rescaling flattened the
    curve (the decay rate is as predicted)."""
    summaries = [s for s in summarize_records(records) if s.sketch == kind]
    if not summaries:
        raise DomainError(f"no records for sketch kind {kind!r}")
    upper = summaries[(len(summaries) - 1) // 2 :]
    vals = [s.mean_rescaled for s in upper]
    return max(vals) / min(vals)


def emit_plot_script(csv_path, out_png="errors.png") -> str:
    """Return a standalone matplotlib script plotting mean error vs n.

    Keeps graphics dependencies out of the package: the returned text is
    meant to be written to a file and run separately.
    """
    return f'''"""Plot mean prediction error per arm from a results CSV."""
import csv
from collections import defaultdict
from math import isnan, sqrt

import matplotlib.pyplot as plt

groups = defaultdict(list)
with open({str(csv_path)!r}) as fh:
    for row in csv.DictReader(fh):
        err = float(row["error"])
        if not isnan(err):
            groups[(row["sketch"], int(row["n"]))].append(err)

arms = sorted({{kind for kind, _ in groups}})
fig, ax = plt.subplots(figsize=(6, 4))
for kind in arms:
    ns = sorted(n for k, n in groups if k == kind)
    means = [sum(groups[(kind, n)]) / len(groups[(kind, n)]) for n in ns]
    errs = []
    for n in ns:
        vals = groups[(kind, n)]
        mu = sum(vals) / len(vals)
        var = sum((v - mu) ** 2 for v in vals) / max(len(vals) - 1, 1)
        errs.append(sqrt(var / len(vals)))
    ax.errorbar(ns, means, yerr=errs, marker="o", capsize=3, label=kind)
ax.set_xscale("log", base=2)
ax.set_yscale("log")
ax.set_xlabel("sample size n")
ax.set_ylabel("mean squared prediction error")
ax.legend()
fig.tight_layout()
fig.savefig({out_png!r}, dpi=150)
print("wrote", {out_png!r})
'''


# --- CSV persistence --------------------------------------------------------

def _fmt_float(v: float) -> str:
    # 17 significant digits: lossless float64 round trip
    return f"{v:.17g}"


def write_csv(records, path) -> None:
    """Write records under the fixed header; floats keep 17 significant digits."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                (
                    str(r.n), str(r.m), r.sketch, str(r.trial), str(r.seed),
                    _fmt_float(r.lambda_n), _fmt_float(r.delta_n_sq), str(r.d_n),
                    _fmt_float(r.error), _fmt_float(r.rescaled_error),
                    _fmt_float(r.wall_time_ms),
                )
            )
        )
    try:
        with open(path, "w", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write results to {path!r}: {exc}") from exc


def read_csv(path) -> list[TrialRecord]:
    """Read records back; raises with the offending 1-based line number."""
    try:
        with open(path, "r", newline="") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise OSError(f"cannot read results from {path!r}: {exc}") from exc
    if not lines or lines[0] != CSV_HEADER:
        raise DomainError(f"{path}: line 1: expected header {CSV_HEADER!r}")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 11:
            raise DomainError(f"{path}: line {lineno}: expected 11 fields, got {len(parts)}")
        try:
            records.append(
                TrialRecord(
                    n=int(parts[0]), m=int(parts[1]), sketch=parts[2],
                    trial=int(parts[3]), seed=int(parts[4]),
                    lambda_n=float(parts[5]), delta_n_sq=float(parts[6]),
                    d_n=int(parts[7]), error=float(parts[8]),
                    rescaled_error=float(parts[9]), wall_time_ms=float(parts[10]),
                )
            )
        except ValueError as exc:
            raise DomainError(f"{path}: line {lineno}: {exc}") from exc
    return records


# --- config files ------------------------------------------------------------

_CONFIG_KEYS = (
    "kernel", "degree", "bandwidth", "fstar", "design", "sigma", "n_grid",
    "sketches", "m_rule", "m_fixed", "c_statdim", "lambda_rule",
    "lambda_fixed", "trials", "seed",
)


def parse_config(text: str, source: str = "<config>") -> ExperimentConfig:
    """Parse the flat key/value config format.

    One ``key = value`` per line; ``#`` starts a comment; list values are
    comma-separated; hyphens and underscores are interchangeable in values.
    Keys: kernel, degree, bandwidth, fstar, design, sigma, n_grid, sketches,
    m_rule, m_fixed, c_statdim, lambda_rule, lambda_fixed, trials, seed.
    """
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise DomainError(f"{source}: line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise DomainError(f"{source}: line {lineno}: unknown key {key!r}")
        if key in raw:
            raise DomainError(f"{source}: line {lineno}: duplicate key {key!r}")
        if not value:
            raise DomainError(f"{source}: line {lineno}: empty value for {key!r}")
        raw[key] = value

    def norm(v: str) -> str:
        return v.replace("-", "_").lower()

    if "kernel" not in raw:
        raise DomainError(f"{source}: missing required key 'kernel'")
    kind = norm(raw["kernel"])
    if kind == "polynomial":
        if "degree" not in raw:
            raise DomainError(f"{source}: polynomial kernel needs 'degree'")
        kernel = KernelSpec.polynomial(int(raw["degree"]))
    elif kind == "gaussian":
        if "bandwidth" not in raw:
            raise DomainError(f"{source}: gaussian kernel needs 'bandwidth'")
        kernel = KernelSpec.gaussian(float(raw["bandwidth"]))
    elif kind == "sobolev1":
        kernel = KernelSpec.sobolev1()
    else:
        raise DomainError(f"{source}: unknown kernel {raw['kernel']!r}")

    kwargs: dict = {"kernel": kernel}
    if "fstar" in raw:
        kwargs["fstar"] = norm(raw["fstar"])
    if "design" in raw:
        kwargs["design"] = norm(raw["design"])
    if "sigma" in raw:
        kwargs["sigma"] = float(raw["sigma"])
    if "n_grid" in raw:
        kwargs["n_grid"] = tuple(int(v.strip()) for v in raw["n_grid"].split(","))
    if "sketches" in raw:
        kwargs["sketch_kinds"] = tuple(norm(v.strip()) for v in raw["sketches"].split(","))
    if "m_rule" in raw:
        kwargs["m_rule"] = norm(raw["m_rule"])
    if "m_fixed" in raw:
        kwargs["m_fixed"] = int(raw["m_fixed"])
    if "c_statdim" in raw:
        kwargs["c_statdim"] = float(raw["c_statdim"])
    if "lambda_rule" in raw:
        kwargs["lambda_rule"] = norm(raw["lambda_rule"])
    if "lambda_fixed" in raw:
        kwargs["lambda_fixed"] = float(raw["lambda_fixed"])
    if "trials" in raw:
        kwargs["trials"] = int(raw["trials"])
    if "seed" in raw:
        kwargs["base_seed"] = int(raw["seed"])
    return ExperimentConfig(**kwargs)


def load_config(path) -> ExperimentConfig:
    try:
        with open(path, "r") as fh:
            text = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read config from {path!r}: {exc}") from exc
    return parse_config(text, source=str(path))
