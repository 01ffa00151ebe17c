"""Verifier semantics on top of the projector pipelines: sequential
projective measurements, accepting/rejecting witness subspaces, exact
acceptance probabilities, and seeded Monte Carlo sampling.

Everything probabilistic is exact-rational first; floats only appear
when Monte Carlo converts a conditional probability into a sampling
threshold.  Because the composed pipeline operator is an exact
projector, acceptance probability is exactly 1 on accepting witnesses
and exactly 0 on rejecting ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BoundExceededError, ConsistencyError, InputError
from .partitions import Partition, enumerate_partitions
from .projectors import (
    BatchEvaluator,
    InvariantAverage,
    Isotypic,
    Pipeline,
    StateVector,
    _basis_batch,
    _exact_int_array,
    apply_invariant_average,
    apply_isotypic,
    apply_pipeline,
    perm_index,
)

WITNESS_SPACE_DIM_LIMIT = 4096
_SEED_STRIDE = 1_000_003  # per-shot seed = seed * stride + shot index


@dataclass
class WitnessSpaces:
    """Exact bases of the accepting subspace (image of the composed
    projector) and the rejecting subspace (its kernel)."""

    pipeline: Pipeline
    accepting_basis: list[StateVector]
    rejecting_basis: list[StateVector]

    @property
    def dim_accept(self) -> int:
        return len(self.accepting_basis)

    @property
    def dim_reject(self) -> int:
        return len(self.rejecting_basis)

    @property
    def total_dim(self) -> int:
        return self.pipeline.dim


@dataclass
class StageRecord:
    kind: str  # 'fourier' or 'invariant'
    outcome: str  # partition like '2,1' for fourier; 'accept'/'reject' otherwise
    prob: Fraction  # conditional probability of this outcome

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "outcome": self.outcome,
            "prob_num": self.prob.numerator,
            "prob_den": self.prob.denominator,
        }


@dataclass
class VerifierOutcome:
    stages: list[StageRecord]
    verdict: str  # 'accept' or 'reject'
    probability: Fraction  # absolute probability of this trajectory
    p_accept: Fraction  # acceptance probability of the witness

    def to_json(self) -> dict:
        return {
            "stages": [s.to_json() for s in self.stages],
            "verdict": self.verdict,
            "p_accept": {"num": self.p_accept.numerator, "den": self.p_accept.denominator},
        }


@dataclass
class MonteCarloRun:
    shots: int
    accepts: int
    seed: int
    p_accept_exact: Fraction

    @property
    def frequency(self) -> float:
        return self.accepts / self.shots


def _part_str(lam: Partition) -> str:
    return ",".join(map(str, lam))


def weak_fourier_sample(
    state: StateVector, factor: int
) -> list[tuple[Partition, Fraction, StateVector]]:
    """Measurement statistics of the isotypic PVM on one factor:
    (shape, probability, post-measurement state) for every outcome.
    Probabilities are exact and sum to 1."""
    if state.is_zero():
        raise InputError("cannot measure the zero state")
    norm = state.norm_sq()
    out = []
    total = Fraction(0)
    for lam in enumerate_partitions(state.n):
        post = apply_isotypic(state, factor, lam)
        prob = post.norm_sq() / norm
        total += prob
        out.append((lam, prob, post))
    if total != 1:
        raise ConsistencyError(f"isotypic outcome probabilities sum to {total}")
    return out


def gpe_accept_probability(
    state: StateVector, stage: InvariantAverage
) -> tuple[Fraction, StateVector, StateVector]:
    """Binary invariant-average measurement: returns (accept probability,
    accept post-state, reject post-state), all exact and unnormalized."""
    if state.is_zero():
        raise InputError("cannot measure the zero state")
    post = apply_invariant_average(state, stage)
    p = post.norm_sq() / state.norm_sq()
    return p, post, state.minus(post)


def acceptance_probability(p: Pipeline, witness: StateVector) -> Fraction:
    """Single-shot form: apply the composed operator once and take
    <psi|E psi>/<psi|psi>.  Deferring all intermediate measurements to
    the end gives the same acceptance probability as the sequential
    protocol; the test suite asserts the two agree."""
    if witness.is_zero():
        raise InputError("witness must be nonzero")
    out = apply_pipeline(p, witness)
    return witness.inner(out) / witness.norm_sq()


def run_verifier(
    p: Pipeline,
    witness: StateVector,
    mode: str = "exact",
    *,
    seed: int = 0,
    shots: int = 1000,
):
    """Simulate the verifier on a witness.

    mode='exact': full branch distribution as a list of VerifierOutcome
    (one accepting trajectory plus every rejecting branch with positive
    probability); branch probabilities sum to exactly 1.

    mode='single_shot': acceptance probability only (see
    acceptance_probability).

    mode='monte_carlo': sample `shots` trajectories with per-shot seeds
    derived from (seed, shot index); returns a MonteCarloRun.
    """
    if witness.is_zero():
        raise InputError("witness must be nonzero")
    if mode == "single_shot":
        return acceptance_probability(p, witness)
    branches, p_accept = _branch_distribution(p, witness)
    if mode == "exact":
        return branches
    if mode == "monte_carlo":
        return _monte_carlo(p, branches, p_accept, seed, shots)
    raise InputError(f"unknown mode {mode!r}")


def _branch_distribution(
    p: Pipeline, witness: StateVector
) -> tuple[list[VerifierOutcome], Fraction]:
    """Sequential measurement semantics.  The trajectory tree is a spine:
    each stage either continues (its target outcome) or terminates in a
    reject branch.  Zero-probability branches are omitted."""
    branches: list[VerifierOutcome] = []
    spine: list[StageRecord] = []
    state = witness
    prefix = Fraction(1)
    for stage in p.stages:
        if prefix == 0:
            break
        if isinstance(stage, Isotypic):
            kind = "fourier"
            target_post = None
            target_prob = Fraction(0)
            for lam, prob, post in weak_fourier_sample(state, stage.factor):
                if lam == stage.shape:
                    target_post, target_prob = post, prob
                elif prob:
                    rec = StageRecord(kind, _part_str(lam), prob)
                    branches.append(
                        VerifierOutcome(spine + [rec], "reject", prefix * prob, Fraction(0))
                    )
            spine.append(StageRecord(kind, _part_str(stage.shape), target_prob))
            prefix *= target_prob
            state = target_post
        else:
            kind = "invariant"
            prob, post_accept, _ = gpe_accept_probability(state, stage)
            if prob != 1:
                rec = StageRecord(kind, "reject", 1 - prob)
                branches.append(
                    VerifierOutcome(spine + [rec], "reject", prefix * (1 - prob), Fraction(0))
                )
            spine.append(StageRecord(kind, "accept", prob))
            prefix *= prob
            state = post_accept
    p_accept = prefix
    for b in branches:
        b.p_accept = p_accept
    if p_accept:
        branches.append(VerifierOutcome(spine, "accept", p_accept, p_accept))
    total = sum((b.probability for b in branches), Fraction(0))
    if total != 1:
        raise ConsistencyError(f"branch probabilities sum to {total}")
    return branches, p_accept


def _monte_carlo(
    p: Pipeline,
    branches: list[VerifierOutcome],
    p_accept: Fraction,
    seed: int,
    shots: int,
) -> MonteCarloRun:
    """Sample trajectories shot by shot.  Every shot starts from the same
    witness, so the per-stage conditional distributions are fixed; a shot
    walks the spine, drawing each stage outcome at its exact conditional
    probability (converted to float only for the draw)."""
    # conditional continue-probabilities along the accepting spine
    spine_conds: list[float] = []
    accept_branch = next((b for b in branches if b.verdict == "accept"), None)
    if accept_branch is not None:
        spine_conds = [float(rec.prob) for rec in accept_branch.stages]
    else:
        # reconstruct the spine from the longest reject branch
        longest = max(branches, key=lambda b: len(b.stages))
        spine_conds = [float(rec.prob) for rec in longest.stages[:-1]]
    accepts = 0
    num_stages = len(p.stages)
    for shot in range(shots):
        rng = random.Random(seed * _SEED_STRIDE + shot)
        alive = True
        for idx in range(num_stages):
            cond = spine_conds[idx] if idx < len(spine_conds) else 0.0
            if rng.random() >= cond:
                alive = False
                break
        if alive:
            accepts += 1
    return MonteCarloRun(shots, accepts, seed, p_accept)


def _flat_to_key(space, flat: int, k: int) -> tuple:
    digits = []
    for _ in range(k):
        digits.append(flat % space.nf)
        flat //= space.nf
    return tuple(space.perms[i] for i in reversed(digits))


def witness_spaces(p: Pipeline, *, dim_limit: int = WITNESS_SPACE_DIM_LIMIT) -> WitnessSpaces:
    """Exact bases for the accepting subspace A = im(E) and the rejecting
    subspace R = ker(E) = im(I - E).

    Materializes the composed operator column by column (the batch
    evaluator applied to the identity), then a single partial row
    reduction yields both bases: the nonzero reduced rows span the image
    (the operator is symmetric), the free columns give the kernel.
    Bounded by dim_limit because the reduction is dense."""
    dim = p.dim
    if dim > dim_limit:
        raise BoundExceededError(
            f"witness spaces need a dense {dim} x {dim} reduction; "
            f"limit is {dim_limit} (sample witnesses instead)"
        )
    ev = BatchEvaluator(p)
    den = ev.denominator
    columns = _exact_int_array(ev.apply(_basis_batch(dim, np.arange(dim))))
    # columns[b, t] = E[t, b] * den; E symmetric so this is also E[b, t] * den
    trace = sum(int(columns[i, i]) for i in range(dim))
    if trace % den:
        raise ConsistencyError("trace of composed operator is not integral")
    expected_rank = trace // den

    # partial RREF over exact rationals; only expected_rank pivot rows appear
    rows = [[Fraction(int(v), den) for v in columns[i]] for i in range(dim)]
    pivots: list[int] = []
    r = 0
    for c in range(dim):
        pivot = next((i for i in range(r, dim) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(dim):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == expected_rank:
            # remaining rows must now be zero; verify rather than assume
            if any(any(rows[i][j] for j in range(dim)) for i in range(r, dim)):
                raise ConsistencyError("operator rank exceeds its trace")
            break
    if r != expected_rank:
        raise ConsistencyError(f"rank {r} != trace {expected_rank}")

    space = perm_index(p.n)
    def to_state(vec) -> StateVector:
        amps = {
            _flat_to_key(space, j, p.k): Fraction(x) for j, x in enumerate(vec) if x
        }
        return StateVector(p.n, p.k, amps)

    accepting = [to_state(rows[i]) for i in range(expected_rank)]
    free = [c for c in range(dim) if c not in set(pivots)]
    rejecting = []
    for fc in free:
        vec = [Fraction(0)] * dim
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        rejecting.append(to_state(vec))
    return WitnessSpaces(p, accepting, rejecting)


def sample_witness(ws: WitnessSpaces, which: str, seed: int) -> StateVector:
    """Pseudo-random rational witness: a small-integer combination
    (coefficients in [-9, 9]) of the requested basis.  Deterministic for
    a given seed, never zero."""
    if which == "accept":
        basis = ws.accepting_basis
    elif which == "reject":
        basis = ws.rejecting_basis
    else:
        raise InputError(f"which must be 'accept' or 'reject', got {which!r}")
    if not basis:
        raise InputError(f"the {which}ing subspace is empty")
    rng = random.Random(seed)
    while True:
        coeffs = [rng.randint(-9, 9) for _ in basis]
        if any(coeffs):
            break
    out = StateVector.zero(ws.pipeline.n, ws.pipeline.k)
    for c, vec in zip(coeffs, basis):
        if c:
            out = out.plus(vec.scaled(c))
    if out.is_zero():
        # the random combination landed in a linear relation; basis vectors
        # are independent so this cannot happen, but fail loudly if it does
        raise ConsistencyError("sampled witness collapsed to zero")
    return out


def sample_accepting_witness(p: Pipeline, seed: int, support: int = 3) -> StateVector:
    """Accepting witness for pipelines too large for full witness_spaces:
    E applied to a random sparse integer vector (retrying until the image
    is nonzero).  The result lies in im(E) exactly."""
    space = perm_index(p.n)
    dim = p.dim
    for attempt in range(64):
        rng = random.Random(seed * _SEED_STRIDE + attempt)
        amps = {}
        for _ in range(support):
            flat = rng.randrange(dim)
            amps[_flat_to_key(space, flat, p.k)] = Fraction(rng.choice([x for x in range(-9, 10) if x]))
        probe = StateVector(p.n, p.k, amps)
        out = apply_pipeline(p, probe)
        if not out.is_zero():
            return out
    raise ConsistencyError("no accepting witness found; is the trace zero?")


def sample_rejecting_witness(p: Pipeline, seed: int, support: int = 3) -> StateVector:
    """Rejecting witness: v - E v for a random sparse integer v, which
    lies in ker(E) exactly (E is idempotent)."""
    space = perm_index(p.n)
    dim = p.dim
    for attempt in range(64):
        rng = random.Random(seed * _SEED_STRIDE + attempt)
        amps = {}
        for _ in range(support):
            flat = rng.randrange(dim)
            amps[_flat_to_key(space, flat, p.k)] = Fraction(rng.choice([x for x in range(-9, 10) if x]))
        probe = StateVector(p.n, p.k, amps)
        out = probe.minus(apply_pipeline(p, probe))
        if not out.is_zero():
            return out
    raise ConsistencyError("no rejecting witness found; is the operator the identity?")
