"""Monte-Carlo BER/FER harness with paired, worker-count-invariant noise.

Frames are simulated in fixed-size chunks. Chunk c at SNR index i draws from
SeedSequence([seed, i, c]), so every decoder run with the same seed sees the
same codewords and noise, and a run stops at the same chunk whatever the
number of workers.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from code_factory import CodeSpec, encode_batch
from utils.config import default_chunk_frames, default_workers

from .channel import make_rng, transmit


@dataclass
class SnrPoint:
    """Counts for one SNR cell of a report."""

    snr_db: float
    frames: int = 0
    frame_errors: int = 0
    bit_errors: int = 0
    decode_seconds: float = 0.0
    n: int = 1

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.frames * self.n) if self.frames else 0.0

    @property
    def cond_fraction(self) -> float | None:
        """Fraction of wrong bits inside the wrongly decoded frames (ber / fer)."""
        if self.frame_errors == 0:
            return None
        return self.ber / self.fer

    @property
    def mean_decode_us(self) -> float:
        return 1e6 * self.decode_seconds / self.frames if self.frames else 0.0

    def add(self, tally: "ChunkTally"):
        self.frames += tally.frames
        self.frame_errors += tally.frame_errors
        self.bit_errors += tally.bit_errors
        self.decode_seconds += tally.seconds


@dataclass
class SimReport:
    decoder: str
    seed: int
    code: str
    n: int
    points: list[SnrPoint] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """Counts and the derived rates of every point; from_dict ignores the rates."""
        return {
            "decoder": self.decoder,
            "seed": self.seed,
            "code": self.code,
            "n": self.n,
            "config": self.config,
            "points": [
                {
                    **asdict(p),
                    "fer": p.fer,
                    "ber": p.ber,
                    "cond_fraction": p.cond_fraction,
                    "mean_decode_us": p.mean_decode_us,
                }
                for p in self.points
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SimReport":
        names = {f.name for f in fields(SnrPoint)}
        points = [SnrPoint(**{k: v for k, v in p.items() if k in names}) for p in data["points"]]
        return cls(
            decoder=data["decoder"],
            seed=int(data["seed"]),
            code=data["code"],
            n=int(data["n"]),
            points=points,
            config=data.get("config", {}),
        )


@dataclass
class ChunkTally:
    frames: int
    frame_errors: int
    bit_errors: int
    seconds: float


def draw_codewords(spec: CodeSpec, frames: int, rng: np.random.Generator) -> np.ndarray:
    """Encode uniformly random messages."""
    messages = rng.integers(0, 2, size=(frames, spec.k), dtype=np.uint8)
    return encode_batch(spec, messages)


def chunk_seed(seed: int, snr_index: int, chunk: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, snr_index, chunk])


def run_chunk(args) -> ChunkTally:
    """Simulate one chunk; module level so worker processes can unpickle it."""
    decoder, spec, snr_db, seed, snr_index, chunk, frames = args
    rng = make_rng(chunk_seed(seed, snr_index, chunk))
    bits = draw_codewords(spec, frames, rng)
    sample = transmit(spec, bits, snr_db, rng)

    start = time.perf_counter()
    result = decoder.decode_batch(sample.llr)
    seconds = time.perf_counter() - start

    wrong = np.sum(np.atleast_2d(result.hard_bits) != bits, axis=1)
    return ChunkTally(frames, int(np.count_nonzero(wrong)), int(wrong.sum()), seconds)


def _chunk_plan(max_frames: int, chunk_frames: int) -> list[int]:
    full, rest = divmod(max_frames, chunk_frames)
    return [chunk_frames] * full + ([rest] if rest else [])


def _simulate_point(
    decoder, spec, snr_db, snr_index, seed, min_frame_errors, plan, pool, workers
) -> SnrPoint:
    point = SnrPoint(snr_db=float(snr_db), n=spec.n)
    next_chunk = 0
    while next_chunk < len(plan):
        wave = range(next_chunk, min(next_chunk + workers, len(plan)))
        jobs = [(decoder, spec, snr_db, seed, snr_index, c, plan[c]) for c in wave]
        tallies = list(pool.map(run_chunk, jobs)) if pool else [run_chunk(j) for j in jobs]
        # merge in chunk order and stop at the first chunk that meets the target
        for tally in tallies:
            point.add(tally)
            if point.frame_errors >= min_frame_errors:
                return point
        next_chunk = wave.stop
    return point


def monte_carlo(
    decoder,
    spec: CodeSpec,
    snrs,
    min_frame_errors: int = 100,
    max_frames: int = 10**6,
    seed: int = 0,
    workers: int | None = None,
    chunk_frames: int | None = None,
    verbose: bool = False,
) -> SimReport:
    """
    Estimate BER, FER and the conditional error fraction of a decoder.

    Args:
        decoder: Handle with decode_batch(llr) and name
        spec: Code the decoder works on; sets n and the rate used for the noise
        snrs: SNR points in dB
        min_frame_errors: Stop a point after this many frame errors
        max_frames: Hard cap on frames per point
        seed: Root seed; equal seeds give paired noise across decoders
        workers: Process count (default from NBP_WORKERS or the CPU count)
        chunk_frames: Frames per chunk (default from NBP_CHUNK_FRAMES)
        verbose: Print a line per finished point

    Returns:
        SimReport with one SnrPoint per SNR, in input order
    """
    if min_frame_errors < 1 or max_frames < 1:
        raise ValueError("Stop parameters must be positive")
    workers = workers or default_workers()
    chunk_frames = chunk_frames or default_chunk_frames()
    plan = _chunk_plan(max_frames, chunk_frames)

    report = SimReport(
        decoder=decoder.name,
        seed=seed,
        code=spec.label,
        n=spec.n,
        config={
            "min_frame_errors": min_frame_errors,
            "max_frames": max_frames,
            "chunk_frames": chunk_frames,
            "bit_errors_over": "all transmitted coordinates",
        },
    )

    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for i, snr_db in enumerate(snrs):
            point = _simulate_point(
                decoder, spec, snr_db, i, seed, min_frame_errors, plan, pool, workers
            )
            report.points.append(point)
            if verbose:
                print(
                    f"✓ {decoder.name} @ {point.snr_db:g} dB: frames={point.frames} "
                    f"fer={point.fer:.3e} ber={point.ber:.3e}"
                )
    finally:
        if pool is not None:
            pool.shutdown()

    return report
