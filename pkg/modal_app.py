"""
Modal app for full-scale training and evaluation of the stacked decoder.

Length-63 codes at P up to 16 take hours on a laptop; these functions run
the same library code in containers and keep weight files and reports on a
Modal volume.
"""

import modal

# Create Modal app
app = modal.App("stacked-nbp")

# Define the container image with all dependencies and source code
image = (
    modal.Image.debian_slim(python_version="3.12")
    .pip_install(
        "numpy>=1.26.0",
        "click>=8.1.0",
        "python-dotenv>=1.0.0",
    )
    .add_local_python_source("gf2m")
    .add_local_python_source("code_factory")
    .add_local_python_source("tanner")
    .add_local_python_source("decoder")
    .add_local_python_source("learn")
    .add_local_python_source("channel_sim")
    .add_local_python_source("utils")
)

# Persistent volume for weight files and reports
volume = modal.Volume.from_name("stacked-nbp", create_if_missing=True)
VOLUME_PATH = "/data"
WEIGHTS_PATH = f"{VOLUME_PATH}/weights"
REPORTS_PATH = f"{VOLUME_PATH}/reports"

# (family, m, delta or order) of the length-63 codes in the full-scale recipe
FULL_SCALE_CODES = [
    ("bch", 6, 5),  # BCH(63,36)
    ("bch", 6, 3),  # BCH(63,45)
    ("prm", 6, 2),  # punctured RM(63,22)
]
FULL_SCALE_P = [1, 4, 16]


def _build_code(family: str, m: int, param: int):
    from code_factory import build_bch, build_punctured_rm, extend

    if family == "bch":
        return extend(build_bch(m, param))
    return extend(build_punctured_rm(m, param))


@app.function(image=image, volumes={VOLUME_PATH: volume}, timeout=24 * 3600, cpu=8)
def train_remote(
    family: str,
    m: int,
    param: int,
    P: int,
    t: int = 5,
    steps: int = 20000,
    batch_size: int = 256,
    learning_rate: float = 1e-3,
    seed: int = 0,
) -> dict:
    """
    Train one (code, P) configuration and store the weight file on the volume.

    Returns:
        Dictionary with the weight file path and the first/final loss
    """
    from learn import TrainConfig, save_weights, train

    spec = _build_code(family, m, param)
    print(f"🚀 Training {spec.label} P={P} t={t} for {steps} steps")

    config = TrainConfig(
        code=spec,
        P=P,
        t=t,
        batch_size=batch_size,
        steps=steps,
        learning_rate=learning_rate,
        seed=seed,
        log_every=500,
    )
    result = train(config)
    path = save_weights(
        f"{WEIGHTS_PATH}/{spec.label}_P{P}_t{t}.json",
        result.weights,
        spec,
        P,
        training=config.summary(),
    )
    volume.commit()

    print(f"✓ Saved {path}")
    return {
        "weights": str(path),
        "first_loss": result.loss_history[0] if result.loss_history else None,
        "final_loss": result.loss_history[-1] if result.loss_history else None,
    }


@app.function(image=image, volumes={VOLUME_PATH: volume}, timeout=24 * 3600, cpu=8)
def evaluate_remote(
    weights_file: str,
    decoder: str = "stacked",
    list_size: int = 1,
    snrs: list[float] | None = None,
    min_frame_errors: int = 100,
    max_frames: int = 10**6,
    seed: int = 0,
    punctured: bool = False,
) -> str:
    """
    Evaluate a stored weight file and write a CSV report next to the weights.

    Returns:
        Path of the report on the volume
    """
    from pathlib import Path

    from channel_sim import emit_report, monte_carlo
    from code_factory import extend, puncture
    from decoder import make_decoder
    from learn import load_weights

    volume.reload()
    wf = load_weights(f"{WEIGHTS_PATH}/{weights_file}")
    handle = make_decoder(
        decoder,
        wf.code,
        weights=wf.bank,
        P=wf.P,
        list_size=list_size,
        punctured=punctured,
    )
    target = puncture(wf.code) if punctured else extend(wf.code)
    report = monte_carlo(
        handle,
        target,
        snrs or [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0],
        min_frame_errors=min_frame_errors,
        max_frames=max_frames,
        seed=seed,
        verbose=True,
    )
    report.config.update(
        {
            "code": target.label,
            "decoder": handle.name,
            "weights": weights_file,
            "P": wf.P,
            "t": wf.bank.t,
            "list_size": list_size,
            "stop_errors": min_frame_errors,
            "max_frames": max_frames,
            "seed": seed,
            "punctured": punctured,
        }
    )

    stem = Path(weights_file).stem
    path = emit_report(report, "csv", f"{REPORTS_PATH}/{stem}_{decoder}_l{list_size}.csv")
    volume.commit()
    print(f"✓ Report written to {path}")
    return str(path)


@app.local_entrypoint()
def main(
    command: str = "recipe",
    steps: int = 20000,
    seed: int = 0,
    punctured: bool = False,
):
    """
    Launch the full-scale recipe.

    Usage:
        modal run modal_app.py --command=recipe
        modal run modal_app.py --command=train --steps=5000
        modal run modal_app.py --command=evaluate --punctured=true
    """
    if command in ("recipe", "train"):
        runs = [
            train_remote.spawn(family, m, param, P, steps=steps, seed=seed)
            for family, m, param in FULL_SCALE_CODES
            for P in FULL_SCALE_P
        ]
        for run in runs:
            print(f"✓ {run.get()}")

    if command in ("recipe", "evaluate"):
        for family, m, param in FULL_SCALE_CODES:
            label = _build_code(family, m, param).label
            jobs = [
                evaluate_remote.spawn(
                    f"{label}_P{P}_t5.json", "stacked", seed=seed, punctured=punctured
                )
                for P in FULL_SCALE_P
            ]
            # Cyc_list baseline with list sizes matching P, on the P=1 weights
            jobs += [
                evaluate_remote.spawn(
                    f"{label}_P1_t5.json", "cyclist", list_size=P, seed=seed, punctured=punctured
                )
                for P in FULL_SCALE_P[1:]
            ]
            for job in jobs:
                print(f"✓ {job.get()}")
    elif command not in ("train",):
        print(f"✗ Error: unknown command '{command}'")
