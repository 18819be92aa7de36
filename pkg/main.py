import re
import sys
from contextlib import contextmanager
from pathlib import Path

import click
from dotenv import load_dotenv

from channel_sim import delta_table, emit_report, monte_carlo, write_delta_table
from code_factory import (
    CodeConstructionError,
    CodeSpec,
    build_bch,
    build_punctured_rm,
    build_stacked,
    check_polynomial,
    extend,
    puncture,
)
from decoder import DECODER_KINDS, DEFAULT_T, DecodingError, make_decoder
from gf2m import FieldError
from learn import (
    LOSS_MODES,
    OPTIMIZERS,
    TrainConfig,
    TrainingDivergedError,
    WeightFileError,
    load_weights,
    save_weights,
    train,
)
from utils.config import default_seed, default_workers, output_dir

# Load environment variables from .env file
load_dotenv()

EXIT_NUMERIC = 3
EXIT_IO = 4


@contextmanager
def exit_codes():
    """Map library failures onto the CLI exit codes."""
    try:
        yield
    except (TrainingDivergedError, DecodingError) as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_NUMERIC)
    except (WeightFileError, OSError) as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_IO)
    except (CodeConstructionError, FieldError, ValueError) as e:
        raise click.UsageError(str(e))


def code_options(f):
    """--family/--m/--delta/--order/--extended, shared by every subcommand."""
    options = [
        click.option("--family", type=click.Choice(["bch", "prm"]), help="Code family"),
        click.option("--m", "m", type=int, help="Field degree (n = 2^m - 1)"),
        click.option("--delta", type=int, help="BCH design parameter"),
        click.option("--order", type=int, help="Reed-Muller order r"),
        click.option("--extended", is_flag=True, help="Use the extended code"),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def resolve_code(family, m, delta, order, extended=False) -> CodeSpec:
    if family is None or m is None:
        raise click.UsageError("--family and --m are required")
    if family == "bch":
        if delta is None:
            raise click.UsageError("--delta is required for --family bch")
        return build_bch(m, delta, extended=extended)
    if order is None:
        raise click.UsageError("--order is required for --family prm")
    return build_punctured_rm(m, order, extended=extended)


def parse_snr_list(text: str) -> list[float]:
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise click.BadParameter(f"'{text}' is not a comma-separated list of numbers")


def parse_snr_range(text: str) -> tuple[float, float]:
    try:
        low, high = (float(s) for s in text.split(":"))
    except ValueError:
        raise click.BadParameter(f"'{text}' is not LO:HI")
    return low, high


def file_stem(name: str) -> str:
    """stacked(P=4) -> stacked_P=4"""
    return re.sub(r"[^\w.=+-]+", "_", name).strip("_")


def echo_config(config: dict):
    click.echo("Config: " + " ".join(f"{k}={v}" for k, v in config.items()))


@click.group()
def cli():
    """Permutation-stacked neural BP decoder for BCH and punctured Reed-Muller codes"""
    pass


@cli.command()
@code_options
@click.option("--P", "P", type=int, default=1, help="Number of stacked permutations")
@click.option("--dump-h", type=click.Path(dir_okay=False), help="Write the stacked H blocks")
def code(family, m, delta, order, extended, P, dump_h):
    """
    Build a code and print its parameters.

    Prints n, k, g(x), h(x) and the column weight u of H_0. With --dump-h the
    P blocks of the stacked matrix are written as rows of 0/1 characters,
    blocks separated by blank lines.
    """
    with exit_codes():
        spec = resolve_code(family, m, delta, order, extended)
        H = build_stacked(extend(spec), P)
        h = check_polynomial(puncture(spec))
        click.echo(f"{spec.label}")
        click.echo(f"n={spec.n} k={spec.k} g={spec.generator} h={h} u={H.u}")

        if dump_h:
            blocks = [
                "\n".join("".join(str(b) for b in row) for row in block) for block in H.blocks
            ]
            Path(dump_h).write_text("\n\n".join(blocks) + "\n", encoding="utf-8")
            click.echo(f"✓ Wrote {P} block(s) of {H.rows_per_block}x{H.n} to {dump_h}")


@cli.command("train")
@code_options
@click.option("--P", "P", type=int, default=1, help="Number of stacked permutations")
@click.option("--t", "t", type=int, default=DEFAULT_T, help="Iteration pairs (2t iterations)")
@click.option("--steps", type=int, default=2000, help="Optimizer steps")
@click.option("--batch", type=int, default=128, help="Frames per step")
@click.option("--lr", type=float, default=1e-3, help="Learning rate")
@click.option("--snr", default="1:6", help="Training SNR range LO:HI in dB")
@click.option("--seed", type=int, default=None, help="Seed (default NBP_SEED or 0)")
@click.option("--out", type=click.Path(dir_okay=False), help="Weight file to write")
@click.option("--loss-mode", type=click.Choice(LOSS_MODES), default="final_only")
@click.option("--optimizer", type=click.Choice(OPTIMIZERS), default="adam")
@click.option("--log-every", type=int, default=100, help="Print the loss every N steps (0: off)")
def train_cmd(
    family, m, delta, order, extended, P, t, steps, batch, lr, snr, seed, out, loss_mode,
    optimizer, log_every,
):
    """Train the tied weights of the stacked decoder and write a weight file."""
    with exit_codes():
        spec = extend(resolve_code(family, m, delta, order, extended))
        seed = default_seed() if seed is None else seed
        out = Path(out) if out else output_dir() / f"weights_{spec.label}_P{P}_t{t}.json"
        config = TrainConfig(
            code=spec,
            P=P,
            t=t,
            batch_size=batch,
            steps=steps,
            learning_rate=lr,
            snr_range_db=parse_snr_range(snr),
            seed=seed,
            loss_mode=loss_mode,
            optimizer=optimizer,
            log_every=log_every,
        )
        echo_config({"code": spec.label, "P": P, "t": t, **config.summary(), "out": out})

        result = train(config)
        save_weights(out, result.weights, spec, P, training=config.summary())
        if result.loss_history:
            click.echo(
                f"Loss: first={result.loss_history[0]:.6f} final={result.loss_history[-1]:.6f}"
            )
        click.echo(f"✓ Wrote weights to {out}")


def build_handle(kind, param, weights_path, spec, t, punctured):
    """Decoder handle, the code it is simulated on, and the resolved P, t and list size."""
    weights, P = None, 1
    if weights_path:
        wf = load_weights(weights_path)
        if spec is not None and extend(spec).code_hash() != wf.code.code_hash():
            raise click.UsageError(f"{weights_path} is for {wf.code.label}, not {spec.label}")
        spec, weights, P = wf.code, wf.bank, wf.P
    if spec is None:
        raise click.UsageError("Give --weights or the code options")

    if kind == "cyclist" and weights is not None and P != 1:
        raise click.UsageError(f"cyclist needs weights trained for P=1, {weights_path} has P={P}")
    if param is not None:
        if kind == "stacked" and weights is not None and param != P:
            raise click.UsageError(f"{weights_path} was trained for P={P}, not P={param}")
        if kind in ("stacked", "classic"):
            P = param

    list_size = param if kind == "cyclist" and param else 1
    if weights is not None:
        t = weights.t
    handle = make_decoder(
        kind, spec, weights=weights, P=P, list_size=list_size, punctured=punctured, t=t
    )
    target = puncture(spec) if punctured else extend(spec)
    return handle, target, {"P": P, "t": t, "list_size": list_size}


def run_report(handle, target, snrs, stop_errors, max_frames, seed, workers, header):
    report = monte_carlo(
        handle,
        target,
        snrs,
        min_frame_errors=stop_errors,
        max_frames=max_frames,
        seed=seed,
        workers=workers,
        verbose=True,
    )
    report.config.update(header)
    return report


def sim_options(f):
    options = [
        click.option("--snr", default="1,2,3,4,5,6", help="Comma-separated SNR points in dB"),
        click.option("--stop-errors", type=int, default=100, help="Frame errors per SNR point"),
        click.option("--max-frames", type=int, default=10**6, help="Frame cap per SNR point"),
        click.option("--seed", type=int, default=None, help="Seed (default NBP_SEED or 0)"),
        click.option("--workers", type=int, default=None, help="Worker processes"),
        click.option(
            "--t", "t", type=int, default=DEFAULT_T, help="Iteration pairs without weights"
        ),
        click.option("--punctured", is_flag=True, help="Decode the cyclic (punctured) code"),
    ]
    for option in reversed(options):
        f = option(f)
    return f


@cli.command("eval")
@code_options
@click.option("--weights", type=click.Path(exists=True, dir_okay=False), help="Weight file")
@click.option("--decoder", "kind", type=click.Choice(DECODER_KINDS), default="stacked")
@click.option("--P", "P", type=int, default=None, help="Permutations for stacked/classic")
@click.option("--list-size", type=int, default=None, help="List size for cyclist")
@sim_options
@click.option("--out", type=click.Path(dir_okay=False), help="Report file (.csv or .json)")
def eval_cmd(
    family, m, delta, order, extended, weights, kind, P, list_size, snr, stop_errors,
    max_frames, seed, workers, t, punctured, out,
):
    """Simulate one decoder over the AWGN channel and write its report."""
    with exit_codes():
        spec = resolve_code(family, m, delta, order, extended) if family else None
        seed = default_seed() if seed is None else seed
        workers = workers or default_workers()
        param = list_size if kind == "cyclist" else P
        handle, target, resolved = build_handle(kind, param, weights, spec, t, punctured)

        out = Path(out) if out else output_dir() / f"report_{file_stem(handle.name)}.csv"
        fmt = "json" if out.suffix == ".json" else "csv"
        header = {
            "code": target.label,
            "decoder": handle.name,
            "weights": weights,
            **resolved,
            "snr": snr,
            "stop_errors": stop_errors,
            "max_frames": max_frames,
            "seed": seed,
            "workers": workers,
            "punctured": punctured,
        }
        echo_config(header)

        report = run_report(
            handle, target, parse_snr_list(snr), stop_errors, max_frames, seed, workers, header
        )
        emit_report(report, fmt, out)
        click.echo(f"✓ Wrote {fmt} report to {out}")


def parse_decoder_token(token: str, default_weights: str | None):
    """kind[:param][@weights] -> (kind, param or None, weights path or None)."""
    token, _, weights = token.strip().partition("@")
    kind, _, param = token.partition(":")
    if kind not in DECODER_KINDS:
        choices = ", ".join(DECODER_KINDS)
        raise click.BadParameter(f"Unknown decoder '{kind}' (choose from {choices})")
    try:
        value = int(param) if param else None
    except ValueError:
        raise click.BadParameter(f"Decoder parameter '{param}' is not an integer")
    if kind in ("classic-eq1", "ml"):
        return kind, None, None
    return kind, value, weights or default_weights


@cli.command()
@code_options
@click.option("--decoders", required=True, help="Comma-separated kind[:param][@weights] list")
@click.option("--weights", type=click.Path(exists=True, dir_okay=False), help="Default weights")
@sim_options
@click.option("--out", type=click.Path(file_okay=False), help="Output directory")
def compare(
    family, m, delta, order, extended, decoders, weights, snr, stop_errors, max_frames, seed,
    workers, t, punctured, out,
):
    """
    Run several decoders on the same noise and tabulate the differences.

    The first decoder is the baseline of the delta table. Example:
    --decoders stacked:4@w4.json,cyclist:4@w1.json,ml
    """
    with exit_codes():
        spec = resolve_code(family, m, delta, order, extended) if family else None
        seed = default_seed() if seed is None else seed
        workers = workers or default_workers()
        tokens = [parse_decoder_token(tok, weights) for tok in decoders.split(",") if tok.strip()]
        if len(tokens) < 2:
            raise click.UsageError("compare needs at least two decoders")

        if spec is None:
            paths = [w for _, _, w in tokens if w]
            if not paths:
                raise click.UsageError("Give --weights or the code options")
            spec = load_weights(paths[0]).code

        handles = [build_handle(kind, p, w, spec, t, punctured) for kind, p, w in tokens]
        target = handles[0][1]
        out_dir = Path(out) if out else output_dir() / "compare"
        header = {
            "code": target.label,
            "decoders": decoders,
            "snr": snr,
            "stop_errors": stop_errors,
            "max_frames": max_frames,
            "seed": seed,
            "workers": workers,
            "punctured": punctured,
        }
        echo_config(header)

        snrs = parse_snr_list(snr)
        reports = []
        for i, (handle, _, resolved) in enumerate(handles):
            echo_config({"decoder": handle.name, **resolved})
            report = run_report(
                handle, target, snrs, stop_errors, max_frames, seed, workers,
                {**header, "decoder": handle.name, **resolved},
            )
            emit_report(report, "csv", out_dir / f"{i}_{file_stem(handle.name)}.csv")
            reports.append(report)

        rows = delta_table(reports)
        write_delta_table(rows, out_dir / "deltas.csv")
        for row in rows:
            ratio = row["time_ratio"]
            timing = f"time x{ratio:.2f}" if ratio is not None else "time n/a"
            click.echo(
                f"  {row['decoder']} vs {row['baseline']} @ {row['snr_db']:g} dB: "
                f"dFER={row['d_fer']:+.3e} dBER={row['d_ber']:+.3e} {timing}"
            )
        click.echo(f"✓ Wrote {len(reports)} report(s) and deltas.csv to {out_dir}")


if __name__ == "__main__":
    cli()
