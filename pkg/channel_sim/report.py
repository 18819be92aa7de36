"""CSV / JSON report files and decoder-vs-decoder delta tables."""

import csv
import json
from pathlib import Path

from .harness import SimReport, SnrPoint

REPORT_FORMATS = ("csv", "json")
CSV_COLUMNS = [
    "snr_db",
    "frames",
    "frame_errors",
    "bit_errors",
    "fer",
    "ber",
    "cond_fraction",
    "mean_decode_us",
    "decoder",
    "seed",
]
DELTA_COLUMNS = [
    "snr_db",
    "decoder",
    "baseline",
    "d_ber",
    "d_fer",
    "d_cond_fraction",
    "time_ratio",
]


def report_rows(report: SimReport) -> list[dict]:
    return [
        {
            "snr_db": p.snr_db,
            "frames": p.frames,
            "frame_errors": p.frame_errors,
            "bit_errors": p.bit_errors,
            "fer": p.fer,
            "ber": p.ber,
            "cond_fraction": p.cond_fraction,
            "mean_decode_us": p.mean_decode_us,
            "decoder": report.decoder,
            "seed": report.seed,
        }
        for p in report.points
    ]


def _cell(value):
    # None is written as an empty cell; repr keeps full float precision
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def _write_csv(path: Path, columns: list[str], rows: list[dict]):
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=columns)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})


def header_path(path: str | Path) -> Path:
    """Sidecar holding the header of a CSV report: runs/r.csv -> runs/r.header.json."""
    return Path(path).with_suffix(".header.json")


def report_header(report: SimReport) -> dict:
    return {
        "decoder": report.decoder,
        "seed": report.seed,
        "code": report.code,
        "n": report.n,
        "config": report.config,
    }


def emit_report(report: SimReport, fmt: str, path: str | Path) -> Path:
    """
    Write a report as CSV (one row per SNR point) or JSON (the full SimReport).

    A CSV report gets its header (code, decoder, seed and the resolved run
    config) in a JSON sidecar next to it, see header_path.

    Raises:
        ValueError: If fmt is not csv or json
        OSError: If the file cannot be written
    """
    if fmt not in REPORT_FORMATS:
        raise ValueError(f"Unknown report format '{fmt}'")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path.write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")
    else:
        _write_csv(path, CSV_COLUMNS, report_rows(report))
        header_path(path).write_text(
            json.dumps(report_header(report), indent=2) + "\n", encoding="utf-8"
        )
    return path


def load_report(path: str | Path) -> SimReport:
    """Read a report written by emit_report; the format follows the suffix."""
    path = Path(path)
    if path.suffix == ".json":
        return SimReport.from_dict(json.loads(path.read_text(encoding="utf-8")))

    with open(path, encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    if not rows:
        raise ValueError(f"Report {path} has no rows")
    points = []
    for row in rows:
        frames = int(row["frames"])
        bit_errors = int(row["bit_errors"])
        ber = float(row["ber"])
        n = round(bit_errors / (ber * frames)) if bit_errors else 1
        points.append(
            SnrPoint(
                snr_db=float(row["snr_db"]),
                frames=frames,
                frame_errors=int(row["frame_errors"]),
                bit_errors=bit_errors,
                decode_seconds=float(row["mean_decode_us"]) * frames / 1e6,
                n=n,
            )
        )

    sidecar = header_path(path)
    if not sidecar.exists():
        return SimReport(
            decoder=rows[0]["decoder"],
            seed=int(rows[0]["seed"]),
            code="",
            n=points[0].n,
            points=points,
        )
    header = json.loads(sidecar.read_text(encoding="utf-8"))
    for p in points:
        p.n = int(header["n"])
    return SimReport(
        decoder=header["decoder"],
        seed=int(header["seed"]),
        code=header["code"],
        n=int(header["n"]),
        points=points,
        config=header.get("config", {}),
    )


def _difference(a: float | None, b: float | None) -> float | None:
    if a is None or b is None:
        return None
    return a - b


def delta_table(reports: list[SimReport]) -> list[dict]:
    """
    Compare every report against the first one, SNR by SNR.

    Returns:
        Rows with d_ber, d_fer, d_cond_fraction (decoder minus baseline; None
        when either side has no frame errors) and time_ratio (decoder time over
        baseline time)
    """
    if len(reports) < 2:
        raise ValueError("A comparison needs at least two reports")
    baseline = reports[0]
    base_points = {p.snr_db: p for p in baseline.points}
    rows = []
    for report in reports[1:]:
        for p in report.points:
            base = base_points.get(p.snr_db)
            if base is None:
                continue
            rows.append(
                {
                    "snr_db": p.snr_db,
                    "decoder": report.decoder,
                    "baseline": baseline.decoder,
                    "d_ber": p.ber - base.ber,
                    "d_fer": p.fer - base.fer,
                    "d_cond_fraction": _difference(p.cond_fraction, base.cond_fraction),
                    "time_ratio": (
                        p.mean_decode_us / base.mean_decode_us if base.mean_decode_us else None
                    ),
                }
            )
    return rows


def write_delta_table(rows: list[dict], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    _write_csv(path, DELTA_COLUMNS, rows)
    return path
