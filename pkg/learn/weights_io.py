"""JSON weight files: the tied bank plus the code and training metadata."""

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from code_factory import CodeConstructionError, CodeSpec
from decoder import WeightBank

FORMAT_VERSION = 1


class WeightFileError(Exception):
    """Raised when a weight file is malformed or does not match what the caller expects."""

    pass


@dataclass
class WeightFile:
    bank: WeightBank
    code: CodeSpec
    P: int
    training: dict = field(default_factory=dict)

    @property
    def t(self) -> int:
        return self.bank.t

    @property
    def u(self) -> int:
        return self.bank.u


def _cross_rows(cross: np.ndarray) -> list:
    """[s][b] -> weights w_{b',b} for b' != b, b' ascending."""
    u = cross.shape[-1]
    return [
        [[float(layer[bp, b]) for bp in range(u) if bp != b] for b in range(u)]
        for layer in cross
    ]


def _cross_array(rows: list, t: int, u: int) -> np.ndarray:
    cross = np.zeros((t, u, u))
    for s in range(t):
        for b in range(u):
            values = rows[s][b]
            if len(values) != u - 1:
                raise WeightFileError(
                    f"cross_weights[{s}][{b}] has {len(values)} entries, expected {u - 1}"
                )
            others = [bp for bp in range(u) if bp != b]
            cross[s, others, b] = values
    return cross


def weights_document(
    bank: WeightBank, code: CodeSpec, P: int, training: dict | None = None
) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "code": code.to_dict(),
        "code_hash": code.code_hash(),
        "P": P,
        "t": bank.t,
        "u": bank.u,
        "self_weights": bank.self_weights.tolist(),
        "cross_weights": _cross_rows(bank.cross_weights),
        "output_weights": bank.output_weights.tolist(),
        "training": training or {},
    }


def save_weights(
    path: str | Path, bank: WeightBank, code: CodeSpec, P: int, training: dict | None = None
) -> Path:
    """
    Write the bank as JSON at full float precision.

    The document has no timestamps, so equal banks give byte-identical files.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(weights_document(bank, code, P, training), indent=2)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def load_weights(
    path: str | Path,
    code: CodeSpec | None = None,
    P: int | None = None,
    t: int | None = None,
    u: int | None = None,
) -> WeightFile:
    """
    Read a weight file and check it against the caller's expectations.

    Args:
        path: JSON weight file
        code, P, t, u: Expected metadata; None skips the check

    Raises:
        WeightFileError: If the file is malformed or the metadata does not match
        OSError: If the file cannot be read
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
        version = doc["format_version"]
        spec = CodeSpec.from_dict(doc["code"])
        file_P, file_t, file_u = int(doc["P"]), int(doc["t"]), int(doc["u"])
        self_w = np.asarray(doc["self_weights"], dtype=np.float64)
        out_w = np.asarray(doc["output_weights"], dtype=np.float64)
        cross = _cross_array(doc["cross_weights"], file_t, file_u)
        bank = WeightBank(self_w, cross, out_w)
    except (json.JSONDecodeError, KeyError, TypeError, IndexError, ValueError) as e:
        raise WeightFileError(f"Malformed weight file {path}: {e}")
    except CodeConstructionError as e:
        raise WeightFileError(f"Weight file {path} names an invalid code: {e}")

    if version != FORMAT_VERSION:
        raise WeightFileError(f"Unsupported weight file version {version}")
    if bank.t != file_t or bank.u != file_u:
        raise WeightFileError(f"Weight shapes (t={bank.t}, u={bank.u}) disagree with header")
    if doc.get("code_hash", spec.code_hash()) != spec.code_hash():
        raise WeightFileError(f"Code hash mismatch in {path}")

    expected = {"P": (P, file_P), "t": (t, file_t), "u": (u, file_u)}
    for name, (want, got) in expected.items():
        if want is not None and want != got:
            raise WeightFileError(f"Weight file has {name}={got}, expected {name}={want}")
    if code is not None and code.code_hash() != spec.code_hash():
        raise WeightFileError(f"Weight file is for {spec.label}, expected {code.label}")

    return WeightFile(bank=bank, code=spec, P=file_P, training=doc.get("training", {}))
