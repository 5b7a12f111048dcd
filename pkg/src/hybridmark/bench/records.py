"""Trial records and their CSV form."""
import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

COLUMNS = ("image", "method", "attack", "param", "psnr_embed", "nc", "ber", "path", "ms")


@dataclass(frozen=True)
class TrialRecord:
    image: str
    method: str
    attack: str = "none"
    param: float | None = None
    psnr_embed: float | None = None
    nc: float | None = None
    ber: float | None = None
    path: str = ""
    ms: float = 0.0

    @property
    def failed(self):
        return self.path.startswith("error")

    def sort_key(self):
        return (self.image, self.method, self.attack, -1.0 if self.param is None else self.param)


def _real(x):
    if x is None:
        return ""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.6f}"


def _param(rec):
    if rec.param is None:
        return ""
    if rec.attack == "jpeg":
        return str(int(rec.param))
    return f"{rec.param:.6f}"


def format_csv(records, meta=None):
    buf = io.StringIO()
    if meta:
        for key, value in meta.items():
            buf.write(f"# {key}={value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in sorted(records, key=TrialRecord.sort_key):
        writer.writerow([r.image, r.method, r.attack, _param(r), _real(r.psnr_embed),
                         _real(r.nc), _real(r.ber), r.path, _real(r.ms)])
    return buf.getvalue()


def emit_csv(records, path, meta=None):
    """Write records sorted by (image, method, attack, param); ``meta`` becomes ``#`` lines."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_csv(records, meta))


def _opt_float(s):
    return None if s == "" else float(s)


def parse_csv(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None or tuple(header) != COLUMNS:
        raise ValueError(f"unexpected CSV header {header}")
    out = []
    for row in reader:
        image, method, attack, param, psnr_embed, nc, ber, path, ms = row
        out.append(TrialRecord(image, method, attack, _opt_float(param), _opt_float(psnr_embed),
                               _opt_float(nc), _opt_float(ber), path, float(ms)))
    return out


def read_csv(path):
    return parse_csv(Path(path).read_text(encoding="utf-8"))


def quantized(records):
    """Records as they come back from the CSV (6-decimal reals)."""
    return parse_csv(format_csv(records))
