"""
Zero Cache Service
Persists located critical-line zeros in a CSV file so probes can refer to
them as zero:k without rescanning
"""

import csv
import io
import logging
import os
import tempfile
from pathlib import Path
from typing import List, Optional, Sequence

from zetakit.errors import CacheIOError, MissingPrerequisiteError
from zetakit.schemas import ZeroRecord

logger = logging.getLogger(__name__)

HEADER = ("index", "t", "residual")
SAME_ZERO_TOLERANCE = 1e-8


def format_t(t: float) -> str:
    """Shortest round-trip repr, padded to 12 significant digits when that is shorter"""
    text = repr(t)
    digits = sum(c.isdigit() for c in text.split("e")[0].lstrip("0.").replace(".", ""))
    return text if digits >= 12 else f"{t:#.12g}"


class ZeroCache:
    """CSV-backed store of ZeroRecords sorted by t"""

    def __init__(self, path: Path):
        self.path = Path(path)

    def load(self) -> List[ZeroRecord]:
        if not self.path.exists():
            return []
        try:
            with self.path.open(newline="") as fh:
                reader = csv.DictReader(fh)
                if tuple(reader.fieldnames or ()) != HEADER:
                    raise CacheIOError(f"{self.path}: expected header {','.join(HEADER)}")
                records = [
                    ZeroRecord(index=int(row["index"]), t=float(row["t"]), residual=float(row["residual"]))
                    for row in reader
                ]
        except (OSError, ValueError) as e:
            logger.error(f"Error reading zero cache {self.path}: {e}")
            raise CacheIOError(f"cannot read zero cache {self.path}: {e}") from e
        return sorted(records, key=lambda r: r.t)

    @staticmethod
    def merge(existing: Sequence[ZeroRecord], found: Sequence[ZeroRecord]) -> List[ZeroRecord]:
        """
        Union of both lists, re-indexed in t order

        A found zero within 1e-8 of a cached one is the same zero; the cached
        value is kept so re-runs never change the file.
        """
        merged = list(existing)
        for record in found:
            if not any(abs(record.t - old.t) <= SAME_ZERO_TOLERANCE for old in merged):
                merged.append(record)
        merged.sort(key=lambda r: r.t)
        return [
            ZeroRecord(index=i, t=r.t, residual=r.residual)
            for i, r in enumerate(merged, start=1)
        ]

    @staticmethod
    def render(records: Sequence[ZeroRecord]) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(HEADER)
        for r in records:
            writer.writerow([r.index, format_t(r.t), repr(r.residual)])
        return buf.getvalue()

    def store(self, found: Sequence[ZeroRecord]) -> List[ZeroRecord]:
        """
        Merge `found` into the cache file

        Args:
            found: zeros from a scan, in any order

        Returns:
            The full cache contents after the merge
        """
        existing = self.load()
        merged = self.merge(existing, found)
        content = self.render(merged)

        if self.path.exists():
            try:
                if self.path.read_text() == content:
                    logger.info(f"Zero cache {self.path} already up to date ({len(merged)} records)")
                    return merged
            except OSError as e:
                raise CacheIOError(f"cannot read zero cache {self.path}: {e}") from e

        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".zeros-", suffix=".csv")
            try:
                with os.fdopen(fd, "w", newline="") as fh:
                    fh.write(content)
                os.replace(tmp, self.path)
            except BaseException:
                Path(tmp).unlink(missing_ok=True)
                raise
        except OSError as e:
            logger.error(f"Error writing zero cache {self.path}: {e}")
            raise CacheIOError(f"cannot write zero cache {self.path}: {e}") from e

        logger.info(f"Stored {len(merged) - len(existing)} new zero(s) in {self.path}")
        return merged

    def get(self, k: int) -> ZeroRecord:
        """The k-th cached zero (1-based)"""
        records = self.load()
        record: Optional[ZeroRecord] = records[k - 1] if 1 <= k <= len(records) else None
        if record is None:
            raise MissingPrerequisiteError(
                f"zero:{k} is not in {self.path} ({len(records)} cached); run `zetakit zeros` first"
            )
        return record
