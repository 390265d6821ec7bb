import asyncio
import csv
import io
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

from app.cayley import CayleyClassifier, classifier
from app.errors import InternalDisagreement, SemigroupError
from app.formats import parse_table
from app.schemas import CENSUS_COLUMNS, CensusRow

logger = logging.getLogger(__name__)


@dataclass
class CensusOutcome:
    rows: List[CensusRow] = field(default_factory=list)
    # (file name, reason) for every file that could not be read or parsed
    failures: List[Tuple[str, str]] = field(default_factory=list)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CENSUS_COLUMNS)
        for row in self.rows:
            writer.writerow(row.csv_fields())
        return buffer.getvalue()


class CensusPipeline:
    """
    Batch classification of a directory of table files

    Files are classified concurrently; rows come back sorted by file name.
    A file that fails to parse is reported and skipped, never fatal.
    """

    def __init__(self, engine: Optional[CayleyClassifier] = None):
        self.engine = engine or classifier

    async def run(self, directory: Path) -> CensusOutcome:
        files = sorted(
            (p for p in Path(directory).iterdir() if p.is_file() and not p.name.startswith(".")),
            key=lambda p: p.name,
        )
        tasks = [self._classify_file(path) for path in files]
        results = await asyncio.gather(*tasks)

        outcome = CensusOutcome()
        for name, row, failure in results:
            if row is not None:
                outcome.rows.append(row)
            else:
                outcome.failures.append((name, failure))
        return outcome

    async def _classify_file(self, path: Path) -> Tuple[str, Optional[CensusRow], Optional[str]]:
        """Classify a single file in a worker thread"""
        try:
            text = await asyncio.to_thread(path.read_text, encoding="utf-8")
            semigroup = parse_table(text)
            report = await asyncio.to_thread(self.engine.classify, semigroup)
        except InternalDisagreement:
            raise
        except (SemigroupError, OSError, UnicodeDecodeError) as e:
            logger.error("census: skipping %s: %s", path.name, e)
            return path.name, None, str(e)
        logger.info("census: classified %s (n=%d)", path.name, report.size)
        return path.name, CensusRow.from_report(path.name, report), None

    def run_sync(self, directory: Path) -> CensusOutcome:
        return asyncio.run(self.run(directory))


census_pipeline = CensusPipeline()
