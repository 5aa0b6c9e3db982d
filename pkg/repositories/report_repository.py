"""JSON-lines reports: one header record, then one record per line."""
import json
import logging
import sys
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Iterable, Iterator, List, Optional, Union

from pydantic import BaseModel

from core.config import RunConfig
from models import ReportHeader
from services.refmachine import MACHINE_VERSION, machine_spec
from services.sources_service import PRNG_VERSION
from utils.digest import config_digest

logger = logging.getLogger(__name__)

Record = Union[BaseModel, dict]


class ReportWriter:
    def __init__(self, stream: IO[str]):
        self.stream = stream
        self.count = 0

    def write(self, record: Record, kind: Optional[str] = None) -> None:
        payload = record.model_dump(mode="json") if isinstance(record, BaseModel) else dict(record)
        if kind is not None:
            # a record field named kind is kept as <kind>_kind
            if "kind" in payload:
                payload[f"{kind}_kind"] = payload.pop("kind")
            payload = {"kind": kind, **payload}
        self.stream.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
        self.count += 1

    def write_all(self, records: Iterable[Record], kind: Optional[str] = None) -> None:
        for record in records:
            self.write(record, kind)


class ReportRepository:
    def build_header(self, command: str, config: RunConfig) -> ReportHeader:
        """Header stamped into every report; the timestamp is left out in deterministic runs."""
        timestamp = None if config.deterministic else datetime.now(timezone.utc).isoformat()
        return ReportHeader(
            command=command,
            machine_version=MACHINE_VERSION,
            machine=machine_spec(config.max_output_bits),
            prng_version=PRNG_VERSION,
            calibration_c=config.calibration_c,
            calibration_c1=config.calibration_c1,
            config_digest=config_digest(config.to_env_text()),
            timestamp=timestamp,
        )

    @contextmanager
    def open(self, command: str, config: RunConfig, path: Optional[Path] = None) -> Iterator[ReportWriter]:
        """Yield a writer whose first line is already the header; stdout when no path is given."""
        if path is None:
            writer = ReportWriter(sys.stdout)
            writer.write(self.build_header(command, config), kind="header")
            yield writer
            sys.stdout.flush()
            return
        with Path(path).open("w", encoding="utf-8") as stream:
            writer = ReportWriter(stream)
            writer.write(self.build_header(command, config), kind="header")
            yield writer
        logger.info(f"Wrote {writer.count} report lines to {path}")

    def read(self, path: Path) -> List[dict]:
        with Path(path).open(encoding="utf-8") as stream:
            return [json.loads(line) for line in stream if line.strip()]
