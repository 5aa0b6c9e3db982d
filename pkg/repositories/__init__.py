"""Repository instances for file persistence."""
from .bitstring_repository import PACKED_MAGIC, BitstringRepository
from .report_repository import ReportRepository, ReportWriter

# Repository instances
bitstrings_repo = BitstringRepository()
reports_repo = ReportRepository()

__all__ = [
    "PACKED_MAGIC",
    "BitstringRepository",
    "ReportRepository",
    "ReportWriter",
    "bitstrings_repo",
    "reports_repo",
]
