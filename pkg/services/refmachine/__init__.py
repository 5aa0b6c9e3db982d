"""Reference prefix machine, program enumeration and complexity bounds."""
from .complexity import (
    C_LITERAL,
    complexity_upper,
    length_condition,
    literal_program,
    measure_literal_constant,
    oscillation_profile,
    plain_complexity_upper,
    prefix_complexity_upper,
)
from .compressors import CODEC_IDS, compressor_bound, get_codec
from .enumeration import ProgramRecord, ProgramTable, enumerate_programs
from .machine import ECHO_01, LOOP_FOREVER, MACHINE_VERSION, machine_spec, run

__all__ = [
    "C_LITERAL",
    "CODEC_IDS",
    "ECHO_01",
    "LOOP_FOREVER",
    "MACHINE_VERSION",
    "ProgramRecord",
    "ProgramTable",
    "complexity_upper",
    "compressor_bound",
    "enumerate_programs",
    "get_codec",
    "length_condition",
    "literal_program",
    "machine_spec",
    "measure_literal_constant",
    "oscillation_profile",
    "plain_complexity_upper",
    "prefix_complexity_upper",
    "run",
]
