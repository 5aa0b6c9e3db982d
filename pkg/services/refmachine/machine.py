"""The RM-1 reference machine.

A minimal register machine: an output register O and a count register loaded
from the condition tape. The program is a self-delimiting instruction stream
read left to right with no end marker. Opcodes form a prefix-free table:

    00       HALT
    01 b     EMIT    O += b
    10       DOUBLE  O += O
    110 x''  LIT     O += x
    1110     COND    O += condition
    11110 b  FILL    O += b * index(condition)
    111110   LOOP    never halts
    111111   REST    plain discipline only: O += rest of input, then halt

In the prefix discipline the end of the program is invisible: reading past it
is an invalid run flagged ``needs_input``. In the plain discipline the end is
visible to REST, which is what gives C its constant-overhead literal.
"""
from __future__ import annotations

from typing import Optional

from core.config import settings
from core.errors import BudgetInfeasibleError
from models import MachineSpec, PrefixProgram, RunMode, RunOutcome, RunStatus
from services.bitcore import to_index

MACHINE_VERSION = "RM-1/1"

INSTRUCTIONS = [
    ("00", "HALT", "stop"),
    ("01b", "EMIT", "append bit b"),
    ("10", "DOUBLE", "append a copy of the output"),
    ("110x''", "LIT", "append x, read as a self-delimiting block"),
    ("1110", "COND", "append the condition"),
    ("11110b", "FILL", "append b repeated index(condition) times"),
    ("111110", "LOOP", "run forever"),
    ("111111", "REST", "plain: append the remaining input and halt; prefix: invalid"),
]

HALT = "00"
LOOP = "111110"
REST = "111111"
LIT = "110"

# Designated programs used as golden fixtures.
ECHO_01 = "1101010100"
LOOP_FOREVER = LOOP


def machine_spec(max_output_bits: Optional[int] = None) -> MachineSpec:
    return MachineSpec(
        version=MACHINE_VERSION,
        instruction_set=INSTRUCTIONS,
        discipline="input read left to right, no end marker; plain mode exposes the end to REST",
        max_output_bits=max_output_bits or settings.max_output_bits,
    )


class _NeedInput(Exception):
    pass


class _Invalid(Exception):
    pass


class _Exhausted(Exception):
    pass


class _Machine:
    __slots__ = ("code", "condition", "budget", "plain", "limit", "pos", "steps", "output", "saw_end")

    def __init__(self, code: str, condition: str, budget: int, plain: bool, limit: int):
        self.code = code
        self.condition = condition
        self.budget = budget
        self.plain = plain
        self.limit = limit
        self.pos = 0
        self.steps = 0
        self.output = ""
        self.saw_end = False

    def tick(self, n: int = 1) -> None:
        if self.steps + n > self.budget:
            self.steps = self.budget
            raise _Exhausted
        self.steps += n

    def read(self) -> str:
        if self.pos >= len(self.code):
            raise _NeedInput
        self.tick()
        bit = self.code[self.pos]
        self.pos += 1
        return bit

    def emit(self, bits: str) -> None:
        if len(self.output) + len(bits) > self.limit:
            raise _Invalid
        self.output += bits

    def read_block(self) -> str:
        field_length = 0
        while self.read() == "1":
            field_length += 1
        field = "".join(self.read() for _ in range(field_length))
        length = to_index(field)
        return "".join(self.read() for _ in range(length))

    def execute(self) -> None:
        while True:
            if self.read() == "0":
                if self.read() == "0":
                    self.tick()
                    return
                bit = self.read()
                self.tick()
                self.emit(bit)
            elif self.read() == "0":
                self.tick()
                self.emit(self.output)
            elif self.read() == "0":
                block = self.read_block()
                self.tick()
                self.emit(block)
            elif self.read() == "0":
                self.tick()
                self.emit(self.condition)
            elif self.read() == "0":
                bit = self.read()
                count = to_index(self.condition)
                self.tick(1 + count)
                self.emit(bit * count)
            elif self.read() == "0":
                # LOOP: nothing is ever read or written again
                self.steps = self.budget
                raise _Exhausted
            else:
                if not self.plain:
                    raise _Invalid
                self.tick()
                rest = self.code[self.pos :]
                self.tick(len(rest))
                self.emit(rest)
                self.pos = len(self.code)
                self.saw_end = True
                return


def run(
    program: PrefixProgram | str,
    condition: str = "",
    budget: Optional[int] = None,
    mode: RunMode = RunMode.PREFIX,
    max_output_bits: Optional[int] = None,
) -> RunOutcome:
    """Run a program for at most ``budget`` steps."""
    if isinstance(program, PrefixProgram):
        code, condition = program.code, program.condition or condition
    else:
        code = program
    budget = settings.step_budget if budget is None else budget
    if budget < 1:
        raise BudgetInfeasibleError("step budget must be >= 1")
    machine = _Machine(
        code, condition, budget, mode is RunMode.PLAIN, max_output_bits or settings.max_output_bits
    )
    try:
        machine.execute()
    except _NeedInput:
        return RunOutcome(
            status=RunStatus.INVALID,
            steps_used=machine.steps,
            bits_consumed=machine.pos,
            needs_input=True,
        )
    except _Invalid:
        return RunOutcome(status=RunStatus.INVALID, steps_used=machine.steps, bits_consumed=machine.pos)
    except _Exhausted:
        return RunOutcome(
            status=RunStatus.BUDGET_EXHAUSTED, steps_used=machine.steps, bits_consumed=machine.pos
        )
    return RunOutcome(
        status=RunStatus.HALTED,
        output=machine.output,
        steps_used=machine.steps,
        bits_consumed=machine.pos,
        saw_end=machine.saw_end,
    )
