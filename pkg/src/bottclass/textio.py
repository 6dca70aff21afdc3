"""Line-oriented reading for the plain-text formats, with line/column diagnostics."""

from __future__ import annotations

import re

from .errors import ParseError

_TOKEN = re.compile(r"\S+")


class LineReader:
    def __init__(self, text: str):
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        self.lines = lines
        self.pos = 0

    @property
    def lineno(self) -> int:
        return self.pos + 1

    def at_end(self) -> bool:
        return self.pos >= len(self.lines)

    def next_line(self, what: str) -> str:
        if self.at_end():
            raise ParseError(self.lineno, 1, f"unexpected end of input, expected {what}")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def ints(self, what: str, count: int | None = None, minimum: int | None = None) -> list[int]:
        """Read one line of whitespace-separated integers."""
        lineno = self.lineno
        line = self.next_line(what)
        values = []
        for tok in _TOKEN.finditer(line):
            col = tok.start() + 1
            try:
                v = int(tok.group(0))
            except ValueError:
                raise ParseError(lineno, col, f"expected integer in {what}, got {tok.group(0)!r}") from None
            if minimum is not None and v < minimum:
                raise ParseError(lineno, col, f"{what} entry {v} below {minimum}")
            values.append(v)
        if count is not None and len(values) != count:
            col = len(line) + 1 if len(values) < count else list(_TOKEN.finditer(line))[count].start() + 1
            raise ParseError(lineno, col, f"{what}: expected {count} integers, got {len(values)}")
        return values

    def blank(self, what: str) -> None:
        lineno = self.lineno
        line = self.next_line(what)
        if line.strip():
            raise ParseError(lineno, 1, f"expected blank line {what}")

    def expect_end(self) -> None:
        while not self.at_end():
            lineno = self.lineno
            line = self.next_line("end of input")
            if line.strip():
                raise ParseError(lineno, 1, "unexpected trailing content")
