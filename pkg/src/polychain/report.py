"""Line-oriented reports: one "key = value" per line, ending in a VERDICT.

Values are rendered deterministically (rationals exact, radical sums in
closed form, floats via repr), so identical inputs produce byte-identical
report text.
"""

from __future__ import annotations

from fractions import Fraction

from .radicals import RadicalSum


def format_value(value) -> str:
    if isinstance(value, bool):
        return "PASS" if value else "FAIL"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else \
            "%d/%d" % (value.numerator, value.denominator)
    if isinstance(value, RadicalSum):
        if not value.terms:
            return "0"
        parts = []
        for rad in sorted(value.terms):
            c = value.terms[rad]
            parts.append(format_value(Fraction(c)) if rad == 1
                         else "%s*sqrt(%d)" % (format_value(Fraction(c)), rad))
        return " + ".join(parts)
    if isinstance(value, float):
        return repr(value)
    return str(value)


class Report:
    """Accumulates key = value lines plus asserted bounds; the final
    VERDICT line is PASS only if every asserted bound held."""

    def __init__(self):
        self.lines = []
        self._failed = 0
        self._asserted = 0

    def add(self, key: str, value):
        self.lines.append("%s = %s" % (key, format_value(value)))

    def bound(self, key: str, ok: bool):
        self._asserted += 1
        if not ok:
            self._failed += 1
        self.add(key, bool(ok))

    @property
    def passed(self) -> bool:
        return self._failed == 0

    def text(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return "\n".join(self.lines + ["VERDICT = " + verdict]) + "\n"

    def write(self, stream, path=None):
        body = self.text()
        stream.write(body)
        if path:
            with open(path, "w") as fp:
                fp.write(body)
