"""Collects one pass/fail line per acceptance criterion."""

RESULTS: dict[int, tuple[bool, str]] = {}


def record(number: int, ok: bool, detail: str) -> None:
    RESULTS[number] = (ok, detail)
    print(format_line(number))


def format_line(number: int) -> str:
    ok, detail = RESULTS[number]
    return f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def lines() -> list[str]:
    return [format_line(k) for k in sorted(RESULTS)]
