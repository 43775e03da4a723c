"""Minimal TOML-subset reader: ``[section]`` headers and scalar ``key = value``.

Python 3.10 ships no ``tomllib`` and no backport is available here, so the
bundled configuration files stay within this subset (which is valid TOML):
strings without escapes, integers, booleans, ISO dates, and dotted section
names.
"""

from __future__ import annotations

from datetime import date


class TomlError(ValueError):
    pass


def _strip_comment(raw: str) -> str:
    in_string = False
    for i, ch in enumerate(raw):
        if ch == '"':
            in_string = not in_string
        elif ch == "#" and not in_string:
            return raw[:i]
    return raw


def _scalar(text: str, line_no: int):
    text = text.strip()
    if text.startswith('"') and text.endswith('"') and len(text) >= 2:
        return text[1:-1]
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return date.fromisoformat(text)
    except ValueError:
        pass
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise TomlError(f"line {line_no}: cannot parse value {text!r}") from None


def loads(text: str) -> dict:
    root: dict = {}
    current = root
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = root
            for part in line[1:-1].strip().split("."):
                part = part.strip()
                if not part:
                    raise TomlError(f"line {line_no}: empty section name")
                current = current.setdefault(part, {})
                if not isinstance(current, dict):
                    raise TomlError(f"line {line_no}: section clashes with a value")
            continue
        if "=" not in line:
            raise TomlError(f"line {line_no}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip().strip('"')
        if not key:
            raise TomlError(f"line {line_no}: empty key")
        current[key] = _scalar(value, line_no)
    return root


def load(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
