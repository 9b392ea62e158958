#!/usr/bin/env python3
"""Regenerates src/unicode_tables.inc from Python's unicodedata.

Letter = general categories L*, Digit = Nd. White_Space is a short fixed
list and lives directly in unicode.cpp.
"""
import sys
import unicodedata


def ranges(pred):
    out = []
    start = None
    for cp in range(0x110000):
        hit = pred(cp)
        if hit and start is None:
            start = cp
        elif not hit and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, 0x10FFFF))
    return out


def emit(name, rs):
    lines = [f"inline constexpr CodepointRange {name}[] = {{"]
    for lo, hi in rs:
        lines.append(f"    {{0x{lo:04X}, 0x{hi:04X}}},")
    lines.append("};")
    return "\n".join(lines)


def main():
    letter = ranges(lambda cp: unicodedata.category(chr(cp)).startswith("L"))
    digit = ranges(lambda cp: unicodedata.category(chr(cp)) == "Nd")
    out = [
        "// Generated by tools/gen_unicode_tables.py from Unicode "
        f"{unicodedata.unidata_version}. Do not edit.",
        "",
        emit("kLetterRanges", letter),
        "",
        emit("kDigitRanges", digit),
        "",
    ]
    path = sys.argv[1] if len(sys.argv) > 1 else "src/unicode_tables.inc"
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write("\n".join(out))


if __name__ == "__main__":
    main()
