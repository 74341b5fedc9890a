"""Reader for externally supplied higher differential blocks.

One block per line, whitespace separated::

    # r  source  target  matrix rows (column 0 first)
    2    000     011     10000001 01100000

``source`` and ``target`` are vertex bitstrings of the word the cube is built
from (after any mirror), character ``i`` being the resolution of letter ``i``.
Rows are 0/1 strings, one per target basis vector. ``#`` starts a comment.
"""
from dehncube.algebra.f2linalg import F2Matrix
from dehncube.common.errors import HigherMapError
from dehncube.spectral.specseq import HigherBlock


def parse_higher_maps(text):
    """Parse a higher-map table.

    :raises HigherMapError: naming the line of a malformed record
    """
    blocks = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(tokens) < 4:
            raise HigherMapError(f"line {lineno}: expected 'r source target rows...', got '{line.strip()}'")
        r_text, source, target, rows = tokens[0], tokens[1], tokens[2], tokens[3:]
        try:
            r = int(r_text)
        except ValueError:
            raise HigherMapError(f"line {lineno}: page shift '{r_text}' is not an integer")
        for name in (source, target):
            if any(ch not in "01" for ch in name):
                raise HigherMapError(f"line {lineno}: vertex '{name}' is not a bitstring")
        if len(source) != len(target):
            raise HigherMapError(f"line {lineno}: vertices '{source}' and '{target}' differ in length")
        try:
            matrix = F2Matrix.from_bitstrings(rows)
        except ValueError as e:
            raise HigherMapError(f"line {lineno}: {e}")
        blocks.append(HigherBlock(r, source, target, matrix))
    return blocks


def read_higher_maps(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise HigherMapError(f"--higher-maps: cannot read '{path}': {e.strerror}")
    return parse_higher_maps(text)
