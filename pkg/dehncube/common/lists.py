def flatten_list(li):
    """Flatten a list by one level.
    :param li: a lists of lists
    """
    return [item for sublist in li for item in sublist]


def vertex_bits(vertex, n):
    """Bits of a cube vertex in letter order.
    :param vertex: integer whose bit i is the resolution of letter i
    :param n: number of letters
    """
    return tuple((vertex >> i) & 1 for i in range(n))


def vertex_to_bitstring(vertex, n):
    """Render a cube vertex as a 0/1 string, character i = bit of letter i."""
    return "".join(str(b) for b in vertex_bits(vertex, n))


def bitstring_to_vertex(text):
    """Inverse of :func:`vertex_to_bitstring`.
    :raises ValueError: if ``text`` contains characters other than 0 and 1
    """
    if any(ch not in "01" for ch in text):
        raise ValueError(f"'{text}' is not a 0/1 string")
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


def popcount(vertex):
    return bin(vertex).count("1")
