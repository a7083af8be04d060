"""Closed sets of strictly upper-triangular positions and their chain structure.

A closed set J on {1..n} is a set of pairs (i, j), i < j, with
(i, j), (j, k) in J implying (i, k) in J; equivalently a partial order on
{1..n}.  Pairs are kept in the canonical total order

    (r, s) < (i, j)  iff  r > i, or r = i and s > j,

so for n = 4 the full set reads (3,4) < (2,4) < (2,3) < (1,4) < (1,3) < (1,2).
Functionals J -> F_q are packed tuples of field codes in that order; the
helpers at the bottom convert to and from sparse {(i, j): value} form and the
``i,j=v;...`` literal syntax used on the command line.
"""

from __future__ import annotations

from .errors import BadField, NotClosed, PairOutOfRange, ParseError
from .gf import Fq

Pair = tuple[int, int]


def order_key(pair: Pair) -> tuple[int, int]:
    i, j = pair
    return (-i, -j)


class ClosedSet:
    """A validated closed set with eagerly built chain and update caches."""

    __slots__ = (
        "n",
        "pairs",
        "order",
        "index",
        "chains3",
        "chains4",
        "chain3_idx",
        "chain4_idx",
        "right_updates",
        "left_updates",
        "co_left_updates",
        "co_right_updates",
    )

    def __init__(self, n: int, pairs):
        pairs = frozenset(tuple(p) for p in pairs)
        if n < 1:
            raise PairOutOfRange(f"n must be positive, got {n}")
        for i, j in pairs:
            if not (1 <= i < j <= n):
                raise PairOutOfRange(f"pair ({i}, {j}) outside 1 <= i < j <= {n}")
        witnesses = []
        for i, j in sorted(pairs):
            for jj, k in sorted(pairs):
                if jj == j and (i, k) not in pairs:
                    witnesses.append((i, j, k))
        if witnesses:
            raise NotClosed(sorted(witnesses))

        self.n = n
        self.pairs = pairs
        self.order = tuple(sorted(pairs, key=order_key))
        self.index = {p: k for k, p in enumerate(self.order)}

        by_first: dict[int, list[Pair]] = {}
        for p in sorted(pairs):
            by_first.setdefault(p[0], []).append(p)
        chains3 = []
        for i, j in sorted(pairs):
            for _, k in by_first.get(j, ()):
                chains3.append((i, j, k))
        chains4 = []
        for i, j, k in chains3:
            for _, m in by_first.get(k, ()):
                chains4.append((i, j, k, m))
        self.chains3 = tuple(chains3)
        self.chains4 = tuple(chains4)

        idx = self.index
        self.chain3_idx = tuple(
            (idx[(a, b)], idx[(b, c)], idx[(a, c)]) for a, b, c in chains3
        )
        self.chain4_idx = tuple(
            (idx[(a, b)], idx[(b, c)], idx[(c, d)], idx[(a, d)]) for a, b, c, d in chains4
        )

        # Per-root single-generator update lists: applying the one-parameter
        # element at root beta with parameter t adds t * coeff * value[src] to
        # value[tgt] for each (tgt, src, coeff) listed under beta.
        d = len(self.order)
        right = [[] for _ in range(d)]
        left = [[] for _ in range(d)]
        co_left = [[] for _ in range(d)]
        co_right = [[] for _ in range(d)]
        for a, b, c in chains3:
            ab, bc, ac = idx[(a, b)], idx[(b, c)], idx[(a, c)]
            right[bc].append((ac, ab, 1))  # X_phi * x_(b,c)(t)
            left[ab].append((ac, bc, 1))  # x_(a,b)(t) * X_phi
            co_left[ab].append((bc, ac, 1))  # x_(a,b)(-t) acting on lambda from the left
            co_right[bc].append((ab, ac, 1))  # lambda acted by x_(b,c)(-t) from the right
        self.right_updates = tuple(tuple(u) for u in right)
        self.left_updates = tuple(tuple(u) for u in left)
        self.co_left_updates = tuple(tuple(u) for u in co_left)
        self.co_right_updates = tuple(tuple(u) for u in co_right)

    # -- basic protocol ------------------------------------------------------

    def __len__(self) -> int:
        return len(self.order)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ClosedSet) and self.n == other.n and self.pairs == other.pairs
        )

    def __hash__(self) -> int:
        return hash((self.n, self.pairs))

    def __repr__(self) -> str:
        return f"ClosedSet(n={self.n}, pairs={sorted(self.pairs)})"

    @property
    def has_4chain(self) -> bool:
        return bool(self.chains4)

    def is_full_triangular(self) -> bool:
        return len(self.order) == self.n * (self.n - 1) // 2


def validate_closed(n: int, pairs) -> ClosedSet:
    """Build a ClosedSet, reporting every violating triple if not closed."""
    return ClosedSet(n, pairs)


def close_covers(n: int, covers) -> ClosedSet:
    """Transitively close a cover relation and return the resulting ClosedSet."""
    covers = set(tuple(p) for p in covers)
    for i, j in covers:
        if not (1 <= i < j <= n):
            raise PairOutOfRange(f"pair ({i}, {j}) outside 1 <= i < j <= {n}")
    reach = {v: {j for (i, j) in covers if i == v} for v in range(1, n + 1)}
    changed = True
    while changed:
        changed = False
        for v in range(1, n + 1):
            extra = set()
            for w in reach[v]:
                extra |= reach[w] - reach[v]
            if extra:
                reach[v] |= extra
                changed = True
    pairs = {(i, j) for i in range(1, n + 1) for j in reach[i]}
    return ClosedSet(n, pairs)


def derived_subgroup(J: ClosedSet) -> ClosedSet:
    """The closed set of all composites (i, k) with (i, j), (j, k) in J."""
    return ClosedSet(J.n, {(a, c) for a, _, c in J.chains3})


def chains3(J: ClosedSet):
    return J.chains3


def chains4(J: ClosedSet):
    return J.chains4


def has_4chain(J: ClosedSet) -> bool:
    return J.has_4chain


# ---------------------------------------------------------------------------
# functionals as packed tuples


def zero_functional(J: ClosedSet) -> tuple[int, ...]:
    return (0,) * len(J)


def functional(J: ClosedSet, field: Fq, values: dict) -> tuple[int, ...]:
    """Pack a sparse {(i, j): code} mapping; absent pairs are zero."""
    out = [0] * len(J)
    for pair, v in values.items():
        pair = tuple(pair)
        if pair not in J.index:
            raise PairOutOfRange(f"pair {pair} not in the closed set")
        out[J.index[pair]] = field.check(int(v))
    return tuple(out)


def functional_to_dict(J: ClosedSet, f) -> dict[Pair, int]:
    return {pair: v for pair, v in zip(J.order, f) if v}


def support(J: ClosedSet, f) -> tuple[Pair, ...]:
    return tuple(pair for pair, v in zip(J.order, f) if v)


def is_monomial(J: ClosedSet, f) -> bool:
    """At most one nonzero entry in every matrix row and every column."""
    rows = set()
    cols = set()
    for (i, j), v in zip(J.order, f):
        if v:
            if i in rows or j in cols:
                return False
            rows.add(i)
            cols.add(j)
    return True


# ---------------------------------------------------------------------------
# field-element and functional literals


def parse_field_literal(field: Fq, s: str) -> int:
    s = s.strip()
    try:
        if ":" in s:
            return field.from_coeffs(int(c) for c in s.split(":"))
        return int(s) % field.p  # integer literals mean n * 1 in any field
    except ValueError as exc:
        raise BadField(f"bad field element literal {s!r}") from exc


def format_field_literal(field: Fq, a: int) -> str:
    if field.r == 1:
        return str(a)
    return ":".join(str(c) for c in field.coeffs(a))


def parse_functional(J: ClosedSet, field: Fq, text: str) -> tuple[int, ...]:
    """Parse ``i,j=v;i,j=v;...``; "0" or the empty string is the zero functional."""
    text = text.strip()
    if text in ("", "0"):
        return zero_functional(J)
    values = {}
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        try:
            pos, _, val = item.partition("=")
            i_s, j_s = pos.split(",")
            pair = (int(i_s), int(j_s))
        except ValueError as exc:
            raise ParseError(0, f"bad functional item {item!r}") from exc
        if not val:
            raise ParseError(0, f"bad functional item {item!r}")
        values[pair] = parse_field_literal(field, val)
    return functional(J, field, values)


def format_functional(J: ClosedSet, field: Fq, f) -> str:
    items = [
        f"{i},{j}={format_field_literal(field, v)}" for (i, j), v in zip(J.order, f) if v
    ]
    return ";".join(items) if items else "0"


# ---------------------------------------------------------------------------
# the spec file format


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def parse_spec(text: str) -> tuple[ClosedSet, Fq]:
    """Parse the closed-set file format; see the package README for the grammar."""
    n = None
    q = None
    modulus = None
    mode = None
    raw_pairs = []
    for lineno, line in _content_lines(text):
        tokens = line.split()
        head = tokens[0]
        if mode is None:
            if head == "n":
                if n is not None or len(tokens) != 2:
                    raise ParseError(lineno, "expected a single 'n <int>' header")
                n = _int_token(lineno, tokens[1])
            elif head == "q":
                if q is not None or len(tokens) != 2:
                    raise ParseError(lineno, "expected a single 'q <int>' header")
                q = _int_token(lineno, tokens[1])
            elif head == "modulus":
                if modulus is not None or len(tokens) < 2:
                    raise ParseError(lineno, "expected 'modulus c0 c1 ... cr'")
                modulus = tuple(_int_token(lineno, t) for t in tokens[1:])
            elif head in ("pairs", "covers"):
                if n is None or q is None:
                    raise ParseError(lineno, "'n' and 'q' must come before the mode line")
                mode = head
            else:
                raise ParseError(lineno, f"unexpected {head!r} in header")
        else:
            if len(tokens) != 2:
                raise ParseError(lineno, f"expected 'i j', got {line!r}")
            raw_pairs.append((_int_token(lineno, tokens[0]), _int_token(lineno, tokens[1])))
    if mode is None:
        raise ParseError(0, "missing mode line ('pairs' or 'covers')")
    field = Fq.of(q, modulus)
    if mode == "pairs":
        J = validate_closed(n, raw_pairs)
    else:
        J = close_covers(n, raw_pairs)
    return J, field


def _int_token(lineno: int, tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {tok!r}") from None


def emit_spec(J: ClosedSet, field: Fq) -> str:
    lines = [f"n {J.n}", f"q {field.q}"]
    if field.r > 1:
        lines.append("modulus " + " ".join(str(c) for c in field.modulus))
    lines.append("pairs")
    lines.extend(f"{i} {j}" for i, j in J.order)
    return "\n".join(lines) + "\n"
