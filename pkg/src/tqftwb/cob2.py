"""Terms of the two-dimensional cobordism category and their normal forms.

Terms are built from six generators -- the unit disc ``eta`` (0 -> 1),
the pair of pants ``mu`` (2 -> 1), its mirror ``delta`` (1 -> 2), the
counit disc ``eps`` (1 -> 0), the twist ``tau`` (2 -> 2) and cylinders
``id(n)`` -- by composition ``.`` (outer after inner) and juxtaposition
``*``.  The concrete grammar is

    term   := tensor ("." tensor)*
    tensor := atom ("*" atom)*
    atom   := "eta" | "mu" | "delta" | "eps" | "tau" | "id(" nat ")" | "(" term ")"

``normalize`` computes the complete invariant of the glued surface: per
connected component the incoming / outgoing boundary circles and the
genus.  Euler characteristics add under gluing along circles (disc +1,
pair of pants -1, cylinder 0), and genus = (2 - chi - b) / 2 with b the
number of remaining boundary circles.
"""

import random
from dataclasses import dataclass


GENERATORS = {
    'eta': (0, 1),
    'mu': (2, 1),
    'delta': (1, 2),
    'eps': (1, 0),
    'tau': (2, 2),
}


class TermSyntaxError(ValueError):
    """Raised on malformed term text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ArityError(ValueError):
    """Raised when a composition's boundary circle counts disagree."""


# ---------------------------------------------------------------------------
# term syntax


@dataclass(frozen=True)
class Generator:
    name: str

    def __post_init__(self):
        if self.name not in GENERATORS:
            raise ValueError(f"unknown generator {self.name!r}")

    @property
    def dom(self):
        return GENERATORS[self.name][0]

    @property
    def cod(self):
        return GENERATORS[self.name][1]


@dataclass(frozen=True)
class Identity:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("id(n) needs n >= 0")

    dom = property(lambda self: self.n)
    cod = property(lambda self: self.n)


@dataclass(frozen=True)
class Compose:
    """outer . inner -- apply inner first, then outer."""

    outer: object
    inner: object

    def __post_init__(self):
        if self.outer.dom != self.inner.cod:
            raise ArityError(
                f"cannot compose {render(self.outer)} after {render(self.inner)}: "
                f"outer expects {self.outer.dom} circle(s), inner produces {self.inner.cod}")

    dom = property(lambda self: self.inner.dom)
    cod = property(lambda self: self.outer.cod)


@dataclass(frozen=True)
class Tensor:
    left: object
    right: object

    dom = property(lambda self: self.left.dom + self.right.dom)
    cod = property(lambda self: self.left.cod + self.right.cod)


def signature(term):
    """(number of incoming circles, number of outgoing circles)."""
    return (term.dom, term.cod)


def render(term):
    """Term text that parses back to the same tree."""
    if isinstance(term, Generator):
        return term.name
    if isinstance(term, Identity):
        return f"id({term.n})"
    if isinstance(term, Compose):
        rhs = render(term.inner)
        if isinstance(term.inner, Compose):
            rhs = f"({rhs})"
        return f"{render(term.outer)} . {rhs}"
    if isinstance(term, Tensor):
        lhs = render(term.left)
        if isinstance(term.left, Compose):
            lhs = f"({lhs})"
        rhs = render(term.right)
        if isinstance(term.right, (Compose, Tensor)):
            rhs = f"({rhs})"
        return f"{lhs} * {rhs}"
    raise TypeError(f"not a term: {term!r}")


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in '.*()':
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(('nat', int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalnum():
                j += 1
            tokens.append(('name', text[i:j], i))
            i = j
            continue
        raise TermSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(('end', None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise TermSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def term(self):
        t = self.tensor()
        while self.peek()[0] == '.':
            dot = self.take('.')
            rhs = self.tensor()
            try:
                t = Compose(t, rhs)
            except ArityError as err:
                raise ArityError(f"{err} (composition at position {dot[2]})") from None
        return t

    def tensor(self):
        t = self.atom()
        while self.peek()[0] == '*':
            self.take('*')
            t = Tensor(t, self.atom())
        return t

    def atom(self):
        kind, value, pos = self.peek()
        if kind == '(':
            self.take('(')
            t = self.term()
            self.take(')')
            return t
        if kind == 'name':
            self.take()
            if value == 'id':
                self.take('(')
                n = self.take('nat')[1]
                self.take(')')
                return Identity(n)
            if value in GENERATORS:
                return Generator(value)
            raise TermSyntaxError(f"unknown name {value!r}", pos)
        raise TermSyntaxError(f"expected a term, found {value!r}", pos)


def parse_and_check(text):
    """Parse term text, checking arities; returns the term tree."""
    parser = _Parser(text)
    term = parser.term()
    parser.take('end')
    return term


# ---------------------------------------------------------------------------
# normal form


@dataclass(frozen=True)
class Component:
    """One connected piece: 1-based boundary circle indices and genus."""

    inputs: tuple
    outputs: tuple
    genus: int

    def serialize(self):
        ins = ','.join(map(str, self.inputs))
        outs = ','.join(map(str, self.outputs))
        return f"in[{ins}] out[{outs}] g{self.genus}"


@dataclass(frozen=True)
class SurfaceNormalForm:
    dom: int
    cod: int
    components: tuple

    def serialize(self):
        body = '; '.join(c.serialize() for c in self.components) or '(empty)'
        return f"{self.dom}->{self.cod}: {body}"


class _Glue:
    """Union-find over surface pieces with additive Euler characteristic."""

    def __init__(self):
        self.chi = []
        self.parent = []

    def piece(self, chi):
        self.parent.append(len(self.parent))
        self.chi.append(chi)
        return len(self.parent) - 1

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            self.chi[rb] += self.chi[ra]


def _build(term, glue):
    """Returns (in_ports, out_ports): piece ids carrying each boundary circle."""
    if isinstance(term, Generator):
        if term.name == 'eta':
            p = glue.piece(1)
            return [], [p]
        if term.name == 'eps':
            p = glue.piece(1)
            return [p], []
        if term.name == 'mu':
            p = glue.piece(-1)
            return [p, p], [p]
        if term.name == 'delta':
            p = glue.piece(-1)
            return [p], [p, p]
        if term.name == 'tau':
            a = glue.piece(0)
            b = glue.piece(0)
            return [a, b], [b, a]
    if isinstance(term, Identity):
        ps = [glue.piece(0) for _ in range(term.n)]
        return list(ps), list(ps)
    if isinstance(term, Compose):
        i_in, i_out = _build(term.inner, glue)
        o_in, o_out = _build(term.outer, glue)
        for a, b in zip(i_out, o_in):
            glue.union(a, b)
        return i_in, o_out
    if isinstance(term, Tensor):
        l_in, l_out = _build(term.left, glue)
        r_in, r_out = _build(term.right, glue)
        return l_in + r_in, l_out + r_out
    raise TypeError(f"not a term: {term!r}")


def normalize(term):
    """Surface normal form: boundary partition plus genus per component.

    Components with boundary are ordered by their least boundary circle
    (inputs before outputs at equal index) then genus; closed components
    come last, ordered by genus.
    """
    signature(term)  # force arity validation of the whole tree
    glue = _Glue()
    in_ports, out_ports = _build(term, glue)
    roots = {}
    for i, p in enumerate(in_ports, start=1):
        roots.setdefault(glue.find(p), [[], []])[0].append(i)
    for j, p in enumerate(out_ports, start=1):
        roots.setdefault(glue.find(p), [[], []])[1].append(j)
    for p in range(len(glue.parent)):
        roots.setdefault(glue.find(p), [[], []])
    comps = []
    for root, (ins, outs) in roots.items():
        chi = glue.chi[glue.find(root)]
        b = len(ins) + len(outs)
        twice_genus = 2 - chi - b
        if twice_genus < 0 or twice_genus % 2:
            raise AssertionError("non-orientable gluing slipped through")
        comps.append(Component(tuple(ins), tuple(outs), twice_genus // 2))

    def key(c):
        if c.inputs or c.outputs:
            boundary = min([(i, 0) for i in c.inputs] + [(j, 1) for j in c.outputs])
            return (0, boundary, c.genus, c.inputs, c.outputs)
        return (1, c.genus, (), (), ())

    comps.sort(key=key)
    return SurfaceNormalForm(term.dom, term.cod, tuple(comps))


# ---------------------------------------------------------------------------
# seeded random terms


def _line(width, pos, gen):
    """id(pos) * gen * id(rest) as a single layer on `width` circles."""
    gm, _ = GENERATORS[gen.name] if isinstance(gen, Generator) else (gen.n, gen.n)
    rest = width - pos - gm
    t = gen
    if pos:
        t = Tensor(Identity(pos), t)
    if rest:
        t = Tensor(t, Identity(rest))
    return t


def _bridge(rng, m, n):
    """A small term of exact signature (m, n) built from layered moves."""
    if m == n:
        return Identity(m)
    if m == 0:
        t = Generator('eta')
        cur = 1
    else:
        t = Identity(m)
        cur = m
    while cur > max(n, 1):
        pos = rng.randrange(cur - 1)
        t = Compose(_line(cur, pos, Generator('mu')), t)
        cur -= 1
    if n == 0:
        if cur == 1:
            t = Compose(Generator('eps'), t)
            cur = 0
    while cur < n:
        pos = rng.randrange(cur)
        t = Compose(_line(cur, pos, Generator('delta')), t)
        cur += 1
    return t


def _gen_term(rng, m, n, budget):
    if budget <= 1:
        return _bridge(rng, m, n)
    opts = ['compose', 'compose', 'compose']
    matching = [g for g, sig in GENERATORS.items() if sig == (m, n)]
    if matching:
        opts += ['gen', 'gen']
    if m == n:
        opts.append('ident')
    if m + n >= 2:
        opts += ['tensor', 'tensor']
    choice = rng.choice(opts)
    if choice == 'gen':
        return Generator(rng.choice(matching))
    if choice == 'ident':
        return Identity(m)
    if choice == 'tensor':
        for _ in range(8):
            m1 = rng.randint(0, m)
            n1 = rng.randint(0, n)
            if m1 + n1 and (m - m1) + (n - n1):
                half = budget // 2
                return Tensor(_gen_term(rng, m1, n1, half),
                              _gen_term(rng, m - m1, n - n1, budget - half - 1))
        choice = 'compose'
    j = rng.randint(0, 3)
    half = budget // 2
    return Compose(_gen_term(rng, j, n, half),
                   _gen_term(rng, m, j, budget - half - 1))


def random_term(seed, size=8, boundary=None):
    """Deterministic random well-formed term.

    boundary, when given, is the exact (dom, cod) pair; otherwise a
    small signature is drawn first.  size bounds the recursion budget.
    """
    rng = random.Random(seed)
    if boundary is None:
        m = rng.randint(0, 3)
        n = rng.randint(0, 3)
    else:
        m, n = boundary
    term = _gen_term(rng, m, n, size)
    assert signature(term) == (m, n)
    return term


def random_genus0_term(m, n, seed):
    """Deterministic random term whose surface is connected of genus 0.

    Built as a merge tree (m circles down to one) followed by a split
    tree (one circle up to n), with twist layers sprinkled in; the
    gluing graph stays a tree, so the genus is 0 and the surface is
    connected with all m + n boundary circles on it.
    """
    if m + n == 0:
        raise ValueError("need at least one boundary circle")
    rng = random.Random(seed)

    def maybe_twist(t, width):
        while width >= 2 and rng.random() < 0.4:
            pos = rng.randrange(width - 1)
            t = Compose(_line(width, pos, Generator('tau')), t)
        return t

    if m == 0:
        t = Generator('eta')
        cur = 1
    else:
        t = Identity(m)
        cur = m
        t = maybe_twist(t, cur)
        while cur > 1:
            pos = rng.randrange(cur - 1)
            t = Compose(_line(cur, pos, Generator('mu')), t)
            cur -= 1
            t = maybe_twist(t, cur)
    if n == 0:
        return Compose(Generator('eps'), t)
    while cur < n:
        pos = rng.randrange(cur)
        t = Compose(_line(cur, pos, Generator('delta')), t)
        cur += 1
        t = maybe_twist(t, cur)
    return t
