"""Finitely presented graded-commutative algebras over the field with two
elements: normal forms, graded bases, homomorphisms, dual-basis
pushforwards, Steenrod squares via the Cartan formula, and Wu /
Stiefel-Whitney classes for Poincare-duality presentations.

Monomials are exponent tuples; an element is a set of normal-form
monomials (coefficients live in F2, so duplicates cancel).  Normal forms
come from a rewriting system completed by degree-bounded Buchberger
S-polynomial resolution; because all the ideals here are homogeneous,
the truncated system is exact in every degree up to the bound.  On top
of that, confluence can be certified against a brute-force quotient
dimension oracle that shares no code with the rewriting path.
"""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Mapping, Optional, Sequence, Union

Monomial = tuple[int, ...]


class F2ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {line}, column {col})")
        self.line, self.col, self.pos = line, col, pos


class DegreeBoundExceededError(ValueError):
    pass


class NonConfluentPresentationError(ValueError):
    pass


class InconsistentSteenrodDataError(ValueError):
    pass


class DegeneratePairingError(ValueError):
    pass


# -- GF(2) linear algebra on bitmask rows -------------------------------------


def gf2_echelon(rows: Iterable[int]) -> list[int]:
    """Reduced row echelon basis of the span, highest pivot first."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            p = row.bit_length() - 1
            if p in pivots:
                row ^= pivots[p]
            else:
                pivots[p] = row
                break
    for p in sorted(pivots, reverse=True):
        for q in pivots:
            if q > p and (pivots[q] >> p) & 1:
                pivots[q] ^= pivots[p]
    return [pivots[p] for p in sorted(pivots, reverse=True)]


def gf2_rank(rows: Iterable[int]) -> int:
    return len(gf2_echelon(rows))


def gf2_solve_unique(rows: Sequence[int], rhs: Sequence[int], width: int) -> int:
    """Solve A x = b over GF(2) where row i of A is the bitmask rows[i] on
    `width` unknowns; requires a unique solution."""
    aug = [(rows[i] << 1) | rhs[i] for i in range(len(rows))]
    basis = gf2_echelon(aug)
    solution = 0
    seen_pivots = set()
    for row in basis:
        pivot = row.bit_length() - 1
        if pivot == 0:
            raise DegeneratePairingError("inconsistent linear system")
        seen_pivots.add(pivot - 1)
        if row & 1:
            solution |= 1 << (pivot - 1)
    if len(seen_pivots) != width:
        raise DegeneratePairingError("solution is not unique")
    return solution


# -- core algebra --------------------------------------------------------------


class F2AlgebraElement:
    """A normal-form sum of monomials of a fixed presented algebra."""

    __slots__ = ("algebra", "monomials")

    def __init__(self, algebra: "PresentedF2Algebra", monomials: frozenset):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "monomials", monomials)

    def __setattr__(self, *args):
        raise AttributeError("F2AlgebraElement is immutable")

    def is_zero(self) -> bool:
        return not self.monomials

    def degree(self) -> Optional[int]:
        """Degree of a homogeneous element (None for 0)."""
        degs = {self.algebra.monomial_degree(m) for m in self.monomials}
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else None

    def homogeneous_parts(self) -> dict[int, "F2AlgebraElement"]:
        parts: dict[int, set] = {}
        for m in self.monomials:
            parts.setdefault(self.algebra.monomial_degree(m), set()).add(m)
        return {d: F2AlgebraElement(self.algebra, frozenset(s))
                for d, s in sorted(parts.items())}

    def __add__(self, other: "F2AlgebraElement") -> "F2AlgebraElement":
        self._check(other)
        return F2AlgebraElement(self.algebra, self.monomials ^ other.monomials)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "F2AlgebraElement") -> "F2AlgebraElement":
        self._check(other)
        alg = self.algebra
        parity: dict[Monomial, int] = {}
        for m1 in self.monomials:
            for m2 in other.monomials:
                raw = tuple(a + b for a, b in zip(m1, m2))
                parity[raw] = parity.get(raw, 0) ^ 1
        out: frozenset = frozenset()
        for raw, p in parity.items():
            if p:
                out ^= alg._reduce_monomial(raw)
        return F2AlgebraElement(alg, out)

    def __pow__(self, k: int) -> "F2AlgebraElement":
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = self.algebra.one
        for _ in range(k):
            result = result * self
        return result

    def _check(self, other):
        if not isinstance(other, F2AlgebraElement) or other.algebra is not self.algebra:
            raise ValueError("operands live in different algebras")

    def __eq__(self, other):
        return (isinstance(other, F2AlgebraElement) and other.algebra is self.algebra
                and other.monomials == self.monomials)

    def __hash__(self):
        return hash((id(self.algebra), self.monomials))

    def __str__(self) -> str:
        return self.algebra.format_element(self)

    __repr__ = __str__


class PresentedF2Algebra:
    """F2[g_1, ..., g_r] / (relations), graded by generator degrees.

    `precedence` lists generator names from highest to lowest rewriting
    priority; the monomial order is degree first, then lexicographic on
    the permuted exponents.  Relations must be homogeneous.
    """

    def __init__(self, name: str, generators: Sequence[tuple[str, int]],
                 relations: Sequence[Union[str, Iterable[Monomial]]],
                 degree_bound: int = 64,
                 precedence: Optional[Sequence[str]] = None,
                 poincare: Optional[tuple[int, Union[str, Monomial]]] = None):
        self.name = name
        self.gen_names = tuple(n for n, _ in generators)
        self.gen_degrees = tuple(int(d) for _, d in generators)
        if len(set(self.gen_names)) != len(self.gen_names):
            raise ValueError("duplicate generator names")
        self._gen_index = {n: i for i, n in enumerate(self.gen_names)}
        self.degree_bound = degree_bound
        if precedence is None:
            self._prec = tuple(range(len(self.gen_names)))
        else:
            if sorted(precedence) != sorted(self.gen_names):
                raise ValueError("precedence must be a permutation of the generators")
            self._prec = tuple(self._gen_index[n] for n in precedence)
        self.one = F2AlgebraElement(self, frozenset({(0,) * len(self.gen_names)}))
        self.zero = F2AlgebraElement(self, frozenset())
        self.raw_relations = tuple(self._coerce_relation(r) for r in relations)
        for r in self.raw_relations:
            degs = {self.monomial_degree(m) for m in r}
            if len(degs) != 1:
                raise ValueError(f"relation {sorted(r)} is not homogeneous")
        self._complete_rewriting_system()
        self._basis_cache: dict[int, list[Monomial]] = {}
        self.poincare: Optional[tuple[int, Monomial]] = None
        if poincare is not None:
            dim, top = poincare
            top_mon = self._single_monomial(top)
            basis = self.graded_basis(dim)
            if basis != [top_mon]:
                raise ValueError(f"degree {dim} is not spanned by the designated "
                                 f"top monomial alone: basis {basis}")
            self.poincare = (dim, top_mon)

    # -- presentation plumbing ------------------------------------------------

    def _coerce_relation(self, rel) -> frozenset:
        if isinstance(rel, str):
            return frozenset(_parse_raw(self, rel))
        return frozenset(tuple(m) for m in rel)

    def _single_monomial(self, spec: Union[str, Monomial]) -> Monomial:
        if isinstance(spec, str):
            mons = _parse_raw(self, spec)
            if len(mons) != 1:
                raise ValueError(f"{spec!r} is not a single monomial")
            return next(iter(mons))
        return tuple(spec)

    def monomial_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.gen_degrees))

    def _key(self, m: Monomial):
        return (self.monomial_degree(m),) + tuple(m[i] for i in self._prec)

    # -- rewriting ---------------------------------------------------------------

    def _complete_rewriting_system(self) -> None:
        """Degree-bounded Buchberger completion over GF(2).  Homogeneous
        ideals are processed by increasing degree, so the truncated system
        gives exact normal forms in every degree up to the bound."""
        import heapq

        self._rules: list[tuple[Monomial, frozenset]] = []
        self._truncated = False
        tick = itertools.count()
        heap: list = []
        for r in self.raw_relations:
            if r:
                d = max(self.monomial_degree(m) for m in r)
                heapq.heappush(heap, (d, next(tick), frozenset(r)))
        while heap:
            _, _, poly = heapq.heappop(heap)
            reduced = self._reduce_poly(poly)
            if not reduced:
                continue
            lead = max(reduced, key=self._key)
            tail = frozenset(reduced - {lead})
            for other_lead, other_tail in self._rules:
                if not any(a and b for a, b in zip(lead, other_lead)):
                    continue  # coprime leads: the S-polynomial reduces to zero
                lcm = tuple(max(a, b) for a, b in zip(lead, other_lead))
                d = self.monomial_degree(lcm)
                if d > self.degree_bound:
                    self._truncated = True
                    continue
                s1 = tuple(a - b for a, b in zip(lcm, lead))
                s2 = tuple(a - b for a, b in zip(lcm, other_lead))
                spoly = (frozenset(tuple(a + b for a, b in zip(m, s1)) for m in reduced)
                         ^ frozenset(tuple(a + b for a, b in zip(m, s2))
                                     for m in (other_tail | {other_lead})))
                if spoly:
                    heapq.heappush(heap, (d, next(tick), spoly))
            self._rules.append((lead, tail))
        # drop rules with redundant leads, then inter-reduce the tails
        self._rules = [
            (lead, tail) for i, (lead, tail) in enumerate(self._rules)
            if not any(j != i and all(a <= b for a, b in zip(ol, lead))
                       for j, (ol, _) in enumerate(self._rules))]
        self._rules = [(lead, self._reduce_poly(tail)) for lead, tail in self._rules]

    def _reduce_poly(self, poly: Iterable[Monomial], rules=None) -> frozenset:
        rules = self._rules if rules is None else rules
        work = set(poly)
        done: set[Monomial] = set()
        while work:
            m = max(work, key=self._key)
            work.discard(m)
            for lead, tail in rules:
                if all(a <= b for a, b in zip(lead, m)):
                    shift = tuple(b - a for a, b in zip(lead, m))
                    for t in tail:
                        mm = tuple(a + b for a, b in zip(t, shift))
                        if mm in work:
                            work.discard(mm)
                        else:
                            work.add(mm)
                    break
            else:
                done.add(m)
        return frozenset(done)

    def _reduce_monomial(self, raw: Monomial) -> frozenset:
        deg = self.monomial_degree(raw)
        if deg > self.degree_bound and self._truncated:
            raise DegreeBoundExceededError(
                f"degree {deg} exceeds the completion bound {self.degree_bound}")
        return self._reduce_poly({raw})

    # -- public surface ------------------------------------------------------------

    def normal_form(self, e: Union[str, "F2AlgebraElement", Iterable[Monomial]]) -> F2AlgebraElement:
        """Unique normal form of a raw polynomial; idempotent on elements."""
        if isinstance(e, F2AlgebraElement):
            if e.algebra is not self:
                raise ValueError("element belongs to a different algebra")
            return F2AlgebraElement(self, self._reduce_poly(e.monomials))
        if isinstance(e, str):
            return self.parse(e)
        parity: dict[Monomial, int] = {}
        for m in e:
            m = tuple(m)
            parity[m] = parity.get(m, 0) ^ 1
        out: frozenset = frozenset()
        for m, p in parity.items():
            if p:
                out ^= self._reduce_monomial(m)
        return F2AlgebraElement(self, out)

    def parse(self, text: str) -> F2AlgebraElement:
        return _F2Parser(self, text).parse()

    def gen(self, name: str) -> F2AlgebraElement:
        i = self._gen_index[name]
        m = tuple(1 if j == i else 0 for j in range(len(self.gen_names)))
        return self.normal_form([m])

    def graded_basis(self, n: int) -> list[Monomial]:
        """Normal-form monomials of degree n, in descending graded-lex order
        on the exponents (generator-listing order)."""
        if n < 0:
            return []
        if n > self.degree_bound:
            raise DegreeBoundExceededError(f"degree {n} exceeds bound {self.degree_bound}")
        if n not in self._basis_cache:
            leads = [lead for lead, _ in self._rules]
            out = [m for m in self._free_monomials(n)
                   if not any(all(a <= b for a, b in zip(lead, m)) for lead in leads)]
            out.sort(reverse=True)
            self._basis_cache[n] = out
        return list(self._basis_cache[n])

    def _free_monomials(self, n: int) -> list[Monomial]:
        degs = self.gen_degrees

        def rec(i: int, remaining: int):
            if i == len(degs):
                if remaining == 0:
                    yield ()
                return
            step = degs[i]
            for e in range(remaining // step + 1):
                for rest in rec(i + 1, remaining - e * step):
                    yield (e,) + rest

        return list(rec(0, n))

    def brute_quotient_dimension(self, n: int) -> int:
        """Independent oracle: dim of degree n in the quotient, computed by
        GF(2) rank over all free relation multiples of that degree."""
        mons = self._free_monomials(n)
        index = {m: i for i, m in enumerate(mons)}
        rows = []
        for rel in self.raw_relations:
            if not rel:
                continue
            d = self.monomial_degree(next(iter(rel)))
            if d > n:
                continue
            for m in self._free_monomials(n - d):
                row = 0
                for t in rel:
                    row ^= 1 << index[tuple(a + b for a, b in zip(m, t))]
                rows.append(row)
        return len(mons) - gf2_rank(rows)

    def validate_dimensions(self, max_degree: int) -> None:
        """Certify confluence by comparing graded dimensions with the oracle."""
        for n in range(max_degree + 1):
            got = len(self.graded_basis(n))
            want = self.brute_quotient_dimension(n)
            if got != want:
                raise NonConfluentPresentationError(
                    f"degree {n}: rewriting basis has {got} monomials, "
                    f"oracle says {want}")

    # -- Poincare pairing ------------------------------------------------------------

    def pairing(self, e: F2AlgebraElement) -> int:
        """Coefficient of the designated top monomial."""
        if self.poincare is None:
            raise ValueError(f"algebra {self.name} has no Poincare structure")
        return 1 if self.poincare[1] in e.monomials else 0

    # -- formatting --------------------------------------------------------------------

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.gen_names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def format_element(self, e: F2AlgebraElement) -> str:
        if not e.monomials:
            return "0"
        mons = sorted(e.monomials, key=lambda m: (self.monomial_degree(m), m),
                      reverse=True)
        return " + ".join(self.format_monomial(m) for m in mons)

    def __repr__(self) -> str:
        gens = ", ".join(f"{n}:{d}" for n, d in zip(self.gen_names, self.gen_degrees))
        return f"PresentedF2Algebra({self.name}; {gens}; {len(self.raw_relations)} relations)"


# -- parser ---------------------------------------------------------------------


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[-+*^()]))")


class _F2Parser:
    def __init__(self, algebra: PresentedF2Algebra, text: str):
        self.algebra = algebra
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                if text[pos:].strip():
                    raise F2ParseError(f"unexpected character {text[pos]!r}", text, pos)
                break
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self) -> F2AlgebraElement:
        e = self._expr()
        kind, val, pos = self._peek()
        if kind != "end":
            raise F2ParseError(f"unexpected token {val!r}", self.text, pos)
        return e

    def _expr(self) -> F2AlgebraElement:
        # leading sign is harmless over F2
        if self._peek()[0] == "op" and self._peek()[1] in "+-":
            self._next()
        e = self._term()
        while self._peek()[0] == "op" and self._peek()[1] in "+-":
            self._next()
            e = e + self._term()
        return e

    def _term(self) -> F2AlgebraElement:
        e = self._factor()
        while self._peek()[0] == "op" and self._peek()[1] == "*":
            self._next()
            e = e * self._factor()
        return e

    def _factor(self) -> F2AlgebraElement:
        e = self._atom()
        if self._peek()[0] == "op" and self._peek()[1] == "^":
            self._next()
            kind, val, pos = self._next()
            if kind != "int":
                raise F2ParseError("exponent must be an integer", self.text, pos)
            e = e ** int(val)
        return e

    def _atom(self) -> F2AlgebraElement:
        kind, val, pos = self._next()
        if kind == "name":
            if val not in self.algebra._gen_index:
                raise F2ParseError(f"unknown generator {val!r}", self.text, pos)
            return self.algebra.gen(val)
        if kind == "int":
            return self.algebra.one if int(val) % 2 else self.algebra.zero
        if kind == "op" and val == "(":
            e = self._expr()
            kind, val, pos = self._next()
            if val != ")":
                raise F2ParseError("expected ')'", self.text, pos)
            return e
        raise F2ParseError(f"unexpected token {val!r}", self.text, pos)


def _parse_raw(algebra: PresentedF2Algebra, text: str) -> set[Monomial]:
    """Parse without reduction: raw monomial set in the free algebra (used
    for relations, before the rewriting system exists)."""
    r = len(algebra.gen_names)
    unit = (0,) * r

    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip():
                raise F2ParseError(f"unexpected character {text[pos]!r}", text, pos)
            break
        tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()

    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else ("end", "", len(text))

    def nxt():
        nonlocal i
        tok = peek()
        i += 1
        return tok

    def mon_mul(a: set, b: set) -> set:
        out: dict[Monomial, int] = {}
        for m1 in a:
            for m2 in b:
                raw = tuple(x + y for x, y in zip(m1, m2))
                out[raw] = out.get(raw, 0) ^ 1
        return {m for m, p in out.items() if p}

    def atom() -> set:
        kind, val, p = nxt()
        if kind == "name":
            if val not in algebra._gen_index:
                raise F2ParseError(f"unknown generator {val!r}", text, p)
            gi = algebra._gen_index[val]
            return {tuple(1 if j == gi else 0 for j in range(r))}
        if kind == "int":
            return {unit} if int(val) % 2 else set()
        if kind == "op" and val == "(":
            e = expr()
            kind, val, p = nxt()
            if val != ")":
                raise F2ParseError("expected ')'", text, p)
            return e
        raise F2ParseError(f"unexpected token {val!r}", text, p)

    def factor() -> set:
        e = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            nxt()
            kind, val, p = nxt()
            if kind != "int":
                raise F2ParseError("exponent must be an integer", text, p)
            out = {unit}
            for _ in range(int(val)):
                out = mon_mul(out, e)
            return out
        return e

    def term() -> set:
        e = factor()
        while peek()[0] == "op" and peek()[1] == "*":
            nxt()
            e = mon_mul(e, factor())
        return e

    def expr() -> set:
        if peek()[0] == "op" and peek()[1] in "+-":
            nxt()
        e = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            nxt()
            e = e ^ term()
        return e

    out = expr()
    kind, val, p = peek()
    if kind != "end":
        raise F2ParseError(f"unexpected token {val!r}", text, p)
    return out


# -- graded homomorphisms ---------------------------------------------------------


class GradedHom:
    """Degree-preserving algebra map given by generator images; every
    source relation is checked to map to zero at construction."""

    def __init__(self, source: PresentedF2Algebra, target: PresentedF2Algebra,
                 images: Mapping[str, Union[str, int, F2AlgebraElement]],
                 name: str = ""):
        self.source = source
        self.target = target
        self.name = name or f"{source.name}->{target.name}"
        self.images: list[F2AlgebraElement] = []
        for gname, gdeg in zip(source.gen_names, source.gen_degrees):
            if gname not in images:
                raise ValueError(f"missing image for generator {gname!r}")
            img = images[gname]
            if isinstance(img, str):
                img = target.parse(img)
            elif isinstance(img, int):
                img = target.one if img % 2 else target.zero
            if not img.is_zero() and img.degree() != gdeg:
                raise ValueError(f"image of {gname} must be homogeneous of degree {gdeg}")
            self.images.append(img)
        self._monomial_cache: dict[Monomial, F2AlgebraElement] = {}
        for rel in source.raw_relations:
            total = target.zero
            for m in rel:
                total = total + self._apply_monomial(m)
            if not total.is_zero():
                raise ValueError(f"relation {sorted(rel)} does not map to zero "
                                 f"under {self.name}")

    def _apply_monomial(self, m: Monomial) -> F2AlgebraElement:
        if m not in self._monomial_cache:
            out = self.target.one
            for img, e in zip(self.images, m):
                for _ in range(e):
                    out = out * img
            self._monomial_cache[m] = out
        return self._monomial_cache[m]

    def __call__(self, e: Union[str, F2AlgebraElement]) -> F2AlgebraElement:
        if isinstance(e, str):
            e = self.source.parse(e)
        if e.algebra is not self.source:
            raise ValueError("element is not in the source algebra")
        out = self.target.zero
        for m in e.monomials:
            out = out + self._apply_monomial(m)
        return out

    def __repr__(self) -> str:
        return f"GradedHom({self.name})"


def hom_apply(f: GradedHom, e: F2AlgebraElement) -> F2AlgebraElement:
    return f(e)


def dual_pushforward(f: GradedHom, n: int) -> list[list[int]]:
    """Matrix of the homology pushforward dual to f in degree n.

    Row t (indexed by target.graded_basis(n)) lists, over
    source.graded_basis(n), which source monomials contain target monomial
    t in their image: applied to the dual class of a target monomial it
    yields the sum of the dual classes of those source monomials."""
    src = f.source.graded_basis(n)
    tgt = f.target.graded_basis(n)
    images = [f._apply_monomial(m).monomials for m in src]
    return [[1 if t_mon in img else 0 for img in images] for t_mon in tgt]


def dual_pushforward_map(f: GradedHom, n: int) -> dict[Monomial, frozenset]:
    """`dual_pushforward` as a mapping target-monomial -> set of source
    monomials (the support of the pushed-forward dual class)."""
    src = f.source.graded_basis(n)
    tgt = f.target.graded_basis(n)
    matrix = dual_pushforward(f, n)
    return {t: frozenset(s for j, s in enumerate(src) if matrix[i][j])
            for i, t in enumerate(tgt)}


# -- Steenrod squares ---------------------------------------------------------------


class SteenrodData:
    """Squares on generators, extended by the Cartan formula.

    Sq^0 is the identity and Sq^deg the squaring map; those defaults are
    filled in automatically, intermediate values must be supplied.  The
    total square of every relation is checked to vanish."""

    def __init__(self, algebra: PresentedF2Algebra,
                 sq_on_generators: Optional[Mapping] = None):
        self.algebra = algebra
        given = dict(sq_on_generators or {})
        self._series: list[list[F2AlgebraElement]] = []
        for gi, (gname, gdeg) in enumerate(zip(algebra.gen_names, algebra.gen_degrees)):
            gen = algebra.gen(gname)
            row = [None] * (gdeg + 1)
            row[0] = gen
            row[gdeg] = gen * gen
            for i in range(1, gdeg):
                key = (gname, i)
                if key not in given:
                    raise InconsistentSteenrodDataError(
                        f"missing Sq^{i}({gname}); supply it explicitly")
                row[i] = self._coerce(given.pop(key))
            for key in list(given):
                if key[0] == gname:
                    val = self._coerce(given.pop(key))
                    if val != row[key[1]]:
                        raise InconsistentSteenrodDataError(
                            f"Sq^{key[1]}({gname}) contradicts the forced value")
            for i, val in enumerate(row):
                if not val.is_zero() and val.degree() != gdeg + i:
                    raise InconsistentSteenrodDataError(
                        f"Sq^{i}({gname}) must be homogeneous of degree {gdeg + i}")
            self._series.append(row)
        if given:
            raise InconsistentSteenrodDataError(f"unknown generators in data: {sorted(given)}")
        self._mono_cache: dict[Monomial, list[F2AlgebraElement]] = {}
        self._validate_relations()

    def _coerce(self, value) -> F2AlgebraElement:
        if isinstance(value, str):
            return self.algebra.parse(value)
        if isinstance(value, int):
            return self.algebra.one if value % 2 else self.algebra.zero
        return self.algebra.normal_form(value)

    def _convolve(self, a: list[F2AlgebraElement], b: list[F2AlgebraElement]):
        out = [self.algebra.zero] * (len(a) + len(b) - 1)
        for i, ea in enumerate(a):
            if ea.is_zero():
                continue
            for j, eb in enumerate(b):
                if not eb.is_zero():
                    out[i + j] = out[i + j] + ea * eb
        return out

    def _monomial_series(self, m: Monomial) -> list[F2AlgebraElement]:
        if m not in self._mono_cache:
            series = [self.algebra.one]
            for gi, e in enumerate(m):
                for _ in range(e):
                    series = self._convolve(series, self._series[gi])
            self._mono_cache[m] = series
        return self._mono_cache[m]

    def _validate_relations(self) -> None:
        for rel in self.algebra.raw_relations:
            pieces: dict[int, F2AlgebraElement] = {}
            for m in rel:
                for i, val in enumerate(self._monomial_series(m)):
                    pieces[i] = pieces.get(i, self.algebra.zero) + val
            for i, val in pieces.items():
                if not val.is_zero():
                    raise InconsistentSteenrodDataError(
                        f"Sq^{i} of relation {sorted(rel)} is {val}, not 0")

    def sq(self, i: int, e: Union[str, F2AlgebraElement]) -> F2AlgebraElement:
        if isinstance(e, str):
            e = self.algebra.parse(e)
        if i < 0:
            raise ValueError("Sq^i needs i >= 0")
        out = self.algebra.zero
        for m in e.monomials:
            series = self._monomial_series(m)
            if i < len(series):
                out = out + series[i]
        return out

    def total_sq(self, e: F2AlgebraElement) -> dict[int, F2AlgebraElement]:
        deg = e.degree()
        if deg is None:
            return {}
        return {i: self.sq(i, e) for i in range(deg + 1)}


def steenrod_sq(data: SteenrodData, i: int, e) -> F2AlgebraElement:
    return data.sq(i, e)


# -- Wu and Stiefel-Whitney classes ---------------------------------------------------


def wu_classes(algebra: PresentedF2Algebra, steenrod: SteenrodData) -> list[F2AlgebraElement]:
    """The classes v_0 .. v_(d/2) with <v_j * y, top> = <Sq^j(y), top> for
    every y of complementary degree; needs a non-degenerate pairing."""
    if algebra.poincare is None:
        raise ValueError("Wu classes need a Poincare structure")
    d = algebra.poincare[0]
    out = []
    for j in range(d // 2 + 1):
        basis_j = algebra.graded_basis(j)
        basis_c = algebra.graded_basis(d - j)
        if len(basis_j) != len(basis_c):
            raise DegeneratePairingError(
                f"degrees {j} and {d - j} have different ranks")
        rows, rhs = [], []
        for y in basis_c:
            ye = F2AlgebraElement(algebra, frozenset({y}))
            row = 0
            for col, x in enumerate(basis_j):
                xe = F2AlgebraElement(algebra, frozenset({x}))
                if algebra.pairing(xe * ye):
                    row |= 1 << col
            rows.append(row)
            rhs.append(algebra.pairing(steenrod.sq(j, ye)))
        solution = gf2_solve_unique(rows, rhs, len(basis_j))
        mons = frozenset(m for col, m in enumerate(basis_j) if solution >> col & 1)
        out.append(F2AlgebraElement(algebra, mons))
    return out


def stiefel_whitney(algebra: PresentedF2Algebra, steenrod: SteenrodData) -> list[F2AlgebraElement]:
    """w_k = sum_{i+j=k} Sq^i(v_j), for k = 0 .. d."""
    v = wu_classes(algebra, steenrod)
    d = algebra.poincare[0]
    out = []
    for k in range(d + 1):
        total = algebra.zero
        for j in range(min(k, len(v) - 1) + 1):
            total = total + steenrod.sq(k - j, v[j])
        out.append(total)
    return out


# -- builtin presentations ----------------------------------------------------------


def semidihedral_cohomology(degree_bound: int = 64) -> PresentedF2Algebra:
    """Mod-2 cohomology of the semi-dihedral groups of order >= 16 (the
    presentation does not depend on the order)."""
    return PresentedF2Algebra(
        "sd", [("x", 1), ("y", 1), ("u", 3), ("P", 4)],
        ["x*y + x^2", "x*u", "x^3", "u^2 + (x^2 + y^2)*P"],
        degree_bound=degree_bound, precedence=("u", "y", "x", "P"))


def dihedral_cohomology(degree_bound: int = 64) -> PresentedF2Algebra:
    """Mod-2 cohomology of the dihedral group of order 8."""
    return PresentedF2Algebra(
        "d8", [("a", 1), ("b", 1), ("d", 2)], ["a*b + b^2"],
        degree_bound=degree_bound)


def klein_cohomology(degree_bound: int = 64) -> PresentedF2Algebra:
    """Mod-2 cohomology of the Klein four group: a free polynomial algebra."""
    return PresentedF2Algebra("v2", [("p", 1), ("q", 1)], [],
                              degree_bound=degree_bound)


def circle_bundle_cohomology(n: int, degree_bound: int = 64) -> PresentedF2Algebra:
    """Cohomology of the total space of the lens-space bundle over the
    circle: generators s, t in degree 1 and Z in degree 2, with s^2 = 0,
    s*t = t^2, Z^n = 0; Poincare duality in formal dimension 2n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return PresentedF2Algebra(
        f"m{2 * n}", [("s", 1), ("t", 1), ("Z", 2)],
        ["s^2", "s*t + t^2", f"Z^{n}"],
        degree_bound=max(degree_bound, 2 * n),
        poincare=(2 * n, f"t^2*Z^{n - 1}" if n > 1 else "t^2"))


def lens_space_cohomology(n: int, degree_bound: int = 64) -> PresentedF2Algebra:
    """Cohomology of the 2n-1 dimensional lens space of a cyclic 2-group."""
    return PresentedF2Algebra(
        f"lens{2 * n - 1}", [("t", 1), ("X", 2)], ["t^2", f"X^{n}"],
        degree_bound=max(degree_bound, 2 * n),
        poincare=(2 * n - 1, f"t*X^{n - 1}"))


def sd_to_d8_restriction(sd: PresentedF2Algebra, d8: PresentedF2Algebra) -> GradedHom:
    return GradedHom(sd, d8, {"x": 0, "y": "a", "u": "a*d", "P": "d^2"},
                     name="sd->d8")


def d8_to_v2_restriction(d8: PresentedF2Algebra, v2: PresentedF2Algebra) -> GradedHom:
    return GradedHom(d8, v2, {"a": "p", "b": 0, "d": "q*(p + q)"},
                     name="d8->v2")


def sd_to_circle_bundle(sd: PresentedF2Algebra, m: PresentedF2Algebra,
                        p_image: str = "Z^2 + Z*t^2") -> GradedHom:
    return GradedHom(sd, m, {"x": "t", "y": "s", "u": "Z*(t + s)", "P": p_image},
                     name=f"sd->{m.name}")


def circle_bundle_to_lens(m: PresentedF2Algebra, lens: PresentedF2Algebra) -> GradedHom:
    return GradedHom(m, lens, {"s": 0, "t": "t", "Z": "X"},
                     name=f"{m.name}->{lens.name}")


def semidihedral_steenrod(sd: PresentedF2Algebra) -> SteenrodData:
    """Squares on the semi-dihedral presentation.  Sq^1 u = 0 and
    Sq^2 P = u^2 are the structural inputs; the remaining values are the
    unique ones consistent with the relations (P lifts integrally, so its
    Bockstein vanishes)."""
    return SteenrodData(sd, {
        ("u", 1): 0, ("u", 2): "y^2*u + y*P + x*P",
        ("P", 1): 0, ("P", 2): "u^2", ("P", 3): 0,
    })


def circle_bundle_steenrod(m: PresentedF2Algebra,
                           sq1_z: Union[str, F2AlgebraElement]) -> SteenrodData:
    """Steenrod data on the bundle total space for a chosen Sq^1(Z)."""
    return SteenrodData(m, {("Z", 1): sq1_z})


def sq1_branch_enumerate(m: PresentedF2Algebra,
                         require_w1_zero: bool = False) -> list[F2AlgebraElement]:
    """All degree-3 values of Sq^1(Z) on the bundle total space that give
    consistent Steenrod data and kill the Bockstein of the pulled-back
    degree-3 class Z*(t+s).  With `require_w1_zero` the orientation
    obstruction w_1 must also vanish."""
    if m.poincare is None or m.poincare[0] % 8 != 0:
        raise ValueError("expected the total-space algebra of dimension 8k")
    u_image = m.parse("Z*(t + s)")
    admissible = []
    basis3 = m.graded_basis(3)
    for bits in range(1 << len(basis3)):
        mons = frozenset(mon for i, mon in enumerate(basis3) if bits >> i & 1)
        candidate = F2AlgebraElement(m, mons)
        try:
            data = circle_bundle_steenrod(m, candidate)
        except InconsistentSteenrodDataError:
            continue
        if not data.sq(1, u_image).is_zero():
            continue
        if require_w1_zero and not wu_classes(m, data)[1].is_zero():
            continue
        admissible.append(candidate)
    admissible.sort(key=lambda e: sorted(e.monomials), reverse=True)
    return admissible
