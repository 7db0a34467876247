"""Finite 2-groups, their character tables, and virtual characters.

Groups are stored as explicit multiplication tables built from their
presentations; conjugacy classes carry a fixed canonical ordering so the
builtin character tables can be stored positionally.  Subgroup inclusions
are given by generator images and validated exhaustively, which is cheap
at these orders (|G| <= 64).
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence, Union

from .exactnum import CyclotomicNumber, parse_cyclotomic, root_of_unity


class UnsupportedGroupError(ValueError):
    pass


class NotASubgroupMapError(ValueError):
    pass


class NotIrreducibleError(ValueError):
    pass


class NotFreeError(ValueError):
    pass


class OddLengthError(ValueError):
    pass


class ValidationError(ValueError):
    pass


def _cyc(value: Union[int, Fraction, CyclotomicNumber]) -> CyclotomicNumber:
    if isinstance(value, CyclotomicNumber):
        return value
    return CyclotomicNumber.from_rational(value)


class FiniteGroup:
    """A finite group as an index-based multiplication table.

    Element 0 is the identity.  `classes` is the canonical ordered
    partition into conjugacy classes, `class_of[e]` the class index of
    element e, and `generators` maps generator labels to elements.
    """

    def __init__(self, name: str, element_names: Sequence[str],
                 mult: Sequence[Sequence[int]], generators: Mapping[str, int],
                 class_reps: Sequence[str]):
        self.name = name
        self.element_names = tuple(element_names)
        self.mult = tuple(tuple(row) for row in mult)
        self.generators = dict(generators)
        self.order = len(self.element_names)
        self._index = {n: i for i, n in enumerate(self.element_names)}
        self._validate_axioms()
        self.classes, self.class_of = self._conjugacy_classes(class_reps)
        self.class_sizes = tuple(len(c) for c in self.classes)
        self.class_names = tuple("[" + self.element_names[c[0]] + "]" for c in self.classes)

    # -- construction checks ---------------------------------------------

    def _validate_axioms(self) -> None:
        n = self.order
        rng = range(n)
        for a in rng:
            if self.mult[0][a] != a or self.mult[a][0] != a:
                raise ValueError("element 0 is not an identity")
            if sorted(self.mult[a]) != list(rng):
                raise ValueError("multiplication table rows must be permutations")
        for a in rng:
            for b in rng:
                for c in rng:
                    if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]]:
                        raise ValueError("multiplication is not associative")

    def _conjugacy_classes(self, class_reps: Sequence[str]):
        n = self.order
        seen = [False] * n
        raw = []
        for a in range(n):
            if seen[a]:
                continue
            cls = sorted({self.mult[self.mult[g][a]][self.inv(g)] for g in range(n)})
            for x in cls:
                seen[x] = True
            raw.append(tuple(cls))
        ordered = []
        for rep in class_reps:
            idx = self.element(rep)
            match = [c for c in raw if idx in c]
            if not match or match[0] in ordered:
                raise ValueError(f"bad class representative {rep!r}")
            ordered.append(match[0])
        if len(ordered) != len(raw):
            raise ValueError("class representatives do not cover all classes")
        class_of = [0] * n
        for ci, cls in enumerate(ordered):
            for x in cls:
                class_of[x] = ci
        return tuple(ordered), tuple(class_of)

    # -- basic operations --------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self.mult[a].index(0)

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        result = 0
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def element(self, name: str) -> int:
        """Resolve an element given by name or by a product expression of
        named elements, e.g. "s^2" or "t*s"."""
        name = name.strip()
        if name in self._index:
            return self._index[name]
        result = 0
        for factor in name.split("*"):
            factor = factor.strip()
            base, _, exp = factor.partition("^")
            if base not in self._index:
                raise ValueError(f"unknown element {base!r} in group {self.name}")
            k = int(exp) if exp else 1
            result = self.mul(result, self.power(self._index[base], k))
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order {self.order})"


# -- builtin groups --------------------------------------------------------


def _cyclic_group(n: int) -> FiniteGroup:
    names = ["1"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)]
    mult = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(f"c{n}", names, mult, {"g": 1 % n}, names)


def _klein_group() -> FiniteGroup:
    # elements (a, b) in F2 x F2
    keys = [(0, 0), (1, 0), (0, 1), (1, 1)]
    names = ["1", "a", "b", "a*b"]
    idx = {k: i for i, k in enumerate(keys)}
    mult = [[idx[((x1 + x2) % 2, (y1 + y2) % 2)] for (x2, y2) in keys] for (x1, y1) in keys]
    return FiniteGroup("v2", names, mult, {"a": 1, "b": 2}, names)


def _dihedral8_group() -> FiniteGroup:
    # r^a f^b with f r f = r^-1
    keys = [(a, b) for b in range(2) for a in range(4)]
    idx = {k: i for i, k in enumerate(keys)}

    def mul(k1, k2):
        (a1, b1), (a2, b2) = k1, k2
        a = (a1 + (a2 if b1 == 0 else -a2)) % 4
        return (a, (b1 + b2) % 2)

    def name(k):
        a, b = k
        s = "*".join(p for p in (f"r^{a}" if a > 1 else "r" * a, "f" * b) if p)
        return s or "1"

    names = [name(k) for k in keys]
    mult = [[idx[mul(k1, k2)] for k2 in keys] for k1 in keys]
    return FiniteGroup("d8", names, mult, {"r": idx[(1, 0)], "f": idx[(0, 1)]},
                       ["1", "r^2", "r", "f", "r*f"])


def _quaternion8_group() -> FiniteGroup:
    # i^a j^b with j i j^-1 = i^-1 and j^2 = i^2
    keys = [(a, b) for b in range(2) for a in range(4)]
    idx = {k: i for i, k in enumerate(keys)}

    def mul(k1, k2):
        (a1, b1), (a2, b2) = k1, k2
        a = (a1 + (a2 if b1 == 0 else -a2)) % 4
        b = b1 + b2
        if b == 2:
            a, b = (a + 2) % 4, 0
        return (a, b)

    quaternion_names = {(0, 0): "1", (2, 0): "-1", (1, 0): "i", (3, 0): "-i",
                        (0, 1): "j", (2, 1): "-j", (1, 1): "k", (3, 1): "-k"}
    names = [quaternion_names[k] for k in keys]
    mult = [[idx[mul(k1, k2)] for k2 in keys] for k1 in keys]
    return FiniteGroup("q8", names, mult, {"i": idx[(1, 0)], "j": idx[(0, 1)]},
                       ["1", "-1", "i", "j", "k"])


def _semidihedral16_group() -> FiniteGroup:
    # s^a t^b with t s t = s^3, so s^a t * s^c = s^(a+3c) t
    keys = [(a, b) for b in range(2) for a in range(8)]
    idx = {k: i for i, k in enumerate(keys)}

    def mul(k1, k2):
        (a1, b1), (a2, b2) = k1, k2
        a = (a1 + (a2 if b1 == 0 else 3 * a2)) % 8
        return (a, (b1 + b2) % 2)

    def name(k):
        a, b = k
        s = "*".join(p for p in (f"s^{a}" if a > 1 else "s" * a, "t" * b) if p)
        return s or "1"

    names = [name(k) for k in keys]
    mult = [[idx[mul(k1, k2)] for k2 in keys] for k1 in keys]
    return FiniteGroup("sd16", names, mult, {"s": idx[(1, 0)], "t": idx[(0, 1)]},
                       ["1", "s^4", "s", "s^2", "s^5", "t", "t*s"])


@lru_cache(maxsize=None)
def builtin_group(tag: str) -> FiniteGroup:
    """Builtin groups: c2..c64 (cyclic), v2, d8, q8, sd16."""
    tag = tag.lower()
    if tag.startswith("c") and tag[1:].isdigit():
        n = int(tag[1:])
        if 1 <= n <= 64:
            return _cyclic_group(n)
        raise UnsupportedGroupError(f"cyclic order {n} out of supported range 1..64")
    builders = {"v2": _klein_group, "d8": _dihedral8_group,
                "q8": _quaternion8_group, "sd16": _semidihedral16_group}
    if tag not in builders:
        raise UnsupportedGroupError(f"no builtin group {tag!r}")
    return builders[tag]()


# -- character tables -------------------------------------------------------


class CharacterTable:
    """Irreducible characters of a group, one row per irreducible.

    Rows are tuples of CyclotomicNumber indexed by the group's canonical
    class order.  Construction validates row orthonormality exactly.
    """

    def __init__(self, group: FiniteGroup, names: Sequence[str],
                 rows: Sequence[Sequence[Union[int, Fraction, CyclotomicNumber]]],
                 validate: bool = True):
        self.group = group
        self.irreducible_names = tuple(names)
        self.rows = tuple(tuple(_cyc(v) for v in row) for row in rows)
        self._name_index = {n: i for i, n in enumerate(self.irreducible_names)}
        if len(self.rows) != len(group.classes):
            raise ValidationError(
                f"{len(self.rows)} irreducibles for {len(group.classes)} classes")
        for r, row in enumerate(self.rows):
            if len(row) != len(group.classes):
                raise ValidationError(f"irreducible row {r}: expected "
                                      f"{len(group.classes)} values, got {len(row)}")
        if validate:
            self.validate_orthogonality(rows_only=True)

    def inner(self, a: Sequence[CyclotomicNumber], b: Sequence[CyclotomicNumber]) -> CyclotomicNumber:
        """Standard character inner product <a, b> = |G|^-1 sum size * a * conj(b)."""
        total = _cyc(0)
        for size, va, vb in zip(self.group.class_sizes, a, b):
            total = total + size * va * vb.conjugate()
        return total * Fraction(1, self.group.order)

    def validate_orthogonality(self, rows_only: bool = False) -> None:
        k = len(self.rows)
        for i in range(k):
            for j in range(k):
                got = self.inner(self.rows[i], self.rows[j]).as_rational()
                want = 1 if i == j else 0
                if got != want:
                    raise ValidationError(
                        f"row orthogonality fails at rows {i},{j}: <.,.> = {got}")
        if rows_only:
            return
        # column orthogonality: sum_chi chi(c) conj(chi(c')) = |G|/|class c| * delta
        for c in range(k):
            for cp in range(k):
                total = _cyc(0)
                for row in self.rows:
                    total = total + row[c] * row[cp].conjugate()
                want = Fraction(self.group.order, self.group.class_sizes[c]) if c == cp else 0
                if total.as_rational() != want:
                    raise ValidationError(
                        f"column orthogonality fails at classes {c},{cp}")

    def irreducible(self, name: str) -> "VirtualCharacter":
        if name not in self._name_index:
            raise KeyError(f"no irreducible named {name!r} in table for {self.group.name}")
        coeffs = [0] * len(self.rows)
        coeffs[self._name_index[name]] = 1
        return VirtualCharacter(self, tuple(coeffs))

    def trivial(self) -> "VirtualCharacter":
        return self.irreducible(self.irreducible_names[0])

    def constant(self, value: int) -> "VirtualCharacter":
        return self.trivial() * value

    def decompose(self, values: Sequence[CyclotomicNumber]) -> tuple[int, ...]:
        """Express an exact class function in the irreducible basis; the
        coefficients must come out as integers."""
        coeffs = []
        for row in self.rows:
            c = self.inner(values, row).as_rational()
            if c is None or c.denominator != 1:
                raise ValidationError(f"class function is not a virtual character: "
                                      f"coefficient {c} on {row}")
            coeffs.append(int(c))
        return tuple(coeffs)

    def conjugate_partner(self, index: int) -> int:
        """Index of the irreducible equal to the complex conjugate of row `index`."""
        target = tuple(v.conjugate() for v in self.rows[index])
        for j, row in enumerate(self.rows):
            if all((a - b).is_zero() for a, b in zip(row, target)):
                return j
        raise ValidationError("conjugate character missing from table")


class VirtualCharacter:
    """Z-linear combination of the irreducibles of a fixed table."""

    def __init__(self, table: CharacterTable, coeffs: Sequence[int]):
        self.table = table
        self.coeffs = tuple(int(c) for c in coeffs)
        if len(self.coeffs) != len(table.rows):
            raise ValueError("coefficient vector does not match the table")

    @property
    def group(self) -> FiniteGroup:
        return self.table.group

    def value_at(self, class_index: int) -> CyclotomicNumber:
        total = _cyc(0)
        for c, row in zip(self.coeffs, self.table.rows):
            if c:
                total = total + c * row[class_index]
        return total

    def values(self) -> tuple[CyclotomicNumber, ...]:
        return tuple(self.value_at(c) for c in range(len(self.table.rows)))

    @property
    def dim(self) -> int:
        r = self.value_at(0).as_rational()
        assert r is not None and r.denominator == 1
        return int(r)

    def _coerce(self, other) -> "VirtualCharacter":
        if isinstance(other, int):
            return self.table.constant(other)
        if isinstance(other, VirtualCharacter):
            if other.table is not self.table:
                raise ValueError("virtual characters live on different tables")
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return VirtualCharacter(self.table, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return VirtualCharacter(self.table, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return VirtualCharacter(self.table, [other * a for a in self.coeffs])
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        # pointwise product of class functions, re-expressed in the basis
        values = [self.value_at(c) * o.value_at(c) for c in range(len(self.table.rows))]
        return VirtualCharacter(self.table, self.table.decompose(values))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative character powers are not defined")
        result = self.table.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        return (isinstance(other, VirtualCharacter) and other.table is self.table
                and other.coeffs == self.coeffs)

    __hash__ = None

    def conjugate(self) -> "VirtualCharacter":
        values = [self.value_at(c).conjugate() for c in range(len(self.table.rows))]
        return VirtualCharacter(self.table, self.table.decompose(values))

    def __str__(self) -> str:
        parts = []
        for c, name in zip(self.coeffs, self.table.irreducible_names):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(("- " if c < 0 else "+ " if parts else "") + f"{mag}{name}")
        if not parts:
            return "0"
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else out

    __repr__ = __str__


_SQRT2I = root_of_unity(8, 1) + root_of_unity(8, 3)  # sqrt(2) * i, exactly


@lru_cache(maxsize=None)
def character_table(tag_or_group) -> CharacterTable:
    """Character table of a builtin group (stored data, validated exactly)."""
    if isinstance(tag_or_group, FiniteGroup):
        tag = tag_or_group.name
    else:
        tag = str(tag_or_group).lower()
    group = builtin_group(tag)
    if tag.startswith("c"):
        n = group.order
        names = [f"r{j}" for j in range(n)]
        rows = [[root_of_unity(n, j * k) for k in range(n)] for j in range(n)]
        # row orthogonality for cyclic groups is an exact geometric-sum fact;
        # full validation is O(n^3) cyclotomic products, so cap it
        return CharacterTable(group, names, rows, validate=(n <= 16))
    if tag == "v2":
        names = ["r0", "ka", "kb", "kab"]
        rows = [[1, 1, 1, 1],     # trivial
                [1, 1, -1, -1],   # kernel <a>
                [1, -1, 1, -1],   # kernel <b>
                [1, -1, -1, 1]]   # kernel <a*b>
        return CharacterTable(group, names, rows)
    if tag == "d8":
        # classes [1], [r^2], [r], [f], [r*f]
        names = ["r0", "kr", "kf", "krf", "sg"]
        rows = [[1, 1, 1, 1, 1],
                [1, 1, 1, -1, -1],   # kernel <r>
                [1, 1, -1, 1, -1],   # kernel <r^2, f>
                [1, 1, -1, -1, 1],   # kernel <r^2, rf>
                [2, -2, 0, 0, 0]]
        return CharacterTable(group, names, rows)
    if tag == "q8":
        # classes [1], [-1], [i], [j], [k]
        names = ["r0", "k1", "k2", "k3", "tau"]
        rows = [[1, 1, 1, 1, 1],
                [1, 1, -1, 1, -1],   # kernel <j>
                [1, 1, 1, -1, -1],   # kernel <i>
                [1, 1, -1, -1, 1],   # kernel <k>
                [2, -2, 0, 0, 0]]
        return CharacterTable(group, names, rows)
    if tag == "sd16":
        # classes [1], [s^4], [s], [s^2], [s^5], [t], [t*s]
        names = ["r0", "chi2", "chi3", "chi4", "rho", "rho2", "rho5"]
        rows = [[1, 1, 1, 1, 1, 1, 1],
                [1, 1, 1, 1, 1, -1, -1],       # kernel <s> = C8
                [1, 1, -1, 1, -1, 1, -1],      # kernel <s^2, t> = D8
                [1, 1, -1, 1, -1, -1, 1],      # kernel <s^2, t*s> = Q8
                [2, -2, _SQRT2I, 0, -_SQRT2I, 0, 0],
                [2, 2, 0, -2, 0, 0, 0],
                [2, -2, -_SQRT2I, 0, _SQRT2I, 0, 0]]
        return CharacterTable(group, names, rows)
    raise UnsupportedGroupError(f"no builtin character table for {tag!r}")


def virtual_dimension(chi: VirtualCharacter) -> int:
    return chi.dim


def frobenius_schur(chi: VirtualCharacter) -> int:
    """Frobenius-Schur indicator (1/|G|) sum chi(g^2); requires chi irreducible."""
    table = chi.table
    norm = table.inner(chi.values(), chi.values()).as_rational()
    if norm != 1:
        raise NotIrreducibleError(f"<chi,chi> = {norm}, not 1")
    g = table.group
    total = _cyc(0)
    for a in range(g.order):
        total = total + chi.value_at(g.class_of[g.mul(a, a)])
    r = (total * Fraction(1, g.order)).as_rational()
    assert r is not None and r.denominator == 1
    return int(r)


def is_real_type(chi: VirtualCharacter) -> bool:
    """True when chi is a virtual difference of real representations:
    complex irreducibles paired with their conjugates and even
    multiplicity on every quaternionic irreducible."""
    return _reality_check(chi, quaternionic_side=False)


def is_quaternion_type(chi: VirtualCharacter) -> bool:
    """True when chi is a virtual difference of quaternionic representations:
    complex irreducibles conjugate-paired, even multiplicity on every real
    irreducible (a doubled real representation is quaternionic)."""
    return _reality_check(chi, quaternionic_side=True)


def _reality_check(chi: VirtualCharacter, quaternionic_side: bool) -> bool:
    table = chi.table
    for i, c in enumerate(chi.coeffs):
        if c == 0:
            continue
        fs = frobenius_schur(table.irreducible(table.irreducible_names[i]))
        if fs == 0:
            if chi.coeffs[table.conjugate_partner(i)] != c:
                return False
        elif fs == (1 if quaternionic_side else -1):
            if c % 2 != 0:
                return False
    return True


# -- inclusions -------------------------------------------------------------


class InclusionMap:
    """Injective homomorphism H -> G recorded on all elements.

    Built from generator images and validated exhaustively; composition
    and restriction of characters go through `element_map`.
    """

    def __init__(self, source: FiniteGroup, target: FiniteGroup,
                 element_map: Sequence[int]):
        self.source = source
        self.target = target
        self.element_map = tuple(element_map)
        self._validate()

    @staticmethod
    def from_images(source: FiniteGroup, target: FiniteGroup,
                    images: Mapping[str, Union[str, int]]) -> "InclusionMap":
        img: dict[int, int] = {0: 0}
        for gen_name, gen_idx in source.generators.items():
            if gen_name not in images:
                raise NotASubgroupMapError(f"missing image for generator {gen_name!r}")
            value = images[gen_name]
            img[gen_idx] = target.element(value) if isinstance(value, str) else int(value)
        # close under multiplication by generators (source is generated by them)
        frontier = list(img)
        while frontier:
            new = []
            for x in frontier:
                for gen_idx in source.generators.values():
                    y = source.mul(x, gen_idx)
                    if y not in img:
                        img[y] = target.mul(img[x], img[gen_idx])
                        new.append(y)
            frontier = new
        if len(img) != source.order:
            raise NotASubgroupMapError("generator images do not generate the source group")
        return InclusionMap(source, target, [img[x] for x in range(source.order)])

    def _validate(self) -> None:
        if len(self.element_map) != self.source.order:
            raise NotASubgroupMapError("element map has the wrong length")
        if len(set(self.element_map)) != self.source.order:
            raise NotASubgroupMapError("map is not injective")
        for a in range(self.source.order):
            for b in range(self.source.order):
                if self.element_map[self.source.mul(a, b)] != \
                        self.target.mul(self.element_map[a], self.element_map[b]):
                    raise NotASubgroupMapError("map is not a homomorphism")

    def then(self, outer: "InclusionMap") -> "InclusionMap":
        if outer.source is not self.target:
            raise NotASubgroupMapError("inclusions do not compose")
        return InclusionMap(self.source, outer.target,
                            [outer.element_map[x] for x in self.element_map])

    def __repr__(self) -> str:
        return f"InclusionMap({self.source.name} -> {self.target.name})"


def restrict_virtual(chi: VirtualCharacter, inclusion: InclusionMap) -> VirtualCharacter:
    """Restriction along H -> G, re-expressed exactly in H's irreducible basis."""
    if chi.group is not inclusion.target:
        raise ValueError("character is not defined on the inclusion's target group")
    sub = character_table(inclusion.source.name)
    values = []
    for cls in inclusion.source.classes:
        g_class = inclusion.target.class_of[inclusion.element_map[cls[0]]]
        values.append(chi.value_at(g_class))
    return VirtualCharacter(sub, sub.decompose(values))


def find_embeddings(source: FiniteGroup, target: FiniteGroup) -> list[InclusionMap]:
    """All injective homomorphisms source -> target, by brute force over
    generator images."""
    gen_names = list(source.generators)
    found = []
    seen = set()

    def rec(i: int, images: dict):
        if i == len(gen_names):
            try:
                inc = InclusionMap.from_images(source, target, images)
            except NotASubgroupMapError:
                return
            if inc.element_map not in seen:
                seen.add(inc.element_map)
                found.append(inc)
            return
        name = gen_names[i]
        order = source.element_order(source.generators[name])
        for t in range(target.order):
            if target.element_order(t) == order:
                rec(i + 1, {**images, name: t})

    rec(0, {})
    return found


# -- fixed-point-free unitary representations --------------------------------


class FreeUnitaryRep:
    """A fixed-point-free unitary representation given by eigenvalue data.

    `eigen_exponents[c]` lists, for the conjugacy class c, the exponents k
    of the eigenvalues zeta_root_order^k (with multiplicity).  Construct
    through `cyclic_free_rep` or `quaternion_free_rep`; raw eigenvalue
    tables that fail the representation invariants are rejected here.
    """

    def __init__(self, group: FiniteGroup, dimension: int, root_order: int,
                 eigen_exponents: Sequence[Sequence[int]],
                 det_sqrt: Sequence[CyclotomicNumber]):
        self.group = group
        self.dimension = dimension
        self.root_order = root_order
        self.eigen_exponents = tuple(tuple(e % root_order for e in exps)
                                     for exps in eigen_exponents)
        self.det_sqrt = tuple(det_sqrt)
        if len(self.eigen_exponents) != len(group.classes):
            raise ValueError("eigenvalue data must cover every conjugacy class")
        if any(len(exps) != dimension for exps in self.eigen_exponents):
            raise ValueError("each class needs exactly `dimension` eigenvalues")
        if any(e != 0 for e in self.eigen_exponents[0]):
            raise ValueError("identity class must have all eigenvalues 1")
        for c, exps in enumerate(self.eigen_exponents[1:], start=1):
            if any(e % root_order == 0 for e in exps):
                raise NotFreeError(f"unit eigenvalue at non-identity class {c}")
        for c, exps in enumerate(self.eigen_exponents):
            det = _cyc(1)
            for e in exps:
                det = det * root_of_unity(root_order, e)
            if self.det_sqrt[c] * self.det_sqrt[c] != det:
                raise ValueError(f"det_sqrt^2 != det at class {c}")


def cyclic_free_rep(l: int, a: Sequence[int]) -> FreeUnitaryRep:
    """The C_l representation sum of rho_{a_j}; free iff every a_j is odd.

    l must be a power of two (>= 2) so that the canonical square root of
    the determinant, rho_{(sum a_j)/2}, always exists.
    """
    if l < 2 or (l & (l - 1)) != 0:
        raise ValueError("l must be a power of two, l >= 2")
    a = tuple(int(x) for x in a)
    if len(a) % 2 != 0:
        raise OddLengthError("weight tuple must have even length")
    if any(x % 2 == 0 for x in a):
        raise NotFreeError("every weight must be odd for a free action")
    group = builtin_group(f"c{l}")
    half = sum(a) // 2
    exps = [tuple(k * x % l for x in a) for k in range(l)]
    det_sqrt = [root_of_unity(l, k * half) for k in range(l)]
    return FreeUnitaryRep(group, len(a), l, exps, det_sqrt)


def quaternion_free_rep(k: int = 0) -> FreeUnitaryRep:
    """The (k+1)-fold sum of the 2-dimensional representation of Q8.

    Eigenvalues: -1 twice per copy at the central class, +-i once each per
    copy at the three order-4 classes.  Its determinant is trivial, and the
    square root of the determinant is taken to be the trivial character.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    group = builtin_group("q8")
    m = k + 1
    exps = [(0, 0) * m,       # [1]
            (2, 2) * m,       # [-1]
            (1, 3) * m,       # [i]
            (1, 3) * m,       # [j]
            (1, 3) * m]       # [k]
    one = _cyc(1)
    return FreeUnitaryRep(group, 2 * m, 4, exps, [one] * 5)


# -- structured-text ingestion ------------------------------------------------


def table_from_json(data: Union[str, dict]) -> CharacterTable:
    """Build a user-supplied character table from JSON.

    Expected fields: `group` (a builtin tag), `classes` (list of
    {name, size} matching the builtin class order), `irreducibles`
    (list of {name, values} with values in the cyclotomic text format).
    Validation failures name the offending row/class index.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        group = builtin_group(data["group"])
    except KeyError:
        raise ValidationError("missing field 'group'")
    classes = data.get("classes")
    if classes is not None:
        if len(classes) != len(group.classes):
            raise ValidationError(f"expected {len(group.classes)} classes, "
                                  f"got {len(classes)}")
        for ci, cls in enumerate(classes):
            if int(cls["size"]) != group.class_sizes[ci]:
                raise ValidationError(f"class {ci}: size {cls['size']} != "
                                      f"{group.class_sizes[ci]}")
    rows, names = [], []
    for ri, irr in enumerate(data.get("irreducibles", [])):
        names.append(irr.get("name", f"x{ri}"))
        values = []
        for ci, text in enumerate(irr["values"]):
            try:
                values.append(parse_cyclotomic(text) if isinstance(text, str)
                              else _cyc(text))
            except (ValueError, ArithmeticError) as exc:
                raise ValidationError(f"irreducible row {ri}, class {ci}: {exc}")
        rows.append(values)
    try:
        return CharacterTable(group, names, rows)
    except ValidationError as exc:
        raise ValidationError(f"character table for {group.name}: {exc}")


def inclusion_from_json(data: Union[str, dict]) -> InclusionMap:
    """Build an inclusion from JSON fields `source`, `target`, `images`."""
    if isinstance(data, str):
        data = json.loads(data)
    source = builtin_group(data["source"])
    target = builtin_group(data["target"])
    return InclusionMap.from_images(source, target, data["images"])
