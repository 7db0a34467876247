"""Scenario harness: every desk-checkable numeric or algebraic claim in
the verified material, recomputed from the underlying engines.

Each claim is re-derived from lens data, character restrictions and
cohomology presentations; nothing is asserted from memory except the
reference table of kernel orders, which is itself cross-checked against
recomputed totals.  Matrix entries follow the documented normalization:
an eta value is halved exactly when the refined R/2Z range applies to
its character in that dimension, so displayed entries carry the same
order information as the raw invariants.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence, Union

from . import f2ring
from .eta import (LensSpec, ManifoldSpec, Modulus, eta_donnelly, eta_of,
                  eta_order, manifold_free_rep, span_order_lower_bound,
                  thm31_modulus)
from .f2ring import (circle_bundle_cohomology, circle_bundle_steenrod,
                     circle_bundle_to_lens, d8_to_v2_restriction,
                     dihedral_cohomology, dual_pushforward_map, gf2_echelon,
                     klein_cohomology, lens_space_cohomology,
                     sd_to_circle_bundle, sd_to_d8_restriction,
                     semidihedral_cohomology, sq1_branch_enumerate,
                     stiefel_whitney)
from .grouprep import (InclusionMap, VirtualCharacter, builtin_group,
                       character_table, find_embeddings, restrict_virtual)


@dataclass
class ClaimResult:
    claim_id: str
    anchor: str
    expected: str
    computed: str
    status: str

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    return str(value)


def claim(claim_id: str, anchor: str, expected, computed) -> ClaimResult:
    status = "pass" if expected == computed else "fail"
    return ClaimResult(claim_id, anchor, _fmt(expected), _fmt(computed), status)


# -- reference table of kernel orders ----------------------------------------


_KERAP_EXPLICIT = {
    0: ((), 0), 1: ((), 0), 2: ((), 0),
    3: ((4, 8, 8), 0),
    4: ((), 1),
    5: ((2,), 0),
    6: ((), 0),
    7: ((2, 4, 16, 32), 0),
    8: ((2,), 1),
    9: ((2, 2), 0),
    10: ((), 1),
    11: ((8, 16, 128, 128), 0),
    12: ((), 2),
    13: ((4,), 0),
    14: ((), 1),
    15: ((2, 8, 16, 256, 512), 0),
}


def kerap_lookup(n: int) -> tuple[tuple[int, ...], int]:
    """Reference row for dimension n: cyclic orders of the one-column
    summands and the rank of the two-column elementary abelian part."""
    if n < 0:
        raise ValueError("dimension must be >= 0")
    if n <= 15:
        return _KERAP_EXPLICIT[n]
    k, r = divmod(n, 8)
    if r == 0:
        return ((2, 2), k)
    if r == 1:
        return ((2, 2, 2 ** k), 0)
    if r == 2:
        return ((), k)
    if r == 3:
        orders = (2 ** (k - 1), 2 * 4 ** k, 4 ** (k + 1), 8 * 16 ** k, 8 * 16 ** k)
        return (tuple(o for o in orders if o > 1), 0)
    if r == 4:
        return ((), k + 1)
    if r == 5:
        return ((2 ** (k + 1),), 0)
    if r == 6:
        return ((), k)
    orders = (2 ** k, 2 * 4 ** k, 4 ** (k + 1), 16 ** (k + 1), 2 * 16 ** (k + 1))
    return (tuple(o for o in orders if o > 1), 0)


def table_ko_order(n: int) -> int:
    """|ko_n| for odd n, derived from the reference rows: in odd dimensions
    the whole group sits in the kernel, so the order is the product of the
    one-column summand orders."""
    if n % 2 == 0:
        raise ValueError("derived ko orders are only tabulated in odd dimensions")
    orders, _ = kerap_lookup(n)
    total = 1
    for o in orders:
        total *= o
    return total


# -- shared scenario data -----------------------------------------------------


@lru_cache(maxsize=1)
def _setup():
    sd = builtin_group("sd16")
    tsd = character_table("sd16")
    tq8 = character_table("q8")
    c8_in_sd = InclusionMap.from_images(builtin_group("c8"), sd, {"g": "s"})
    c2_in_sd = InclusionMap.from_images(builtin_group("c2"), sd, {"g": "t"})
    return sd, tsd, tq8, c8_in_sd, c2_in_sd


def choose_q8_labeling() -> tuple[InclusionMap, str]:
    """Search the embeddings of the quaternion subgroup <s^2, t*s> and pick
    one under which rho2 restricts to k1 + k3; the choice fixes which
    quaternion cyclic subgroup is called <i>."""
    sd, tsd, tq8, _, _ = _setup()
    q8 = builtin_group("q8")
    want = tq8.irreducible("k1") + tq8.irreducible("k3")
    rho2 = tsd.irreducible("rho2")
    for inc in find_embeddings(q8, sd):
        if restrict_virtual(rho2, inc) == want:
            desc = ", ".join(f"{g} -> {sd.element_names[inc.element_map[idx]]}"
                             for g, idx in q8.generators.items())
            return inc, desc
    raise RuntimeError("no admissible quaternion labeling found")


def _six_columns() -> list[tuple[str, VirtualCharacter]]:
    """The six-tuple of virtual characters used for the odd-dimensional
    span matrix.  The source display names only five and leaves a gap at
    the fourth slot; 2 - rho2 is the unique completion consistent with
    every stated cell, and is what the kappa-restriction argument uses."""
    _, tsd, _, _, _ = _setup()
    one = tsd.trivial()
    rho = tsd.irreducible("rho")
    rho5 = tsd.irreducible("rho5")
    return [
        ("1-chi3", one - tsd.irreducible("chi3")),
        ("1-chi2", one - tsd.irreducible("chi2")),
        ("1-chi4", one - tsd.irreducible("chi4")),
        ("2-rho2", 2 * one - tsd.irreducible("rho2")),
        ("2-rho", 2 * one - rho),
        ("4+rho*rho5-2rho-2rho5", 4 * one + rho * rho5 - 2 * rho - 2 * rho5),
    ]


def normalized_entry(manifold: ManifoldSpec, chi: VirtualCharacter) -> Fraction:
    """Matrix-entry normalization: halve the eta value exactly when the
    refined R/2Z range applies, so the R/Z entry keeps the full order.
    The range is a property of the homomorphism attached to the ambient
    character, not of its restriction."""
    value = eta_of(manifold, chi)
    if thm31_modulus(manifold.dimension, chi) is Modulus.TWO_Z:
        return value / 2
    return value


def _recursion_tuple(m: int, base: tuple[int, ...]) -> tuple[int, ...]:
    return base + (1, 1, 5, 5) * m


def _quaternion_eta(k: int, power: int) -> Fraction:
    tq8 = character_table("q8")
    chi = (2 - tq8.irreducible("tau")) ** power
    return eta_of(ManifoldSpec(quaternion_k=k), chi)


def quaternion_certificate_matrix(m: int, residue: int) -> list[list[Fraction]]:
    """The determinant certificate for dimension 8m+residue (residue 3 or 7):
    columns are the quaternion quotient in that dimension and its Bott
    partner 8 below; rows are powers of (2 - tau), normalized."""
    tq8 = character_table("q8")
    tau = tq8.irreducible("tau")
    if residue == 3:
        ks = [2 * m, 2 * m - 2]
        powers = [1, 2]
        dim = 8 * m + 3
    elif residue == 7:
        ks = [2 * m + 1, 2 * m - 1]
        powers = [1, 3]
        dim = 8 * m + 7
    else:
        raise ValueError("residue must be 3 or 7")
    if m == 0:
        ks, powers = ks[:1], powers[:1]
    rows = []
    for p in powers:
        chi = (2 - tau) ** p
        factor = Fraction(1, 2) if thm31_modulus(dim, chi) is Modulus.TWO_Z else Fraction(1)
        rows.append([_quaternion_eta(k, p) * factor for k in ks])
    return rows


# -- verifiers -----------------------------------------------------------------


def verify_q8_orders(m_max: int = 3) -> list[ClaimResult]:
    """Closed forms and orders for the quaternion sphere quotients, and the
    2x2 determinant certificates in dimensions 8m+3 and 8m+7."""
    if m_max > 8:
        raise ValueError("m_max is capped at 8")
    out = []
    for k in range(2 * m_max + 2):
        f1 = Fraction(1, 2 ** (2 * k + 3)) + Fraction(3, 2 ** (k + 2))
        f2 = Fraction(2, 4 ** (k + 1)) + Fraction(3, 2 ** (k + 1))
        f3 = Fraction(2, 4 ** k) + Fraction(6, 2 ** (k + 1))
        out.append(claim(f"q8.k{k}.eta1", "eta(M_Q^(4k+3))(2-tau) closed form",
                         f1, _quaternion_eta(k, 1)))
        out.append(claim(f"q8.k{k}.eta2", "eta(M_Q^(4k+3))((2-tau)^2) closed form",
                         f2, _quaternion_eta(k, 2)))
        out.append(claim(f"q8.k{k}.eta3", "eta(M_Q^(4k+3))((2-tau)^3) closed form",
                         f3, _quaternion_eta(k, 3)))
        out.append(claim(f"q8.k{k}.order_z", "order of eta(2-tau) in R/Z",
                         2 ** (2 * k + 3), eta_order(f1, Modulus.Z)))
        out.append(claim(f"q8.k{k}.order_2z", "order of eta(2-tau) in R/2Z",
                         2 ** (2 * k + 4), eta_order(f1, Modulus.TWO_Z)))
    for m in range(m_max + 1):
        d3 = span_order_lower_bound(quaternion_certificate_matrix(m, 3))
        out.append(claim(f"q8.m{m}.det3", "determinant order certificate, dim 8m+3",
                         2 ** (6 * m + 3), d3))
        d7 = span_order_lower_bound(quaternion_certificate_matrix(m, 7))
        out.append(claim(f"q8.m{m}.det7", "determinant order certificate, dim 8m+7",
                         2 ** (6 * m + 6), d7))
    return out


def _difference_eta(m1: ManifoldSpec, m2: ManifoldSpec, chi: VirtualCharacter) -> Fraction:
    # through the Donnelly engine: the individual restrictions may be
    # non-reduced; only the difference carries order semantics
    values = []
    for m in (m1, m2):
        rho = restrict_virtual(chi, m.inclusion) if m.inclusion is not None else chi
        values.append(eta_donnelly(manifold_free_rep(m), rho))
    return values[0] - values[1]


def verify_sd16_odd(m_max: int = 3) -> list[ClaimResult]:
    """The odd-dimensional span matrix over the semi-dihedral group: every
    named cell recomputed by restriction and naturality, the column
    cancelation, and the order accounting against the reference table."""
    if m_max > 4:
        raise ValueError("m_max is capped at 4")
    sd, tsd, tq8, c8_in_sd, c2_in_sd = _setup()
    q8_in_sd, labeling = choose_q8_labeling()
    q8 = builtin_group("q8")
    cols = _six_columns()
    out = [claim("sd.labeling", "a quaternion labeling with rho2 -> k1+k3 exists "
                 f"(chosen: {labeling})", True, True)]
    out.append(claim("sd.kappa_restrict", "rho2 restricted to the quaternion subgroup",
                     str(tq8.irreducible("k1") + tq8.irreducible("k3")),
                     str(restrict_virtual(tsd.irreducible("rho2"), q8_in_sd))))

    c4_in_q8_i = InclusionMap.from_images(builtin_group("c4"), q8, {"g": "i"})
    c4_in_q8_j = InclusionMap.from_images(builtin_group("c4"), q8, {"g": "j"})

    for m in range(m_max + 1):
        n3, n7 = 8 * m + 3, 8 * m + 7
        # manifolds included into the ambient group
        lens_row = ManifoldSpec(lens=LensSpec(8, _recursion_tuple(m, (1, 1))),
                                inclusion=c8_in_sd, label=f"L^{n3}")
        rp_row = ManifoldSpec(lens=LensSpec(2, (1,) * (4 * m + 2)),
                              inclusion=c2_in_sd, label=f"RP^{n3}")
        m1_row = ManifoldSpec(lens=LensSpec(4, (1,) * (4 * m + 2)),
                              inclusion=c4_in_q8_i.then(q8_in_sd), label="M1")
        m2_row = ManifoldSpec(lens=LensSpec(4, (1,) * (4 * m + 2)),
                              inclusion=c4_in_q8_j.then(q8_in_sd), label="M2")
        mq_row = ManifoldSpec(quaternion_k=2 * m, inclusion=q8_in_sd,
                              label=f"M_Q^{n3}")

        # kappa identity: rho2 against M1 - M2, refined range in dim 8m+3
        kval3 = _difference_eta(m1_row, m2_row, tsd.irreducible("rho2"))
        out.append(claim(f"sd.m{m}.kappa_value3",
                         "|eta(M1-M2)(rho2)| = 2^-(2m+1) in dim 8m+3",
                         Fraction(1, 2 ** (2 * m + 1)), abs(kval3)))
        out.append(claim(f"sd.m{m}.kappa_order3",
                         "order 2^(2m+2) in R/2Z (real character, dim 3 mod 8)",
                         2 ** (2 * m + 2), eta_order(kval3, Modulus.TWO_Z)))
        m1_row7 = ManifoldSpec(lens=LensSpec(4, (1,) * (4 * m + 4)),
                               inclusion=c4_in_q8_i.then(q8_in_sd))
        m2_row7 = ManifoldSpec(lens=LensSpec(4, (1,) * (4 * m + 4)),
                               inclusion=c4_in_q8_j.then(q8_in_sd))
        kval7 = _difference_eta(m1_row7, m2_row7, tsd.irreducible("rho2"))
        out.append(claim(f"sd.m{m}.kappa_value7",
                         "|eta(M1-M2)(rho2)| = 2^-(2m+2) in dim 8m+7",
                         Fraction(1, 2 ** (2 * m + 2)), abs(kval7)))
        out.append(claim(f"sd.m{m}.kappa_order7", "order 2^(2m+2) in R/Z",
                         2 ** (2 * m + 2), eta_order(kval7, Modulus.Z)))

        # the lens row: entries under columns 1..3, magnitudes as displayed
        l_entries = [abs(normalized_entry(lens_row, chi)) for _, chi in cols[:3]]
        out.append(claim(f"sd.m{m}.L_row",
                         "lens row entries (2^-(m+1), 0, 2^-(m+1)) at columns 1-3",
                         (Fraction(1, 2 ** (m + 1)), Fraction(0), Fraction(1, 2 ** (m + 1))),
                         tuple(l_entries)))

        # the projective-space row, all six columns, magnitudes
        rp_entries = [abs(normalized_entry(rp_row, chi)) for _, chi in cols]
        e = Fraction(1, 2 ** (4 * m + 3))
        out.append(claim(f"sd.m{m}.RP_row",
                         "projective row (0, e, e, e, 2e, 2e) with e = 2^-(4m+3); "
                         "the source prints e in the last cell, but recomputation "
                         "gives 2e (the order arguments never use that cell)",
                         (Fraction(0), e, e, e, 2 * e, 2 * e), tuple(rp_entries)))

        # quaternion rows: columns 5 and 6 match the Q8-side closed forms
        tau = tq8.irreducible("tau")
        mq5 = normalized_entry(mq_row, cols[4][1])
        mq6 = normalized_entry(mq_row, cols[5][1])
        f1 = Fraction(1, 2 ** (4 * m + 3)) + Fraction(3, 2 ** (2 * m + 2))
        f2h = (Fraction(2, 4 ** (2 * m + 1)) + Fraction(3, 2 ** (2 * m + 1))) / 2
        out.append(claim(f"sd.m{m}.MQ_col5", "quaternion row, (2-rho) column = "
                         "eta(M_Q)(2-tau), unhalved (complex pair, R/Z)", f1, mq5))
        out.append(claim(f"sd.m{m}.MQ_col6", "quaternion row, real-combination "
                         "column = eta(M_Q)((2-tau)^2)/2", f2h, mq6))
        out.append(claim(f"sd.m{m}.naturality5",
                         "restriction naturality: ambient (2-rho) equals (2-tau) on Q8",
                         eta_of(ManifoldSpec(quaternion_k=2 * m), 2 - tau), eta_of(mq_row, cols[4][1])))
        out.append(claim(f"sd.m{m}.naturality6",
                         "restriction naturality: the real combination equals (2-tau)^2 on Q8",
                         eta_of(ManifoldSpec(quaternion_k=2 * m), (2 - tau) ** 2),
                         eta_of(mq_row, cols[5][1])))

        # column cancelation col1 + col3 - col2, exact values
        def cancel(row: ManifoldSpec) -> Fraction:
            vals = [normalized_entry(row, chi) for _, chi in cols[:3]]
            return vals[0] + vals[2] - vals[1]

        out.append(claim(f"sd.m{m}.cancel_L", "canceled column: lens entry 2^-m",
                         Fraction(1, 2 ** m), abs(cancel(lens_row))))
        out.append(claim(f"sd.m{m}.cancel_rest",
                         "canceled column vanishes on the other rows",
                         (Fraction(0),) * 3,
                         (cancel(rp_row), cancel(m1_row) - cancel(m2_row), cancel(mq_row))))

        # order accounting in dim 8m+3
        rp_q8hat = eta_of(rp_row, cols[2][1])
        out.append(claim(f"sd.m{m}.RP_order3", "projective class order 2^(4m+3) in R/2Z",
                         2 ** (4 * m + 3), eta_order(rp_q8hat, Modulus.TWO_Z)))
        det3 = span_order_lower_bound(quaternion_certificate_matrix(m, 3))
        out.append(claim(f"sd.m{m}.account3",
                         "2^(2m+2) * 8^(2m+1) * 2^(4m+3) = 2^(8+12m)",
                         2 ** (8 + 12 * m),
                         2 ** (2 * m + 2) * det3 * 2 ** (4 * m + 3)))
        out.append(claim(f"sd.m{m}.c8_factor3", "canceled lens entry has order 2^m in R/Z",
                         2 ** m, eta_order(cancel(lens_row), Modulus.Z)))
        out.append(claim(f"sd.m{m}.total3",
                         "2^(8+12m) * 2^m = 2^(8+13m) = derived |ko_(8m+3)|",
                         (2 ** (8 + 13 * m), 2 ** (8 + 13 * m)),
                         (2 ** (8 + 12 * m) * 2 ** m, table_ko_order(n3))))

        # order accounting in dim 8m+7
        rp_row7 = ManifoldSpec(lens=LensSpec(2, (1,) * (4 * m + 4)),
                               inclusion=c2_in_sd, label=f"RP^{n7}")
        rp7 = eta_of(rp_row7, cols[2][1])
        out.append(claim(f"sd.m{m}.RP_order7", "projective class order 2^(4m+4) in R/Z",
                         2 ** (4 * m + 4), eta_order(rp7, Modulus.Z)))
        det7 = span_order_lower_bound(quaternion_certificate_matrix(m, 7))
        out.append(claim(f"sd.m{m}.account7",
                         "2^(4m+4) * 2^(2m+1) * 8^(2m+2) = 2^(11+12m)",
                         2 ** (11 + 12 * m),
                         2 ** (4 * m + 4) * 2 ** (2 * m + 1) * det7))
        lens7 = ManifoldSpec(lens=LensSpec(8, _recursion_tuple(m, (1, 1, 1, 1))),
                             inclusion=c8_in_sd, label=f"L^{n7}")
        tc8 = character_table("c8")
        doubled = 2 * (tc8.irreducible("r4") - tc8.irreducible("r0"))
        quat_val = eta_of(ManifoldSpec(lens=lens7.lens), doubled)
        out.append(claim(f"sd.m{m}.quat_factor7",
                         "eta(L^(8m+7))(2r4-2r0) keeps order 2^(m+1) in R/2Z "
                         "(a doubled real character is quaternionic)",
                         2 ** (m + 1), eta_order(quat_val, Modulus.TWO_Z)))
        out.append(claim(f"sd.m{m}.total7",
                         "2^(11+12m) * 2^(m+1) = 2^(12+13m) = derived |ko_(8m+7)|",
                         (2 ** (12 + 13 * m), 2 ** (12 + 13 * m)),
                         (2 ** (11 + 12 * m) * 2 ** (m + 1), table_ko_order(n7))))
    return out


def verify_sd16_dim5_13() -> list[ClaimResult]:
    """The four bundle values in dimensions 5 and 13 and their summed orders."""
    sd, tsd, _, c8_in_sd, _ = _setup()
    tc8 = character_table("c8")
    r0, r1, r3 = (tc8.irreducible(f"r{j}") for j in (0, 1, 3))
    out = []
    b5 = LensSpec(8, (1, 1), kind="bundle")
    b13 = LensSpec(8, (1,) * 6, kind="bundle")
    vals = {}
    for tag, spec, rho, expected in [
        ("d5.rho1", b5, r0 - r1, Fraction(-7, 8)),
        ("d5.rho3", b5, r0 - r3, Fraction(-5, 8)),
        ("d13.rho1", b13, r0 - r1, Fraction(-17, 8) - Fraction(1, 32)),
        ("d13.rho3", b13, r0 - r3, Fraction(-17, 8) + Fraction(1, 32)),
    ]:
        got = eta_of(ManifoldSpec(lens=spec), rho)
        vals[tag] = got
        out.append(claim(tag, "displayed lens-bundle eta value", expected, got))
    s5 = vals["d5.rho1"] + vals["d5.rho3"]
    s13 = vals["d13.rho1"] + vals["d13.rho3"]
    out.append(claim("d5.sum_order", "dim 5 sum has order 2 in R/Z",
                     2, eta_order(s5, Modulus.Z)))
    out.append(claim("d13.sum_order", "dim 13 sum has order 4 in R/Z "
                     "(source states the sum as 17/4; the displayed summands "
                     "add to -17/4, same order)", 4, eta_order(s13, Modulus.Z)))
    # naturality: the ambient character 2 - rho restricts to r0 sums
    restricted = restrict_virtual(2 * tsd.trivial() - tsd.irreducible("rho"), c8_in_sd)
    out.append(claim("d5.restrict", "2 - rho restricts to 2r0 - r1 - r3 on C8",
                     str(2 * tc8.irreducible("r0") - r1 - r3), str(restricted)))
    ambient = eta_of(ManifoldSpec(lens=b5, inclusion=c8_in_sd),
                     2 * tsd.trivial() - tsd.irreducible("rho"))
    out.append(claim("d5.naturality", "ambient evaluation equals the summand total",
                     s5, ambient))
    return out


def verify_prop41(n: int) -> list[ClaimResult]:
    """The lens-bundle-over-circle total space in dimension 2n, n = 4k:
    pullback well-definedness, the two Bockstein branches, the spin
    conclusion, and the image of the top dual class."""
    if n % 4 != 0 or not 4 <= n <= 16:
        raise ValueError("n must be a multiple of 4 with 4 <= n <= 16")
    out = []
    sd = semidihedral_cohomology()
    m_alg = circle_bundle_cohomology(n)
    lens = lens_space_cohomology(n)
    tag = f"p41.n{n}"

    pullback = sd_to_circle_bundle(sd, m_alg)  # P -> Z^2 + Z*t^2
    out.append(claim(f"{tag}.pullback_ok",
                     "x->t, y->s, u->Z(t+s), P->Z^2+Zt^2 kills all four relations",
                     True, True))
    alt = sd_to_circle_bundle(sd, m_alg, p_image="Z^2")
    out.append(claim(f"{tag}.pullback_alt_ok",
                     "the ring map also exists with P->Z^2", True, True))

    branches = sq1_branch_enumerate(m_alg)
    out.append(claim(f"{tag}.branches", "admissible Bockstein values on Z",
                     "(s*Z, s*Z + t*Z)",
                     "(" + ", ".join(str(b) for b in branches) + ")"))

    spin_data = circle_bundle_steenrod(m_alg, m_alg.parse("Z*s"))
    sq2_p_spin = spin_data.sq(2, pullback("P"))
    out.append(claim(f"{tag}.p_forced",
                     "Sq^2 compatibility forces the Zt^2 term in the image of P",
                     (str(pullback("u") ** 2), False),
                     (str(sq2_p_spin),
                      spin_data.sq(2, alt("P")) == alt("u") ** 2)))

    nonspin_data = circle_bundle_steenrod(m_alg, m_alg.parse("Z*(t+s)"))
    w_nonspin = stiefel_whitney(m_alg, nonspin_data)
    out.append(claim(f"{tag}.nonspin_w1", "the branch Sq^1 Z = Z(t+s) gives w1 = t",
                     "t", str(w_nonspin[1])))
    to_lens = circle_bundle_to_lens(m_alg, lens)
    out.append(claim(f"{tag}.nonspin_contradiction",
                     "that w1 restricts to the nonzero class on the lens fibre",
                     False, to_lens(w_nonspin[1]).is_zero()))
    w_spin = stiefel_whitney(m_alg, spin_data)
    out.append(claim(f"{tag}.spin_w", "the branch Sq^1 Z = Zs gives w1 = w2 = 0",
                     ("0", "0"), (str(w_spin[1]), str(w_spin[2])))),
    out.append(claim(f"{tag}.branch_filter", "requiring w1 = 0 selects the spin branch",
                     "(s*Z)",
                     "(" + ", ".join(str(b) for b in
                                     sq1_branch_enumerate(m_alg, require_w1_zero=True)) + ")"))

    top = m_alg.poincare[1]
    push = dual_pushforward_map(pullback, 2 * n)
    want = sd.parse(f"y*u*P^{(n - 2) // 2}").monomials
    out.append(claim(f"{tag}.top_push",
                     "the top dual class pushes to the dual of y*u*P^(2k-1)",
                     sorted(want), sorted(push[top])))
    return out


# -- homology span machinery ---------------------------------------------------


def _bitmask(monomials, basis_index) -> int:
    mask = 0
    for m in monomials:
        mask |= 1 << basis_index[m]
    return mask


def klein_psc_generators(n: int) -> list[frozenset]:
    """Dual-basis supports of the positive-scalar-curvature generators of
    H_n of the Klein four group: products of projective spaces in
    dimensions 2 mod 4; products with a line and projective bundles over
    projective spaces in dimensions 0 mod 4."""
    if n % 2 != 0 or n < 2:
        raise ValueError("n must be even and >= 2")
    gens = []
    if n % 4 == 2:
        for a in range(3, n - 2, 4):
            b = n - a
            if b % 4 == 3:
                gens.append(frozenset({(a, b)}))
    else:
        gens.append(frozenset({(n - 1, 1)}))
        gens.append(frozenset({(1, n - 1)}))
        for a in range(5, n, 4):
            gens.append(frozenset({(a, n - a), (a - 2, n - a + 2)}))
    return gens


@lru_cache(maxsize=4)
def _span_algebras(degree_bound: int = 64):
    d8 = dihedral_cohomology(degree_bound)
    v2 = klein_cohomology(degree_bound)
    sd = semidihedral_cohomology(degree_bound)
    return d8, v2, sd, d8_to_v2_restriction(d8, v2), sd_to_d8_restriction(sd, d8)


def dihedral_psc_span(n: int) -> tuple[list[int], list, "f2ring.PresentedF2Algebra"]:
    """Push the Klein-subgroup generators into the dihedral homology and
    return (row space bitmasks, dihedral basis, dihedral algebra)."""
    d8, v2, _, f_dv, _ = _span_algebras()
    basis = d8.graded_basis(n)
    index = {m: i for i, m in enumerate(basis)}
    push = dual_pushforward_map(f_dv, n)
    rows = []
    for gen in klein_psc_generators(n):
        support = frozenset()
        for v2_mon in gen:
            support ^= push[v2_mon]
        rows.append(_bitmask(support, index))
    return gf2_echelon(rows), basis, d8


def expected_dihedral_span(n: int) -> list[int]:
    """The stated span: duals of a^(4i) d^(4j+3) in dimensions 2 mod 4 and
    of a^(4i+2) d^(4j+1) in dimensions 0 mod 4."""
    d8, _, _, _, _ = _span_algebras()
    basis = d8.graded_basis(n)
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    if n % 4 == 2:
        targets = [(4 * i, 0, 4 * j + 3) for i in range(n) for j in range(n)
                   if 4 * i + 2 * (4 * j + 3) == n]
    else:
        targets = [(4 * i + 2, 0, 4 * j + 1) for i in range(n) for j in range(n)
                   if 4 * i + 2 + 2 * (4 * j + 1) == n]
    for t in targets:
        if t in index:
            rows.append(1 << index[t])
    return gf2_echelon(rows)


def verify_prop51(n_max: int = 40) -> list[ClaimResult]:
    """Klein-to-dihedral pushforward spans and their dimension count."""
    if n_max > 64:
        raise ValueError("n_max is capped at 64")
    out = []
    for n in range(2, n_max + 1, 2):
        k = n // 4
        span, basis, d8 = dihedral_psc_span(n)
        expected = expected_dihedral_span(n)
        out.append(claim(f"p51.n{n}.span",
                         "pushforward span equals the stated dual classes",
                         [f"{e:b}" for e in expected], [f"{s:b}" for s in span]))
        out.append(claim(f"p51.n{n}.count", "span dimension floor((k+1)/2)",
                         (k + 1) // 2, len(span)))
    # named instances
    _, _, _, f_dv, _ = _span_algebras()
    push12 = dual_pushforward_map(f_dv, 12)
    class_95 = push12[(9, 3)] ^ push12[(7, 5)]
    out.append(claim("p51.n12.M95", "the bundle class over (9,5) hits the dual of a^2 d^5",
                     True, (2, 0, 5) in class_95))
    push6 = dual_pushforward_map(f_dv, 6)
    out.append(claim("p51.n6.instance", "dim 6 span is the dual of d^3",
                     [(0, 0, 3)], sorted(push6[(3, 3)])))
    push4 = dual_pushforward_map(f_dv, 4)
    out.append(claim("p51.n4.instance", "dim 4 span is the dual of a^2 d, from the "
                     "product with a line", [(2, 0, 1)], sorted(push4[(3, 1)])))
    return out


def verify_prop53(n_max: int = 40) -> list[ClaimResult]:
    """Composite span into the semi-dihedral homology: singleton images,
    injectivity, the vanishing tail class, and the two-column rank count."""
    if n_max > 64:
        raise ValueError("n_max is capped at 64")
    d8, _, sd, _, f_sd = _span_algebras()
    out = []
    for n in range(2, n_max + 1, 2):
        sd_basis = sd.graded_basis(n)
        index = {m: i for i, m in enumerate(sd_basis)}
        push = dual_pushforward_map(f_sd, n)

        # singleton identities and injectivity for i > 0 even, j odd
        pairs = [(i, j) for i in range(2, n + 1, 2) for j in range(1, n, 2)
                 if i + 2 * j == n]
        images = {}
        singleton_ok = True
        for i, j in pairs:
            got = push[(i, 0, j)]
            want = frozenset({(0, i - 1, 1, (j - 1) // 2)})  # y^(i-1) u P^((j-1)/2)
            singleton_ok = singleton_ok and got == want
            images[(i, j)] = got
        out.append(claim(f"p53.n{n}.singletons",
                         "dual of a^i d^j maps to the dual of y^(i-1) u P^((j-1)/2)",
                         True, singleton_ok))
        out.append(claim(f"p53.n{n}.injective", "those images are pairwise distinct",
                         len(pairs), len(set(images.values()))))
        if n % 8 == 6:
            j_tail = (n - 6) // 8 * 4 + 3
            out.append(claim(f"p53.n{n}.tail", "the dual of d^(4K+3) maps to zero",
                             0, len(push[(0, 0, j_tail)])))

        # composite span dimension against the reference two-column rank
        span_rows, d8_basis, _ = dihedral_psc_span(n)
        d8_index = {m: i for i, m in enumerate(d8_basis)}
        composite = []
        for row in span_rows:
            support = frozenset()
            for i, m in enumerate(d8_basis):
                if row >> d8_index[m] & 1:
                    support ^= push[m]
            composite.append(_bitmask(support, index))
        rank = len(gf2_echelon(composite))
        table_rank = kerap_lookup(n)[1]
        out.append(claim(f"p53.n{n}.rank", "composite span meets the two-column rank",
                         table_rank, rank))
        k8, r8 = divmod(n, 8)
        formula = k8 + 1 if r8 == 4 else k8
        out.append(claim(f"p53.n{n}.rank_formula",
                         "rank K+1 in dim 8K+4, K in dims 8K, 8K+2, 8K+6",
                         formula, table_rank))
    return out


def verify_kerap_table() -> list[ClaimResult]:
    """Internal consistency of the reference rows."""
    out = [claim("kerap.n11", "row 11 lists orders (8,16,128,128), rank 0",
                 ((8, 16, 128, 128), 0), kerap_lookup(11)),
           claim("kerap.n2", "rows below 3 vanish", ((), 0), kerap_lookup(2)),
           claim("kerap.n20", "dim 20 = 8k+4 with k=2 has rank 3",
                 3, kerap_lookup(20)[1])]
    for m, expected in [(0, 2 ** 8), (1, 2 ** 21), (2, 2 ** 34), (3, 2 ** 47)]:
        out.append(claim(f"kerap.ko{8 * m + 3}", "derived |ko_(8m+3)| = 2^(8+13m)",
                         2 ** (8 + 13 * m), table_ko_order(8 * m + 3)))
    for m, expected in [(0, 2 ** 12), (1, 2 ** 25), (2, 2 ** 38), (3, 2 ** 51)]:
        out.append(claim(f"kerap.ko{8 * m + 7}", "derived |ko_(8m+7)| = 2^(12+13m)",
                         2 ** (12 + 13 * m), table_ko_order(8 * m + 7)))
    return out


# -- report --------------------------------------------------------------------


SUITES: dict[str, Callable[[], list[ClaimResult]]] = {
    "q8": lambda: verify_q8_orders(3),
    "sd16odd": lambda: verify_sd16_odd(3),
    "dim513": verify_sd16_dim5_13,
    "prop41": lambda: [c for n in (4, 8) for c in verify_prop41(n)],
    "prop51": lambda: verify_prop51(40),
    "prop53": lambda: verify_prop53(40),
    "kerap": verify_kerap_table,
}


@dataclass
class Report:
    claims: list[ClaimResult]

    @property
    def failures(self) -> list[ClaimResult]:
        return [c for c in self.claims if not c.passed]

    def to_json(self) -> str:
        return json.dumps([{"id": c.claim_id, "anchor": c.anchor,
                            "expected": c.expected, "computed": c.computed,
                            "status": c.status} for c in self.claims], indent=2)

    def to_text(self) -> str:
        lines = []
        for c in self.claims:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"[{mark}] {c.claim_id}: {c.anchor}")
            if not c.passed:
                lines.append(f"       expected {c.expected}, computed {c.computed}")
        lines.append(f"{len(self.claims)} claims, {len(self.failures)} failures")
        return "\n".join(lines)


def run_report(selection: Union[str, Sequence[str]] = "all") -> Report:
    if isinstance(selection, str):
        names = list(SUITES) if selection == "all" else ([] if selection == "" else [selection])
    else:
        names = list(selection)
    claims = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
        claims.extend(SUITES[name]())
    return Report(claims)
