"""Homology from presentations by the fixed-point method: relator modules,
the affine action of presentation endomorphisms on relator classes, and the
common fixed subgroup.

A presentation <a_1..a_n | r_1..r_m> has exponent matrix E (row j = exponent
sums of relator j) and a relation lattice L recording the identities that
hold among the relator classes once they are made central.  Endomorphisms
send a_i to a_i times a product of relator classes with exponents alpha_ij;
on relator classes this is the matrix I + E*alpha, and the homology of the
presented group is the subgroup of Z^m/L fixed by all of them."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .barhomology import h2
from .errors import InvariantViolated, ParseError, ShapeMismatch
from .groups import FiniteGroup, generated_subgroup
from .intlinalg import (
    AbDiagram,
    FgAbelianGroup,
    IntMatrix,
    PresentedAbGroup,
    QuotientBasis,
    cokernel,
    hermite_normal_form,
    kernel_lattice,
    limit_of_diagram,
    solve_left,
)

Word = tuple[tuple[int, int], ...]  # (generator index, nonzero exponent) pairs


def reduce_word(pairs) -> Word:
    """Freely reduce: merge adjacent equal-generator factors, drop zeros."""
    out: list[list[int]] = []
    for g, e in pairs:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        n = len(self.generator_names)
        for w in self.relators:
            for g, e in w:
                if not (0 <= g < n):
                    raise ValueError("generator index out of range")
                if e == 0:
                    raise ValueError("relators must be freely reduced")

    @property
    def generator_count(self) -> int:
        return len(self.generator_names)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"-?\d+")


def parse_presentation(text: str) -> Presentation:
    """Parse ``gens: a b; rels: a^2, b^2, [a, b]``.

    A word is whitespace-juxtaposed ``ident(^int)?`` factors; ``[x, y]`` is
    commutator sugar for x y x^-1 y^-1."""
    def fail(msg, pos):
        raise ParseError(msg, pos)

    def skip_ws(pos):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        return pos

    pos = skip_ws(0)
    if not text.startswith("gens:", pos):
        fail("expected 'gens:'", pos)
    pos += 5
    names: list[str] = []
    while True:
        pos = skip_ws(pos)
        if pos < len(text) and text[pos] == ";":
            pos += 1
            break
        m = _IDENT.match(text, pos)
        if not m:
            fail("expected generator name or ';'", pos)
        if m.group(0) in names:
            fail(f"duplicate generator {m.group(0)!r}", pos)
        names.append(m.group(0))
        pos = m.end()
    index = {name: i for i, name in enumerate(names)}

    pos = skip_ws(pos)
    if not text.startswith("rels:", pos):
        fail("expected 'rels:'", pos)
    pos += 5

    def parse_factor(pos):
        pos = skip_ws(pos)
        if pos < len(text) and text[pos] == "[":
            pos = skip_ws(pos + 1)
            m = _IDENT.match(text, pos)
            if not m or m.group(0) not in index:
                fail("expected generator inside commutator", pos)
            x = index[m.group(0)]
            pos = skip_ws(m.end())
            if pos >= len(text) or text[pos] != ",":
                fail("expected ',' in commutator", pos)
            pos = skip_ws(pos + 1)
            m = _IDENT.match(text, pos)
            if not m or m.group(0) not in index:
                fail("expected generator inside commutator", pos)
            y = index[m.group(0)]
            pos = skip_ws(m.end())
            if pos >= len(text) or text[pos] != "]":
                fail("expected ']'", pos)
            return [(x, 1), (y, 1), (x, -1), (y, -1)], pos + 1
        m = _IDENT.match(text, pos)
        if not m:
            fail("expected word factor", pos)
        if m.group(0) not in index:
            fail(f"unknown generator {m.group(0)!r}", pos)
        g = index[m.group(0)]
        pos = m.end()
        e = 1
        if pos < len(text) and text[pos] == "^":
            mi = _INT.match(text, pos + 1)
            if not mi:
                fail("expected integer exponent after '^'", pos + 1)
            e = int(mi.group(0))
            pos = mi.end()
        return [(g, e)], pos

    relators: list[Word] = []
    pos = skip_ws(pos)
    if pos < len(text):
        while True:
            factors: list[tuple[int, int]] = []
            while True:
                pos = skip_ws(pos)
                if pos >= len(text) or text[pos] == ",":
                    break
                fs, pos = parse_factor(pos)
                factors.extend(fs)
            if not factors:
                fail("empty relator", pos)
            relators.append(reduce_word(factors))
            if pos >= len(text):
                break
            pos += 1  # skip the comma
    return Presentation(tuple(names), tuple(relators))


def exponent_matrix(P: Presentation) -> IntMatrix:
    """m x n matrix: row j holds the exponent sums of relator j."""
    rows = []
    for w in P.relators:
        row = [0] * P.generator_count
        for g, e in w:
            row[g] += e
        rows.append(row)
    return IntMatrix.from_rows(rows, P.generator_count)


@dataclass(frozen=True)
class RelatorModule:
    """Relator classes of a presentation made central: Z^m modulo the input
    relation lattice L, together with the exponent matrix E.

    L is an input (a catalog entry or user data), not computed: finding all
    identities among relators is out of reach in general.  The invariant
    L*E = 0 must hold because any identity among relator classes maps into
    the commutator subgroup of the ambient free group."""

    presentation: Presentation
    E: IntMatrix
    L: IntMatrix

    def __post_init__(self):
        m = len(self.presentation.relators)
        n = self.presentation.generator_count
        if self.E.rows != m or self.E.cols != n:
            raise ShapeMismatch("exponent matrix must be m x n")
        if self.L.cols != m:
            raise ShapeMismatch("relation lattice rows must have length m")
        if self.L.rows and not (self.L * self.E).is_zero():
            raise InvariantViolated("relation lattice must annihilate E")

    @staticmethod
    def of(P: Presentation, L: IntMatrix | None = None) -> "RelatorModule":
        m = len(P.relators)
        if L is None:
            L = IntMatrix.zero(0, m)
        return RelatorModule(P, exponent_matrix(P), L)

    @property
    def relator_count(self) -> int:
        return len(self.presentation.relators)

    def class_group(self) -> FgAbelianGroup:
        """Z^m / L."""
        return cokernel(self.L)


@dataclass(frozen=True)
class EndomorphismSpec:
    """Exponents alpha_ij of an endomorphism a_i -> a_i * prod_j r_j^alpha_ij;
    every integer choice is admissible."""

    alpha: IntMatrix  # n x m


def elementary_family(M: RelatorModule) -> list[EndomorphismSpec]:
    """The n*m elementary exponent choices; they generate all fixedness
    constraints because the displacement is linear in alpha."""
    n = M.presentation.generator_count
    m = M.relator_count
    out = []
    for i in range(n):
        for j in range(m):
            rows = [[0] * m for _ in range(n)]
            rows[i][j] = 1
            out.append(EndomorphismSpec(IntMatrix.from_rows(rows, m)))
    return out


def endo_action(M: RelatorModule, spec: EndomorphismSpec) -> IntMatrix:
    """The m x m matrix I + E*alpha acting on relator classes (row vectors);
    well-defined modulo L since L*(I + E*alpha) = L exactly."""
    n = M.presentation.generator_count
    m = M.relator_count
    if spec.alpha.rows != n or spec.alpha.cols != m:
        raise ShapeMismatch("alpha must be n x m")
    T_rows = [list(r) for r in (M.E * spec.alpha).entries]
    for j in range(m):
        T_rows[j][j] += 1
    T = IntMatrix.from_rows(T_rows, m)
    if M.L.rows and (M.L * T).entries != M.L.entries:
        raise InvariantViolated("action does not preserve the relation lattice")
    return T


def fixed_subgroup(M: RelatorModule, family=None) -> FgAbelianGroup:
    """Common fixed subgroup {v in Z^m/L : T v = v for all T in the family},
    realized as the limit of the one-object diagram whose arrows are the
    action matrices."""
    if family is None:
        family = elementary_family(M)
    family = list(family)
    if not family:
        raise ShapeMismatch("endomorphism family must be nonempty")
    obj = PresentedAbGroup(M.relator_count, M.L)
    arrows = tuple((0, 0, endo_action(M, spec)) for spec in family)
    lim, _ = limit_of_diagram(AbDiagram((obj,), arrows))
    return lim


def _fixedness_modulus(M: RelatorModule) -> int:
    """Annihilator bound: v is fixed by every elementary action iff each
    coordinate of v*E annihilates all generator classes of Z^m/L; that means
    v*E = 0 when some class has infinite order, and v*E = 0 mod the exponent
    otherwise."""
    grp = M.class_group()
    if grp.free_rank:
        return 0
    return grp.exponent()


def hopf_kernel_basis(M: RelatorModule) -> QuotientBasis:
    a = _fixedness_modulus(M)
    m = M.relator_count
    n = M.presentation.generator_count
    if a == 0:
        S = kernel_lattice(M.E)
    else:
        stacked_rows = [list(r) for r in M.E.entries]
        for j in range(n):
            row = [0] * n
            row[j] = a
            stacked_rows.append(row)
        K = kernel_lattice(IntMatrix.from_rows(stacked_rows, n))
        S = hermite_normal_form(
            IntMatrix.from_rows([list(r[:m]) for r in K.entries], m)
        )
    return QuotientBasis.of(S, M.L)


def hopf_kernel(M: RelatorModule) -> FgAbelianGroup:
    """Kernel of the induced map Z^m/L -> Z^n (relator classes to their
    exponent rows); coincides with the fixed subgroup of the elementary
    endomorphism family."""
    return hopf_kernel_basis(M).group


def baer_restriction_is_identity(M: RelatorModule, spec: EndomorphismSpec) -> bool:
    """Does the action of the endomorphism restrict to the identity on the
    Hopf kernel?  (It always should; exposed for the property suites.)"""
    qb = hopf_kernel_basis(M)
    T = endo_action(M, spec)
    L = hermite_normal_form(M.L) if M.L.rows else M.L
    for k in range(qb.ngens):
        v = qb.lift(k)
        moved = [
            sum(v[i] * T.entries[i][j] for i in range(len(v))) - v[j]
            for j in range(len(v))
        ]
        if any(moved):
            if not M.L.rows:
                return False
            if solve_left(L, IntMatrix.from_rows([moved], len(moved))) is None:
                return False
    return True


# ---------------------------------------------------------------------------
# validation against table groups


@dataclass(frozen=True)
class LatticeValidationReport:
    consistent: bool
    presents_group: bool
    hopf_torsion: tuple[int, ...]
    hopf_free_rank: int
    h2_torsion: tuple[int, ...]
    class_group_free_rank: int
    generator_count: int

    def summary(self) -> str:
        verdict = "consistent" if self.consistent else "inconsistent"
        return (
            f"{verdict}: hopf kernel torsion {list(self.hopf_torsion)} "
            f"(free rank {self.hopf_free_rank}) vs h2 {list(self.h2_torsion)}; "
            f"class group free rank {self.class_group_free_rank} "
            f"vs {self.generator_count} generators"
        )


def evaluate_word(G: FiniteGroup, images, w: Word) -> int:
    x = G.identity
    for g, e in w:
        x = G.mul(x, G.power(images[g], e))
    return x


def validate_relator_lattice(
    P: Presentation, L: IntMatrix, G: FiniteGroup, images
) -> LatticeValidationReport:
    """Cross-check a user-supplied relation lattice against bar-resolution
    ground truth on a finite group presented by P via generator images.

    Consistency requires: the torsion of the Hopf kernel equals h2(G) with no
    free part left over, and Z^m/L has free rank equal to the number of
    generators.  A mismatch is evidence that L is wrong or incomplete."""
    images = list(images)
    presents = len(images) == P.generator_count and all(
        evaluate_word(G, images, w) == G.identity for w in P.relators
    )
    if presents:
        presents = generated_subgroup(G, images).order == G.order
    M = RelatorModule.of(P, L)
    hk = hopf_kernel(M)
    h2g = h2(G)
    class_free = M.class_group().free_rank
    consistent = (
        presents
        and hk.torsion == h2g.torsion
        and hk.free_rank == 0
        and class_free == P.generator_count
    )
    return LatticeValidationReport(
        consistent,
        presents,
        hk.torsion,
        hk.free_rank,
        h2g.torsion,
        class_free,
        P.generator_count,
    )


# ---------------------------------------------------------------------------
# catalog: the two worked families


def catalog_cyclic(n: int) -> tuple[Presentation, IntMatrix]:
    """<a | a^n> with the empty relation lattice."""
    if n < 1:
        raise ValueError("cyclic parameter must be >= 1")
    P = Presentation(("a",), (((0, n),),))
    return P, IntMatrix.zero(0, 1)


def catalog_cn_squared(n: int) -> tuple[Presentation, IntMatrix]:
    """<a, b | a^n, b^n, [a,b]> with the lattice row n*z recording that the
    commutator relator class has order n."""
    if n < 1:
        raise ValueError("parameter must be >= 1")
    P = Presentation(
        ("a", "b"),
        (
            ((0, n),),
            ((1, n),),
            ((0, 1), (1, 1), (0, -1), (1, -1)),
        ),
    )
    L = IntMatrix.from_rows([[0, 0, n]], 3)
    return P, L


def catalog_relator_module(name: str, *params) -> RelatorModule:
    """Catalog lookup: cyclic n | cn_x_cn n | klein4."""
    name = name.lower()
    if name == "cyclic":
        P, L = catalog_cyclic(int(params[0]))
    elif name in ("cn_x_cn", "cnxcn"):
        P, L = catalog_cn_squared(int(params[0]))
    elif name == "klein4":
        P, L = catalog_cn_squared(2)
    else:
        raise ValueError(f"no catalog presentation named {name!r}")
    return RelatorModule.of(P, L)
