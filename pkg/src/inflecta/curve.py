"""Combinatorial model of generic closed curves.

A curve with ``m`` crossings is stored as a signed Gauss code: the
double-occurrence word of crossing labels met along one traversal, plus
one chirality sign per crossing.  Chirality ``+1`` means the tangent at the
second visit is the tangent at the first visit turned counterclockwise by
an angle in ``(0, pi)``.

Positions ``0 .. 2m-1`` index the word.  Arc ``i`` is the piece of curve
from position ``i`` to position ``i + 1`` (cyclically).  Every position
carries two darts (directed half-edges leaving the crossing): the *out*
dart ``2p`` runs forward along arc ``p`` and the *in* dart ``2p + 1`` runs
backward along arc ``p - 1``.  At a crossing visited at positions
``p < q`` the counterclockwise order of darts is

* chirality ``+1``: ``out_p, out_q, in_p, in_q``
* chirality ``-1``: ``out_p, in_q, in_p, out_q``

Faces are traced keeping the face on the left, i.e. as orbits of
``h -> rot_prev[twin(h)]``; ``face_of[d]`` is then also the face filling
the sector between ``d`` and its counterclockwise successor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import BadOuterFace, MalformedCode, NotSpherical

SIDES = ("L", "R")


@dataclass(frozen=True)
class CombinatorialCurve:
    word: tuple[int, ...]
    chirality: tuple[int, ...]
    outer: Optional[tuple[int, str]] = None

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        chirality = tuple(int(s) for s in self.chirality)
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "chirality", chirality)
        m = len(word) // 2
        if len(word) % 2 or sorted(word) != sorted(list(range(1, m + 1)) * 2):
            raise MalformedCode(f"word {word} is not a double-occurrence word on 1..{m}")
        if len(chirality) != m or any(s not in (1, -1) for s in chirality):
            raise MalformedCode(f"need {m} signs in {{+1,-1}}, got {chirality}")
        if self.outer is not None:
            arc, side = self.outer
            if side not in SIDES:
                raise MalformedCode(f"outer side must be L or R, got {side!r}")
            object.__setattr__(self, "outer", (int(arc), side))

    @property
    def m(self) -> int:
        return len(self.word) // 2

    def visits(self, label: int) -> tuple[int, int]:
        """Word positions ``(p, q)``, ``p < q``, of the two visits to ``label``."""
        p = self.word.index(label)
        return p, self.word.index(label, p + 1)

    def sign(self, label: int) -> int:
        return self.chirality[label - 1]

    # -- code transformations -------------------------------------------

    def shifted(self, k: int) -> "CombinatorialCurve":
        """Same curve read from word position ``k``."""
        n = len(self.word)
        if n == 0:
            return self
        k %= n
        word = self.word[k:] + self.word[:k]
        signs = {}
        for label in range(1, self.m + 1):
            p, q = self.visits(label)
            swapped = (p - k) % n > (q - k) % n
            signs[label] = -self.sign(label) if swapped else self.sign(label)
        outer = None
        if self.outer is not None:
            outer = ((self.outer[0] - k) % n, self.outer[1])
        return _normalized(word, signs, outer)

    def reversed(self) -> "CombinatorialCurve":
        """Same image traversed in the opposite direction."""
        n = len(self.word)
        if n == 0:
            return CombinatorialCurve((), (), _flip_side(self.outer))
        signs = {label: -self.sign(label) for label in range(1, self.m + 1)}
        outer = None
        if self.outer is not None:
            outer = ((n - 2 - self.outer[0]) % n, "R" if self.outer[1] == "L" else "L")
        return _normalized(self.word[::-1], signs, outer)

    def mirrored(self) -> "CombinatorialCurve":
        """Reflection of the plane: chiralities and sides flip."""
        return CombinatorialCurve(
            self.word, tuple(-s for s in self.chirality), _flip_side(self.outer)
        )

    def with_outer(self, arc: int, side: str) -> "CombinatorialCurve":
        return CombinatorialCurve(self.word, self.chirality, (arc, side))

    def to_text(self) -> str:
        word = " ".join(str(x) for x in self.word)
        signs = "".join("+" if s > 0 else "-" for s in self.chirality)
        text = f"{word} / {signs}".strip()
        if self.outer is not None:
            text += f" / outer={self.outer[0]}:{self.outer[1]}"
        return text

    def __str__(self):
        return self.to_text()


def _flip_side(outer):
    if outer is None:
        return None
    return (outer[0], "R" if outer[1] == "L" else "L")


def _normalized(word, signs, outer=None) -> CombinatorialCurve:
    """Relabel crossings 1..m in order of first appearance."""
    relabel: dict[int, int] = {}
    for x in word:
        relabel.setdefault(x, len(relabel) + 1)
    new_word = tuple(relabel[x] for x in word)
    chirality = [0] * len(relabel)
    for old, new in relabel.items():
        chirality[new - 1] = signs[old]
    return CombinatorialCurve(new_word, tuple(chirality), outer)


def parse_curve(text: str) -> CombinatorialCurve:
    """Parse ``"<word> / <signs> [/ outer=<arc>:<L|R>]"``.

    Labels are positive integers separated by whitespace; the sign string
    lists one ``+``/``-`` per label in ascending label order.  Labels are
    renumbered by first appearance, so ``"2 2 / -"`` and ``"1 1 / -"`` are
    the same curve.
    """
    parts = [p.strip() for p in text.strip().split("/")]
    if len(parts) == 1 and parts[0] == "":
        parts = ["", ""]
    if len(parts) not in (2, 3):
        raise MalformedCode(f"expected 'word / signs [/ outer=i:S]', got {text!r}")
    try:
        labels = [int(tok) for tok in parts[0].split()]
    except ValueError:
        raise MalformedCode(f"non-integer crossing label in {parts[0]!r}") from None
    distinct = sorted(set(labels))
    for label in distinct:
        if label <= 0:
            raise MalformedCode(f"labels must be positive, got {label}")
        if labels.count(label) != 2:
            raise MalformedCode(f"label {label} occurs {labels.count(label)} times")
    sign_chars = parts[1].replace(" ", "")
    if any(c not in "+-" for c in sign_chars):
        raise MalformedCode(f"bad sign string {parts[1]!r}")
    if len(sign_chars) != len(distinct):
        raise MalformedCode(
            f"{len(distinct)} crossings but {len(sign_chars)} signs in {parts[1]!r}"
        )
    signs = {label: 1 if c == "+" else -1 for label, c in zip(distinct, sign_chars)}
    outer = None
    if len(parts) == 3:
        spec = parts[2]
        if not spec.startswith("outer=") or ":" not in spec:
            raise MalformedCode(f"bad outer-face spec {spec!r}")
        arc_text, side = spec[len("outer="):].split(":", 1)
        side = side.strip().upper()
        if side not in SIDES:
            raise MalformedCode(f"outer side must be L or R, got {side!r}")
        try:
            outer = (int(arc_text), side)
        except ValueError:
            raise MalformedCode(f"bad outer arc index {arc_text!r}") from None
    return _normalized(tuple(labels), signs, outer)


# -- embeddings ---------------------------------------------------------------


def twin(d: int, n: int) -> int:
    p, kind = divmod(d, 2)
    if kind == 0:
        return 2 * ((p + 1) % n) + 1
    return 2 * ((p - 1) % n)


@dataclass(frozen=True)
class PlanarEmbedding:
    curve: CombinatorialCurve
    rot_next: tuple[int, ...]
    rot_prev: tuple[int, ...]
    face_of: tuple[int, ...]
    faces: tuple[tuple[int, ...], ...]
    outer_face: int
    _arc_faces: tuple[tuple[int, int], ...] = field(repr=False, default=())

    @property
    def m(self) -> int:
        return self.curve.m

    @property
    def n_arcs(self) -> int:
        return len(self.curve.word)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def vertex(self, d: int) -> int:
        """Crossing label at which dart ``d`` sits."""
        return self.curve.word[d // 2]

    def twin(self, d: int) -> int:
        return twin(d, self.n_arcs)

    def arc_faces(self, arc: int) -> tuple[int, int]:
        """``(left, right)`` faces of ``arc`` traversed in curve direction."""
        return self._arc_faces[arc]

    def darts_at(self, label: int) -> tuple[int, int, int, int]:
        """``(out_p, in_p, out_q, in_q)`` for the two visits ``p < q``."""
        p, q = self.curve.visits(label)
        return 2 * p, 2 * p + 1, 2 * q, 2 * q + 1

    def face_on(self, arc: int, side: str) -> int:
        if not 0 <= arc < max(self.n_arcs, 1):
            raise BadOuterFace(f"arc {arc} out of range for {self.n_arcs} arcs")
        left, right = self.arc_faces(arc)
        return left if side == "L" else right

    def with_outer_face(self, face: int) -> "PlanarEmbedding":
        if not 0 <= face < self.n_faces:
            raise BadOuterFace(f"no face {face}")
        return PlanarEmbedding(
            self.curve, self.rot_next, self.rot_prev, self.face_of,
            self.faces, face, self._arc_faces,
        )

    def face_descriptor(self, face: int) -> tuple[int, str]:
        """Smallest ``(arc, side)`` pair bordering ``face``."""
        for arc, (left, right) in enumerate(self._arc_faces):
            if left == face:
                return arc, "L"
            if right == face:
                return arc, "R"
        raise BadOuterFace(f"no face {face}")


def build_embedding(curve: CombinatorialCurve, outer=None) -> PlanarEmbedding:
    """Trace the faces of ``curve`` and designate an outer face.

    ``outer`` is an ``(arc, side)`` pair; it defaults to the hint stored on
    the curve, then to ``(0, "L")``.
    """
    if outer is None:
        outer = curve.outer if curve.outer is not None else (0, "L")
    arc, side = outer
    if side not in SIDES:
        raise BadOuterFace(f"side must be L or R, got {side!r}")
    n = len(curve.word)
    if n == 0:
        if arc != 0:
            raise BadOuterFace("the simple closed curve has a single arc 0")
        return PlanarEmbedding(curve, (), (), (), ((), ()), 0 if side == "L" else 1, ((0, 1),))
    if not 0 <= arc < n:
        raise BadOuterFace(f"arc {arc} out of range for {n} arcs")

    rot_next = [0] * (2 * n)
    for label in range(1, curve.m + 1):
        p, q = curve.visits(label)
        if curve.sign(label) > 0:
            cycle = (2 * p, 2 * q, 2 * p + 1, 2 * q + 1)
        else:
            cycle = (2 * p, 2 * q + 1, 2 * p + 1, 2 * q)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            rot_next[a] = b
    rot_prev = [0] * (2 * n)
    for a, b in enumerate(rot_next):
        rot_prev[b] = a

    face_of = [-1] * (2 * n)
    faces = []
    for start in range(2 * n):
        if face_of[start] >= 0:
            continue
        orbit = []
        d = start
        while face_of[d] < 0:
            face_of[d] = len(faces)
            orbit.append(d)
            d = rot_prev[twin(d, n)]
        faces.append(tuple(orbit))
    if len(faces) != curve.m + 2:
        raise NotSpherical(
            f"{curve.to_text()}: {len(faces)} faces, a planar curve with "
            f"{curve.m} crossings has {curve.m + 2}"
        )
    arc_faces = tuple((face_of[2 * i], face_of[twin(2 * i, n)]) for i in range(n))
    outer_face = arc_faces[arc][0 if side == "L" else 1]
    return PlanarEmbedding(
        curve, tuple(rot_next), tuple(rot_prev), tuple(face_of),
        tuple(faces), outer_face, arc_faces,
    )


def is_spherical(curve: CombinatorialCurve) -> bool:
    try:
        build_embedding(curve)
    except NotSpherical:
        return False
    return True


# -- canonical forms ----------------------------------------------------------


@dataclass(frozen=True)
class Reading:
    """The code seen from one basepoint and direction.

    ``out_darts[j]`` / ``in_darts[j]`` are the darts of the original
    embedding that play the roles of the out/in darts at new position ``j``.
    """

    word: tuple[int, ...]
    chirality: tuple[int, ...]
    out_darts: tuple[int, ...]
    in_darts: tuple[int, ...]

    @property
    def code(self):
        return self.word, self.chirality


def readings(emb: PlanarEmbedding) -> Iterator[Reading]:
    n = emb.n_arcs
    word = emb.curve.word
    for k in range(n):
        for forward in (True, False):
            if forward:
                pos = [(k + j) % n for j in range(n)]
                outs = tuple(2 * p for p in pos)
                ins = tuple(2 * p + 1 for p in pos)
            else:
                pos = [(k - j) % n for j in range(n)]
                outs = tuple(2 * p + 1 for p in pos)
                ins = tuple(2 * p for p in pos)
            relabel: dict[int, int] = {}
            new_word = []
            for p in pos:
                new_word.append(relabel.setdefault(word[p], len(relabel) + 1))
            first: dict[int, int] = {}
            chirality = [0] * len(relabel)
            for j, label in enumerate(new_word):
                if label not in first:
                    first[label] = j
                    continue
                j1 = first[label]
                nxt = emb.rot_next[outs[j1]]
                if nxt == outs[j]:
                    chirality[label - 1] = 1
                elif nxt == ins[j]:
                    chirality[label - 1] = -1
                else:  # pragma: no cover - rotation always alternates strands
                    raise AssertionError("non-transversal rotation")
            yield Reading(tuple(new_word), tuple(chirality), outs, ins)


def _descriptors(emb: PlanarEmbedding, reading: Reading) -> dict[int, tuple[int, int]]:
    n = emb.n_arcs
    desc: dict[int, tuple[int, int]] = {}
    for j in range(n):
        left = emb.face_of[reading.out_darts[j]]
        right = emb.face_of[reading.in_darts[(j + 1) % n]]
        desc.setdefault(left, (j, 0))
        desc.setdefault(right, (j, 1))
    return desc


def _code_key(word, chirality) -> str:
    return " ".join(map(str, word)) + "/" + "".join("+" if s > 0 else "-" for s in chirality)


@dataclass(frozen=True)
class CanonicalForm:
    spherical_key: str
    planar_key: str
    code: tuple[tuple[int, ...], tuple[int, ...]]
    outer: tuple[int, str]
    symmetries: int

    def curve(self) -> CombinatorialCurve:
        """Representative curve carrying the canonical outer-face hint."""
        return CombinatorialCurve(self.code[0], self.code[1], self.outer)


def face_orbits(emb: PlanarEmbedding) -> tuple[tuple, dict[int, tuple[int, int]]]:
    """Minimal code and, per face, the smallest descriptor over its orbit.

    Two faces get the same descriptor iff some symmetry of the curve
    (basepoint shift and/or reversal preserving the minimal code) carries
    one onto the other.
    """
    if emb.n_arcs == 0:
        return ((), ()), {0: (0, 0), 1: (0, 0)}
    best = None
    minimal = []
    for r in readings(emb):
        if best is None or r.code < best:
            best, minimal = r.code, [r]
        elif r.code == best:
            minimal.append(r)
    orbit: dict[int, tuple[int, int]] = {}
    for r in minimal:
        for face, d in _descriptors(emb, r).items():
            if face not in orbit or d < orbit[face]:
                orbit[face] = d
    return best, orbit


def canonical_form(emb: PlanarEmbedding) -> CanonicalForm:
    """Keys invariant under basepoint, direction and relabeling (not reflection)."""
    code, orbit = face_orbits(emb)
    arc, side = orbit[emb.outer_face]
    n_sym = 1
    if emb.n_arcs:
        n_sym = sum(1 for r in readings(emb) if r.code == code)
    spherical = _code_key(*code)
    planar = f"{spherical}|{arc}{SIDES[side]}"
    return CanonicalForm(spherical, planar, code, (arc, SIDES[side]), n_sym)


def curve_from_key(key: str) -> CombinatorialCurve:
    """Inverse of the key serialization (spherical or planar)."""
    spherical, _, outer = key.partition("|")
    word_text, _, signs = spherical.partition("/")
    text = f"{word_text} / {signs}"
    if outer:
        text += f" / outer={outer[:-1]}:{outer[-1]}"
    return parse_curve(text)


def embedding_from_key(key: str) -> PlanarEmbedding:
    return build_embedding(curve_from_key(key))


def all_chiralities(word: Sequence[int]) -> Iterator[CombinatorialCurve]:
    m = len(word) // 2
    for mask in range(1 << m):
        yield CombinatorialCurve(
            tuple(word), tuple(-1 if mask >> i & 1 else 1 for i in range(m))
        )
