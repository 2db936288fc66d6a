"""Decorated triangulated complexes: model, document format, generators.

Document format ("decorated-triangulation/v1", JSON text):

    {
      "format": "decorated-triangulation/v1",
      "group": {"n": 3},
      "tetrahedra": [
        {"id": 0, "orientation": 1,
         "decoration": {"type": "matrices",
                        "vertices": [<4 matrices, each 3x3 of [re, im]>]}}
        or
        {"id": 1, "orientation": -1,
         "decoration": {"type": "ptolemy",
                        "coords": {"2001": [re, im], ... 16 keys ...}}}
      ],
      "gluings": [
        {"tets": [idA, idB], "faces": [omittedA, omittedB],
         "vertex_map": [<images in B of A's face vertices, ascending>]}
      ]
    }

Unknown fields are rejected everywhere. Numbers round-trip at full double
precision. Serialization is deterministic: tetrahedra by id, gluings by
(first tet, first face).
"""

import json
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .errors import DegenerateError, ParseError, ValidationError
from .flags import tetrahedron_from_decoration
from .ptolemy import (
    TUPLES,
    Decoration,
    PtolemyCoordinates,
    coset_equivalent,
    key_to_string,
    ptolemy_all,
    string_to_key,
)

FORMAT_NAME = "decorated-triangulation/v1"

MAX_RETRIES = 32

Payload = Union[Decoration, PtolemyCoordinates]


@dataclass(frozen=True)
class Tetrahedron:
    id: int
    orientation: int
    payload: Payload

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValidationError(
                f"tetrahedron {self.id}: orientation must be +1 or -1"
            )


@dataclass(frozen=True)
class Gluing:
    """Identification of face `face_a` of `tet_a` with face `face_b` of `tet_b`.

    A face is named by its omitted vertex. `vertex_map` lists, for the face-A
    vertices in ascending label order, their images among face-B vertices.
    """

    tet_a: int
    face_a: int
    tet_b: int
    face_b: int
    vertex_map: Tuple[int, int, int]

    def __post_init__(self):
        if not (0 <= self.face_a <= 3 and 0 <= self.face_b <= 3):
            raise ValidationError(f"gluing {self.key()}: face index out of range")
        vm = self.vertex_map
        if len(vm) != 3 or len(set(vm)) != 3:
            raise ValidationError(f"gluing {self.key()}: vertex_map is not a bijection")
        if any(v not in range(4) or v == self.face_b for v in vm):
            raise ValidationError(
                f"gluing {self.key()}: vertex_map must hit face {self.face_b} "
                f"vertices of tetrahedron {self.tet_b}"
            )

    def key(self) -> str:
        return f"({self.tet_a}:{self.face_a})-({self.tet_b}:{self.face_b})"


def face_vertices(face: int) -> Tuple[int, int, int]:
    """Vertices of the face omitting `face`, ascending."""
    return tuple(v for v in range(4) if v != face)


class DecoratedComplex:
    """Tetrahedra plus face gluings; structurally validated on construction."""

    def __init__(self, tetrahedra, gluings=()):
        tets = sorted(tetrahedra, key=lambda t: t.id)
        ids = [t.id for t in tets]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate tetrahedron ids")
        self.tetrahedra: Tuple[Tetrahedron, ...] = tuple(tets)
        self._by_id = {t.id: t for t in tets}
        seen = {}
        for g in gluings:
            for tid, face in ((g.tet_a, g.face_a), (g.tet_b, g.face_b)):
                if tid not in self._by_id:
                    raise ValidationError(
                        f"gluing {g.key()} references unknown tetrahedron {tid}"
                    )
                if (tid, face) in seen:
                    raise ValidationError(
                        f"face ({tid}:{face}) glued twice "
                        f"(gluings {seen[tid, face]} and {g.key()})"
                    )
                seen[tid, face] = g.key()
        self.gluings: Tuple[Gluing, ...] = tuple(gluings)

    def tetrahedron(self, tid: int) -> Tetrahedron:
        return self._by_id[tid]

    def is_closed(self) -> bool:
        return len(self.gluings) * 2 == len(self.tetrahedra) * 4

    def all_matrix_payloads(self) -> bool:
        return all(isinstance(t.payload, Decoration) for t in self.tetrahedra)


# ---------------------------------------------------------------------------
# document reading


def _expect_keys(obj, keys, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ParseError(f"{where}: missing field(s) {missing}")
    unknown = [k for k in obj if k not in keys]
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {unknown}")


def _number_pair(v, where) -> complex:
    if (not isinstance(v, (list, tuple)) or len(v) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                       for x in v)):
        raise ParseError(f"{where}: expected a [re, im] number pair")
    return complex(float(v[0]), float(v[1]))


def _matrix(v, where) -> np.ndarray:
    if not isinstance(v, list) or len(v) != 3:
        raise ParseError(f"{where}: expected 3 rows")
    rows = []
    for r, row in enumerate(v):
        if not isinstance(row, list) or len(row) != 3:
            raise ParseError(f"{where}[{r}]: expected 3 entries")
        rows.append([_number_pair(x, f"{where}[{r}][{c}]")
                     for c, x in enumerate(row)])
    return np.array(rows, dtype=np.complex128)


def _decoration(obj, where) -> Payload:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    kind = obj.get("type")
    if kind == "matrices":
        _expect_keys(obj, ["type", "vertices"], where)
        verts = obj["vertices"]
        if not isinstance(verts, list) or len(verts) != 4:
            raise ParseError(f"{where}.vertices: expected 4 matrices")
        mats = [_matrix(m, f"{where}.vertices[{i}]") for i, m in enumerate(verts)]
        return Decoration(mats)
    if kind == "ptolemy":
        _expect_keys(obj, ["type", "coords"], where)
        coords = obj["coords"]
        if not isinstance(coords, dict):
            raise ParseError(f"{where}.coords: expected an object")
        parsed = {}
        for key, val in coords.items():
            try:
                t = string_to_key(key)
            except ValueError as exc:
                raise ParseError(f"{where}.coords: {exc}") from exc
            parsed[t] = _number_pair(val, f"{where}.coords[{key!r}]")
        missing = [key_to_string(t) for t in TUPLES if t not in parsed]
        if missing:
            raise ParseError(f"{where}.coords: missing key(s) {missing}")
        return PtolemyCoordinates(parsed)
    raise ParseError(f"{where}.type: expected 'matrices' or 'ptolemy'")


def parse(data: Union[str, bytes]) -> DecoratedComplex:
    """Read and validate a document; ParseError names the offending path."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    def _reject_constant(name):
        raise ParseError(f"non-finite number literal {name!r}")

    try:
        doc = json.loads(data, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc

    _expect_keys(doc, ["format", "group", "tetrahedra", "gluings"], "document")
    if doc["format"] != FORMAT_NAME:
        raise ParseError(f"format: expected {FORMAT_NAME!r}, got {doc['format']!r}")
    _expect_keys(doc["group"], ["n"], "group")
    if doc["group"]["n"] != 3:
        raise ParseError(f"group.n: only n = 3 is supported, got {doc['group']['n']!r}")

    if not isinstance(doc["tetrahedra"], list):
        raise ParseError("tetrahedra: expected a list")
    tets = []
    for i, item in enumerate(doc["tetrahedra"]):
        where = f"tetrahedra[{i}]"
        _expect_keys(item, ["id", "orientation", "decoration"], where)
        if not isinstance(item["id"], int) or isinstance(item["id"], bool):
            raise ParseError(f"{where}.id: expected an integer")
        if item["orientation"] not in (1, -1):
            raise ParseError(f"{where}.orientation: expected +1 or -1")
        payload = _decoration(item["decoration"], f"{where}.decoration")
        tets.append(Tetrahedron(id=item["id"], orientation=item["orientation"],
                                payload=payload))

    if not isinstance(doc["gluings"], list):
        raise ParseError("gluings: expected a list")
    gluings = []
    for i, item in enumerate(doc["gluings"]):
        where = f"gluings[{i}]"
        _expect_keys(item, ["tets", "faces", "vertex_map"], where)
        for field, n in (("tets", 2), ("faces", 2), ("vertex_map", 3)):
            v = item[field]
            if (not isinstance(v, list) or len(v) != n
                    or not all(isinstance(x, int) and not isinstance(x, bool)
                               for x in v)):
                raise ParseError(f"{where}.{field}: expected {n} integers")
        gluings.append(Gluing(
            tet_a=item["tets"][0], face_a=item["faces"][0],
            tet_b=item["tets"][1], face_b=item["faces"][1],
            vertex_map=tuple(item["vertex_map"]),
        ))

    return DecoratedComplex(tets, gluings)


# ---------------------------------------------------------------------------
# document writing


def _pair(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _payload_doc(payload: Payload) -> dict:
    if isinstance(payload, Decoration):
        return {
            "type": "matrices",
            "vertices": [[[_pair(m[r, c]) for c in range(3)] for r in range(3)]
                         for m in payload.matrices],
        }
    return {
        "type": "ptolemy",
        "coords": {key_to_string(t): _pair(v) for t, v in sorted(payload.items())},
    }


def serialize(c: DecoratedComplex) -> str:
    """Deterministic JSON text; parse(serialize(c)) reproduces c exactly."""
    doc = {
        "format": FORMAT_NAME,
        "group": {"n": 3},
        "tetrahedra": [
            {"id": t.id, "orientation": t.orientation,
             "decoration": _payload_doc(t.payload)}
            for t in sorted(c.tetrahedra, key=lambda t: t.id)
        ],
        "gluings": [
            {"tets": [g.tet_a, g.tet_b], "faces": [g.face_a, g.face_b],
             "vertex_map": list(g.vertex_map)}
            for g in sorted(c.gluings,
                            key=lambda g: (g.tet_a, g.face_a, g.tet_b, g.face_b))
        ],
    }
    return json.dumps(doc, indent=1)


# ---------------------------------------------------------------------------
# consistency


@dataclass(frozen=True)
class ConsistencyViolation:
    gluing: str
    vertex_a: int
    vertex_b: int


@dataclass(frozen=True)
class ConsistencyReport:
    violations: Tuple[ConsistencyViolation, ...]
    checked_pairs: int

    @property
    def consistent(self) -> bool:
        return not self.violations


def check_decoration_consistency(c: DecoratedComplex) -> ConsistencyReport:
    """Verify glued vertices carry coset-equivalent matrices.

    For every gluing and every matched vertex pair, the two vertex matrices
    must differ by a unipotent upper-triangular factor. Requires matrix
    payloads on both sides of each gluing.
    """
    violations = []
    checked = 0
    for g in c.gluings:
        dec_a = c.tetrahedron(g.tet_a).payload
        dec_b = c.tetrahedron(g.tet_b).payload
        if not isinstance(dec_a, Decoration) or not isinstance(dec_b, Decoration):
            raise ValidationError(
                f"gluing {g.key()}: coset check needs matrix decorations"
            )
        for va, vb in zip(face_vertices(g.face_a), g.vertex_map):
            checked += 1
            if not coset_equivalent(dec_a.matrices[va], dec_b.matrices[vb]):
                violations.append(ConsistencyViolation(
                    gluing=g.key(), vertex_a=va, vertex_b=vb))
    return ConsistencyReport(violations=tuple(violations), checked_pairs=checked)


# ---------------------------------------------------------------------------
# generators


def _random_vertex_matrix(rng: np.random.Generator) -> np.ndarray:
    # Bounded complex Gaussian entries, then determinant normalized to 1.
    while True:
        m = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        m /= np.sqrt(2.0)
        if np.max(np.abs(m)) > 3.0:
            continue
        det = np.linalg.det(m)
        if abs(det) < 1e-3:
            continue
        return m / det ** (1.0 / 3.0)


def _decoration_ok(matrices) -> bool:
    try:
        d = Decoration(matrices)
        ptolemy_all(d)
        tetrahedron_from_decoration(d.matrices)
    except DegenerateError:
        return False
    return True


def gen_random_single(seed: int) -> DecoratedComplex:
    """One tetrahedron with a random nondegenerate decoration."""
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RETRIES):
        mats = [_random_vertex_matrix(rng) for _ in range(4)]
        if _decoration_ok(mats):
            tet = Tetrahedron(id=0, orientation=1, payload=Decoration(mats))
            return DecoratedComplex([tet], [])
    raise DegenerateError(f"no nondegenerate decoration in {MAX_RETRIES} draws")


def gen_boundary_4simplex(seed: int) -> DecoratedComplex:
    """Five tetrahedra forming the boundary of a 4-simplex.

    Five shared vertex matrices G0..G4; tetrahedron i omits G_i, carries
    orientation (-1)^i, and all ten faces are glued pairwise with the
    identity correspondence on shared vertex labels. The total volume
    cancels, which makes this the canonical closed test complex.
    """
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RETRIES):
        G = [_random_vertex_matrix(rng) for _ in range(5)]
        vertex_sets = [[a for a in range(5) if a != i] for i in range(5)]
        if not all(_decoration_ok([G[a] for a in vs]) for vs in vertex_sets):
            continue
        tets = [
            Tetrahedron(
                id=i,
                orientation=(-1) ** i,
                payload=Decoration([G[a] for a in vertex_sets[i]]),
            )
            for i in range(5)
        ]
        gluings = []
        for i in range(5):
            for j in range(i + 1, 5):
                # Shared face omits global vertices i and j.
                face_a = vertex_sets[i].index(j)
                face_b = vertex_sets[j].index(i)
                shared = [a for a in range(5) if a not in (i, j)]
                vm = tuple(vertex_sets[j].index(a) for a in shared)
                gluings.append(Gluing(tet_a=i, face_a=face_a,
                                      tet_b=j, face_b=face_b, vertex_map=vm))
        return DecoratedComplex(tets, gluings)
    raise DegenerateError(f"no nondegenerate 4-simplex boundary in {MAX_RETRIES} draws")
