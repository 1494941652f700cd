"""The affine Iwahori-Hecke algebra in Bernstein normal form.

Elements are finite sums of (Laurent monomial in y_1..y_d) x T_w over
permutations w, with y-monomials kept on the left.  The rewriting engine
moves y-atoms leftward through T-atoms with the four exchange rules derived
from T_i y_i T_i = y_{i+1}; each rewrite strictly decreases the number of
T-atoms to the left of a y-atom, so normalization terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import permutations as iter_permutations

from .ratfunc import ONE, RatFunc, q_int, rat

Perm = tuple[int, ...]
Mono = tuple[int, ...]

QQ = q_int(1) - q_int(-1)  # q - q^{-1}


# ---------------------------------------------------------------------------
# permutations (one-line notation, 0-based)
# ---------------------------------------------------------------------------

def identity_perm(d: int) -> Perm:
    return tuple(range(d))

@cache
def symmetric_group(d: int) -> tuple[Perm, ...]:
    """All of S_d sorted lexicographically (the module basis order)."""
    return tuple(sorted(iter_permutations(range(d))))

def perm_length(w: Perm) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w))
               if w[i] > w[j])

def perm_mul(u: Perm, v: Perm) -> Perm:
    """(u v)(k) = u(v(k))."""
    return tuple(u[v[k]] for k in range(len(u)))

def perm_inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for i, x in enumerate(w):
        out[x] = i
    return tuple(out)

def right_mul_s(w: Perm, i: int) -> Perm:
    """w . s_i: swap the entries at positions i-1, i (1-based generator i)."""
    lst = list(w)
    lst[i - 1], lst[i] = lst[i], lst[i - 1]
    return tuple(lst)

@cache
def reduced_word(w: Perm) -> tuple[int, ...]:
    """The lexicographically least reduced word (letters are 1-based).

    Greedy: the smallest left descent starts some reduced word and no
    smaller letter can, so picking it repeatedly is lex-minimal.
    """
    word = []
    cur = w
    while cur != identity_perm(len(w)):
        ci = perm_inverse(cur)
        for i in range(len(w) - 1):
            if ci[i] > ci[i + 1]:  # left descent at s_{i+1}
                word.append(i + 1)
                lst = list(cur)
                p, r = ci[i], ci[i + 1]
                lst[p], lst[r] = lst[r], lst[p]
                cur = tuple(lst)
                break
    return tuple(word)


# ---------------------------------------------------------------------------
# Hecke elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HeckeElt:
    """Bernstein-normal-form element: terms (y-exponent, permutation) -> scalar."""

    d: int
    terms: tuple  # canonical sorted tuple of ((mono, perm), RatFunc)

    @staticmethod
    def from_dict(d: int, data: dict[tuple[Mono, Perm], RatFunc]) -> "HeckeElt":
        items = tuple(sorted(((k, v) for k, v in data.items() if v),
                             key=lambda kv: kv[0]))
        return HeckeElt(d, items)

    def as_dict(self) -> dict[tuple[Mono, Perm], RatFunc]:
        return dict(self.terms)

    @staticmethod
    def zero(d: int) -> "HeckeElt":
        return HeckeElt(d, ())

    @staticmethod
    def one(d: int) -> "HeckeElt":
        mono = (0,) * d
        return HeckeElt.from_dict(d, {(mono, identity_perm(d)): ONE})

    @staticmethod
    def T(i: int, d: int) -> "HeckeElt":
        if not 1 <= i < d:
            raise ValueError(f"T index {i} out of range 1..{d - 1}")
        w = right_mul_s(identity_perm(d), i)
        return HeckeElt.from_dict(d, {((0,) * d, w): ONE})

    @staticmethod
    def y(j: int, d: int, power: int = 1) -> "HeckeElt":
        if not 1 <= j <= d:
            raise ValueError(f"y index {j} out of range 1..{d}")
        mono = tuple(power if k == j - 1 else 0 for k in range(d))
        return HeckeElt.from_dict(d, {(mono, identity_perm(d)): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def y_free(self) -> bool:
        return all(all(e == 0 for e in mono) for (mono, _), _ in self.terms)

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        out = self.as_dict()
        for k, v in other.terms:
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return HeckeElt.from_dict(self.d, out)

    def __neg__(self) -> "HeckeElt":
        return HeckeElt(self.d, tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + (-other)

    def scale(self, c: RatFunc) -> "HeckeElt":
        if not c:
            return HeckeElt.zero(self.d)
        return HeckeElt(self.d, tuple((k, c * v) for k, v in self.terms))

    def times_atom(self, atom) -> "HeckeElt":
        """Right-multiply by an atom ('T', i) or ('y', j, power)."""
        out: dict[tuple[Mono, Perm], RatFunc] = {}
        if atom[0] == "T":
            i = atom[1]
            for (mono, w), coeff in self.terms:
                for (w2, c2) in _T_right_mul(w, i):
                    key = (mono, w2)
                    s = out.get(key)
                    add = coeff * c2 if c2 is not ONE else coeff
                    s = add if s is None else s + add
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        elif atom[0] == "y":
            j, power = atom[1], atom[2]
            step = 1 if power > 0 else -1
            cur = self.as_dict()
            for _ in range(abs(power)):
                nxt: dict[tuple[Mono, Perm], RatFunc] = {}
                for (mono, w), coeff in cur.items():
                    for (mono2, w2), c2 in _T_times_y(w, j, step).items():
                        key = (tuple(a + b for a, b in zip(mono, mono2)), w2)
                        s = nxt.get(key)
                        add = coeff * c2
                        s = add if s is None else s + add
                        if s:
                            nxt[key] = s
                        else:
                            nxt.pop(key, None)
                cur = nxt
            out = cur
        else:
            raise ValueError(f"unknown atom {atom!r}")
        return HeckeElt.from_dict(self.d, out)

    def __mul__(self, other: "HeckeElt") -> "HeckeElt":
        total: dict[tuple[Mono, Perm], RatFunc] = {}
        for (mono, w), coeff in other.terms:
            piece = self
            for j, e in enumerate(mono):
                if e:
                    piece = piece.times_atom(("y", j + 1, e))
            for i in reduced_word(w):
                piece = piece.times_atom(("T", i))
            for k, v in piece.terms:
                s = total.get(k)
                add = coeff * v
                s = add if s is None else s + add
                if s:
                    total[k] = s
                else:
                    total.pop(k, None)
        return HeckeElt.from_dict(self.d, total)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (mono, w), coeff in self.terms:
            monos = "y^(" + ",".join(map(str, mono)) + ")"
            perm = "T[" + " ".join(str(x + 1) for x in w) + "]"
            parts.append(f"({coeff}) * {monos} * {perm}")
        return " + ".join(parts)


_T_Y_CACHE: dict[tuple[Perm, int, int], dict] = {}


def _T_times_y(w: Perm, j: int, s: int) -> dict[tuple[Mono, Perm], RatFunc]:
    """Normal form of T_w y_j^s (s = +-1) as {(mono, perm): coeff}."""
    d = len(w)
    key = (w, j, s)
    hit = _T_Y_CACHE.get(key)
    if hit is not None:
        return hit
    if w == identity_perm(d):
        mono = tuple(s if k == j - 1 else 0 for k in range(d))
        res = {(mono, w): ONE}
        _T_Y_CACHE[key] = res
        return res
    word = reduced_word(w)
    i = word[-1]
    wp = right_mul_s(w, i)  # length drops by one
    # T_w y_j^s = T_{w'} (T_i y_j^s); expand the local exchange rule
    local: list[tuple[int, int, RatFunc, bool]] = []  # (j', s, coeff, keep_Ti)
    if j != i and j != i + 1:
        local.append((j, s, ONE, True))
    elif s == 1 and j == i + 1:
        local.append((i, 1, ONE, True))
        local.append((i + 1, 1, QQ, False))
    elif s == 1 and j == i:
        local.append((i + 1, 1, ONE, True))
        local.append((i + 1, 1, -QQ, False))
    elif s == -1 and j == i + 1:
        local.append((i, -1, ONE, True))
        local.append((i, -1, -QQ, False))
    else:  # s == -1 and j == i
        local.append((i + 1, -1, ONE, True))
        local.append((i, -1, QQ, False))
    out: dict[tuple[Mono, Perm], RatFunc] = {}
    for (jp, sp, cf, keep) in local:
        inner = _T_times_y(wp, jp, sp)
        for (mono, u), cu in inner.items():
            targets = _T_right_mul(u, i) if keep else ((u, ONE),)
            for (u2, c2) in targets:
                keyt = (mono, u2)
                add = cf * cu * c2
                sacc = out.get(keyt)
                sacc = add if sacc is None else sacc + add
                if sacc:
                    out[keyt] = sacc
                else:
                    out.pop(keyt, None)
    _T_Y_CACHE[key] = out
    return out


def _T_right_mul(w: Perm, i: int) -> tuple:
    """T_w T_i in the T basis: length-additive or quadratic case."""
    ws = right_mul_s(w, i)
    if w[i - 1] < w[i]:  # length goes up
        return ((ws, ONE),)
    return ((ws, ONE), (w, QQ))


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def bernstein_nf(atoms, d: int) -> HeckeElt:
    """Normal form of a word of atoms ('T', i) / ('y', j, power)."""
    out = HeckeElt.one(d)
    for atom in atoms:
        out = out.times_atom(atom)
    return out


def finite_hecke_mul(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """Product of two y-free elements in the T basis."""
    if not (a.y_free() and b.y_free()):
        raise ValueError("finite_hecke_mul expects y-free elements")
    return a * b


def T_inverse(i: int, d: int) -> HeckeElt:
    """T_i^{-1} = T_i - (q - q^{-1})."""
    return HeckeElt.T(i, d) - HeckeElt.one(d).scale(QQ)


_EV_CACHE: dict[tuple[int, int, RatFunc, int], HeckeElt] = {}


def _ev_y(j: int, d: int, z: RatFunc, sign: int) -> HeckeElt:
    """Image of y_j^{sign}: z^{sign} (T_{j-1} .. T_1^2 .. T_{j-1})^{sign}."""
    key = (j, d, z, sign)
    hit = _EV_CACHE.get(key)
    if hit is not None:
        return hit
    if sign == 1:
        out = HeckeElt.one(d).scale(z)
        for i in list(range(j - 1, 0, -1)) + list(range(1, j)):
            out = out.times_atom(("T", i))
    else:
        out = HeckeElt.one(d).scale(z.inverse())
        for i in list(range(j - 1, 0, -1)) + list(range(1, j)):
            out = out * T_inverse(i, d)
    _EV_CACHE[key] = out
    return out


def ev_z(h: HeckeElt, z) -> HeckeElt:
    """Evaluation homomorphism onto the finite algebra: y_1 -> z.

    Fixes every T_i and sends y_j to z T_{j-1} ... T_1^2 ... T_{j-1}; the
    images of the y_j commute, so a Bernstein monomial maps to the product
    of the per-index images.
    """
    z = z if isinstance(z, RatFunc) else rat(Fraction(z))
    if not z:
        raise ValueError("evaluation point z must be nonzero")
    d = h.d
    out: dict[tuple[Mono, Perm], RatFunc] = {}
    for (mono, w), coeff in h.terms:
        piece = HeckeElt.from_dict(d, {((0,) * d, w): coeff})
        for j, e in enumerate(mono):
            if e:
                img = _ev_y(j + 1, d, z, 1 if e > 0 else -1)
                for _ in range(abs(e)):
                    piece = img * piece
        for k, v in piece.terms:
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return HeckeElt.from_dict(d, out)


# ---------------------------------------------------------------------------
# the universal modules M_c
# ---------------------------------------------------------------------------

MatD = dict[tuple[int, int], RatFunc]


def mat_mul(a: MatD, b: MatD) -> MatD:
    bycol: dict[int, list] = {}
    for (r, c), v in a.items():
        bycol.setdefault(c, []).append((r, v))
    out: MatD = {}
    for (r2, c2), v2 in b.items():
        for r1, v1 in bycol.get(r2, ()):  # a[r1, r2] * b[r2, c2]
            key = (r1, c2)
            s = out.get(key)
            add = v1 * v2
            s = add if s is None else s + add
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def mat_identity(n: int) -> MatD:
    return {(i, i): ONE for i in range(n)}


def mat_sub(a: MatD, b: MatD) -> MatD:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        s = -v if s is None else s - v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


@dataclass(frozen=True)
class McModule:
    """The universal affine module with character y_j -> c_j.

    As a module over the finite subalgebra this is the right regular
    representation on the T_w basis (lexicographic order of one-line
    permutations); y-monomials evaluate through the character on the left.
    """

    d: int
    c: tuple[RatFunc, ...]

    @staticmethod
    def create(d: int, c) -> "McModule":
        vals = []
        for x in c:
            r = x if isinstance(x, RatFunc) else rat(Fraction(x))
            if not r:
                raise ValueError("character values must be nonzero")
            vals.append(r)
        if len(vals) != d:
            raise ValueError(f"need {d} character values")
        return McModule(d, tuple(vals))

    @property
    def basis(self) -> tuple[Perm, ...]:
        return symmetric_group(self.d)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def evaluate_monomial(self, mono: Mono) -> RatFunc:
        out = ONE
        for cj, e in zip(self.c, mono):
            if e:
                out = out * cj ** e
        return out

    def act_on_basis(self, w: Perm, atom) -> dict[Perm, RatFunc]:
        """Image of the basis vector T_w under the right action of an atom."""
        elt = HeckeElt.from_dict(self.d, {((0,) * self.d, w): ONE})
        elt = elt.times_atom(atom)
        out: dict[Perm, RatFunc] = {}
        for (mono, u), coeff in elt.terms:
            val = coeff * self.evaluate_monomial(mono)
            s = out.get(u)
            s = val if s is None else s + val
            if s:
                out[u] = s
            else:
                out.pop(u, None)
        return out

    def action_matrix(self, atom) -> MatD:
        """d! x d! matrix of the right action (columns indexed by basis)."""
        index = {w: k for k, w in enumerate(self.basis)}
        out: MatD = {}
        for col, w in enumerate(self.basis):
            for u, val in self.act_on_basis(w, atom).items():
                out[(index[u], col)] = val
        return out
