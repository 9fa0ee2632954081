"""Orbit balls {gamma in Gamma : ||gamma||_F < T} for free subgroups of SL(2, Z).

Enumeration is a breadth-first sweep over reduced words, one word length per
level, vectorized with numpy. A child word is discarded as soon as its norm
reaches T, and its subtree is never visited. This is exact for groups whose
Frobenius norm never decreases along reduced words; the groups
Gamma_c = <[[1, c], [0, 1]], [[1, 0], [c, 1]]>, c >= 2, have this property
(see ``GroupPresentation.monotone_certificate``).
"""
from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field, replace

import numpy as np

from .core import GroupElement, PI, cartan_arrays, compose

log = logging.getLogger(__name__)

_INT64_SAFE = 2**62


class NonFreeGroupError(RuntimeError):
    pass


@dataclass(frozen=True)
class GroupPresentation:
    """Free generators of a subgroup of SL(2, Z).

    ``monotone_certificate`` marks presentations for which the Frobenius norm
    is non-decreasing along every reduced word; only those produce balls
    flagged ``complete``. ``pingpong`` optionally records the ping-pong
    regions {|x| >= outer} u {|x| <= inner} on the real line that contain
    the limit set.
    """

    generators: tuple[GroupElement, ...]
    label: str = "custom"
    monotone_certificate: bool = False
    pingpong: dict | None = None

    def __post_init__(self):
        if not self.generators:
            raise ValueError("need at least one generator")
        keys = [g.key for g in self.letters()]
        if len(set(keys)) != len(keys):
            raise ValueError("generators and inverses must be pairwise distinct")

    def letters(self) -> list[GroupElement]:
        """[g1, g1^-1, g2, g2^-1, ...] with words (+1,), (-1,), (+2,), ..."""
        out = []
        for j, g in enumerate(self.generators, start=1):
            base = GroupElement(*g.entries, word=(j,))
            out.append(base)
            out.append(base.inverse())
        return out

    def letter_array(self) -> np.ndarray:
        return np.array([g.entries for g in self.letters()], dtype=np.int64)

    @property
    def rank(self) -> int:
        return len(self.generators)


def gamma_c(c: int) -> GroupPresentation:
    """The free group <[[1, c], [0, 1]], [[1, 0], [c, 1]]>.

    For c >= 3 it has infinite covolume; for c >= 2 it is free by ping-pong,
    with limit set inside {|x| >= c/2} u {|x| <= 2/c} on the real line.
    """
    if c < 2:
        raise ValueError("gamma_c needs c >= 2")
    gens = (GroupElement(1, c, 0, 1), GroupElement(1, 0, c, 1))
    return GroupPresentation(gens, label=f"gamma{c}", monotone_certificate=True,
                             pingpong={"outer": c / 2, "inner": 2 / c})


@dataclass
class OrbitBall:
    """Elements of norm < T with their Cartan data.

    ``entries`` is (N, 4) with rows (a, b, c, d); ``parent``/``letter`` encode
    the word tree (parent index, signed letter id) and are ``None`` for balls
    loaded from disk.
    """

    group: GroupPresentation
    T: float
    entries: np.ndarray
    theta1: np.ndarray
    t: np.ndarray
    theta2: np.ndarray
    degenerate: np.ndarray
    complete: bool
    parent: np.ndarray | None = None
    letter: np.ndarray | None = None
    note: str = ""

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def norm_sq(self) -> np.ndarray:
        e = self.entries
        return (e * e).sum(axis=1)

    def word(self, i: int) -> tuple[int, ...]:
        if self.parent is None:
            return ()
        out = []
        while i >= 0 and self.letter[i] != 0:
            out.append(int(self.letter[i]))
            i = int(self.parent[i])
        return tuple(reversed(out))

    def element(self, i: int) -> GroupElement:
        return GroupElement(*(int(x) for x in self.entries[i]), word=self.word(i))

    def elements(self):
        for i in range(len(self)):
            yield self.element(i)

    def subset(self, mask: np.ndarray, note: str = "") -> "OrbitBall":
        """Sub-ball selected by a boolean mask (word tree is dropped)."""
        return replace(self, entries=self.entries[mask], theta1=self.theta1[mask],
                       t=self.t[mask], theta2=self.theta2[mask],
                       degenerate=self.degenerate[mask], parent=None, letter=None,
                       note=note or self.note)

    def restrict(self, T: float) -> "OrbitBall":
        if T > self.T:
            raise ValueError(f"cannot restrict a ball of radius {self.T} to {T}")
        ball = self.subset(self.norm_sq < T * T)
        ball.T = T
        return ball


def _product_rows(p: np.ndarray, g: np.ndarray) -> np.ndarray:
    a = p[:, 0] * g[0] + p[:, 1] * g[2]
    b = p[:, 0] * g[1] + p[:, 1] * g[3]
    c = p[:, 2] * g[0] + p[:, 3] * g[2]
    d = p[:, 2] * g[1] + p[:, 3] * g[3]
    return np.stack([a, b, c, d], axis=1)


def _canonical_rows(e: np.ndarray) -> np.ndarray:
    first = np.where(e[:, 0] != 0, e[:, 0], np.where(e[:, 1] != 0, e[:, 1], e[:, 2]))
    sign = np.where(first < 0, -1, 1).astype(e.dtype)
    return e * sign[:, None]


def find_duplicates(entries: np.ndarray) -> list[tuple[int, int]]:
    """Index pairs of rows equal up to sign."""
    can = _canonical_rows(np.asarray(entries))
    order = np.lexsort(can.T[::-1])
    srt = can[order]
    same = np.all(srt[1:] == srt[:-1], axis=1)
    return [(int(order[i]), int(order[i + 1])) for i in np.flatnonzero(same)]


def enumerate_ball(group: GroupPresentation, T: float, *, check_duplicates: bool = True,
                   dedup: bool = False) -> OrbitBall:
    """All gamma in the group with ||gamma||_F < T, in shortlex word order.

    Raises NonFreeGroupError when two distinct reduced words give the same
    element, unless ``dedup`` is set (then the later copy is dropped and the
    ball is marked incomplete).
    """
    if T < math.sqrt(2):
        raise ValueError("T must be at least sqrt(2)")
    T2 = T * T
    letters = group.letter_array()
    nlet = len(letters)
    inverse_of = np.array([i ^ 1 for i in range(nlet)])
    max_letter = int(np.abs(letters).max())
    # squared norms of children must fit in int64
    bigint = (2 * max_letter * (T + 1)) ** 2 >= _INT64_SAFE
    dtype = object if bigint else np.int64
    if bigint:
        log.info("entries may exceed int64 at T=%g; using Python integers", T)

    ent_levels = [np.array([[1, 0, 0, 1]], dtype=dtype)]
    par_levels = [np.array([-1], dtype=np.int64)]
    let_levels = [np.array([0], dtype=np.int8)]
    last_levels = [np.array([-1], dtype=np.int64)]
    offset = 0
    monotone_violations = 0
    dropped = 0
    seen = None if group.monotone_certificate else {(1, 0, 0, 1): None}
    cur, cur_last = ent_levels[0], last_levels[0]
    while len(cur):
        base = offset
        offset += len(cur)
        parent_norm = (cur * cur).sum(axis=1)
        idx = np.arange(len(cur))
        # order children by (parent, letter) to keep shortlex order
        kids, kid_par, kid_let, kid_last = [], [], [], []
        for li in range(nlet):
            ok = cur_last != inverse_of[li]
            if not ok.any():
                continue
            q = _product_rows(cur[ok], letters[li].astype(dtype))
            qn = (q * q).sum(axis=1)
            monotone_violations += int(np.count_nonzero(qn < parent_norm[ok]))
            keep = qn < T2
            kids.append(q[keep])
            kid_par.append(base + idx[ok][keep])
            li_signed = (li // 2 + 1) * (1 if li % 2 == 0 else -1)
            kid_let.append(np.full(int(keep.sum()), li_signed, dtype=np.int8))
            kid_last.append(np.full(int(keep.sum()), li, dtype=np.int64))
        if not kids:
            break
        par = np.concatenate(kid_par)
        order = np.lexsort((np.concatenate(kid_last), par))
        cur = np.concatenate(kids)[order]
        cur_last = np.concatenate(kid_last)[order]
        cur_par = par[order]
        cur_let = np.concatenate(kid_let)[order]
        if seen is not None:
            # without a freeness certificate the word tree can revisit elements
            # forever, so repeats are caught level by level
            fresh = np.ones(len(cur), dtype=bool)
            for i, row in enumerate(_canonical_rows(cur).tolist()):
                key = tuple(row)
                if key not in seen:
                    seen[key] = None
                    continue
                fresh[i] = False
                if not dedup:
                    pars, lets = np.concatenate(par_levels), np.concatenate(let_levels)
                    new_word = _word(pars, lets, int(cur_par[i])) + (int(cur_let[i]),)
                    raise NonFreeGroupError(f"element {key} reached twice, last via word {new_word}")
            dropped += int(np.count_nonzero(~fresh))
            cur, cur_last, cur_par, cur_let = cur[fresh], cur_last[fresh], cur_par[fresh], cur_let[fresh]
        ent_levels.append(cur)
        par_levels.append(cur_par)
        let_levels.append(cur_let)
        last_levels.append(cur_last)

    entries = np.concatenate(ent_levels)
    parent = np.concatenate(par_levels)
    letter = np.concatenate(let_levels)
    complete = group.monotone_certificate and monotone_violations == 0
    if monotone_violations:
        log.warning("%d norm decreases along reduced words; ball not certified complete",
                    monotone_violations)
    note = ""
    if dropped:
        complete = False
        note = f"dedup dropped {dropped} duplicates"
    if check_duplicates or dedup:
        dups = find_duplicates(entries)
        if dups:
            if not dedup:
                i, j = dups[0]
                raise NonFreeGroupError(
                    f"{len(dups)} duplicate elements, e.g. words {_word(parent, letter, i)} "
                    f"and {_word(parent, letter, j)}")
            drop = np.zeros(len(entries), dtype=bool)
            for i, j in dups:
                drop[max(i, j)] = True
            keep = ~drop
            entries, parent, letter = entries[keep], None, None
            complete = False
            note = f"dedup dropped {int(drop.sum())} duplicates"
    theta1, t, theta2, degenerate = cartan_arrays(entries)
    return OrbitBall(group, float(T), entries, theta1, t, theta2, degenerate,
                     complete, parent, letter, note)


def _word(parent, letter, i):
    out = []
    while i >= 0 and letter[i] != 0:
        out.append(int(letter[i]))
        i = int(parent[i])
    return tuple(reversed(out))


def count_growth(group_or_ball, T_grid) -> list[tuple[float, int]]:
    """(T, #{||gamma|| < T}) for an increasing grid, from a single enumeration."""
    T_grid = [float(x) for x in T_grid]
    if any(b <= a for a, b in zip(T_grid, T_grid[1:])):
        raise ValueError("T_grid must be strictly increasing")
    if isinstance(group_or_ball, OrbitBall):
        ball = group_or_ball
        if T_grid[-1] > ball.T:
            raise ValueError("grid exceeds the ball radius")
    else:
        ball = enumerate_ball(group_or_ball, T_grid[-1])
    nsq = np.sort(ball.norm_sq.astype(np.float64))
    # strict inequality ||g||^2 < T^2; norms are integers
    counts = np.searchsorted(nsq, np.array(T_grid) ** 2, side="left")
    return [(T, int(n)) for T, n in zip(T_grid, counts)]


def brute_force_words(group: GroupPresentation, T: float, depth: int) -> set:
    """Canonical keys of all reduced words up to ``depth`` with norm < T (no pruning)."""
    letters = group.letters()
    inv = [i ^ 1 for i in range(len(letters))]
    found = set()
    stack = [(GroupElement.identity(), -1, 0)]
    while stack:
        g, last, n = stack.pop()
        if g.a ** 2 + g.b ** 2 + g.c ** 2 + g.d ** 2 < T * T:
            found.add(g.key)
        if n == depth:
            continue
        for li, x in enumerate(letters):
            if last < 0 or li != inv[last]:
                stack.append((compose(g, x), li, n + 1))
    return found


def _sl2z_ball(T: float) -> np.ndarray:
    """Every M in SL(2, Z) with a^2 + b^2 + c^2 + d^2 < T^2, as (N, 4) rows."""
    T2 = T * T
    R = int(math.isqrt(int(T2))) + 1
    rows = []
    for a in range(-R, R + 1):
        for c in range(-R, R + 1):
            if a * a + c * c >= T2 or math.gcd(a, c) != 1:
                continue
            # particular solution of a d - b c = 1
            g, x, y = _ext_gcd(a, c)  # a x + c y = g = +/-1
            d0, b0 = x * g, -y * g
            # general: (b, d) = (b0 + m a, d0 + m c); minimize b^2 + d^2
            s = a * a + c * c
            m0 = -(a * b0 + c * d0) / s
            span = int(math.sqrt(max(T2, 1) / s)) + 2
            for m in range(int(math.floor(m0)) - span, int(math.ceil(m0)) + span + 1):
                b, d = b0 + m * a, d0 + m * c
                if a * a + b * b + c * c + d * d < T2:
                    rows.append((a, b, c, d))
    return np.array(rows, dtype=np.int64).reshape(-1, 4)


def _ext_gcd(a: int, b: int):
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


def descend_to_identity(group: GroupPresentation, rows: np.ndarray) -> np.ndarray:
    """Greedy membership test: peel off letters on the left while the norm drops.

    Vectorized over an (N, 4) array; returns a boolean mask of members.
    """
    cur = np.array(rows, dtype=np.int64).reshape(-1, 4)
    inv_letters = [np.array(x.inverse().entries, dtype=np.int64) for x in group.letters()]
    active = np.ones(len(cur), dtype=bool)
    norm = (cur * cur).sum(axis=1)
    while True:
        idx = np.flatnonzero(active & (norm > 2))
        if not len(idx):
            break
        sub = cur[idx]
        best_n = norm[idx].copy()
        best = sub.copy()
        moved = np.zeros(len(idx), dtype=bool)
        for p, q, r, s_ in inv_letters:
            cand = np.stack([p * sub[:, 0] + q * sub[:, 2], p * sub[:, 1] + q * sub[:, 3],
                             r * sub[:, 0] + s_ * sub[:, 2], r * sub[:, 1] + s_ * sub[:, 3]],
                            axis=1)
            cn = (cand * cand).sum(axis=1)
            better = cn < best_n
            best[better], best_n[better] = cand[better], cn[better]
            moved |= better
        cur[idx], norm[idx] = best, best_n
        active[idx[~moved]] = False
    ident = np.array([1, 0, 0, 1])
    return np.all(cur == ident, axis=1)


def reference_ball(group: GroupPresentation, T: float) -> set:
    """Unpruned reference: scan all of SL(2, Z) below T, keep members of the group.

    Only valid for ping-pong groups such as Gamma_c with c >= 3, where the
    greedy descent decides membership.
    """
    cand = _sl2z_ball(T)
    members = cand[descend_to_identity(group, cand)]
    return {GroupElement(*(int(x) for x in row)).key for row in members}


# ---------------------------------------------------------------- congruences

def reduce_mod_q(g, q: int) -> tuple[int, int, int, int]:
    if q < 1:
        raise ValueError("q must be positive")
    e = g.entries if isinstance(g, GroupElement) else tuple(int(x) for x in g)
    return tuple(x % q for x in e)


def reduce_rows_mod_q(entries: np.ndarray, q: int) -> np.ndarray:
    return np.mod(entries, q)


def mul_mod(x, y, q):
    a, b, c, d = x
    p, r, s, u = y
    return ((a * p + b * s) % q, (a * r + b * u) % q,
            (c * p + d * s) % q, (c * r + d * u) % q)


def congruence_image(group: GroupPresentation, q: int) -> list[tuple[int, int, int, int]]:
    """Sorted list of the image of the group in SL(2, Z/q), by BFS closure."""
    ident = (1 % q, 0, 0, 1 % q)
    gens = [reduce_mod_q(x, q) for x in group.letters()]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul_mod(x, g, q)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


@dataclass
class CongruenceContext:
    """Level-q data: q = q' q'' with q' = gcd(q, ramification), and the coset table.

    Cosets gamma0 Gamma(q) are labelled by the residue of gamma0 mod q; the
    table maps each residue in the image group to a coset id.
    """

    group: GroupPresentation
    q: int
    ramification: int = 1
    q_factorization: tuple[int, int] = field(init=False)
    residue_table: dict = field(init=False)

    def __post_init__(self):
        if self.q < 1 or self.ramification < 1:
            raise ValueError("q and the ramification number must be positive")
        qp = math.gcd(self.q, self.ramification)
        self.q_factorization = (qp, self.q // qp)
        image = congruence_image(self.group, self.q)
        self.residue_table = {m: i for i, m in enumerate(image)}

    @property
    def index(self) -> int:
        """[Gamma : Gamma(q)], the order of the image in SL(2, Z/q)."""
        return len(self.residue_table)

    def coset_ids(self, ball: OrbitBall) -> np.ndarray:
        res = reduce_rows_mod_q(ball.entries.astype(np.int64), self.q)
        keys = _residue_codes(res, self.q)
        # residue_table is built from a sorted list, so codes are increasing
        table_codes = _residue_codes(np.array(list(self.residue_table), dtype=np.int64), self.q)
        pos = np.searchsorted(table_codes, keys)
        pos = np.minimum(pos, len(table_codes) - 1)
        if not np.array_equal(table_codes[pos], keys):
            raise ValueError("ball contains residues outside the generated image")
        return pos


def _residue_codes(res: np.ndarray, q: int) -> np.ndarray:
    res = np.asarray(res, dtype=np.int64)
    return ((res[:, 0] * q + res[:, 1]) * q + res[:, 2]) * q + res[:, 3]


def coset_filter(ball: OrbitBall, ctx: CongruenceContext, gamma0: GroupElement) -> OrbitBall:
    """Elements of gamma0 Gamma(q), i.e. gamma with gamma0^-1 gamma = I mod q."""
    target = np.array(reduce_mod_q(gamma0, ctx.q), dtype=np.int64)
    res = reduce_rows_mod_q(ball.entries.astype(np.int64), ctx.q)
    mask = np.all(res == target, axis=1)
    return ball.subset(mask, note=f"coset of {gamma0.entries} mod {ctx.q}")


def coset_counts(ball: OrbitBall, ctx: CongruenceContext) -> np.ndarray:
    """Number of ball elements in each coset gamma0 Gamma(q), indexed by coset id."""
    return np.bincount(ctx.coset_ids(ball), minlength=ctx.index)


def stabilizer_filter_row(ball: OrbitBall, ctx: CongruenceContext, row) -> dict:
    """Partition the ball by the residue of (c, d) gamma mod q.

    Returns {(y1, y2) mod q: index array}. The cell of (c, d) itself is the
    stabilizer coset Gamma_0(q).
    """
    c, d = (int(x) for x in row)
    if math.gcd(c, d) != 1:
        raise ValueError("row must be primitive (gcd 1)")
    e = ball.entries.astype(np.int64)
    y1 = np.mod(c * e[:, 0] + d * e[:, 2], ctx.q)
    y2 = np.mod(c * e[:, 1] + d * e[:, 3], ctx.q)
    code = y1 * ctx.q + y2
    order = np.argsort(code, kind="stable")
    uniq, start = np.unique(code[order], return_index=True)
    bounds = list(start) + [len(order)]
    return {(int(u) // ctx.q, int(u) % ctx.q): order[bounds[i]:bounds[i + 1]]
            for i, u in enumerate(uniq)}


def forbidden_arcs(group: GroupPresentation) -> list[tuple[float, float]]:
    """Disk-angle intervals (in [0, pi)) that the limit set avoids, from ping-pong data.

    For Gamma_c the limit set lies in {|x| >= c/2} u {|x| <= 2/c}; the open
    gaps 2/c < |x| < c/2 map to two arcs.
    """
    if not group.pingpong:
        return []
    lo, hi = group.pingpong["inner"], group.pingpong["outer"]
    if lo >= hi:
        return []

    def angle(x):
        w = complex(x, -1) / complex(x, 1)
        return math.atan2(w.imag, w.real) / 2 % PI

    arcs = []
    for sgn in (1, -1):
        u, v = sorted((angle(sgn * lo), angle(sgn * hi)))
        arcs.append((u, v))
    return arcs
