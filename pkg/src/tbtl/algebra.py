"""Standard-basis matrices of the loop-model generators and the coideal
generator, with relation, quotient, Hamiltonian and commutant checks.

Operators are stored column-sparse: {column string: {row string: coeff}}.
Site 1 is the leftmost tensor factor and the per-site basis order is
(v_1, v_{-1}), matching '+' and '-'.
"""

from __future__ import annotations

from functools import lru_cache

from .basis import enumerate_strings, flip
from .ring import (
    RatioElem,
    RingElem,
    R_ONE,
    qQ_bracket,
)

Vec = dict[str, RatioElem]
Op = dict[str, Vec]

_mono = RingElem.mono


def _r(c: RingElem) -> RatioElem:
    return RatioElem.from_ring(c)


def zero_op(N: int) -> Op:
    return {s: {} for s in enumerate_strings(N)}


def op_add(A: Op, B: Op) -> Op:
    out: Op = {}
    for col in A:
        v = dict(A[col])
        for row, c in B[col].items():
            cur = v.get(row)
            nxt = c if cur is None else cur + c
            if nxt.is_zero():
                v.pop(row, None)
            else:
                v[row] = nxt
        out[col] = v
    return out


def op_scale(A: Op, c: RatioElem) -> Op:
    return {
        col: {row: c * v for row, v in column.items() if not (c * v).is_zero()}
        for col, column in A.items()
    }


def op_apply(A: Op, v: Vec) -> Vec:
    out: Vec = {}
    for col, c in v.items():
        if c.is_zero():
            continue
        for row, a in A[col].items():
            add = c * a
            cur = out.get(row)
            nxt = add if cur is None else cur + add
            if nxt.is_zero():
                out.pop(row, None)
            else:
                out[row] = nxt
    return out


def op_mul(A: Op, B: Op) -> Op:
    return {col: op_apply(A, column) for col, column in B.items()}


def op_eq(A: Op, B: Op) -> bool:
    for col in A:
        va, vb = A[col], B.get(col, {})
        keys = set(va) | set(vb)
        for row in keys:
            ca = va.get(row)
            cb = vb.get(row)
            if ca is None:
                if not cb.is_zero():
                    return False
            elif cb is None:
                if not ca.is_zero():
                    return False
            elif ca != cb:
                return False
    return True


def op_is_zero(A: Op) -> bool:
    return all(all(c.is_zero() for c in col.values()) for col in A.values())


def op_sub(A: Op, B: Op) -> Op:
    return op_add(A, op_scale(B, RatioElem.from_int(-1)))


def op_subst_Q(A: Op, M: int) -> Op:
    return {
        col: {row: c.subst_Q(M) for row, c in column.items()}
        for col, column in A.items()
    }


# -- generators -----------------------------------------------------------


@lru_cache(maxsize=None)
def generator_matrix(kind: str, i: int, N: int) -> Op:
    """Matrix of e_i (kind 'E'), e_N ('EN') or e_0 ('E0') on V_1^{⊗N}."""
    out: Op = {}
    if kind == "E":
        if not 1 <= i <= N - 1:
            raise ValueError(f"e_{i} needs 1 <= i <= N-1")
        mq = _r(_mono(-1, 1))
        mqi = _r(_mono(-1, -1))
        one = R_ONE
        for s in enumerate_strings(N):
            a, b = s[i - 1], s[i]
            col: Vec = {}
            if (a, b) == ("+", "-"):
                col[s] = mqi
                col[flip(s, {i: "-", i + 1: "+"})] = one
            elif (a, b) == ("-", "+"):
                col[flip(s, {i: "+", i + 1: "-"})] = one
                col[s] = mq
            out[s] = col  # zero column for ++ and --
        return out
    if kind == "EN":
        site, dplus, dminus = N, _r(_mono(-1, 0, -1)), _r(_mono(-1, 0, 1))
    elif kind == "E0":
        site, dplus, dminus = 1, _r(_mono(-1, 0, 0, 1)), _r(_mono(-1, 0, 0, -1))
    else:
        raise ValueError(kind)
    for s in enumerate_strings(N):
        col = {}
        other = flip(s, {site: "-" if s[site - 1] == "+" else "+"})
        col[other] = R_ONE
        col[s] = dplus if s[site - 1] == "+" else dminus
        out[s] = col
    return out


def all_generators(N: int) -> dict:
    gens = {f"e{i}": generator_matrix("E", i, N) for i in range(1, N)}
    gens["eN"] = generator_matrix("EN", 0, N)
    gens["e0"] = generator_matrix("E0", 0, N)
    return gens


def check_defining_relations(N: int) -> dict[str, bool]:
    """Every defining relation of the two-boundary algebra, as matrices."""
    if N < 2:
        raise ValueError("need N >= 2")
    gens = all_generators(N)
    e = [None] + [gens[f"e{i}"] for i in range(1, N)]
    eN, e0 = gens["eN"], gens["e0"]
    two = _r(-(_mono(1, 1) + _mono(1, -1)))
    report: dict[str, bool] = {}
    for i in range(1, N):
        report[f"e{i}^2 = -(q+1/q) e{i}"] = op_eq(op_mul(e[i], e[i]), op_scale(e[i], two))
    for i in range(1, N - 1):
        report[f"e{i} e{i+1} e{i} = e{i}"] = op_eq(op_mul(e[i], op_mul(e[i + 1], e[i])), e[i])
        report[f"e{i+1} e{i} e{i+1} = e{i+1}"] = op_eq(
            op_mul(e[i + 1], op_mul(e[i], e[i + 1])), e[i + 1]
        )
    for i in range(1, N):
        for j in range(i + 2, N):
            report[f"[e{i}, e{j}] = 0"] = op_eq(op_mul(e[i], e[j]), op_mul(e[j], e[i]))
    report["eN^2 = -(Q+1/Q) eN"] = op_eq(
        op_mul(eN, eN), op_scale(eN, _r(-(_mono(1, 0, 1) + _mono(1, 0, -1))))
    )
    bN = _r(_mono(1, 1, -1) + _mono(1, -1, 1))
    report["e(N-1) eN e(N-1) = (q/Q + Q/q) e(N-1)"] = op_eq(
        op_mul(e[N - 1], op_mul(eN, e[N - 1])), op_scale(e[N - 1], bN)
    )
    for i in range(1, N - 1):
        report[f"[e{i}, eN] = 0"] = op_eq(op_mul(e[i], eN), op_mul(eN, e[i]))
    report["e0^2 = -(Q0+1/Q0) e0"] = op_eq(
        op_mul(e0, e0), op_scale(e0, _r(-(_mono(1, 0, 0, 1) + _mono(1, 0, 0, -1))))
    )
    b0 = _r(_mono(1, 1, 0, -1) + _mono(1, -1, 0, 1))
    report["e1 e0 e1 = (q/Q0 + Q0/q) e1"] = op_eq(
        op_mul(e[1], op_mul(e0, e[1])), op_scale(e[1], b0)
    )
    for i in range(2, N):
        report[f"[e{i}, e0] = 0"] = op_eq(op_mul(e[i], e0), op_mul(e0, e[i]))
    report["[eN, e0] = 0"] = op_eq(op_mul(eN, e0), op_mul(e0, eN))
    return report


def quotient_words(N: int):
    """The words I_N and J_N of the finite-dimensional quotient."""
    if N % 2 == 0:
        n = N // 2
        I = [f"e{2 * i + 1}" for i in range(n)]
        J = ["e0"] + [f"e{2 * i}" for i in range(1, n)] + ["eN"]
    else:
        n = (N - 1) // 2
        I = ["e0"] + [f"e{2 * i}" for i in range(1, n + 1)]
        J = [f"e{2 * i + 1}" for i in range(n)] + ["eN"]
    return I, J


def alpha_closed_form(N: int) -> RingElem:
    if N % 2 == 0:
        return (_mono(1, 0, -1) - _mono(1, -1, 0, 1)) * (_mono(1, 0, 1) - _mono(1, 1, 0, -1))
    return (_mono(1) + _mono(1, 0, -1, 1)) * (_mono(1) + _mono(1, 0, 1, -1))


def check_quotient_alpha(N: int):
    """Verify I J I = alpha I and J I J = alpha J; return the alpha read off."""
    gens = all_generators(N)
    Iw, Jw = quotient_words(N)

    def word(names):
        m = gens[names[0]]
        for name in names[1:]:
            m = op_mul(m, gens[name])
        return m

    I, J = word(Iw), word(Jw)
    IJI = op_mul(I, op_mul(J, I))
    JIJ = op_mul(J, op_mul(I, J))
    alpha = None
    for col, column in I.items():
        for row, c in column.items():
            if not c.is_zero():
                alpha = IJI[col].get(row, RatioElem.from_int(0)) * _inverse_of(c)
                break
        if alpha is not None:
            break
    expected = _r(alpha_closed_form(N))
    ok = (
        alpha is not None
        and op_eq(IJI, op_scale(I, alpha))
        and op_eq(JIJ, op_scale(J, alpha))
        and alpha == expected
    )
    return alpha, ok


def _inverse_of(c: RatioElem) -> RatioElem:
    # Only used for coefficients that are single monomials times an atom-free
    # unit, or small polynomials dividing the target exactly; here c is a
    # monomial +-q^a Q^b Q0^c.
    if len(c.num.terms) != 1 or c.den:
        raise ValueError("cannot invert a non-monomial coefficient")
    (e, f, g), coeff = next(iter(c.num.terms.items()))
    if coeff not in (1, -1):
        raise ValueError("cannot invert a non-unit coefficient")
    return _r(_mono(coeff, -e, -f, -g))


# -- Hamiltonians ----------------------------------------------------------


def hamiltonian_matrix(N: int, aN: RatioElem, a0: RatioElem | None = None) -> Op:
    """-sum e_i - aN eN (- a0 e0); one-boundary when a0 is None."""
    H = zero_op(N)
    minus = RatioElem.from_int(-1)
    for i in range(1, N):
        H = op_add(H, op_scale(generator_matrix("E", i, N), minus))
    H = op_add(H, op_scale(generator_matrix("EN", 0, N), minus * aN))
    if a0 is not None:
        H = op_add(H, op_scale(generator_matrix("E0", 0, N), minus * a0))
    return H


def _site_op(N: int, i: int, local) -> Op:
    """Single-site operator given by local[(row_char, col_char)]."""
    out: Op = {}
    for s in enumerate_strings(N):
        col: Vec = {}
        c = s[i - 1]
        for row_char in "+-":
            coeff = local.get((row_char, c))
            if coeff is not None and not coeff.is_zero():
                col[flip(s, {i: row_char})] = coeff
        out[s] = col
    return out


def _two_site_op(N: int, i: int, local) -> Op:
    """Operator on sites i, i+1 given by local[(row_pair, col_pair)]."""
    out: Op = {}
    for s in enumerate_strings(N):
        col: Vec = {}
        cpair = s[i - 1] + s[i]
        for (rpair, c2), coeff in local.items():
            if c2 != cpair or coeff.is_zero():
                continue
            row = flip(s, {i: rpair[0], i + 1: rpair[1]})
            cur = col.get(row)
            col[row] = coeff if cur is None else cur + coeff
        out[s] = col
    return out


def pauli_hamiltonian(N: int, aN: RatioElem, a0: RatioElem) -> Op:
    """The spin-chain form of the two-boundary Hamiltonian.

    sigma^x sigma^x + sigma^y sigma^y is assembled as
    2(sigma^+ sigma^- + sigma^- sigma^+) so no sqrt(-1) enters.
    """
    one, two = R_ONE, RatioElem.from_int(2)

    # Local two-site operator: sigma+sigma- + sigma-sigma+ flips +- <-> -+.
    fliplocal = {("-+", "+-"): one, ("+-", "-+"): one}
    # sigma^z sigma^z is diagonal with sign product.
    qq = _r(_mono(1, 1) + _mono(1, -1))  # q + 1/q

    H = zero_op(N)
    mhalf = RatioElem(RingElem.const(-1), (("raw", RingElem.const(2)),), reduce=False)
    quarter = RatioElem(RingElem.const(1), (("raw", RingElem.const(4)),), reduce=False)
    for i in range(1, N):
        H = op_add(H, op_scale(_two_site_op(N, i, fliplocal), mhalf * two))
        zz = {
            ("++", "++"): one,
            ("--", "--"): one,
            ("+-", "+-"): -one,
            ("-+", "-+"): -one,
        }
        H = op_add(H, op_scale(_two_site_op(N, i, zz), mhalf * quarter * two * qq))

    qdiffhalf = _r(_mono(1, 1) - _mono(1, -1))  # q - 1/q
    z1 = {("+", "+"): one, ("-", "-"): -one}
    coeff_z1 = mhalf * (
        qdiffhalf * RatioElem(RingElem.const(1), (("raw", RingElem.const(2)),), reduce=False)
        - a0 * _r(_mono(1, 0, 0, 1) - _mono(1, 0, 0, -1))
    )
    H = op_add(H, op_scale(_site_op(N, 1, z1), coeff_z1))
    coeff_zN = mhalf * -(
        qdiffhalf * RatioElem(RingElem.const(1), (("raw", RingElem.const(2)),), reduce=False)
        - aN * _r(_mono(1, 0, 1) - _mono(1, 0, -1))
    )
    H = op_add(H, op_scale(_site_op(N, N, z1), coeff_zN))

    pm = {("+", "-"): one, ("-", "+"): one}  # sigma+ + sigma-
    H = op_add(H, op_scale(_site_op(N, 1, pm), mhalf * two * a0))
    H = op_add(H, op_scale(_site_op(N, N, pm), mhalf * two * aN))

    const = (
        quarter * qq * RatioElem.from_int(N - 1)
        + a0 * _r(_mono(1, 0, 0, 1) + _mono(1, 0, 0, -1)) * RatioElem(
            RingElem.const(1), (("raw", RingElem.const(2)),), reduce=False
        )
        + aN * _r(_mono(1, 0, 1) + _mono(1, 0, -1)) * RatioElem(
            RingElem.const(1), (("raw", RingElem.const(2)),), reduce=False
        )
    )
    ident = {s: {s: const} for s in enumerate_strings(N)}
    return op_add(H, ident)


def pauli_equivalence_check(N: int, a0: RatioElem, aN: RatioElem) -> bool:
    return op_eq(pauli_hamiltonian(N, aN, a0), hamiltonian_matrix(N, aN, a0))


# -- coideal generator X ----------------------------------------------------


def _s_elem() -> RatioElem:
    return qQ_bracket(0)  # (Q - 1/Q)/(q - 1/q)


def x_matrix_direct(N: int) -> Op:
    """X from its closed action on a standard string: flip site i with
    weight q^{d_{i-1}}, plus the diagonal q^{d_N} [Q;0]."""
    s = _s_elem()
    out: Op = {}
    for eps in enumerate_strings(N):
        col: Vec = {}
        d = 0
        for i, c in enumerate(eps, start=1):
            col[flip(eps, {i: "-" if c == "+" else "+"})] = _r(_mono(1, d))
            d += 1 if c == "+" else -1
        cur = col.get(eps)
        diag = s.mul_ring(_mono(1, d))
        col[eps] = diag if cur is None else cur + diag
        out[eps] = col
    return out


def x_matrix_coproduct(N: int) -> Op:
    """X built recursively from Delta(X) = K (x) X + (1/q) KE (x) 1 + F (x) 1."""
    s = _s_elem()
    if N == 1:
        return {
            "+": {"-": R_ONE, "+": s.mul_ring(_mono(1, 1))},
            "-": {"+": R_ONE, "-": s.mul_ring(_mono(1, -1))},
        }
    inner = x_matrix_coproduct(N - 1)
    out: Op = {}
    for eps in enumerate_strings(N):
        head, tail = eps[0], eps[1:]
        k = _mono(1, 1 if head == "+" else -1)
        col: Vec = {}
        for row_tail, c in inner[tail].items():
            col[head + row_tail] = c.mul_ring(k)
        flipped = ("-" if head == "+" else "+") + tail
        cur = col.get(flipped)
        col[flipped] = R_ONE if cur is None else cur + R_ONE
        out[eps] = col
    return out


@lru_cache(maxsize=None)
def x_matrix_standard(N: int) -> Op:
    direct = x_matrix_direct(N)
    if not op_eq(direct, x_matrix_coproduct(N)):
        raise AssertionError("the two constructions of X disagree")
    return direct


def commutation_check(N: int) -> dict[str, bool]:
    """[e_g, X] = 0 for bulk and right-boundary generators; e0 fails."""
    X = x_matrix_standard(N)
    report = {}
    for i in range(1, N):
        E = generator_matrix("E", i, N)
        report[f"[e{i}, X] = 0"] = op_eq(op_mul(E, X), op_mul(X, E))
    EN = generator_matrix("EN", 0, N)
    report["[eN, X] = 0"] = op_eq(op_mul(EN, X), op_mul(X, EN))
    E0 = generator_matrix("E0", 0, N)
    report["[e0, X] != 0"] = not op_eq(op_mul(E0, X), op_mul(X, E0))
    return report


def op_to_json(A: Op) -> list:
    out = []
    for col, column in sorted(A.items()):
        for row, c in sorted(column.items()):
            out.append([row, col, c.to_text()])
    return out
