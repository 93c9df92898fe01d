"""A toy computable universe: expressions, their numbering, and an interpreter.

Every natural number is a program: decoding is total, so the unary programs
form an exhaustive enumeration phi_0, phi_1, phi_2, .. indexed by the code of
their body. Running and specializing are object-level primitives (`Run`,
`Smn`), which makes partial application and the classical fixed-point
construction short. Evaluation is fuel-bounded: one unit per node visit,
shared across nested `Run` calls, so every call terminates and outcomes are
monotone in fuel. "Diverged at fuel F" is bounded evidence only, never a
claim of true non-termination; in particular the halting tables built here
are fuel-bounded approximations of the exact halting sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Sequence, Union

from . import sexpr
from .errors import InputError
from .instances import DescribesMatrix

Expr = Union[
    "Var", "Const", "Succ", "Pred", "IfZero", "Pair", "Fst", "Snd", "Run", "Smn"
]


@dataclass(frozen=True)
class Var:
    """1-based argument reference; index 0 decodes from code 0 and is Stuck."""

    index: int


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Succ:
    child: Expr


@dataclass(frozen=True)
class Pred:
    child: Expr


@dataclass(frozen=True)
class IfZero:
    cond: Expr
    then: Expr
    other: Expr


@dataclass(frozen=True)
class Pair:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Fst:
    child: Expr


@dataclass(frozen=True)
class Snd:
    child: Expr


@dataclass(frozen=True)
class Run:
    prog: Expr
    arg: Expr


@dataclass(frozen=True)
class Smn:
    prog: Expr
    arg: Expr


@dataclass(frozen=True)
class Value:
    n: int


@dataclass(frozen=True)
class Diverged:
    """Fuel ran out."""


@dataclass(frozen=True)
class Stuck:
    """An ill-formed step, e.g. an argument reference out of arity."""


Outcome = Union[Value, Diverged, Stuck]

# Body of Run(Var 1, Var 1): applied to its own code it loops forever.
OMEGA = 2208


def pair(a: int, b: int) -> int:
    """Cantor pairing (a+b)(a+b+1)/2 + b; a bijection N x N -> N."""
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(p: int) -> tuple[int, int]:
    """Two-sided inverse of `pair`."""
    w = (isqrt(8 * p + 1) - 1) // 2
    b = p - w * (w + 1) // 2
    return w - b, b


_TAG_VAR = 0
_TAG_CONST = 1
_TAG_SUCC = 2
_TAG_PRED = 3
_TAG_IFZERO = 4
_TAG_PAIR = 5
_TAG_FST = 6
_TAG_SND = 7
_TAG_RUN = 8
_TAG_SMN = 9


def encode(e: Expr) -> int:
    """Code of an expression: 10 * payload + constructor tag."""
    match e:
        case Var(index):
            return 10 * index + _TAG_VAR
        case Const(value):
            return 10 * value + _TAG_CONST
        case Succ(child):
            return 10 * encode(child) + _TAG_SUCC
        case Pred(child):
            return 10 * encode(child) + _TAG_PRED
        case IfZero(cond, then, other):
            return 10 * pair(encode(cond), pair(encode(then), encode(other))) + _TAG_IFZERO
        case Pair(left, right):
            return 10 * pair(encode(left), encode(right)) + _TAG_PAIR
        case Fst(child):
            return 10 * encode(child) + _TAG_FST
        case Snd(child):
            return 10 * encode(child) + _TAG_SND
        case Run(prog, arg):
            return 10 * pair(encode(prog), encode(arg)) + _TAG_RUN
        case Smn(prog, arg):
            return 10 * pair(encode(prog), encode(arg)) + _TAG_SMN
    raise TypeError(f"not an expression: {e!r}")


def decode(n: int) -> Expr:
    """Total inverse of `encode`: every natural number is a program body."""
    tag = n % 10
    payload = n // 10
    if tag == _TAG_VAR:
        return Var(payload)
    if tag == _TAG_CONST:
        return Const(payload)
    if tag == _TAG_SUCC:
        return Succ(decode(payload))
    if tag == _TAG_PRED:
        return Pred(decode(payload))
    if tag == _TAG_IFZERO:
        c, rest = unpair(payload)
        t, e = unpair(rest)
        return IfZero(decode(c), decode(t), decode(e))
    if tag == _TAG_PAIR:
        a, b = unpair(payload)
        return Pair(decode(a), decode(b))
    if tag == _TAG_FST:
        return Fst(decode(payload))
    if tag == _TAG_SND:
        return Snd(decode(payload))
    if tag == _TAG_RUN:
        a, b = unpair(payload)
        return Run(decode(a), decode(b))
    a, b = unpair(payload)
    return Smn(decode(a), decode(b))


def evaluate(p: int, args: Sequence[int], fuel: int) -> Outcome:
    """Run program p on args with a shared step budget.

    Big-step, deterministic, and monotone: a Value at fuel F is the same
    Value at every larger budget. Each expression node visit costs one unit;
    nested `Run` calls draw on the same budget.
    """
    return _run_body(decode(p), tuple(args), fuel)


def evaluate_body(body: Expr, args: Sequence[int], fuel: int) -> Outcome:
    """Like `evaluate` but starting from an already-decoded body."""
    return _run_body(body, tuple(args), fuel)


# continuation opcodes for the explicit-stack machine
_K_SUCC = 0
_K_PRED = 1
_K_IF = 2
_K_PAIR = 3
_K_FST = 4
_K_SND = 5
_K_RUN = 6
_K_SMN = 7


def _run_body(body: Expr, args: tuple[int, ...], fuel: int) -> Outcome:
    # explicit work/value stacks: self-application must not grow the host stack
    work: list = [(True, body, args)]
    vals: list[int] = []
    while work:
        item = work.pop()
        if item[0]:
            if fuel == 0:
                return Diverged()
            fuel -= 1
            e, env = item[1], item[2]
            match e:
                case Var(index):
                    if 1 <= index <= len(env):
                        vals.append(env[index - 1])
                    else:
                        return Stuck()
                case Const(value):
                    vals.append(value)
                case Succ(child):
                    work.append((False, _K_SUCC, None))
                    work.append((True, child, env))
                case Pred(child):
                    work.append((False, _K_PRED, None))
                    work.append((True, child, env))
                case IfZero(cond, then, other):
                    work.append((False, _K_IF, (then, other, env)))
                    work.append((True, cond, env))
                case Pair(left, right):
                    work.append((False, _K_PAIR, None))
                    work.append((True, right, env))
                    work.append((True, left, env))
                case Fst(child):
                    work.append((False, _K_FST, None))
                    work.append((True, child, env))
                case Snd(child):
                    work.append((False, _K_SND, None))
                    work.append((True, child, env))
                case Run(prog, arg):
                    work.append((False, _K_RUN, None))
                    work.append((True, arg, env))
                    work.append((True, prog, env))
                case Smn(prog, arg):
                    work.append((False, _K_SMN, None))
                    work.append((True, arg, env))
                    work.append((True, prog, env))
        else:
            k, extra = item[1], item[2]
            if k == _K_SUCC:
                vals.append(vals.pop() + 1)
            elif k == _K_PRED:
                v = vals.pop()
                vals.append(v - 1 if v > 0 else 0)
            elif k == _K_IF:
                then, other, env = extra
                work.append((True, then if vals.pop() == 0 else other, env))
            elif k == _K_PAIR:
                b = vals.pop()
                a = vals.pop()
                vals.append(pair(a, b))
            elif k == _K_FST:
                vals.append(unpair(vals.pop())[0])
            elif k == _K_SND:
                vals.append(unpair(vals.pop())[1])
            elif k == _K_RUN:
                x = vals.pop()
                prog_code = vals.pop()
                work.append((True, decode(prog_code), (x,)))
            else:
                y = vals.pop()
                prog_code = vals.pop()
                vals.append(smn_meta(prog_code, y))
    return Value(vals.pop())


def smn_meta(p: int, y: int) -> int:
    """Specialize a binary body to its first argument.

    Substitutes Var 1 by Const y and renames Var 2 to Var 1; other argument
    references are left alone. For all x, running the result on [x] agrees
    with running p on [y, x] up to fuel slack.
    """
    return encode(_specialize(decode(p), y))


def _specialize(e: Expr, y: int) -> Expr:
    match e:
        case Var(1):
            return Const(y)
        case Var(2):
            return Var(1)
        case Var(_) | Const(_):
            return e
        case Succ(child):
            return Succ(_specialize(child, y))
        case Pred(child):
            return Pred(_specialize(child, y))
        case IfZero(cond, then, other):
            return IfZero(_specialize(cond, y), _specialize(then, y), _specialize(other, y))
        case Pair(left, right):
            return Pair(_specialize(left, y), _specialize(right, y))
        case Fst(child):
            return Fst(_specialize(child, y))
        case Snd(child):
            return Snd(_specialize(child, y))
        case Run(prog, arg):
            return Run(_specialize(prog, y), _specialize(arg, y))
        case Smn(prog, arg):
            return Smn(_specialize(prog, y), _specialize(arg, y))
    raise TypeError(f"not an expression: {e!r}")


def recursion_fixed_point(h: int) -> int:
    """Index n0 with phi_{n0} = phi_{h(n0)}, for a total unary transformer h.

    The classical construction: a binary body D computes h(phi_m(m)) and runs
    it; specializing D gives the total map m -> index of D(m, -), realized by
    the program t; the fixed point is the value of phi_t at t. Totality of h
    is the caller's obligation (it is not decidable); a nontotal h yields an
    n0 whose verification sampling reports Diverged.
    """
    d_body = Run(Run(Const(h), Run(Var(1), Var(1))), Var(2))
    d = encode(d_body)
    s_body = Smn(Const(d), Var(1))
    t = encode(s_body)
    return smn_meta(d, t)


def quine() -> int:
    """A self-reproducing program q: running q on any input yields q itself.

    Built from the projection body Var 1 (code 10): specializing it to y
    gives the constant-y program, and the fixed point of that transformer
    outputs its own index.
    """
    s_transformer = encode(Smn(Const(10), Var(1)))
    return recursion_fixed_point(s_transformer)


@dataclass(frozen=True)
class RefutationWitness:
    """Evidence that a claimed halting decider is wrong or not total.

    The diagonal program g (index g_index) asks the candidate about g itself
    and then does the opposite: halts with 1 when told "diverges", loops when
    told "halts". candidate_answer records the candidate on (g, g) at the
    given fuel; g_run records g on g with the small constant wrapper
    allowance added, so a candidate answer computed within the budget always
    propagates through g.
    """

    g_index: int
    candidate_answer: Outcome
    g_run: Outcome
    verdict: str
    fuel: int

    SAID_HALT_BUT_DIVERGED = "SaidHaltButDiverged"
    SAID_DIVERGE_BUT_HALTED = "SaidDivergeButHalted"
    CANDIDATE_NOT_TOTAL = "CandidateNotTotal"


# node visits g spends around the candidate's own run: IfZero, Run, Smn,
# Const, Var, Var, then the Const 1 branch
_WRAPPER_ALLOWANCE = 7


def refute_halting(candidate: int, fuel: int) -> RefutationWitness:
    """Diagonalize against a claimed binary halting decider.

    The candidate is read as (n, m) -> {0, 1} with nonzero meaning "program m
    halts on n". Every candidate yields a witness; divergence evidence is
    explicitly bounded by the fuel recorded in it.
    """
    g_body = IfZero(
        Run(Smn(Const(candidate), Var(1)), Var(1)),
        Const(1),
        Run(Const(OMEGA), Const(OMEGA)),
    )
    c = encode(g_body)
    answer = evaluate(candidate, [c, c], fuel)
    g_run = evaluate(c, [c], fuel + _WRAPPER_ALLOWANCE)
    if not isinstance(answer, Value):
        verdict = RefutationWitness.CANDIDATE_NOT_TOTAL
    elif answer.n == 0:
        verdict = RefutationWitness.SAID_DIVERGE_BUT_HALTED
    else:
        verdict = RefutationWitness.SAID_HALT_BUT_DIVERGED
    return RefutationWitness(
        g_index=c, candidate_answer=answer, g_run=g_run, verdict=verdict, fuel=fuel
    )


def verify_refutation(witness: RefutationWitness) -> bool:
    """Check the verdict is consistent with the two recorded outcomes."""
    answer, g_run = witness.candidate_answer, witness.g_run
    if witness.verdict == RefutationWitness.CANDIDATE_NOT_TOTAL:
        return not isinstance(answer, Value)
    if witness.verdict == RefutationWitness.SAID_DIVERGE_BUT_HALTED:
        return answer == Value(0) and g_run == Value(1)
    if witness.verdict == RefutationWitness.SAID_HALT_BUT_DIVERGED:
        return isinstance(answer, Value) and answer.n != 0 and g_run == Diverged()
    return False


@dataclass(frozen=True)
class RiceReport:
    """Self-defeating probe for a claimed decider of a program property.

    The caller asserts the decider answers 1 exactly on indices whose
    function lies in some class A, with phi_a in A and phi_b not in A. The
    probe n0 behaves like phi_b whenever the decider claims n0 is in A and
    like phi_a otherwise, so any total decider contradicts itself on n0.
    """

    decider: int
    a: int
    b: int
    n0: int
    decider_answer: Outcome
    switched_to: Outcome
    samples: tuple[tuple[int, Outcome, Outcome], ...]
    verdict: str
    fuel: int

    SAYS_MEMBER_BUT_ACTS_OUTSIDE = "SaysMemberButActsOutside"
    SAYS_NONMEMBER_BUT_ACTS_INSIDE = "SaysNonMemberButActsInside"
    DECIDER_NOT_TOTAL = "DeciderNotTotal"


# node visits the switch spends around the decider's own run: IfZero, Run,
# Const, Var, then the chosen Const branch
_SWITCH_ALLOWANCE = 5


def rice_contradiction(
    decider: int, a: int, b: int, fuel: int, sample_inputs: Sequence[int] = (0, 1, 2, 3)
) -> RiceReport:
    """Build the self-defeating fixed point for a claimed property decider."""
    h_body = IfZero(Run(Const(decider), Var(1)), Const(a), Const(b))
    n0 = recursion_fixed_point(encode(h_body))
    answer = evaluate(decider, [n0], fuel)
    switched = evaluate_body(h_body, [n0], fuel + _SWITCH_ALLOWANCE)
    samples = []
    if isinstance(switched, Value):
        for x in sample_inputs:
            samples.append(
                (x, evaluate(n0, [x], fuel), evaluate(switched.n, [x], fuel))
            )
    if not isinstance(answer, Value):
        verdict = RiceReport.DECIDER_NOT_TOTAL
    elif answer.n != 0:
        verdict = RiceReport.SAYS_MEMBER_BUT_ACTS_OUTSIDE
    else:
        verdict = RiceReport.SAYS_NONMEMBER_BUT_ACTS_INSIDE
    return RiceReport(
        decider=decider,
        a=a,
        b=b,
        n0=n0,
        decider_answer=answer,
        switched_to=switched,
        samples=tuple(samples),
        verdict=verdict,
        fuel=fuel,
    )


def verify_rice(report: RiceReport) -> bool:
    """Verdict must match the recorded answer and the probe must track its target."""
    answer = report.decider_answer
    if report.verdict == RiceReport.DECIDER_NOT_TOTAL:
        return not isinstance(answer, Value)
    if not isinstance(answer, Value) or not isinstance(report.switched_to, Value):
        return False
    expected = report.b if answer.n != 0 else report.a
    if report.switched_to.n != expected:
        return False
    if report.verdict == RiceReport.SAYS_MEMBER_BUT_ACTS_OUTSIDE and answer.n == 0:
        return False
    if report.verdict == RiceReport.SAYS_NONMEMBER_BUT_ACTS_INSIDE and answer.n != 0:
        return False
    # the probe must agree with the program it switched to on every sample
    for _, got, want in report.samples:
        if isinstance(got, Value) or isinstance(want, Value):
            if got != want:
                return False
    return True


def bounded_halting_matrix(n: int, fuel: int) -> DescribesMatrix:
    """rel[i][j] = 1 iff program j halts on input i within the fuel budget.

    A finite, fuel-bounded shadow of the exact halting table: column m only
    approximates the true halting set of phi_m from below.
    """
    if n < 1:
        raise InputError("matrix size must be at least 1")
    rel = tuple(
        tuple(1 if isinstance(evaluate(j, [i], fuel), Value) else 0 for j in range(n))
        for i in range(n)
    )
    return DescribesMatrix(labels=tuple(str(i) for i in range(n)), rel=rel)


_UNARY_HEADS = {"succ": Succ, "pred": Pred, "fst": Fst, "snd": Snd}
_BINARY_HEADS = {"pair": Pair, "run": Run, "smn": Smn}


def parse_program(text: str) -> Expr:
    """Read the prefix notation: numerals are constants, %i argument refs."""
    return _node_to_expr(sexpr.parse(text))


def parse_program_or_code(text: str) -> int:
    """A bare numeral is a program index; anything else is a program body."""
    stripped = text.strip()
    if stripped.lstrip("-").isdigit():
        code = int(stripped)
        if code < 0:
            raise InputError("program index must be a natural number")
        return code
    return encode(parse_program(text))


def _node_to_expr(node: sexpr.Node) -> Expr:
    if isinstance(node, sexpr.Atom):
        if node.text.startswith("%"):
            suffix = node.text[1:]
            if not suffix.isdigit():
                raise InputError(
                    f"bad argument reference {node.text!r} at offset {node.pos}"
                )
            return Var(int(suffix))
        if node.text.isdigit():
            return Const(int(node.text))
        raise InputError(f"unknown atom {node.text!r} at offset {node.pos}")
    if not node.items or not isinstance(node.items[0], sexpr.Atom):
        raise InputError(f"expected an operator at offset {node.pos}")
    head = node.items[0].text
    args = node.items[1:]
    if head in _UNARY_HEADS:
        if len(args) != 1:
            raise InputError(f"{head} takes 1 argument (offset {node.pos})")
        return _UNARY_HEADS[head](_node_to_expr(args[0]))
    if head in _BINARY_HEADS:
        if len(args) != 2:
            raise InputError(f"{head} takes 2 arguments (offset {node.pos})")
        return _BINARY_HEADS[head](_node_to_expr(args[0]), _node_to_expr(args[1]))
    if head == "ifz":
        if len(args) != 3:
            raise InputError(f"ifz takes 3 arguments (offset {node.pos})")
        return IfZero(*(_node_to_expr(a) for a in args))
    raise InputError(f"unknown operator {head!r} at offset {node.pos}")


def format_program(e: Expr) -> str:
    """Prefix notation matching `parse_program`."""
    match e:
        case Var(index):
            return f"%{index}"
        case Const(value):
            return str(value)
        case Succ(child):
            return f"(succ {format_program(child)})"
        case Pred(child):
            return f"(pred {format_program(child)})"
        case IfZero(cond, then, other):
            return (
                f"(ifz {format_program(cond)} {format_program(then)} "
                f"{format_program(other)})"
            )
        case Pair(left, right):
            return f"(pair {format_program(left)} {format_program(right)})"
        case Fst(child):
            return f"(fst {format_program(child)})"
        case Snd(child):
            return f"(snd {format_program(child)})"
        case Run(prog, arg):
            return f"(run {format_program(prog)} {format_program(arg)})"
        case Smn(prog, arg):
            return f"(smn {format_program(prog)} {format_program(arg)})"
    raise TypeError(f"not an expression: {e!r}")
