"""The ``rsv`` command line tool.

Exit codes: 0 decided, 2 inconclusive (a cap was hit), 3 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .algebra import (
    FiniteSemigroup,
    InvalidSemigroup,
    from_json_dict,
    green,
    idempotents,
    index_period,
    is_0_simple,
    is_completely_0_simple,
    is_completely_simple,
    is_regular_element,
    is_simple,
    is_zero_multiplication,
    principal_factor,
    to_json_dict,
)
from .caps import CapExceeded, Caps
from .catalog import CATALOG_NAMES, ReesMatrixSpec, brandt, catalog_get, cyclic_group, rees_matrix
from .decide import (
    classify_semigroup,
    classify_sigma,
    is_exact_semigroup,
    is_exact_sigma,
    is_rs_semigroup,
    is_rs_sigma,
)
from .rewriting import enumerate_presentation, parse_presentation
from .varieties import INCONCLUSIVE, IN, IdentitySystem, member_of_var, satisfies
from .words import ParseError, parse_identities, render_word

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 2, 3
SCHEMA = 1


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(f"{self.prog}: {message}")


# -- input loading -----------------------------------------------------------


class Inputs:
    """Reads every input once and keeps the bytes for the report digest."""

    def __init__(self):
        self.digest = hashlib.sha256()

    def _read(self, path: str) -> str:
        p = Path(path)
        try:
            data = p.read_bytes()
        except OSError as e:
            raise InputError(f"cannot read {path}: {e.strerror or e}") from None
        self.digest.update(data)
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError:
            raise InputError(f"{path}: not valid UTF-8") from None

    def identities(self, path: str) -> IdentitySystem:
        text = self._read(path)
        try:
            ids = parse_identities(text)
        except ParseError as e:
            raise InputError(f"{path}: {e}") from None
        if not ids:
            raise InputError(f"{path}: no identities")
        return IdentitySystem.from_list(ids, Path(path).name)

    def semigroup(self, source: str, caps: Caps) -> FiniteSemigroup:
        """``catalog:NAME``, a table JSON, a Rees spec JSON or a presentation."""
        if source.startswith("catalog:"):
            self.digest.update(source.encode())
            try:
                return catalog_get(source[len("catalog:"):])
            except (KeyError, ValueError) as e:
                raise InputError(f"{source}: {e.args[0] if e.args else e}") from None
        text = self._read(source)
        if text.lstrip().startswith("{"):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as e:
                raise InputError(f"{source}: invalid JSON at line {e.lineno}, col {e.colno}: {e.msg}") from None
            if isinstance(data, dict) and "group" in data:
                return self._rees(data, Path(source).parent, caps, source)
            try:
                return from_json_dict(data)
            except (InvalidSemigroup, ValueError, KeyError, TypeError) as e:
                raise InputError(f"{source}: {e}") from None
        try:
            pres = parse_presentation(text, Path(source).stem)
        except ParseError as e:
            raise InputError(f"{source}: {e}") from None
        return enumerate_presentation(pres, caps)

    def rees_spec(self, source: str, caps: Caps) -> FiniteSemigroup:
        text = self._read(source)
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"{source}: invalid JSON at line {e.lineno}, col {e.colno}: {e.msg}") from None
        return self._rees(data, Path(source).parent, caps, source)

    def _rees(self, data, base: Path, caps: Caps, source: str) -> FiniteSemigroup:
        if not isinstance(data, dict) or "group" not in data or "P" not in data:
            raise InputError(f"{source}: a Rees spec needs 'group' and 'P'")
        g = data["group"]
        try:
            if isinstance(g, str) and (g.startswith("catalog:") or _is_zk(g)):
                G = catalog_get(g.removeprefix("catalog:"))
            elif isinstance(g, str):
                G = self.semigroup(str(base / g), caps)
            else:
                raise InputError(f"{source}: 'group' must be \"Z<k>\" or a table file")
            P = data["P"]
            if not isinstance(P, list) or not P or not all(isinstance(r, list) and r for r in P):
                raise InputError(f"{source}: 'P' must be a non-empty matrix")
            pattern = [[None if v == "0" else str(v) for v in row] for row in P]
            if len({len(r) for r in pattern}) != 1:
                raise InputError(f"{source}: rows of 'P' differ in length")
            spec = ReesMatrixSpec.from_pattern(G, pattern)
            return rees_matrix(spec, data.get("label"))
        except (KeyError, ValueError) as e:
            raise InputError(f"{source}: {e.args[0] if e.args else e}") from None


def _is_zk(s: str) -> bool:
    return len(s) > 1 and s[0] == "Z" and s[1:].isdigit()


# -- rendering helpers -------------------------------------------------------


def _assignment(asg: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in asg.items())


def _table_text(S: FiniteSemigroup) -> str:
    return json.dumps(to_json_dict(S), indent=2)


def _green_payload(S: FiniteSemigroup) -> dict:
    G = green(S)
    ip = index_period(S)
    classes = []
    for ji, cls in enumerate(G.j_classes):
        K = principal_factor(S, cls[0])
        if is_zero_multiplication(K):
            kind = "zero multiplication"
        elif is_completely_0_simple(K):
            kind = "completely 0-simple"
        elif is_0_simple(K):
            kind = "0-simple"
        else:
            kind = "other"
        members = set(cls)
        classes.append(
            {
                "elements": S.names(cls),
                "r_classes": [S.names(c) for c in G.r_classes if c[0] in members],
                "l_classes": [S.names(c) for c in G.l_classes if c[0] in members],
                "h_classes": [S.names(c) for c in G.h_classes if c[0] in members],
                "regular": is_regular_element(S, cls[0]),
                "principal_factor": kind,
                "principal_factor_size": len(K),
            }
        )
    order = [[S.names(G.j_classes[i]), S.names(G.j_classes[j])] for i, j in G.j_order if i != j]
    return {
        "label": S.label,
        "size": len(S),
        "index": ip.index,
        "period": ip.period,
        "idempotents": S.names(idempotents(S)),
        "j_classes": classes,
        "j_order_strict": order,
        "flags": {
            "0-simple": is_0_simple(S),
            "completely 0-simple": is_completely_0_simple(S),
            "simple": is_simple(S),
            "completely simple": is_completely_simple(S),
            "zero multiplication": is_zero_multiplication(S),
        },
    }


def _rs_line(v: dict, sigma: bool) -> str:
    if v["is_rs"]:
        rel = "≤" if sigma else "="
        return f"REES-SUSHKEVICH (n {rel} {v['period_bound']})"
    if v["reason"] == "Balanced":
        return "NOT RS: balanced system"
    if v["reason"] == "ForbiddenMember":
        return f"NOT RS: forbidden member {v['evidence']['member']}"
    cx = v["evidence"]["counterexample"]
    return (
        f"NOT RS: {v['evidence']['system']} identity {cx['identity_index'] + 1} ({cx['identity']}) fails at "
        f"{_assignment(cx['assignment'])} ({cx['lhs_value']} != {cx['rhs_value']})"
    )


def _exact_lines(v: dict) -> list[str]:
    if v["exact"] is None:
        head = "EXACTNESS INCONCLUSIVE"
    elif v["exact"]:
        head = f"EXACT via {v['branch']}"
    else:
        head = "NOT EXACT" + ("" if v["rs"]["is_rs"] else " (not RS)")
    bits = ", ".join(f"{k}: {b}" for k, b in v["memberships"].items())
    return [head, f"  memberships: {bits}"]


def _system_line(name: str, v) -> str:
    if isinstance(v, str):
        return f"{name}: {v}"
    if v["positive"]:
        if v["system"]:
            return f"{name}: positive ({v['system']}, n = {v['n']})"
        return f"{name}: positive"
    w = v["witness"] or {}
    if "forbidden_member" in w:
        return f"{name}: negative (forbidden member {w['forbidden_member']})"
    parts = []
    for kind, cx in w.get("counterexamples", {}).items():
        parts.append(f"{kind} fails {cx['identity']} at {_assignment(cx['assignment'])}")
    return f"{name}: negative ({'; '.join(parts)})"


# -- commands ----------------------------------------------------------------


def _sigma_or_semigroup(args, inputs: Inputs, caps: Caps):
    if (args.ids is None) == (args.semigroup is None):
        raise InputError("give exactly one of an identity file or --semigroup")
    if args.ids is not None:
        return "Sigma", inputs.identities(args.ids)
    return "Semigroup", inputs.semigroup(args.semigroup, caps)


def cmd_is_rs(args, inputs, caps):
    mode, obj = _sigma_or_semigroup(args, inputs, caps)
    v = is_rs_sigma(obj, args.parallel) if mode == "Sigma" else is_rs_semigroup(obj)
    d = v.to_dict()
    witnesses = [d["evidence"]["counterexample"]] if "counterexample" in d["evidence"] else []
    return EXIT_OK, {"mode": mode, "rs": d}, witnesses, [_rs_line(d, mode == "Sigma")]


def cmd_is_exact(args, inputs, caps):
    mode, obj = _sigma_or_semigroup(args, inputs, caps)
    v = is_exact_sigma(obj, args.parallel) if mode == "Sigma" else is_exact_semigroup(obj, caps, args.parallel)
    d = v.to_dict()
    code = EXIT_INCONCLUSIVE if v.exact is None else EXIT_OK
    return code, {"mode": mode, "exact": d}, [], [_rs_line(d["rs"], mode == "Sigma")] + _exact_lines(d)


def cmd_classify(args, inputs, caps):
    mode, obj = _sigma_or_semigroup(args, inputs, caps)
    rep = classify_sigma(obj, args.parallel) if mode == "Sigma" else classify_semigroup(obj, caps, args.parallel)
    d = rep.to_dict()
    code = EXIT_INCONCLUSIVE if rep.exact.exact is None else EXIT_OK
    lines = [f"input: {mode}", _rs_line(d["rs"], mode == "Sigma")] + _exact_lines(d["exact"])
    for t in ("thm3", "thm4", "thm5", "thm6", "thm7"):
        lines.append(_system_line(t, d[t]))
    lines += [f"note: {f}" for f in d["footnotes"]]
    witnesses = []
    if "counterexample" in d["rs"]["evidence"]:
        witnesses.append(d["rs"]["evidence"]["counterexample"])
    for t in ("thm3", "thm4", "thm5", "thm6", "thm7"):
        v = d[t]
        if isinstance(v, dict) and v["witness"] and "counterexamples" in v["witness"]:
            witnesses.extend(v["witness"]["counterexamples"].values())
    return code, d, witnesses, lines


def cmd_satisfies(args, inputs, caps):
    S = inputs.semigroup(args.table, caps)
    system = inputs.identities(args.ids)
    results, lines, witnesses = [], [], []
    for i, ident in enumerate(system):
        v = satisfies(S, ident, i)
        results.append({"identity": str(ident), "tautology": ident.is_tautology, **v.to_dict()})
        tag = " (tautology)" if ident.is_tautology else ""
        if v.holds:
            lines.append(f"{i + 1}. {ident}: holds{tag}")
        else:
            cx = v.counterexample
            witnesses.append(cx.to_dict())
            lines.append(
                f"{i + 1}. {ident}: FAILS at {_assignment(dict(cx.assignment))} ({cx.lhs_value} != {cx.rhs_value})"
            )
    holds = all(r["holds"] for r in results)
    lines.append(f"{S.label} {'satisfies' if holds else 'does not satisfy'} {system.label}")
    return EXIT_OK, {"semigroup": S.label, "holds": holds, "identities": results}, witnesses, lines


def cmd_green(args, inputs, caps):
    S = inputs.semigroup(args.table, caps)
    d = _green_payload(S)
    lines = [f"{d['label']}: {d['size']} elements, index {d['index']}, period {d['period']}"]
    lines.append(f"{len(d['j_classes'])} J-classes")
    for c in d["j_classes"]:
        lines.append(
            f"  J {{{', '.join(c['elements'])}}}: {len(c['r_classes'])} R, {len(c['l_classes'])} L, "
            f"H sizes {sorted(len(h) for h in c['h_classes'])}, "
            f"{'regular' if c['regular'] else 'not regular'}, factor {c['principal_factor']}"
        )
    for k, v in d["flags"].items():
        lines.append(f"{k}: {'true' if v else 'false'}")
    return EXIT_OK, d, [], lines


def cmd_catalog(args, inputs, caps):
    if args.action == "list":
        names = list(CATALOG_NAMES) + ["Z<k>"]
        return EXIT_OK, {"names": names}, [], ["K needs --n (or write K(n))"] + names
    if not args.name:
        raise InputError("catalog show needs a name")
    if args.name == "K" and args.n is None:
        raise InputError("K needs --n (or write K(n))")
    inputs.digest.update(f"{args.name}|{args.n}".encode())
    try:
        S = catalog_get(args.name, args.n)
    except (KeyError, ValueError) as e:
        raise InputError(str(e.args[0] if e.args else e)) from None
    return EXIT_OK, {"table": to_json_dict(S), "notes": list(S.notes)}, [], [_table_text(S)]


def cmd_present(args, inputs, caps):
    text = inputs._read(args.file)
    try:
        pres = parse_presentation(text, Path(args.file).stem)
    except ParseError as e:
        raise InputError(f"{args.file}: {e}") from None
    S = enumerate_presentation(pres, caps)
    return EXIT_OK, {"table": to_json_dict(S)}, [], [_table_text(S)]


def cmd_rees(args, inputs, caps):
    S = inputs.rees_spec(args.spec, caps)
    return EXIT_OK, {"table": to_json_dict(S)}, [], [_table_text(S)]


def cmd_brandt(args, inputs, caps):
    inputs.digest.update(f"{args.group}|{args.size}".encode())
    if _is_zk(args.group):
        G = cyclic_group(int(args.group[1:]))
    else:
        G = inputs.semigroup(args.group, caps)
    try:
        S = brandt(G, args.size)
    except ValueError as e:
        raise InputError(str(e)) from None
    return EXIT_OK, {"table": to_json_dict(S)}, [], [_table_text(S)]


def cmd_member(args, inputs, caps):
    X = inputs.semigroup(args.x, caps)
    S = inputs.semigroup(args.in_var_of, caps)
    v = member_of_var(X, S, caps)
    d = v.to_dict()
    if v.outcome == IN:
        line = f"In: {X.label} lies in Var({S.label}) ({v.method})"
    elif v.outcome == INCONCLUSIVE:
        line = f"Inconclusive: cap {v.witness['cap']}={v.witness['limit']} reached"
    else:
        w = v.witness
        line = (
            f"NotIn: {render_word(w['lhs'])} = {render_word(w['rhs'])} holds in {S.label} "
            f"but fails in {X.label} at {_assignment(w['assignment'])} ({w['lhs_value']} != {w['rhs_value']})"
        )
    code = EXIT_INCONCLUSIVE if v.outcome == INCONCLUSIVE else EXIT_OK
    witnesses = [v.witness] if v.outcome != IN else []
    return code, {"X": X.label, "S": S.label, "membership": d}, witnesses, [line]


# -- argument parsing --------------------------------------------------------


def _cap_arg(text: str) -> tuple[str, int]:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return name.strip(), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cap value must be an integer: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--parallel", dest="parallel", action="store_true", default=False,
                        help="scan forbidden semigroups and identity systems concurrently")
    common.add_argument("--no-parallel", dest="parallel", action="store_false")
    common.add_argument("--cap", action="append", type=_cap_arg, default=[], metavar="NAME=VALUE",
                        help="override a search cap, e.g. pres_elements=50000")

    p = _Parser(prog="rsv", description="Decide Rees-Sushkevich, exactness and related properties "
                "of semigroup varieties given by identities or by a finite semigroup.")
    p.add_argument("--version", action="version", version=f"rsv {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, help_ in (
        ("is-rs", cmd_is_rs, "is the variety Rees-Sushkevich?"),
        ("is-exact", cmd_is_exact, "is the variety exact?"),
        ("classify", cmd_classify, "full classification report"),
    ):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("ids", nargs="?", help="identity file")
        s.add_argument("--semigroup", metavar="TABLE", help="table JSON, Rees spec, presentation or catalog:NAME")
        s.set_defaults(func=fn)

    s = sub.add_parser("satisfies", parents=[common], help="check identities in a semigroup")
    s.add_argument("table")
    s.add_argument("ids")
    s.set_defaults(func=cmd_satisfies)

    s = sub.add_parser("green", parents=[common], help="Green structure and principal factors")
    s.add_argument("table")
    s.set_defaults(func=cmd_green)

    s = sub.add_parser("catalog", parents=[common], help="list or show built-in semigroups")
    s.add_argument("action", choices=("list", "show"))
    s.add_argument("name", nargs="?")
    s.add_argument("--n", type=int, default=None, help="parameter for K")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("present", parents=[common], help="enumerate a finite presentation")
    s.add_argument("file")
    s.set_defaults(func=cmd_present)

    s = sub.add_parser("rees", parents=[common], help="build a Rees matrix semigroup from a JSON spec")
    s.add_argument("spec")
    s.set_defaults(func=cmd_rees)

    s = sub.add_parser("brandt", parents=[common], help="build a Brandt semigroup B(G, size)")
    s.add_argument("--group", required=True, help="Z<k> or a group table")
    s.add_argument("--size", type=int, required=True)
    s.set_defaults(func=cmd_brandt)

    s = sub.add_parser("member", parents=[common], help="is X in the variety generated by S?")
    s.add_argument("x", metavar="X")
    s.add_argument("--in-var-of", required=True, metavar="S")
    s.set_defaults(func=cmd_member)
    return p


def _echo(args) -> dict:
    """Command echo without presentation flags, so reports compare across modes."""
    skip = {"func", "format", "parallel", "cap", "command"}
    return {"subcommand": args.command, "arguments": {k: v for k, v in sorted(vars(args).items()) if k not in skip}}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        caps = Caps.from_env()
        if args.cap:
            known = caps.as_dict()
            for name, value in args.cap:
                if name not in known:
                    raise InputError(f"unknown cap {name!r}; known caps: {', '.join(known)}")
            caps = replace(caps, **dict(args.cap))
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)
    except (InputError, ValueError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_INPUT
    inputs = Inputs()
    try:
        code, payload, witnesses, lines = args.func(args, inputs, caps)
    except InputError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_INPUT
    except CapExceeded as e:
        print(f"inconclusive: cap {e.cap}={e.limit} exceeded", file=stderr)
        code, payload, witnesses, lines = EXIT_INCONCLUSIVE, {"inconclusive": {"cap": e.cap, "limit": e.limit}}, [], [
            f"INCONCLUSIVE: cap {e.cap}={e.limit} exceeded"
        ]
    except (ParseError, InvalidSemigroup) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_INPUT
    if args.format == "json":
        report = {
            "schema": SCHEMA,
            "command": _echo(args),
            "input_sha256": inputs.digest.hexdigest(),
            "payload": payload,
            "witnesses": witnesses,
            "version": __version__,
        }
        out = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    else:
        out = "\n".join(lines) + "\n"
    stdout.write(out)
    stdout.flush()
    return code


def main() -> int:
    if hasattr(sys.stdout, "reconfigure"):
        try:
            sys.stdout.reconfigure(encoding="utf-8")
        except (ValueError, OSError):
            pass
    return run()
