"""Command-line surface: boards, fixed points, restrictions, games, bases."""

from __future__ import annotations

import argparse
import json
import sys

from . import billey as billey_mod
from . import flowup as flowup_mod
from . import hessenberg as hess_mod
from . import pinball as pinball_mod
from . import springer_rep as rep_mod
from .coxeter import make_weyl
from .errors import DomainError
from .poset import GradedPoset
from .reproduce import FIGURES, reproduce


def _load_board(path):
    with open(path) as handle:
        return GradedPoset.from_doc(json.load(handle))


def _emit(doc, as_json, plain):
    if as_json:
        print(json.dumps(doc, indent=2))
    else:
        plain()


def _group(args):
    return make_weyl(args.type, args.rank)


# -- poset ------------------------------------------------------------------


def cmd_poset(args):
    board = _load_board(args.board)
    if args.action == "info":
        ranks = {}
        for e in board.elements:
            ranks[board.rank[e]] = ranks.get(board.rank[e], 0) + 1
        doc = {
            "elements": len(board),
            "covers": len(board.covers),
            "rank_histogram": {str(k): ranks[k] for k in sorted(ranks)},
        }
        _emit(doc, args.json, lambda: print(
            f"{len(board)} elements, {len(board.covers)} covers, "
            f"ranks {', '.join(f'{k}:{v}' for k, v in sorted(ranks.items()))}"))
    elif args.action == "leq":
        a, b = args.subset.split(",")
        print("true" if board.leq(a, b) else "false")
    elif args.action == "ideal":
        subset = board.principal_filter(args.element) if args.filter else board.principal_ideal(args.element)
        members = board.linear_extension(subset.members)
        _emit({"members": members}, args.json, lambda: print(",".join(members)))
    elif args.action == "linext":
        subset = args.subset.split(",") if args.subset else None
        members = board.linear_extension(subset)
        _emit({"order": members}, args.json, lambda: print(",".join(members)))
    elif args.action == "check-union":
        members = args.subset.split(",")
        ok = board.is_union_of_principal_ideals(members)
        print("true" if ok else "false")
        return 0 if ok else 1
    return 0


# -- weyl -------------------------------------------------------------------


def cmd_weyl(args):
    group = _group(args)
    if args.action == "board":
        lengths = None
        if args.min_length is not None or args.max_length is not None:
            lo = args.min_length or 0
            hi = args.max_length if args.max_length is not None else 10**9
            lengths = range(lo, hi + 1)
        board = group.to_poset(lengths)
        text = json.dumps(board.to_doc(), indent=2)
        if args.out:
            with open(args.out, "w") as handle:
                handle.write(text + "\n")
        else:
            print(text)
    elif args.action == "info":
        w = group.parse_element(args.element)
        doc = {
            "id": group.element_id(w),
            "one_line": w.one_line(),
            "length": group.length(w),
            "reduced_word": list(group.reduced_word(w)),
            "right_descents": sorted(group.right_descents(w)),
        }
        _emit(doc, args.json, lambda: print(
            f"{doc['id']}  {doc['one_line']}  length {doc['length']}  "
            f"descents {doc['right_descents']}"))
    return 0


# -- billey -----------------------------------------------------------------


def cmd_billey(args):
    group = _group(args)
    v = group.parse_element(args.v)
    w = group.parse_element(args.w)
    value = billey_mod.billey_restrict(group, v, w)
    if args.specialize:
        print(str(value.specialize_to_t()))
    else:
        print(str(value))
    return 0


# -- pinball ----------------------------------------------------------------


def _pinball_config(args):
    board = _load_board(args.board)
    targets = tuple(int(x) for x in args.targets.split(",")) if args.targets else None
    initial = args.initial.split(",")
    return pinball_mod.GameConfig(board, initial, args.variant, targets)


def _interactive_play(config):
    state = pinball_mod.new_game(config)
    while not state.finished:
        moves = pinball_mod.legal_moves(state) if state.ball else []
        if not moves:
            pinball_mod.finalize_current(state)
            continue
        print(f"ball {state.ball}; legal slides:", file=sys.stderr)
        for upper, lower in moves:
            print(f"  {upper} {lower}", file=sys.stderr)
        line = sys.stdin.readline()
        if not line:
            raise pinball_mod.ScriptExhausted("standard input ended mid-game")
        parts = line.replace("->", " ").split()
        if len(parts) != 2:
            print("expected: <from> <to>", file=sys.stderr)
            continue
        try:
            pinball_mod.apply_move(state, tuple(parts))
        except pinball_mod.IllegalMove as err:
            print(f"illegal: {err}", file=sys.stderr)
    return pinball_mod.Outcome(
        rolldown=dict(state.rolldown),
        success=pinball_mod.is_successful(state),
        moves=list(state.moves_log),
        state=state,
    )


def cmd_pinball(args):
    config = _pinball_config(args)
    if args.action == "play":
        if args.interactive:
            outcome = _interactive_play(config)
        elif args.script:
            with open(args.script) as handle:
                doc = json.load(handle)
            moves = doc["moves"] if isinstance(doc, dict) else doc
            script = [tuple(m["edge"]) if isinstance(m, dict) else tuple(m) for m in moves]
            outcome = pinball_mod.play(config, script)
        else:
            outcome = pinball_mod.play(config)
        transcript = pinball_mod.outcome_to_transcript(config, outcome)
        if args.transcript_out:
            with open(args.transcript_out, "w") as handle:
                json.dump(transcript, handle, indent=2)
        if args.json:
            print(json.dumps(transcript, indent=2))
        else:
            for origin in config.initial:
                print(f"{origin} -> {outcome.rolldown[origin]}")
            if outcome.success is not None:
                print(f"success: {outcome.success}")
        return 0
    # enumerate
    result = pinball_mod.enumerate_outcomes(config, args.budget)
    successful = result.successful(config)
    if args.json:
        doc = {
            "complete": result.complete,
            "outcomes": [dict(key) for key in sorted(result.outcomes)],
            "successful": [dict(key) for key in sorted(successful)],
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"{len(result.outcomes)} outcomes"
              + ("" if result.complete else " (budget exhausted, partial)"))
        if config.is_betti:
            print(f"{len(successful)} successful")
    return 0


# -- fixed points -----------------------------------------------------------


def cmd_fixed_points(args):
    group = _group(args)
    if args.family == "peterson":
        points = [w for _, w in hess_mod.peterson_fixed_points(group)]
    elif args.family == "springer":
        if not args.lam:
            raise DomainError("--lambda is required for the springer family")
        lam = tuple(int(x) for x in args.lam.split(","))
        points = hess_mod.springer_fixed_points(group.dim, lam, group)
    else:
        if args.hessenberg_h:
            h = [int(x) for x in args.hessenberg_h.split(",")]
            space = hess_mod.from_hessenberg_function(group, h)
        elif args.mh:
            space = hess_mod.parse_mh(group, args.mh)
        else:
            raise DomainError("--hessenberg-h or --mh is required")
        points = hess_mod.hessenberg_fixed_points(group, space)
    points = sorted(points, key=lambda w: (group.length(w), group.element_id(w)))
    doc = [
        {
            "id": group.element_id(w),
            "one_line": w.one_line(),
            "length": group.length(w),
        }
        for w in points
    ]
    if args.board_out:
        sub = group.induced_subposet(points)
        with open(args.board_out, "w") as handle:
            json.dump(sub.to_doc(), handle, indent=2)
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for item in doc:
            print(f"{item['id']}  {item['one_line']}  length {item['length']}")
    return 0


# -- basis ------------------------------------------------------------------


def _load_candidates(args):
    board = _load_board(args.board)
    with open(args.classes) as handle:
        doc = json.load(handle)
    return board, flowup_mod.CandidateBasis.from_doc(doc, board)


def cmd_basis(args):
    board, cands = _load_candidates(args)
    if args.action == "verify-pinball":
        targets = tuple(int(x) for x in args.targets.split(","))
        result = flowup_mod.verify_pinball_basis(cands, targets)
        print("true" if result.ok else "false")
        if not result.ok and args.json:
            print(json.dumps(result.details, default=str, indent=2), file=sys.stderr)
        return 0 if result.ok else 1
    if args.action == "verify-matching":
        with open(args.matching) as handle:
            doc = json.load(handle)
        result = flowup_mod.verify_matching_basis(
            cands, doc["f"], {k: int(v) for k, v in doc["deg"].items()},
            doc["targets"], board,
        )
        print("true" if result.ok else "false")
        return 0 if result.ok else 1
    if args.action == "check":
        report = flowup_mod.poset_triangularity_report(cands.labeled_vectors())
        witness = flowup_mod.find_triangular_order(cands.labeled_vectors(), board)
        doc = {
            "poset_upper_triangular": report.ok,
            "minima": report.minima,
            "non_flowups": report.non_flowups,
            "collisions": report.collisions,
            "independent": flowup_mod.linearly_independent(cands.vectors()),
            "triangular_order": witness,
        }
        _emit(doc, args.json, lambda: print(
            f"poset-upper-triangular: {report.ok}; independent: {doc['independent']}; "
            f"triangular order: {'none' if witness is None else ','.join(witness)}"))
        return 0
    # construct
    order = args.order.split(",") if args.order else board.linear_extension()
    basis = flowup_mod.construct_flowup_basis(cands.vectors(), order)
    position = {eid: k for k, eid in enumerate(order)}
    entries = []
    for vec in basis:
        first = min(vec.support(), key=lambda e: position[e])
        degree = 2 * max(vec.get(e).degree() for e in vec.support())
        entries.append((first, vec, degree))
    out = flowup_mod.CandidateBasis(list(board.elements), entries)
    print(json.dumps(out.to_doc(), indent=2))
    return 0


# -- springer representation -------------------------------------------------


def cmd_springer_rep(args):
    rows = rep_mod.character_table(args.n)
    if args.json:
        doc = [dict(row, cycle_type=list(row["cycle_type"])) for row in rows]
        print(json.dumps(doc, indent=2))
    else:
        print("cycle_type    #fix  psi0  psi1  chi0  chi1  match")
        for row in rows:
            ct = "+".join(map(str, row["cycle_type"]))
            print(
                f"{ct:<12}  {row['fixed_points']:>4}  {row['psi0']:>4}  "
                f"{row['psi1']:>4}  {row['chi0']:>4}  {row['chi1']:>4}  "
                f"{'yes' if row['match'] else 'NO'}"
            )
    return 0 if all(row["match"] for row in rows) else 1


# -- reproduce ---------------------------------------------------------------


def cmd_reproduce(args):
    report = reproduce(args.target)
    if args.json:
        print(json.dumps(report.as_doc(), indent=2))
    else:
        for line in report.lines():
            print(line)
    return 0 if report.ok else 1


# -- serve -------------------------------------------------------------------


def cmd_serve(args):
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="posetpinball",
        description="Poset pinball games and equivariant restriction bases",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poset", help="queries on poset JSON files")
    p.add_argument("action", choices=["info", "leq", "ideal", "linext", "check-union"])
    p.add_argument("--board", required=True)
    p.add_argument("--element")
    p.add_argument("--filter", action="store_true")
    p.add_argument("--subset", help="comma-separated element ids (for leq: A,B)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("weyl", help="Weyl group boards and element info")
    p.add_argument("action", choices=["board", "info"])
    p.add_argument("--type", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--element")
    p.add_argument("--min-length", type=int, dest="min_length")
    p.add_argument("--max-length", type=int, dest="max_length")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("billey", help="restriction of a Schubert class")
    p.add_argument("--type", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--specialize", action="store_true")
    p.set_defaults(func=cmd_billey)

    p = sub.add_parser("pinball", help="play or enumerate pinball games")
    p.add_argument("action", choices=["play", "enumerate"])
    p.add_argument("--board", required=True)
    p.add_argument("--initial", required=True)
    p.add_argument("--variant", default="basic", choices=pinball_mod.VARIANTS)
    p.add_argument("--targets")
    p.add_argument("--script")
    p.add_argument("--interactive", action="store_true")
    p.add_argument("--transcript-out", dest="transcript_out")
    p.add_argument("--budget", type=int)
    p.add_argument("--parallel", type=int, default=1)  # accepted as a hint
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pinball)

    p = sub.add_parser("fixed-points", help="fixed-point sets of the named families")
    p.add_argument("--type", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--family", required=True, choices=["peterson", "springer", "hessenberg"])
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--hessenberg-h", dest="hessenberg_h")
    p.add_argument("--mh")
    p.add_argument("--board-out", dest="board_out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fixed_points)

    p = sub.add_parser("basis", help="certificates for candidate bases")
    p.add_argument("action", choices=["verify-pinball", "verify-matching", "check", "construct"])
    p.add_argument("--classes", required=True)
    p.add_argument("--board", required=True)
    p.add_argument("--targets")
    p.add_argument("--matching")
    p.add_argument("--order")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("springer-rep", help="graded character table of the lifted action")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--characters", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_springer_rep)

    p = sub.add_parser("reproduce", help="replay a published example end to end")
    p.add_argument("target", choices=sorted(FIGURES))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("serve", help="run the JSON game server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as err:
        message = {"error": {"code": err.code, "reason": str(err)}}
        print(json.dumps(message), file=sys.stderr)
        return 1
    except FileNotFoundError as err:
        print(json.dumps({"error": {"code": "file-not-found", "reason": str(err)}}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
