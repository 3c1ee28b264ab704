"""Command-line front end.

Exit codes: 0 success, 2 mathematical negative (outer derivation, failed
hypothesis, non-symmetric rule), 1 usage or parse error.  With --format
json the report is a canonical one-line JSON document (sorted keys, exact
scalar strings, no floats); a fixed seed gives byte-identical output.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from . import acceptance
from .algebra import AlgebraHandle, Endo, LinearMapOnAlgebra
from .derivations import (TwistPair, TwistedDerivation, classify_regularity,
                          factor_through_generator, inner_decompose,
                          is_symmetric, rank_one_generator,
                          verify_twisted_leibniz)
from .errors import (ExprSyntaxError, HypothesesFail, NotInner,
                     TwistcalcError)
from .exprparse import eval_matrix, eval_poly
from .fields import field_by_name
from .geometry import (CommutativeConnection, CommutativeFlip,
                       PerturbedConnection, SigmaAlgebra,
                       canonical_free_module, check_connection_axioms,
                       curvature, is_symmetric_connection,
                       twisted_linearity_check, unique_symmetric_connection)
from .hochschild import (INFINITE, TwistedBimodule, classify_cocycle,
                         cohomology_dim, composition_is_zero, h0_poly,
                         h1_poly)
from .poly import UniPoly
from .presets import (CommutativeCanonicalExample, MatrixExample,
                      jackson_pair, translation_pair)

SCHEMA_VERSION = 1


def build_parser():
    top = argparse.ArgumentParser(
        prog="twistcalc",
        description="Exact calculus of twisted derivations on K[x] and M_N.")
    sub = top.add_subparsers(dest="group", required=True)

    def common(p, preset=True):
        p.add_argument("--field", default="Q", help="Q or Q(q)")
        p.add_argument("--algebra", default="poly", choices=["poly", "mat"])
        p.add_argument("--N", type=int, default=2, help="matrix size")
        p.add_argument("--sigma", help="image of x (poly) / matrix or 'id' (mat)")
        p.add_argument("--tau", help="image of x (poly) / matrix or 'id' (mat)")
        p.add_argument("--degree-bound", type=int, default=8)
        p.add_argument("--search-bound", type=int, default=32)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", default="text", choices=["text", "json"])
        if preset:
            p.add_argument("--preset",
                           choices=["jackson", "translation", "matrix-example",
                                    "commutative-canonical"])
            p.add_argument("--h", type=int, default=1,
                           help="shift for the translation preset")

    deriv = sub.add_parser("deriv", help="twisted derivation operations")
    dsub = deriv.add_subparsers(dest="command", required=True)
    for name, hlp in (("apply", "evaluate X on an expression"),
                      ("check", "verify both twisted Leibniz rules"),
                      ("classify", "regularity of the twist pair"),
                      ("decompose", "inner decomposition")):
        p = dsub.add_parser(name, help=hlp)
        common(p)
        p.add_argument("--fx", help="X(x) for polynomial derivations")
        p.add_argument("--m0", help="inner data for matrix derivations")
        p.add_argument("--map", help="N^2 x N^2 table for matrix derivations")
        if name == "apply":
            p.add_argument("--arg", required=True, help="argument expression")

    hls = sub.add_parser("hls", help="rank-one generator of the derivation module")
    common(hls)
    hls.add_argument("--fx", help="X(x); when given, the factorization X = p.Delta is reported")

    cohom = sub.add_parser("cohom", help="twisted Hochschild cohomology")
    csub = cohom.add_subparsers(dest="command", required=True)
    for name, hlp in (("h0", "degree-0 cohomology of K[x]"),
                      ("h1", "degree-1 cohomology of K[x]"),
                      ("matrix", "exact cohomology of M_N")):
        p = csub.add_parser(name, help=hlp)
        common(p)
        if name == "matrix":
            p.add_argument("--max-degree", type=int, default=2)

    geom = sub.add_parser("geom", help="connections and curvature")
    gsub = geom.add_subparsers(dest="command", required=True)
    for name, hlp in (("connection-check", "connection and symmetry axioms"),
                      ("curvature", "curvature checks for a preset"),
                      ("unique-connection", "the unique symmetric connection"),
                      ("bracket", "twisted bracket on the tangent module")):
        p = gsub.add_parser(name, help=hlp)
        common(p)
        p.add_argument("--samples", type=int, default=25)
        if name == "bracket":
            p.add_argument("--f", required=True, help="coefficient of the first derivation")
            p.add_argument("--g", required=True, help="coefficient of the second derivation")

    st = sub.add_parser("selftest", help="run the acceptance suite")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--format", default="text", choices=["text", "json"])
    return top


# -- session assembly ---------------------------------------------------------


def _apply_preset(args):
    preset = getattr(args, "preset", None)
    if preset == "jackson":
        args.field = "Q(q)"
        args.algebra = "poly"
        args.sigma = args.sigma or "q*x"
        args.tau = args.tau or "x"
        if getattr(args, "fx", None) is None:
            args.fx = "1"
    elif preset == "translation":
        args.algebra = "poly"
        args.sigma = args.sigma or f"x-{args.h}"
        args.tau = args.tau or "x"
        if getattr(args, "fx", None) is None:
            args.fx = "1"
    return preset


def _poly_pair(args, field):
    handle = AlgebraHandle("poly", field)
    if not args.sigma or not args.tau:
        raise TwistcalcError("--sigma and --tau are required (images of x)")
    sigma = Endo.subst(handle, eval_poly(args.sigma, field))
    tau = Endo.subst(handle, eval_poly(args.tau, field))
    return handle, TwistPair(sigma, tau)


def _mat_endo(handle, text, field):
    if text is None or text.strip() == "id":
        return Endo.identity(handle)
    return Endo.conj(handle, eval_matrix(text, field, handle.size))


def _mat_pair(args, field):
    handle = AlgebraHandle("mat", field, args.N)
    sigma = _mat_endo(handle, args.sigma, field)
    tau = _mat_endo(handle, args.tau, field)
    return handle, TwistPair(sigma, tau)


def _pair_from_args(args):
    field = field_by_name(args.field)
    if args.algebra == "poly":
        return _poly_pair(args, field)
    return _mat_pair(args, field)


def _derivation_from_args(args, handle, pair):
    field = handle.field
    if handle.kind == "poly":
        if args.fx is None:
            raise TwistcalcError("--fx (the image X(x)) is required for K[x]")
        return TwistedDerivation.from_generator_image(
            pair, handle.element(eval_poly(args.fx, field)))
    if args.m0 is not None:
        return TwistedDerivation.inner(
            pair, handle.element(eval_matrix(args.m0, field, handle.size)))
    if args.map is not None:
        rows = eval_matrix(args.map, field, handle.dim())
        lmap = LinearMapOnAlgebra.matrix_map(handle, rows)
        return TwistedDerivation.from_linear_map(pair, lmap)
    raise TwistcalcError("matrix derivations need --m0 or --map")


# -- handlers -----------------------------------------------------------------


def _cmd_deriv(args):
    _apply_preset(args)
    handle, pair = _pair_from_args(args)
    if args.command == "classify":
        report = classify_regularity(pair, args.search_bound, args.seed)
        data = {"verdict": report.verdict}
        if report.witness is not None:
            data["witness"] = str(report.witness)
        if report.search_bound is not None:
            data["searchBound"] = report.search_bound
        return 0, data
    x = _derivation_from_args(args, handle, pair)
    if args.command == "apply":
        field = handle.field
        if handle.kind == "poly":
            arg = handle.element(eval_poly(args.arg, field))
        else:
            arg = handle.element(eval_matrix(args.arg, field, handle.size))
        return 0, {"argument": str(arg), "value": str(x.apply(arg))}
    if args.command == "check":
        ok_st, w_st = verify_twisted_leibniz(x, "sigma_tau", args.degree_bound)
        ok_ts, w_ts = verify_twisted_leibniz(x, "tau_sigma", args.degree_bound)
        data = {"sigmaTauRule": ok_st, "tauSigmaRule": ok_ts,
                "symmetric": ok_st and ok_ts}
        for key, w in (("sigmaTauCounterexample", w_st),
                       ("tauSigmaCounterexample", w_ts)):
            if w is not None:
                data[key] = [str(w[0]), str(w[1])]
        return (0 if data["symmetric"] else 2), data
    if args.command == "decompose":
        try:
            m0 = inner_decompose(x, args.degree_bound)
            return 0, {"inner": True, "m0": str(m0)}
        except NotInner:
            cls = classify_cocycle(x)
            data = {"inner": False}
            if cls.representative is not None:
                data["classRepresentative"] = str(cls.representative)
            return 2, data
    raise TwistcalcError(f"unknown deriv command {args.command!r}")


def _cmd_hls(args):
    _apply_preset(args)
    if args.algebra != "poly":
        raise TwistcalcError("the rank-one structure lives on K[x]")
    field = field_by_name(args.field)
    handle, pair = _poly_pair(args, field)
    data_obj = rank_one_generator(pair)
    data = {"ghat": str(data_obj.ghat),
            "generatorImage": str(data_obj.generator.generator_image())}
    if args.fx is not None:
        x = TwistedDerivation.from_generator_image(
            pair, handle.element(eval_poly(args.fx, field)))
        p = factor_through_generator(x)
        data["factor"] = str(p)
    return 0, data


def _cmd_cohom(args):
    _apply_preset(args)
    field = field_by_name(args.field)
    if args.command in ("h0", "h1"):
        handle, pair = _poly_pair(args, field)
        if args.command == "h0":
            return 0, {"h0": h0_poly(pair)}
        report = h1_poly(pair)
        dim = report.dim_over_k if report.dim_over_k != INFINITE else "infinite"
        return 0, {"dim": dim, "modulus": str(report.modulus),
                   "representatives": [str(r) for r in report.representatives]}
    handle, pair = _mat_pair(args, field)
    mod = TwistedBimodule(pair)
    dims = {}
    reps0 = None
    for n in range(args.max_degree + 1):
        rep = cohomology_dim(mod, n)
        dims[f"h{n}"] = rep.dim_cohomology
        if n == 0:
            reps0 = [str(e) for e in rep.representative_elements(handle)]
    dd = {f"d{n}_after_d{n - 1}_zero": composition_is_zero(mod, n)
          for n in range(1, 4)}
    data = {"dims": dims, "differentialsCompose": dd}
    if reps0:
        data["h0Representatives"] = reps0
    return 0, data


def _matrix_example_from(args):
    return MatrixExample(n=args.N, seed=args.seed)


def _cmd_geom(args):
    preset = _apply_preset(args)
    if args.command == "bracket":
        field = field_by_name(args.field) if preset != "jackson" else field_by_name("Q(q)")
        if preset is None and (args.sigma is None or args.tau is None):
            args.preset = "jackson"
            preset = _apply_preset(args)
        field = field_by_name(args.field)
        handle, pair = _poly_pair(args, field)
        ex = CommutativeCanonicalExample(pair)
        f = handle.element(eval_poly(args.f, field))
        g = handle.element(eval_poly(args.g, field))
        coeff = ex.flip.bracket_coefficient(f, g)
        agrees = ex.flip.bracket_matches_composition(f, g, args.degree_bound)
        return (0 if agrees else 2), {
            "coefficient": str(coeff), "matchesComposition": agrees}
    if preset == "matrix-example" or (preset is None and args.algebra == "mat"):
        ex = _matrix_example_from(args)
        if args.command == "connection-check":
            ok_ax, _ = check_connection_axioms(ex.connection)
            ok_sym, _ = is_symmetric_connection(ex.connection)
            return (0 if ok_ax and ok_sym else 2), {
                "connectionAxioms": ok_ax, "symmetric": ok_sym}
        if args.command == "curvature":
            matches = True
            for _ in range(args.samples):
                elem = ex.random_element()
                lhs = curvature(ex.connection, ex.lie, 0, 1, (elem,))[0]
                if lhs != ex.curvature_closed_form(0, 1, elem):
                    matches = False
                    break
            try:
                rep = twisted_linearity_check(ex.connection, ex.lie, bound=2)
                lin = rep.linearity
            except HypothesesFail as exc:
                return 2, {"closedFormMatchesComposition": matches,
                           "hypothesesFail": exc.which}
            ok = matches and lin
            return (0 if ok else 2), {
                "closedFormMatchesComposition": matches,
                "twistedLinearity": lin}
        if args.command == "unique-connection":
            return _unique_connection_matrix(args, ex)
    # commutative-canonical / polynomial-side geometry
    if preset == "commutative-canonical" or preset == "jackson" or preset is None:
        if args.sigma is None:
            args.preset = "jackson"
            _apply_preset(args)
        field = field_by_name(args.field)
        handle, pair = _poly_pair(args, field)
        ex = CommutativeCanonicalExample(pair)
        if args.command == "connection-check":
            ok_l, _ = ex.connection.is_left_connection(args.degree_bound)
            ok_s, _ = ex.connection.is_symmetric_connection(args.degree_bound)
            return (0 if ok_l and ok_s else 2), {
                "connectionAxioms": ok_l, "symmetric": ok_s}
        if args.command == "curvature":
            basis = handle.basis(args.degree_bound)
            flat = all(
                ex.connection.curvature_coefficient(ex.flip, f, g, h).is_zero()
                for f in basis for g in basis for h in basis)
            return (0 if flat else 2), {"flat": flat}
        if args.command == "unique-connection":
            return _unique_connection_poly(args, pair)
    if preset == "translation":
        field = field_by_name(args.field)
        handle, pair = _poly_pair(args, field)
        if args.command == "unique-connection":
            return _unique_connection_poly(args, pair)
    raise TwistcalcError(
        f"geom {args.command} needs a preset or explicit flags")


def _unique_connection_poly(args, pair):
    handle = pair.handle
    algebra = SigmaAlgebra([
        TwistedDerivation.from_generator_image(pair, handle.one())])
    module = canonical_free_module(algebra, 1)
    conn = unique_symmetric_connection(algebra, module)
    ok_sym, _ = is_symmetric_connection(conn, bound=4)
    rng = random.Random(args.seed)
    falsified = 0
    for _ in range(args.samples):
        images = [handle.element(UniPoly(handle.field,
                                         [handle.field.coerce(rng.randint(-3, 3))
                                          for _ in range(3)]))
                  for _ in range(13)]
        if all(im.is_zero() for im in images):
            images[0] = handle.one()
        pert = LinearMapOnAlgebra.monomial_table(handle, images, 12)
        cand = PerturbedConnection(conn, [(pert,)])
        if cand.is_trivial(bound=4):
            continue
        ok_l, _ = check_connection_axioms(cand, bound=4)
        ok_s, _ = is_symmetric_connection(cand, bound=4)
        if not (ok_l and ok_s):
            falsified += 1
    ok = ok_sym and falsified == args.samples
    return (0 if ok else 2), {"symmetric": ok_sym,
                              "perturbationsFalsified": falsified,
                              "perturbationsTried": args.samples}


def _unique_connection_matrix(args, ex):
    conn = unique_symmetric_connection(ex.algebra, ex.module)
    ok_sym, _ = is_symmetric_connection(conn, bound=2)
    matches = all(
        module_pair_eq(conn.apply(a, (m,)), ex.connection.apply(a, (m,)))
        for a in range(len(ex.algebra)) for m in ex.handle.units())
    ok = ok_sym and matches
    return (0 if ok else 2), {"symmetric": ok_sym,
                              "matchesInnerForm": matches}


def module_pair_eq(m1, m2):
    return all(a == b for a, b in zip(m1, m2))


def _cmd_selftest(args):
    results = acceptance.run_all(args.seed)
    data = {"criteria": [{"index": r.index, "name": r.name,
                          "passed": r.passed, "detail": r.detail}
                         for r in results]}
    ok = all(r.passed for r in results)
    return (0 if ok else 1), data


# -- rendering ----------------------------------------------------------------


def _render_text(data, indent=0):
    lines = []
    pad = "  " * indent
    for key, value in data.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_render_text(value, indent + 1))
        elif isinstance(value, list):
            if all(not isinstance(v, (dict, list)) for v in value):
                lines.append(f"{pad}{key}: {value}")
            else:
                lines.append(f"{pad}{key}:")
                for v in value:
                    if isinstance(v, dict):
                        lines.extend(_render_text(v, indent + 1))
                        lines.append(pad + "  -")
                    else:
                        lines.append(f"{pad}  {v}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return lines if indent else "\n".join(lines)


def _emit(args, command, code, data):
    status = "ok" if code == 0 else "negative"
    if getattr(args, "format", "text") == "json":
        doc = {"schemaVersion": SCHEMA_VERSION, "command": command,
               "status": status, "data": data}
        sys.stdout.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        if command == "selftest":
            for c in data["criteria"]:
                flag = "PASS" if c["passed"] else "FAIL"
                sys.stdout.write(f"{flag} criterion {c['index']} "
                                 f"[{c['name']}]: {c['detail']}\n")
            total = sum(1 for c in data["criteria"] if c["passed"])
            sys.stdout.write(f"{total}/{len(data['criteria'])} criteria passed\n")
        else:
            sys.stdout.write(_render_text(data) + "\n")
    return code


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 1
    group = args.group
    command = group if group in ("hls", "selftest") else f"{group}.{args.command}"
    try:
        if group == "deriv":
            code, data = _cmd_deriv(args)
        elif group == "hls":
            code, data = _cmd_hls(args)
        elif group == "cohom":
            code, data = _cmd_cohom(args)
        elif group == "geom":
            code, data = _cmd_geom(args)
        elif group == "selftest":
            code, data = _cmd_selftest(args)
        else:
            raise TwistcalcError(f"unknown command group {group!r}")
    except ExprSyntaxError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 1
    except HypothesesFail as exc:
        return _emit(args, command, 2, {"hypothesesFail": exc.which})
    except TwistcalcError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return _emit(args, command, code, data)


if __name__ == "__main__":
    sys.exit(main())
