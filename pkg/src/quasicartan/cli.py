"""Command line front end: a small sectioned input format plus the
check / classify / reconstruct / units / upp / compare commands.

Exit codes: 0 success, 1 a verified theorem failed to hold (should never
happen), 2 an enumeration cap was exceeded, 3 malformed input.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import finring, groupoid as gpd, grouprings, pairs as pairs_mod, \
    reconstruct, steinberg, twist as twist_mod
from .finring import CapExceeded, DEFAULT_CAP


class InputError(Exception):
    pass


class InputDocument:
    def __init__(self):
        self.sections = {}   # name -> list of (lineno, text)


def parse_input(text):
    doc = InputDocument()
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[([a-zA-Z0-9_.]+)\]", line)
        if m:
            current = m.group(1)
            doc.sections.setdefault(current, [])
            continue
        if current is None:
            # allow a bare top-level `ring = ...` row
            if line.startswith("ring"):
                doc.sections.setdefault("ring", []).append((lineno, line))
                continue
            raise InputError(f"line {lineno}: content before any [section]")
        doc.sections[current].append((lineno, line))
    return doc


def _section_value(doc, name):
    rows = doc.sections.get(name, [])
    if len(rows) != 1:
        return None
    return rows[0][1]


def build_ring(doc):
    rows = doc.sections.get("ring")
    tables = doc.sections.get("ring.tables")
    if tables is not None:
        return _ring_from_tables(tables)
    if not rows:
        raise InputError("missing [ring] section")
    if len(rows) != 1:
        raise InputError(f"line {rows[1][0]}: [ring] takes a single row")
    lineno, line = rows[0]
    m = re.fullmatch(r"(?:ring\s*=\s*)?zmod\((\d+)\)", line)
    if m:
        return finring.make_zmod(int(m.group(1)))
    m = re.fullmatch(r"(?:ring\s*=\s*)?gf\((\d+)\s*,\s*(\d+)\)", line)
    if m:
        return finring.make_gf(int(m.group(1)), int(m.group(2)))
    raise InputError(f"line {lineno}: cannot parse ring spec {line!r}")


def _ring_from_tables(rows):
    elements, zero, one = None, None, None
    add_rows, mul_rows = {}, {}
    for lineno, line in rows:
        if line.startswith("elements"):
            elements = line.split("=", 1)[1].split()
        elif line.startswith("zero"):
            zero = line.split("=", 1)[1].strip()
        elif line.startswith("one"):
            one = line.split("=", 1)[1].strip()
        else:
            m = re.fullmatch(r"(add|mul):\s*(\S+)\s+(\S+)\s*=\s*(\S+)", line)
            if not m:
                raise InputError(f"line {lineno}: bad table row {line!r}")
            table = add_rows if m.group(1) == "add" else mul_rows
            table[(m.group(2), m.group(3))] = m.group(4)
    if elements is None or zero is None or one is None:
        raise InputError("[ring.tables] needs elements, zero and one")
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    try:
        add = [[index[add_rows[(a, b)]] for b in elements] for a in elements]
        mul = [[index[mul_rows[(a, b)]] for b in elements] for a in elements]
    except KeyError as missing:
        raise InputError(f"[ring.tables] missing entry for {missing}")
    R = finring.FiniteRing("custom", elements, add, mul, index[zero], index[one])
    bad = finring.validate_ring(R)
    if bad:
        raise InputError("ring tables violate the ring axioms: " + bad[0])
    return R


def _parse_group(spec):
    m = re.fullmatch(r"cyclic\((\d+)\)", spec)
    if m:
        return gpd.cyclic_group(int(m.group(1)))
    if spec == "klein":
        return gpd.direct_product_group(gpd.cyclic_group(2), gpd.cyclic_group(2))
    raise InputError(f"cannot parse group spec {spec!r}")


def _arrow_token(token, G):
    token = token.strip()
    if "-" in token:
        i, j = token.split("-")
        arrow = (int(i), int(j))
    else:
        try:
            arrow = int(token)
        except ValueError:
            arrow = token
    if arrow not in set(G.arrows):
        raise InputError(f"unknown arrow {token!r}")
    return arrow


def build_groupoid(doc, section="groupoid"):
    rows = doc.sections.get(section)
    if not rows:
        raise InputError(f"missing [{section}] section")
    first = rows[0][1]
    m = re.fullmatch(r"full_relation\((\d+)\)", first)
    if m:
        return gpd.full_relation(int(m.group(1)))
    m = re.fullmatch(r"group\((.+)\)", first)
    if m:
        return gpd.group_as_groupoid(_parse_group(m.group(1)))
    # explicit form
    objects, arrows, src, rng, compose = None, [], {}, {}, {}
    for lineno, line in rows:
        if line.startswith("objects"):
            objects = line.split("=", 1)[1].split()
            continue
        m = re.fullmatch(r"(\S+)\s*:\s*(\S+)\s*->\s*(\S+)", line)
        if m:
            arrows.append(m.group(1))
            src[m.group(1)] = m.group(2)
            rng[m.group(1)] = m.group(3)
            continue
        m = re.fullmatch(r"(\S+)\s*\.\s*(\S+)\s*=\s*(\S+)", line)
        if m:
            compose[(m.group(1), m.group(2))] = m.group(3)
            continue
        raise InputError(f"line {lineno}: bad groupoid row {line!r}")
    if objects is None:
        raise InputError(f"[{section}] needs an objects row")
    try:
        return gpd.make_groupoid("custom", objects, arrows, src, rng, compose)
    except ValueError as exc:
        raise InputError(f"[{section}]: {exc}")


def build_cocycle(doc, R, G, section="cocycle"):
    rows = doc.sections.get(section)
    if rows is None:
        raise InputError(f"missing [{section}] section")
    values = {}
    for lineno, line in rows:
        if line == "trivial":
            continue
        m = re.fullmatch(r"c\((.+?)\s*,\s*(.+?)\)\s*=\s*(\S+)", line)
        if not m:
            raise InputError(f"line {lineno}: bad cocycle row {line!r}")
        a = _arrow_token(m.group(1), G)
        b = _arrow_token(m.group(2), G)
        if G.src[a] != G.rng[b]:
            raise InputError(f"line {lineno}: pair ({m.group(1)},{m.group(2)}) "
                             "is not composable")
        try:
            values[(a, b)] = R.index(m.group(3))
        except ValueError:
            raise InputError(f"line {lineno}: unknown ring element {m.group(3)!r}")
    c = twist_mod.Cocycle(R, G, values)
    bad = twist_mod.check_cocycle(c)
    if bad:
        raise InputError("cocycle invalid: " + bad[0])
    return c


def _parse_combination(expr, labels, R, A):
    """Parse `2*a + b` style linear combinations over the algebra basis."""
    vec = A.zero()
    for term in expr.split("+"):
        term = term.strip()
        if term == "0":
            continue
        if "*" in term:
            coeff, label = term.split("*", 1)
            coeff, label = coeff.strip(), label.strip()
        else:
            coeff, label = None, term
        if label not in labels:
            raise InputError(f"unknown basis label {label!r}")
        t = R.one if coeff is None else R.index(coeff)
        vec = A.add(vec, A.basis_vector(labels.index(label), coeff=t))
    return vec


def build_abstract_pair(doc, R, cap):
    rows = doc.sections.get("algebra")
    if not rows:
        raise InputError("missing [algebra] section")
    labels = None
    product_rows = []
    for lineno, line in rows:
        if line.startswith("basis"):
            labels = line.split("=", 1)[1].split()
        else:
            m = re.fullmatch(r"(\S+)\s*\*\s*(\S+)\s*=\s*(.+)", line)
            if not m:
                raise InputError(f"line {lineno}: bad algebra row {line!r}")
            product_rows.append((lineno, m.group(1), m.group(2), m.group(3)))
    if labels is None:
        raise InputError("[algebra] needs a basis row")
    structure = {}
    for lineno, a, b, rhs in product_rows:
        if a not in labels or b not in labels:
            raise InputError(f"line {lineno}: unknown basis label")
        entry = {}
        if rhs.strip() != "0":
            for term in rhs.split("+"):
                term = term.strip()
                if "*" in term:
                    coeff, label = (s.strip() for s in term.split("*", 1))
                else:
                    coeff, label = None, term
                if label not in labels:
                    raise InputError(f"line {lineno}: unknown basis label {label!r}")
                entry[labels.index(label)] = R.one if coeff is None else R.index(coeff)
        structure[(labels.index(a), labels.index(b))] = entry
    try:
        A = pairs_mod.AbstractAlgebra("custom", R, labels, structure)
    except ValueError as exc:
        raise InputError(str(exc))
    pair_rows = doc.sections.get("pair", [])
    sub_exprs = []
    for lineno, line in pair_rows:
        if line.startswith("sub_basis"):
            sub_exprs = [s.strip() for s in line.split("=", 1)[1].split(",")]
    if not sub_exprs:
        raise InputError("[pair] needs a sub_basis row")
    sub_basis = [_parse_combination(e, labels, R, A) for e in sub_exprs]
    try:
        return pairs_mod.Pair(A, sub_basis, cap=cap)
    except ValueError as exc:
        raise InputError(str(exc))


def get_options(doc):
    cap, oracle = DEFAULT_CAP, False
    for lineno, line in doc.sections.get("options", []):
        m = re.fullmatch(r"cap\s*=\s*(\d+)", line)
        if m:
            cap = int(m.group(1))
            continue
        m = re.fullmatch(r"oracle\s*=\s*(on|off)", line)
        if m:
            oracle = m.group(1) == "on"
            continue
        raise InputError(f"line {lineno}: bad options row {line!r}")
    return cap, oracle


def _flag(v):
    return "true" if v else "false"


def _build_pair(doc, cap):
    """Either a twist pair (groupoid+cocycle) or an abstract one."""
    R = build_ring(doc)
    if "algebra" in doc.sections:
        if "groupoid" in doc.sections or "cocycle" in doc.sections:
            raise InputError("give either groupoid+cocycle or algebra+pair, not both")
        return R, None, build_abstract_pair(doc, R, cap)
    G = build_groupoid(doc)
    c = build_cocycle(doc, R, G)
    return R, c, pairs_mod.pair_from_twist(c, cap=cap)


def cmd_check(doc, cap, oracle):
    report, summary = [], {}
    R = build_ring(doc)
    bad = finring.validate_ring(R)
    report.append(f"ring {R.name}: {'ok' if not bad else bad[0]}")
    summary["ring_ok"] = _flag(not bad)
    violations = len(bad)
    if "groupoid" in doc.sections:
        G = build_groupoid(doc)
        gb = gpd.validate_groupoid(G)
        violations += len(gb)
        report.append(f"groupoid {G.name}: {'ok' if not gb else gb[0]}")
        summary["groupoid_ok"] = _flag(not gb)
        if "cocycle" in doc.sections:
            c = build_cocycle(doc, R, G)
            cb = twist_mod.check_cocycle(c)
            T = twist_mod.twist_from_cocycle(c)
            tb = twist_mod.check_twist_axioms(T)
            violations += len(cb) + len(tb)
            report.append(f"cocycle: {'ok' if not cb else cb[0]}")
            report.append(f"twist axioms: {'ok' if not tb else tb[0]}")
            summary["cocycle_ok"] = _flag(not cb)
            summary["twist_ok"] = _flag(not tb)
    summary["ok"] = _flag(violations == 0)
    return report, summary, 0 if violations == 0 else 1


def cmd_classify(doc, cap, oracle):
    R, c, pair = _build_pair(doc, cap)
    flags = pair.classify()
    report = [f"pair over {R.name}: classification"]
    summary = {}
    for key in ("WT", "local_units", "B_spanned_by_idempotents",
                "A_spanned_by_normalisers", "faithful_CE_exists",
                "ADP", "ACP", "AQP"):
        report.append(f"  {key} = {_flag(flags[key])}")
        summary[key.lower()] = _flag(flags[key])
    for w in flags.get("warnings", []):
        report.append(f"  warning: {w}")
    return report, summary, 0


def cmd_reconstruct(doc, cap, oracle):
    R, c, pair = _build_pair(doc, cap)
    if c is None:
        raise InputError("reconstruct needs a groupoid+cocycle input")
    res = reconstruct.verify_reconstruction_theorem(c, cap=cap)
    report = [
        f"twist over {c.groupoid.name}, coefficients {R.name}",
        f"original twist points: {res['sigma_points']}",
        f"rebuilt twist points: {res['sigma_prime_points']}",
        f"rebuilt base arrows: {res['g_prime_arrows']}",
        f"embedding injective: {_flag(res['phi_injective'])}, "
        f"surjective: {_flag(res['phi_surjective'])}",
        f"quasi-Cartan: {_flag(res['aqp'])}; "
        f"local bisection hypothesis: {_flag(res['lbh'])}",
    ]
    if not res["phi_surjective"]:
        report.append("embedding misses some rebuilt points; "
                      "pair is not quasi-Cartan")
    summary = {
        "aqp": _flag(res["aqp"]),
        "lbh": _flag(res["lbh"]),
        "phi_injective": _flag(res["phi_injective"]),
        "phi_surjective": _flag(res["phi_surjective"]),
        "sigma_points": str(res["sigma_points"]),
        "sigma_prime_points": str(res["sigma_prime_points"]),
        "g_prime_arrows": str(res["g_prime_arrows"]),
        "consistent": _flag(res["consistent"]),
    }
    return report, summary, 0 if res["consistent"] else 1


def cmd_units(doc, cap, oracle):
    R = build_ring(doc)
    spec = _section_value(doc, "group")
    if spec is None:
        raise InputError("units needs a [group] section with one row")
    H = _parse_group(spec)
    G = gpd.group_as_groupoid(H)
    values = {}
    if "cocycle" in doc.sections:
        c = build_cocycle(doc, R, G)
        values = {(a, b): v for (a, b), v in c.values.items()}
    T = grouprings.TwistedGroupRing(R, H, values)
    units, trivial, nontrivial = grouprings.enumerate_units(T, cap=cap, oracle=oracle)
    report = [f"group ring of {H.name} over {R.name}: "
              f"{len(units)} units, {len(nontrivial)} nontrivial"]
    if nontrivial:
        w = nontrivial[0]
        pretty = " + ".join(f"{R.label(v)}·δ[{g}]"
                            for g, v in zip(H.elements, w) if v != R.zero)
        report.append(f"nontrivial witness: {pretty}")
    summary = {"units": str(len(units)), "trivial_units": str(len(trivial)),
               "nontrivial_units": str(len(nontrivial))}
    return report, summary, 0


def _parse_subset(line, free_rank):
    out = []
    for token in line.split("=", 1)[1].split():
        if free_rank == 1:
            out.append((int(token),))
        else:
            parts = token.strip("()").split(",")
            if len(parts) != free_rank:
                raise InputError(f"subset element {token!r} has wrong rank")
            out.append(tuple(int(p) for p in parts))
    if not out:
        raise InputError("empty subset")
    return out


def cmd_upp(doc, cap, oracle):
    rows = doc.sections.get("upp")
    if not rows:
        raise InputError("missing [upp] section")
    group_spec, a_line, b_line = "z", None, None
    for lineno, line in rows:
        if line.startswith("group"):
            group_spec = line.split("=", 1)[1].strip()
        elif line.startswith("A"):
            a_line = line
        elif line.startswith("B"):
            b_line = line
        else:
            raise InputError(f"line {lineno}: bad upp row {line!r}")
    if a_line is None or b_line is None:
        raise InputError("[upp] needs A and B rows")
    if group_spec in ("z", "z1"):
        H, rank = "free_abelian", 1
    elif group_spec == "z2":
        H, rank = "free_abelian", 2
    else:
        H, rank = _parse_group(group_spec), None
    if H == "free_abelian":
        A = _parse_subset(a_line, rank)
        B = _parse_subset(b_line, rank)
    else:
        A = [int(t) for t in a_line.split("=", 1)[1].split()]
        B = [int(t) for t in b_line.split("=", 1)[1].split()]
    witness = grouprings.unique_product_search(H, A, B)
    report = []
    summary = {}
    if witness is None:
        report.append("no unique product element exists for these subsets")
        summary["witness"] = "none"
    else:
        report.append(f"unique product witness: {witness}")
        summary["witness"] = str(witness)
        if len(A) + len(B) > 2:
            second = grouprings.strojnowski_check(H, A, B)
            report.append(f"second distinct witness exists: {_flag(second)}")
            summary["second_witness"] = _flag(second)
    return report, summary, 0


def cmd_compare(doc, cap, oracle):
    R = build_ring(doc)
    G1 = build_groupoid(doc, "groupoid")
    c1 = build_cocycle(doc, R, G1, "cocycle")
    G2 = build_groupoid(doc, "groupoid2") if "groupoid2" in doc.sections else G1
    c2 = build_cocycle(doc, R, G2, "cocycle2")
    iso = reconstruct.compare_twists(c1, c2)
    report = []
    summary = {"isomorphic": _flag(iso is not None)}
    if iso is None:
        report.append("the twists are not isomorphic (exhaustive search)")
    else:
        obj_map, arrow_map, u = iso
        report.append("the twists are isomorphic")
        report.append("object map: " + ", ".join(
            f"{x}→{y}" for x, y in sorted(obj_map.items(), key=str)))
        _, psi_report = reconstruct.algebra_iso_from_twist_iso(c1, c2, iso)
        report.append("induced diagonal-preserving algebra isomorphism: "
                      + _flag(psi_report["multiplicative"]
                              and psi_report["diagonal_preserving"]))
    return report, summary, 0


COMMANDS = {
    "check": cmd_check,
    "classify": cmd_classify,
    "reconstruct": cmd_reconstruct,
    "units": cmd_units,
    "upp": cmd_upp,
    "compare": cmd_compare,
}


def run_command(doc, command):
    """Dispatch; returns (report text, summary dict, exit code)."""
    if command not in COMMANDS:
        raise InputError(f"unknown command {command!r}")
    cap, oracle = get_options(doc)
    report, summary, code = COMMANDS[command](doc, cap, oracle)
    return "\n".join(report), summary, code


def format_output(report_text, summary):
    lines = [report_text, "---"]
    lines.extend(f"{k}={v}" for k, v in summary.items())
    return "\n".join(lines)


def parse_summary(text):
    """Read back the flat key=value block after the --- marker."""
    after = text.split("\n---\n", 1)
    if len(after) != 2:
        raise ValueError("no summary block found")
    out = {}
    for line in after[1].splitlines():
        if line.strip():
            k, v = line.split("=", 1)
            out[k] = v
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="quasicartan",
        description="finite twisted convolution algebras: checking, "
                    "classification and twist reconstruction")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("input", help="path to a sectioned input file")
    args = parser.parse_args(argv)
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = parse_input(fh.read())
        report_text, summary, code = run_command(doc, args.command)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"theorem verification failure: {exc}", file=sys.stderr)
        return 1
    print(format_output(report_text, summary))
    return code


if __name__ == "__main__":
    sys.exit(main())
