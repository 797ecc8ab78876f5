"""Command-line front end.

Thin dispatcher over the library: every subcommand reads a presentation
JSON, runs one module operation, and prints JSON / CSV / DOT / word literals
to stdout.  Exit codes: 0 success or verification PASS, 1 usage or input
error, 2 verification FAIL.  A single --seed flag governs all sampling, so
identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import classes as cl
from . import classifier, corpus
from .automorphisms import aut0_generators, orbit, parse_generator
from .norms import distortion_table, norm_lower, norm_upper
from .presentation import Presentation, PresentationError, expand_to_primary, parse_presentation
from .words import normal_form, parse_word, word_literal


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation; one value per CLI flag."""

    command: str
    graph: str = ""
    word: str = ""
    orbit_depth: int = 3
    len_cap: int = 12
    radius: int = 4
    n_max: int = 6
    seed: int = 0
    cert: str = ""
    out: str = ""
    svg: str = ""
    fmt: str = "json"
    gens: tuple[str, ...] = ()
    seeds: tuple[str, ...] = ()
    random_count: int = 0
    max_vertices: int = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _load(path: str) -> Presentation:
    p = parse_presentation(Path(path).read_text())
    return expand_to_primary(p)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _orbit_for(p: Presentation, cfg: RunConfig):
    gens = (
        [parse_generator(p, g) for g in cfg.gens]
        if cfg.gens
        else aut0_generators(p)
    )
    seeds = (
        [parse_word(p, s) for s in cfg.seeds]
        if cfg.seeds
        else [normal_form(p, [(v, 1)]) for v in p.vertex_ids]
    )
    return orbit(p, seeds, gens, cfg.orbit_depth, cfg.len_cap)


def _load_cert(p: Presentation, path: str) -> classifier.Certificate:
    obj = json.loads(Path(path).read_text())
    if "certificate" in obj:  # accept full verdict files too
        obj = obj["certificate"]
    return classifier.certificate_from_obj(p, obj)


def _frac(f: Fraction) -> str:
    return str(f)


def cmd_classify(cfg: RunConfig) -> int:
    p = _load(cfg.graph)
    verdict = classifier.classify(p)
    obj = classifier.verdict_to_obj(verdict)
    if cfg.out:
        Path(cfg.out).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    _emit(obj)
    return 0


def cmd_nf(cfg: RunConfig) -> int:
    p = _load(cfg.graph)
    print(word_literal(parse_word(p, cfg.word)))
    return 0


def cmd_norm(cfg: RunConfig) -> int:
    p = _load(cfg.graph)
    x = parse_word(p, cfg.word)
    orb = _orbit_for(p, cfg)
    upper = norm_upper(p, x, orb, cfg.radius)
    lower = Fraction(0)
    if cfg.cert:
        try:
            lower = norm_lower(p, x, _load_cert(p, cfg.cert))
        except ValueError as exc:
            print(f"note: certificate gives no lower bound: {exc}", file=sys.stderr)
    _emit(
        {
            "word": word_literal(x),
            "lower": _frac(lower),
            "upper": upper,
            "params": {
                "orbit_depth": cfg.orbit_depth,
                "len_cap": cfg.len_cap,
                "radius": cfg.radius,
                "orbit_size": len(orb.elements),
                "orbit_exhausted": orb.frontier_exhausted,
            },
        }
    )
    return 0


def _write_svg(path: str, rows) -> None:
    """Minimal polyline growth plot: lower bound and known upper bounds."""
    w, h, pad = 480, 320, 40
    ns = [n for n, _, _ in rows]
    vals = [float(lo) for _, lo, _ in rows]
    vals += [float(up) for _, _, up in rows if up is not None]
    top = max(vals + [1.0])
    nmax = max(ns)

    def pt(n, v):
        x = pad + (w - 2 * pad) * (n / nmax)
        y = h - pad - (h - 2 * pad) * (v / top)
        return f"{x:.1f},{y:.1f}"

    lower_pts = " ".join(pt(n, float(lo)) for n, lo, _ in rows)
    upper_pts = " ".join(pt(n, float(up)) for n, _, up in rows if up is not None)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
        f'<line x1="{pad}" y1="{h - pad}" x2="{w - pad}" y2="{h - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{h - pad}" stroke="black"/>',
        f'<polyline points="{lower_pts}" fill="none" stroke="blue"/>',
    ]
    if upper_pts:
        parts.append(f'<polyline points="{upper_pts}" fill="none" stroke="red"/>')
    parts.append(
        f'<text x="{pad}" y="{pad - 10}" font-size="12">'
        f"norm bounds vs n (blue lower, red upper)</text>"
    )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")


def cmd_distortion(cfg: RunConfig) -> int:
    p = _load(cfg.graph)
    x = parse_word(p, cfg.word)
    cert = None
    if cfg.cert:
        cert_path = Path(cfg.cert)
        if cert_path.exists():
            cert = _load_cert(p, cfg.cert)
        else:
            verdict = classifier.classify(p)
            cert = verdict.certificate
            cert_path.write_text(
                json.dumps(classifier.certificate_to_obj(cert), indent=2, sort_keys=True)
                + "\n"
            )
    orb = _orbit_for(p, cfg)
    rows = distortion_table(p, x, cert, cfg.n_max, orb, cfg.radius)
    print("n,lower,upper")
    for n, lo, up in rows:
        print(f"{n},{_frac(lo)},{'' if up is None else up}")
    if cfg.svg:
        _write_svg(cfg.svg, rows)
    return 0


def cmd_classes(cfg: RunConfig) -> int:
    p = _load(cfg.graph)
    if cfg.fmt == "dot":
        sys.stdout.write(cl.hasse_dot(p))
        sys.stdout.write(p.to_dot(complement=True))
        return 0
    obj = cl.classes_json_obj(p)
    obj["hasse_dot"] = cl.hasse_dot(p)
    obj["complement_dot"] = p.to_dot(complement=True)
    _emit(obj)
    return 0


def cmd_orbit(cfg: RunConfig) -> int:
    p = _load(cfg.graph)
    orb = _orbit_for(p, cfg)
    for w in orb.sorted_elements():
        print(word_literal(w) or "e")
    print(
        f"# size={len(orb.elements)} exhausted={orb.frontier_exhausted} "
        f"depth_used={orb.depth_used} len_cap={orb.length_cap}",
        file=sys.stderr,
    )
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    p = _load(cfg.graph)
    obj = json.loads(Path(cfg.cert).read_text())
    if "certificate" in obj:
        verdict = classifier.verdict_from_obj(p, obj)
    else:
        cert = classifier.certificate_from_obj(p, obj)
        verdict = classifier.Verdict(
            cert.kind == classifier.BOUNDED_DECOMPOSITION, cert
        )
    effort = classifier.VerifyEffort(seed=cfg.seed)
    report = classifier.verify_certificate(p, verdict, effort)
    _emit(report.to_obj())
    return 0 if report.passed else 2


def cmd_gen_corpus(cfg: RunConfig) -> int:
    out = Path(cfg.out or "corpus")
    paths = corpus.gen_corpus(out)
    import random

    rng = random.Random(cfg.seed)
    for i in range(cfg.random_count):
        p = corpus.random_presentation(rng, max_vertices=cfg.max_vertices)
        path = out / f"random_{cfg.seed}_{i:03d}.json"
        path.write_text(json.dumps(p.to_json_obj(), indent=2, sort_keys=True) + "\n")
        paths.append(path)
    for path in paths:
        print(path)
    return 0


def build_parser() -> _Parser:
    top = _Parser(prog="gpnorm", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, help_, graph=True, word=False):
        sp = sub.add_parser(name, help=help_)
        if graph:
            sp.add_argument("graph", help="presentation JSON file")
        if word:
            sp.add_argument("word", help="word literal, e.g. 'a b^-2'")
        sp.add_argument("--seed", type=int, default=0, help="global sampling seed")
        return sp

    sp = add("classify", "decide boundedness, print verdict + certificate")
    sp.add_argument("--out", default="", help="also write the verdict JSON here")

    add("nf", "canonical normal form of a word", word=True)

    def orbit_flags(sp):
        sp.add_argument("--orbit-depth", type=int, default=3, help="BFS composition depth")
        sp.add_argument("--len-cap", type=int, default=12, help="orbit exponent-weight cap")
        sp.add_argument("--gen", action="append", default=[], metavar="LIT",
                        help="generator literal (repeatable); default: all Aut0 generators")
        sp.add_argument("--seed-word", action="append", default=[], metavar="WORD",
                        help="orbit seed word (repeatable); default: vertex generators")

    sp = add("norm", "certified norm interval for a word", word=True)
    orbit_flags(sp)
    sp.add_argument("--radius", type=int, default=4, help="search radius for the upper bound")
    sp.add_argument("--cert", default="", help="certificate JSON for the lower bound")

    sp = add("distortion", "CSV table n,lower,upper for powers of a word", word=True)
    orbit_flags(sp)
    sp.add_argument("--radius", type=int, default=4)
    sp.add_argument("--nmax", type=int, default=6, help="largest power")
    sp.add_argument("--cert", default="",
                    help="certificate JSON (classified and written here if missing)")
    sp.add_argument("--svg", default="", help="also write an SVG growth plot here")

    sp = add("classes", "preorders, tau classes, join decomposition")
    sp.add_argument("--format", dest="fmt", choices=["json", "dot"], default="json")

    sp = add("orbit", "dump a truncated Aut0 orbit as word literals")
    orbit_flags(sp)

    sp = add("verify", "check a certificate; exit 0 PASS, 2 FAIL")
    sp.add_argument("cert", help="certificate or verdict JSON file")

    sp = add("gen-corpus", "write the named corpus (plus random presentations)", graph=False)
    sp.add_argument("--out", default="corpus", help="output directory")
    sp.add_argument("--random", type=int, default=0, dest="random_count",
                    help="number of extra random presentations")
    sp.add_argument("--max-vertices", type=int, default=4)
    return top


def _config(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        graph=getattr(ns, "graph", ""),
        word=getattr(ns, "word", ""),
        orbit_depth=getattr(ns, "orbit_depth", 3),
        len_cap=getattr(ns, "len_cap", 12),
        radius=getattr(ns, "radius", 4),
        n_max=getattr(ns, "nmax", 6),
        seed=getattr(ns, "seed", 0),
        cert=getattr(ns, "cert", ""),
        out=getattr(ns, "out", ""),
        svg=getattr(ns, "svg", ""),
        fmt=getattr(ns, "fmt", "json"),
        gens=tuple(getattr(ns, "gen", [])),
        seeds=tuple(getattr(ns, "seed_word", [])),
        random_count=getattr(ns, "random_count", 0),
        max_vertices=getattr(ns, "max_vertices", 4),
    )


COMMANDS = {
    "classify": cmd_classify,
    "nf": cmd_nf,
    "norm": cmd_norm,
    "distortion": cmd_distortion,
    "classes": cmd_classes,
    "orbit": cmd_orbit,
    "verify": cmd_verify,
    "gen-corpus": cmd_gen_corpus,
}


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = _config(ns)
    try:
        return COMMANDS[cfg.command](cfg)
    except (PresentationError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"gpnorm: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
