"""The ``mair-parse`` command: raw text in, CoNLL-U out."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .adapt import AdaptError, AdapterConfig, adapt
from .spacy_backend import ModelUnavailableError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mair-parse", description=__doc__)
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        help="input .txt file or directory of .txt files (repeatable)")
    parser.add_argument("--out", required=True, help="output CoNLL-U file")
    parser.add_argument("--model", default="rule-en",
                        help="parser backend: rule-en (bundled) or spacy:<model>")
    parser.add_argument("--coref", action="store_true",
                        help="annotate pronoun coreference chains in MISC")
    return parser


def main(argv: list[str] | None = None) -> None:
    args = build_parser().parse_args(argv)
    config = AdapterConfig(
        inputs=[Path(p) for p in args.inputs],
        output=Path(args.out),
        model=args.model,
        enable_coref=args.coref,
    )
    try:
        report = adapt(config)
    except (AdaptError, ModelUnavailableError) as exc:
        print(f"mair-parse: {exc}", file=sys.stderr)
        sys.exit(1)
    print(
        f"parsed {report['documents']} document(s), {report['sentences']} sentence(s) "
        f"-> {config.output}"
        + (f" ({report['failed']} failed)" if report["failed"] else "")
    )


if __name__ == "__main__":
    main()
