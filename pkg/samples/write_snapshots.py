"""Regenerate the judgement files under samples/judgements from the built-in corpus.

Each corpus entry NAME becomes NAME.ctx, NAME.term and NAME.type, which
``nucube check`` reads back. ``urzyczyn.*`` repeats the typing of Urzyczyn's term and ``omega.term``
is the diverging self-application.
"""

from pathlib import Path

from nucube.encoding import corpus
from nucube.text import print_declaration, print_term

HERE = Path(__file__).parent / "judgements"

OMEGA = "(fn x : y. x x) (fn x : y. x x)\n"


def snapshots() -> dict[str, str]:
    files = {"omega.term": OMEGA}
    for name, e in corpus().items():
        files[f"{name}.ctx"] = ",\n".join(map(print_declaration, e.context)) + "\n"
        files[f"{name}.term"] = print_term(e.term) + "\n"
        files[f"{name}.type"] = print_term(e.type) + "\n"
    for ext in ("ctx", "term", "type"):
        files[f"urzyczyn.{ext}"] = files[f"urzyczyn-U.{ext}"]
    return files


def main() -> None:
    HERE.mkdir(exist_ok=True)
    for fname, text in snapshots().items():
        (HERE / fname).write_text(text, encoding="utf-8")
    print(f"wrote {len(snapshots())} files to {HERE}")


if __name__ == "__main__":
    main()
