"""Module entrypoint for `python -m porebench`."""

from porebench.cli import app

if __name__ == "__main__":
    app()
