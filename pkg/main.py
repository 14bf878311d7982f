import logging
import sys

from controllers.main_controller import MainController


def configure_logging():
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main() -> int:
    configure_logging()
    try:
        app = MainController()
        return app.run(sys.argv[1:])
    except KeyboardInterrupt:
        print("\n\nCalcul interrompu par l'utilisateur.", file=sys.stderr)
        print("Au revoir !", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
