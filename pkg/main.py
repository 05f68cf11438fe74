# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Single entry point: ``python main.py <compile|solve|verify|render> [options]``."""
import sys

import compile_cnf
import render
import solve
import verify

COMMANDS = {
    'compile': compile_cnf.run,
    'solve': solve.run,
    'verify': verify.run,
    'render': render.run,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in COMMANDS:
        print('usage: main.py {} [options]'.format('|'.join(COMMANDS)), file=sys.stderr)
        return 2
    return COMMANDS[argv[0]](argv[1:])


if __name__ == "__main__":
    sys.exit(main())
