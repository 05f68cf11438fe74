# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import datetime
import json
import logging
import os
import random
import sys

import numpy as np


def get_logger(logdir, stream=True):
    logger = logging.getLogger('maxmin')
    ts = str(datetime.datetime.now()).split('.')[0].replace(" ", "_")
    ts = ts.replace(":", "_").replace("-", "_")
    file_path = os.path.join(logdir, 'run_{}.log'.format(ts))
    formatter = logging.Formatter('%(asctime)s %(levelname)s %(message)s')
    for hdlr in list(logger.handlers):
        logger.removeHandler(hdlr)
        hdlr.close()
    hdlr = logging.FileHandler(file_path)
    hdlr.setFormatter(formatter)
    logger.addHandler(hdlr)
    if stream:
        console = logging.StreamHandler()
        console.setFormatter(logging.Formatter('%(levelname)s %(message)s'))
        console.setLevel(logging.WARNING)
        logger.addHandler(console)
    logger.setLevel(logging.INFO)
    return logger


def set_seed(opt):
    random.seed(opt.seed)
    np.random.seed(opt.seed)


def dumps(payload):
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=1, separators=(',', ': ')) + '\n'


def write_json(path, payload):
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.exists(directory):
        os.makedirs(directory)
    with open(path, 'w') as f:
        f.write(dumps(payload))
    return path


def read_json(path):
    with open(path) as f:
        return json.load(f)


def report_error(err, logger=None):
    """Print the machine-readable form of a MaxMinError and return its exit code."""
    text = json.dumps(err.to_dict(), sort_keys=True, default=str)
    print(text, file=sys.stderr)
    if logger is not None:
        logger.error('{}: {}'.format(err.__class__.__name__, err))
    return err.exit_code
