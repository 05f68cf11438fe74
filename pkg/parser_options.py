# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import os

COMMANDS = ('compile', 'solve', 'verify', 'render')


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


def _common(parser):
    parser.add_argument('--root', type=str, default='.', help='root path for relative paths and logs')
    parser.add_argument('--name', type=str, default='maxmin', help='run name, logs go to <root>/logs/<name>')
    parser.add_argument('--seed', type=int, default=1337, help='random seed')
    parser.add_argument('--quiet', action='store_true', help='no progress bars')
    #caps
    parser.add_argument('--tri_cap', type=int, default=_env_int('MAXMIN_TRI_CAP', 12),
                        help='largest point set triangulated exhaustively')
    parser.add_argument('--cds_cap', type=int, default=_env_int('MAXMIN_CDS_CAP', 24),
                        help='largest CDS instance for the brute-force solver')
    parser.add_argument('--enum_limit', type=int, default=_env_int('MAXMIN_ENUM_LIMIT', 200000),
                        help='most triangulations enumerated')
    parser.add_argument('--sat_cap', type=int, default=_env_int('MAXMIN_SAT_CAP', 20),
                        help='most variables for the brute-force SAT oracle')
    return parser


def _construction(parser):
    parser.add_argument('--gap', type=str, default=None, help='gap polynomial in n, e.g. "n^2"')
    parser.add_argument('--scale_k', type=int, default=4, help='layout scale constant K, coordinates grow by K*n^2')
    parser.add_argument('--radius_factor', type=str, default='1', help='variable cycle radius in units of n')
    parser.add_argument('--shift_factor', type=str, default='1/8', help='clause segment shift in units of the radius')
    parser.add_argument('--extension', type=str, default='1/64',
                        help='cycle side extension past a vertex, fraction of the shorter adjacent side')
    parser.add_argument('--direction_denominator', type=int, default=4096)
    parser.add_argument('--schedules', type=int, default=8, help='perturbation schedules tried')
    return parser


def parser_(parser, command):
    if command not in COMMANDS:
        raise ValueError('unknown command {}'.format(command))
    _common(parser)
    if command == 'compile':
        parser.add_argument('cnf', type=str, help='DIMACS file, layout hints as comments')
        parser.add_argument('--out', type=str, default='out', help='artifact directory')
        parser.add_argument('--no_points', action='store_true', help='stop after the CDS stage')
        _construction(parser)
    elif command == 'solve':
        parser.add_argument('instance', type=str, help='cds, points, pointset or DIMACS file')
        parser.add_argument('--mode', type=str, default='cds', help='cds|maxmin|sat|count')
        parser.add_argument('--certificate', type=str, default=None,
                            help='certificate for the structured CDS solver')
        parser.add_argument('--audit', action='store_true', help='check every point pair of the witness: edge iff no edge separates it')
        parser.add_argument('--out', type=str, default=None, help='solution file')
    elif command == 'verify':
        parser.add_argument('cnf', type=str, nargs='?', default=None, help='DIMACS file')
        parser.add_argument('--seeds', type=int, default=0, help='check random formulas for seeds 0..N-1')
        parser.add_argument('--first_seed', type=int, default=0)
        parser.add_argument('--num_workers', type=int, default=1)
        parser.add_argument('--no_points', action='store_true', help='skip the point stage')
        parser.add_argument('--out', type=str, default=None, help='JSON-lines report file, stdout if absent')
    elif command == 'render':
        parser.add_argument('artifact', type=str, help='layout, cds, points or triangulation file')
        parser.add_argument('--certificate', type=str, default=None, help='parity styles for a cds file')
        parser.add_argument('--triangulation', type=str, default=None, help='edges drawn over a points file')
        parser.add_argument('--out', type=str, default=None, help='SVG file, <artifact>.svg if absent')
        parser.add_argument('--width', type=float, default=6.0, help='inches')
        parser.add_argument('--height', type=float, default=6.0, help='inches')
        parser.add_argument('--hide', type=str, default='', help='comma separated layers to hide')
        parser.add_argument('--no_labels', action='store_true')
    return parser


def relative_path_to_absolute_path(opt):
    for key in ('cnf', 'instance', 'artifact', 'certificate', 'triangulation', 'out'):
        value = getattr(opt, key, None)
        if value:
            setattr(opt, key, os.path.join(opt.root, value))

    opt.logdir = os.path.join(opt.root, 'logs', opt.name)
    if not os.path.exists(opt.logdir):
        os.makedirs(opt.logdir)
    return opt
