# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""SVG drawings of the artifacts.

Even variable segments are bold, odd ones dotted, clause segments thin. Targets
are filled dots and epsilon-pairs small paired dots. Every drawn element carries
a gid (``even-3``, ``target-0``, ...) so the layers can be counted in the SVG.
"""
import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt

from cds.instance import CdsInstance
from data import load_artifact
from errors import InputError, MaxMinError, UnknownArtifact
from geometry.triangulation import MaxMinResult, PointSet, Triangulation
from parser_options import parser_, relative_path_to_absolute_path
from reduction.certificate import CLAUSE, EVEN, ODD
from reduction.layout import IncidenceLayout
from reduction.points import PointInstance
from utils import get_logger, report_error, set_seed

LAYERS = ('even', 'odd', 'clause', 'stabber', 'targets', 'pairs', 'points', 'triangulation', 'layout', 'labels')

STYLES = {
    'even': dict(color='black', linewidth=2.4, linestyle='-'),
    'odd': dict(color='black', linewidth=1.2, linestyle=':'),
    'clause': dict(color='0.3', linewidth=0.6, linestyle='-'),
    'stabber': dict(color='0.2', linewidth=0.8, linestyle='-'),
    'targets': dict(color='black', marker='o', markersize=4, linestyle='none'),
    'pairs': dict(color='tab:red', marker='o', markersize=2, linestyle='none'),
    'points': dict(color='black', marker='o', markersize=2.5, linestyle='none'),
    'triangulation': dict(color='tab:blue', linewidth=0.5, linestyle='-'),
    'layout': dict(color='black', linewidth=1.0, linestyle='-', marker='o', markersize=4),
    'labels': dict(fontsize=8),
}

ROLE_LAYERS = {EVEN: 'even', ODD: 'odd', CLAUSE: 'clause'}


def _default_styles():
    return {layer: dict(style) for layer, style in STYLES.items()}


@dataclass(frozen=True)
class RenderSpec:
    hidden: FrozenSet[str] = frozenset()
    width: float = 6.0
    height: float = 6.0
    styles: Dict[str, dict] = field(default_factory=_default_styles)

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise InputError('render dimensions must be positive, got {}x{}'.format(self.width, self.height))
        unknown = set(self.hidden) - set(LAYERS)
        if unknown:
            raise InputError('unknown layers {}'.format(', '.join(sorted(unknown))))

    def shows(self, layer: str) -> bool:
        return layer not in self.hidden


class _Canvas(object):
    """Collects the artists and the bounding box of one drawing."""

    def __init__(self, spec: RenderSpec):
        self.spec = spec
        self.fig, self.ax = plt.subplots(figsize=(spec.width, spec.height))
        self.xs, self.ys = [], []

    def _track(self, *points):
        for p in points:
            self.xs.append(float(p.x))
            self.ys.append(float(p.y))

    def segment(self, layer, gid, a, b):
        if not self.spec.shows(layer):
            return
        self._track(a, b)
        line, = self.ax.plot([float(a.x), float(b.x)], [float(a.y), float(b.y)], **self.spec.styles[layer])
        line.set_gid(gid)

    def dots(self, layer, gid, *points):
        if not self.spec.shows(layer):
            return
        self._track(*points)
        line, = self.ax.plot([float(p.x) for p in points], [float(p.y) for p in points], **self.spec.styles[layer])
        line.set_gid(gid)

    def label(self, gid, p, text):
        if not self.spec.shows('labels'):
            return
        artist = self.ax.text(float(p.x), float(p.y), text, **self.spec.styles['labels'])
        artist.set_gid(gid)

    def save(self, out):
        if self.xs:
            lo_x, hi_x, lo_y, hi_y = min(self.xs), max(self.xs), min(self.ys), max(self.ys)
            pad = max(hi_x - lo_x, hi_y - lo_y, 1.0) * 0.05
            self.ax.set_xlim(lo_x - pad, hi_x + pad)
            self.ax.set_ylim(lo_y - pad, hi_y + pad)
        else:
            self.ax.set_xlim(-1, 1)
            self.ax.set_ylim(-1, 1)
        self.ax.set_aspect('equal')
        self.ax.axis('off')
        with matplotlib.rc_context({'svg.hashsalt': 'maxmin', 'svg.fonttype': 'none'}):
            self.fig.savefig(out, format='svg', metadata={'Date': None})
        plt.close(self.fig)
        return out


def draw_layout(canvas: _Canvas, layout: IncidenceLayout):
    for k, edge in enumerate(layout.edges):
        seg = layout.segment(edge)
        canvas.segment('layout', 'leg-{}'.format(k), seg.a, seg.b)
    for v, p in enumerate(layout.var_pos):
        canvas.dots('targets', 'var-{}'.format(v), p)
        canvas.label('label-x{}'.format(v + 1), p, 'x{}'.format(v + 1))
    for c, p in enumerate(layout.clause_pos):
        canvas.dots('targets', 'clause-vertex-{}'.format(c), p)
        canvas.label('label-c{}'.format(c + 1), p, 'c{}'.format(c + 1))


def draw_cds(canvas: _Canvas, inst: CdsInstance, roles=None):
    roles = roles or inst.roles or ('stabber',) * len(inst.stabbers)
    for s, seg in enumerate(inst.stabbers):
        layer = ROLE_LAYERS.get(roles[s], 'stabber')
        canvas.segment(layer, '{}-{}'.format(layer, s), seg.a, seg.b)
    for t, p in enumerate(inst.targets):
        canvas.dots('targets', 'target-{}'.format(t), p)
        canvas.label('label-t{}'.format(t), p, 't{}'.format(t))


def draw_points(canvas: _Canvas, pi: PointInstance, triangulation: Optional[Triangulation] = None):
    roles = pi.roles or ('stabber',) * len(pi.stabber_edges)
    for s, e in enumerate(pi.stabber_edges):
        layer = ROLE_LAYERS.get(roles[s], 'stabber')
        canvas.segment(layer, '{}-{}'.format(layer, s), pi.points[e.i], pi.points[e.j])
    paired = set()
    for k, pair in enumerate(pi.pairs):
        paired.update((pair.t1, pair.t2))
        canvas.dots('pairs', 'pair-{}'.format(k), pi.points[pair.t1], pi.points[pair.t2])
    for i, p in enumerate(pi.points):
        if i not in paired:
            canvas.dots('points', 'point-{}'.format(i), p)
    if triangulation is not None:
        draw_triangulation(canvas, triangulation, with_points=False)


def draw_triangulation(canvas: _Canvas, tri: Triangulation, with_points: bool = True):
    for k, e in enumerate(tri.sorted_edges()):
        canvas.segment('triangulation', 'edge-{}'.format(k), tri.base[e.i], tri.base[e.j])
    if with_points:
        for i, p in enumerate(tri.base):
            canvas.dots('points', 'point-{}'.format(i), p)


def render_artifact(artifact, out, spec: Optional[RenderSpec] = None, certificate=None, triangulation=None):
    spec = spec or RenderSpec()
    canvas = _Canvas(spec)
    if isinstance(artifact, IncidenceLayout):
        draw_layout(canvas, artifact)
    elif isinstance(artifact, CdsInstance):
        draw_cds(canvas, artifact, certificate.stabber_roles() if certificate is not None else None)
    elif isinstance(artifact, PointInstance):
        draw_points(canvas, artifact, triangulation)
    elif isinstance(artifact, MaxMinResult):
        draw_triangulation(canvas, artifact.witness)
    elif isinstance(artifact, Triangulation):
        draw_triangulation(canvas, artifact)
    elif isinstance(artifact, PointSet):
        for i, p in enumerate(artifact):
            canvas.dots('points', 'point-{}'.format(i), p)
    else:
        plt.close(canvas.fig)
        raise UnknownArtifact('cannot render {}'.format(type(artifact).__name__))
    return canvas.save(out)


def render(opt, logger):
    hidden = frozenset(layer.strip() for layer in opt.hide.split(',') if layer.strip())
    if opt.no_labels:
        hidden |= {'labels'}
    spec = RenderSpec(hidden, opt.width, opt.height)
    certificate = load_artifact(opt.certificate) if opt.certificate else None
    triangulation = load_artifact(opt.triangulation) if opt.triangulation else None
    if isinstance(triangulation, MaxMinResult):
        triangulation = triangulation.witness
    out = opt.out or os.path.splitext(opt.artifact)[0] + '.svg'
    render_artifact(load_artifact(opt.artifact), out, spec, certificate, triangulation)
    print('wrote {}'.format(out))
    logger.info('rendered {} to {}'.format(opt.artifact, out))
    return out


def run(argv=None):
    parser = argparse.ArgumentParser(description="render an artifact as SVG")
    parser = parser_(parser, 'render')
    opt = parser.parse_args(argv)

    opt = relative_path_to_absolute_path(opt)
    logger = get_logger(opt.logdir)
    set_seed(opt)
    try:
        render(opt, logger)
    except MaxMinError as err:
        return report_error(err, logger)
    return 0


if __name__ == "__main__":
    sys.exit(run())
