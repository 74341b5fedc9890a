"""From a braid word to pages and bounds: the run shared by the cli and the checks.
"""
import logging
import sys
from dataclasses import dataclass

from dehncube import conventions
from dehncube.algebra.tqft import ChainComplexF2, assemble_complex
from dehncube.spectral.bounds import BoundsReport, rank_bounds
from dehncube.spectral.specseq import FilteredComplex, SpectralPages, compute_pages, load_higher_maps
from dehncube.topology import tangle
from dehncube.topology.cube import ResolutionCube, TwistSequence, braid_to_twists, build_cube
from dehncube.topology.tangle import (BraidWord, PlatClosure, parse_braid_word, parse_plat, standard_plat,
                                      with_auxiliary_strands)

logger = logging.getLogger(__name__)


@dataclass
class PipelineResult:
    """Everything one run produces.

    ``word`` and ``plat`` are the inputs as given; ``effective`` and
    ``effective_plat`` are what the cube was built from after the mirror and the
    auxiliary strands.
    """
    word: BraidWord
    plat: PlatClosure
    effective: BraidWord
    effective_plat: PlatClosure
    mirrored: bool
    aux_unknot: bool
    twists: TwistSequence
    cube: ResolutionCube
    complex: ChainComplexF2
    filtered: FilteredComplex
    pages: SpectralPages
    bounds: BoundsReport


def resolve_inputs(word, strands=None, plat=None):
    """Accept a :class:`BraidWord` or word text, and a :class:`PlatClosure`, plat text or ``None``."""
    if isinstance(word, BraidWord):
        b = word
    else:
        if strands is None:
            raise ValueError("A strand count is needed to parse a braid word")
        b = parse_braid_word(word, strands)
    if plat is None:
        p = standard_plat(b.strands)
    elif isinstance(plat, PlatClosure):
        p = plat
    else:
        p = parse_plat(plat, b.strands)
    return b, p


def run_pipeline(word, strands=None, plat=None, mirror=False, aux_unknot=False, max_page=2,
                 higher_maps=None, verbose=False):
    """parse, mirror, twist, cube, complex, higher maps, pages, bounds.

    :param word: braid word text or :class:`BraidWord`
    :param strands: strand count when ``word`` is text
    :param plat: plat closure, plat text or ``None`` for the standard plat
    :param mirror: mirror the word on top of ``conventions.APPLY_THEOREM_MIRROR``
    :param aux_unknot: add two auxiliary strands forming a split unknot
    :param max_page: last page to compute; ``None`` runs to the limit page
    :param higher_maps: iterable of :class:`~dehncube.spectral.specseq.HigherBlock`
    :param verbose: progress bars and status messages
    """
    b, p = resolve_inputs(word, strands, plat)
    flip = conventions.APPLY_THEOREM_MIRROR != bool(mirror)
    eff, eff_plat = (tangle.mirror(b), PlatClosure(p.strands, p.caps, p.cups)) if flip else (b, p)
    if aux_unknot:
        eff, eff_plat = with_auxiliary_strands(eff, eff_plat)
    if verbose:
        print(f"Building the {2 ** len(eff)}-vertex cube of '{eff}' on {eff.strands} strands",
              file=sys.stderr)

    ts = braid_to_twists(eff)
    cube = build_cube(ts, eff.strands, eff_plat, aux_unknot=aux_unknot, verbose=verbose)
    cc = assemble_complex(cube, verbose=verbose)
    fc = cc.filtered()
    blocks = list(higher_maps or [])
    if blocks:
        fc = load_higher_maps(fc, blocks)
    pages = compute_pages(fc, r_max=max_page, verbose=verbose)
    logger.debug("E_1 total %d, last page %d", pages.total(1), pages.last_page)
    return PipelineResult(b, p, eff, eff_plat, flip, aux_unknot, ts, cube, cc, fc, pages,
                          rank_bounds(pages))

