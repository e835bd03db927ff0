"""Measured ratios between evaluation routes, per ambient dimension.

Generated by ``polyalg oracle-calibrate --write-constants``.  Each entry
maps (numerator route, denominator route) to the exact ratio observed on
every instance of the reference battery.
"""
from __future__ import annotations

CONSTANTS: dict[int, dict[tuple[str, str], str]] = {
    2: {
        # OK; measured numerator/denominator per instance:
        #   cube^2: 2 / 2
        #   box,sheared: 4 / 4
        #   sheared^2: 2 / 2
        ('sym', 'chi'): '1',
        # OK; measured numerator/denominator per instance:
        #   cube^2: 2 / 2
        #   box,sheared: 4 / 4
        #   sheared^2: 2 / 2
        #   simplex,cube: 2 / 2
        #   simplex,simplex2: 3 / 3
        ('pair_top', 'chi'): '1',
        # OK; measured numerator/denominator per instance:
        #   cube^2: 2 / 2
        #   box,sheared: 4 / 4
        #   sheared^2: 2 / 2
        ('kernel', 'sym'): '1',
        # OK; measured numerator/denominator per instance:
        #   cube^2: 4 / 2
        #   box,sheared: 8 / 4
        #   sheared^2: 4 / 2
        ('zonotope', 'kernel'): '2',
        # OK; measured numerator/denominator per instance:
        #   cube^2: 4 / 2
        #   box,sheared: 8 / 4
        #   sheared^2: 4 / 2
        ('zonotope', 'chi'): '2',
        # OK; measured numerator/denominator per instance:
        #   cube^2: 4 / 4
        #   box,sheared: 8 / 8
        #   sheared^2: 4 / 4
        ('polarization', 'zonotope'): '1',
        # OK; measured numerator/denominator per instance:
        #   cube^2: 2 / 1
        #   box,sheared: 4 / 2
        #   sheared^2: 2 / 1
        #   simplex,cube: 2 / 1
        #   simplex,simplex2: 3 / 3/2
        ('chi', 'wtV'): '2',
    },
    3: {
        # OK; measured numerator/denominator per instance:
        #   cube^3: 6 / 6
        #   box,sheared,cube: 36 / 36
        ('sym', 'chi'): '1',
        # OK; measured numerator/denominator per instance:
        #   cube^3: 6 / 6
        #   box,sheared,cube: 36 / 36
        #   simplex,cube,cube: 3 / 3
        #   simplex,simplex2,box: 45/4 / 45/4
        ('pair_top', 'chi'): '1',
        # OK; measured numerator/denominator per instance:
        #   cube^3: 6 / 6
        #   box,sheared,cube: 36 / 36
        ('kernel', 'sym'): '1',
        # OK; measured numerator/denominator per instance:
        #   cube^3: 8 / 6
        #   box,sheared,cube: 48 / 36
        ('zonotope', 'kernel'): '4/3',
        # OK; measured numerator/denominator per instance:
        #   cube^3: 8 / 6
        #   box,sheared,cube: 48 / 36
        ('zonotope', 'chi'): '4/3',
        # OK; measured numerator/denominator per instance:
        #   cube^3: 8 / 8
        #   box,sheared,cube: 48 / 48
        ('polarization', 'zonotope'): '1',
        # OK; measured numerator/denominator per instance:
        #   cube^3: 6 / 2/3*sqrt(3)
        #   box,sheared,cube: 36 / 4*sqrt(3)
        #   simplex,cube,cube: 3 / 1/3*sqrt(3)
        #   simplex,simplex2,box: 45/4 / 5/4*sqrt(3)
        ('chi', 'wtV'): '3*sqrt(3)',
    },
}
