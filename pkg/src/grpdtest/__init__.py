"""Finite categories, groupoid-valued presheaves and test-category checks.

The main entry points live in the submodules: ``fincat`` (finite categories),
``grpd`` (fundamental groupoids and group presentations), ``presheaf``,
``elements``, ``adjoints``, ``homology``, ``testcat`` and ``cli``.
"""

__version__ = "0.1.0"
