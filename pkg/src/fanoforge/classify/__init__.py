"""Families, their assessments, and the generated tables."""

from .assess import DefectReport, defect_assess, product_assess, toric_assess
from .canonical import automorphism_group, canonicalize, orbit
from .families import AmbiguityReport, FamilyRecord, ambiguity_scan, count_neither, double_families, \
    rho4_families, rho5_families, rho6_families, threefold_families
from .golden import GoldenError, load_golden
from .tables import SCOPES, DiffEntry, DiffReport, Table, TableError, TableSet, diff_expected, generate_tables, \
    render

__all__ = ["AmbiguityReport", "DefectReport", "DiffEntry", "DiffReport", "FamilyRecord", "GoldenError", "SCOPES",
           "Table", "TableError", "TableSet", "ambiguity_scan", "automorphism_group", "canonicalize",
           "count_neither", "defect_assess", "diff_expected", "double_families", "generate_tables",
           "load_golden", "orbit", "product_assess", "render", "rho4_families", "rho5_families",
           "rho6_families", "threefold_families", "toric_assess"]
