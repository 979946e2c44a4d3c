"""Machine-checkable certificates for the three e_1-graded pieces."""

from .report import CertificateReport, Step
from .y0 import RepairPlan, Y0Class, certify_Y0, classify_Kminus
from .y1 import ChargeGroup, FactoredComposition, certify_Y1, c_value, s_value
from .y2 import certify_Y2

CERTIFIERS = {"y0": certify_Y0, "y1": certify_Y1, "y2": certify_Y2}

__all__ = [
    "CERTIFIERS",
    "CertificateReport",
    "ChargeGroup",
    "FactoredComposition",
    "RepairPlan",
    "Step",
    "Y0Class",
    "c_value",
    "certify_Y0",
    "certify_Y1",
    "certify_Y2",
    "classify_Kminus",
    "s_value",
]
