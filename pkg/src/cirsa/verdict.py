"""Three-way verdict for the RSA-ideal tests (shared by rsa and finlab)."""

from enum import Enum


class Verdict(Enum):
    RSA_IDEAL = "RsaIdeal"
    NOT_RSA_IDEAL = "NotRsaIdeal"
    INELIGIBLE = "Ineligible"

    def __str__(self) -> str:
        return self.value
