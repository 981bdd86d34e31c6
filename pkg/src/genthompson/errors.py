"""Exception hierarchy.

Every domain error derives from :class:`ThompsonError` so the CLI can map
them to exit code 1 and a JSON error object.
"""


class ThompsonError(ValueError):
    code = "domain_error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class BaseMismatch(ThompsonError):
    code = "base_mismatch"


class OutOfRange(ThompsonError):
    code = "out_of_range"


class NonCanonical(ThompsonError):
    code = "non_canonical"


class NotInAn(ThompsonError):
    code = "not_in_An"


class SlopeCosetMixed(ThompsonError):
    code = "slope_coset_mixed"


class NotResiduePreserving(ThompsonError):
    code = "not_residue_preserving"


class ResidueMismatch(ThompsonError):
    code = "residue_mismatch"


class NotAscending(ThompsonError):
    code = "not_ascending"


class IncompatibleResidues(ThompsonError):
    code = "incompatible_residues"


class SupportTooWide(ThompsonError):
    code = "support_too_wide"


class BadDivisor(ThompsonError):
    code = "bad_divisor"


class NotPositive(ThompsonError):
    code = "not_positive"


class UnsupportedLeftOfZero(ThompsonError):
    code = "unsupported_left_of_zero"


class NotEventuallyStandard(ThompsonError):
    code = "not_eventually_standard"


class NotSeminormal(ThompsonError):
    code = "not_seminormal"


class NotMember(ThompsonError):
    code = "not_member"


class HasTLetters(ThompsonError):
    code = "has_t_letters"


class TrivialWord(ThompsonError):
    code = "trivial_word"


class BadBases(ThompsonError):
    code = "bad_bases"


class FlavorMismatch(ThompsonError):
    code = "flavor_mismatch"


class DivisibilityFail(ThompsonError):
    code = "divisibility_fail"


class Unverified(ThompsonError):
    code = "unverified"


class PeriodMismatch(ThompsonError):
    code = "period_mismatch"


class NonIntegerImage(ThompsonError):
    code = "non_integer_image"


class DegenerateActiveInterval(ThompsonError):
    code = "degenerate_active_interval"


class NotNormalizer(ThompsonError):
    code = "not_normalizer"


class ParseError(ThompsonError):
    """Malformed textual input; ``column`` is 1-based."""

    code = "parse_error"

    def __init__(self, message, column=None):
        self.column = column
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)

    def to_json(self):
        out = super().to_json()
        out["column"] = self.column
        return out
