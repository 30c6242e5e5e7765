class LValueError(Exception):
    exit_code = 1


class UsageError(LValueError):
    exit_code = 64


class SingularCurve(LValueError):
    exit_code = 65


class WildCase(LValueError):
    pass


class AmbiguousReconstruction(LValueError):
    pass


class NoCandidate(LValueError):
    pass


class NotAHomomorphism(LValueError):
    exit_code = 64


class TrivialCharacter(LValueError):
    exit_code = 64


class CharacterUnderdetermined(LValueError):
    exit_code = 64


class EigenlineNotFound(LValueError):
    pass


class NormalisationAmbiguous(LValueError):
    pass


class PreconditionViolated(LValueError):
    pass


class TheoremContradiction(LValueError):
    pass


# warning codes recorded on reports instead of raised
WILD_UNDETERMINED = "WildUndetermined"
CANDIDATE_AMBIGUOUS = "CandidateAmbiguous"
SECOND_ANCHOR_MISSING = "SecondAnchorMissing"
SURROGATE_MISS = "SurrogateMiss"
