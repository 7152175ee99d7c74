from enum import Enum, IntEnum


class CaseTag(Enum):
    RECIPROCAL = 'reciprocal'
    POWER = 'power'
    NONLINEAR = 'nonlinear'


class TermOrderKind(Enum):
    GREVLEX = 'grevlex'
    LEX = 'lex'


class ArithOp(Enum):
    ADD = 'add'
    MUL = 'mul'
    SCALE = 'scale'


class ExitCode(IntEnum):
    SUCCESS = 0
    FAILURE = 1
    HYPOTHESIS = 2
    UNIT_IDEAL = 3
    PARSE = 4


class TemplateName(Enum):
    SOLVE_REPORT = 'solve_report.j2'
    CONVERSE_REPORT = 'converse_report.j2'
    VERIFY_REPORT = 'verify_report.j2'
