"""
Exceptions Module

项目统一的异常层次结构。

主要功能：
- 输入解析错误（多项式、序列、域描述）
- 数学上的拒绝（非 Gorenstein、非 Artinian、不可实现）
- 内部自检失败（构造结果未通过验证）

命令行按异常类别映射退出码：1 = 解析/配置错误，2 = 数学拒绝，3 = 内部验证失败。
"""
from typing import Optional


class ApolarError(Exception):
    """Base class for every error raised by the toolkit."""

    exit_code: int = 3
    error_type: str = "internal_error"


# ---------------------------------------------------------------------------
# Input errors (exit code 1)
# ---------------------------------------------------------------------------

class ParseError(ApolarError, ValueError):
    """Malformed textual input."""

    exit_code = 1
    error_type = "parse_error"


class PolynomialSyntaxError(ParseError):
    """Polynomial text does not follow the grammar."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownVariableError(ParseError):
    """A variable letter that the target ring does not have."""

    def __init__(self, name: str, position: int):
        self.name = name
        self.position = position
        super().__init__(f"variable {name} not in ring (position {position})")


class SequenceSyntaxError(ParseError):
    """Hilbert function text is not a comma-separated list of integers."""


class FieldConfigurationError(ApolarError, ValueError):
    """Unsupported coefficient field descriptor."""

    exit_code = 1
    error_type = "configuration_error"


class ArityMismatchError(ApolarError, ValueError):
    """Ring and dual ring have different numbers of variables."""

    exit_code = 1
    error_type = "arity_mismatch"


class ZeroPolynomialError(ApolarError, ValueError):
    """Operation undefined on the zero polynomial."""

    exit_code = 1
    error_type = "zero_input"


# ---------------------------------------------------------------------------
# Mathematical rejections (exit code 2)
# ---------------------------------------------------------------------------

class NotArtinianError(ApolarError):
    """No power of the maximal ideal lies in the ideal below the ceiling."""

    exit_code = 2
    error_type = "not_artinian"


class NotGorensteinError(ApolarError):
    """The quotient has a socle of dimension other than one."""

    exit_code = 2
    error_type = "not_gorenstein"


class PreconditionError(ApolarError):
    """Input is valid but outside the domain of the requested operation."""

    exit_code = 2
    error_type = "precondition_failed"


class RejectedSequenceError(ApolarError):
    """Hilbert function rejected by the (1,3,3) classifier."""

    exit_code = 2
    error_type = "rejected_sequence"

    def __init__(self, message: str, classification: Optional[object] = None):
        self.classification = classification
        super().__init__(message)


class OverrideInconsistentError(ApolarError):
    """A user supplied dual generator does not have the required shape."""

    exit_code = 2
    error_type = "override_inconsistent"


class UnrealizableByPowersError(ApolarError):
    """No sum of powers of linear forms has the requested Hilbert function."""

    exit_code = 2
    error_type = "unrealizable_by_powers"


# ---------------------------------------------------------------------------
# Internal verification failures (exit code 3)
# ---------------------------------------------------------------------------

class VerificationError(ApolarError):
    """A constructed object failed its independent self-check."""

    exit_code = 3
    error_type = "verification_failed"


class SyzygyTemplateError(VerificationError):
    """Relation module could not be brought into the expected column shape."""

    error_type = "syzygy_template_failed"
