"""
Numeric parameter evaluator
"""

import ast
import logging
import typing

import sympy


BinOp: typing.TypeAlias = typing.Callable[[sympy.Expr, sympy.Expr],
    sympy.Expr]
UnOp: typing.TypeAlias = typing.Callable[[sympy.Expr], sympy.Expr]

LOGGER = logging.getLogger(__name__)

# Largest exponent accepted by the power operator
MAX_EXPONENT = 64

__all__ = ['ExpressionEvaluator', 'parse_number']


class ExpressionEvaluator:
    """
    Used to safely evaluate numeric command-line parameters such as "1/2",
    "2*pi/3" or "sqrt(2)". Rational input stays exact.
    """

    # Mappings between an AST operation, and the actual operation performed.
    BINOPS: typing.ClassVar[dict[typing.Type[ast.AST], BinOp]] = {
        ast.Add: lambda a, b: a + b,
        ast.Sub: lambda a, b: a - b,
        ast.Mult: lambda a, b: a * b,
        ast.Div: lambda a, b: a / b,
        ast.Pow: lambda a, b: a ** b,
    }

    UNOPS: typing.ClassVar[dict[typing.Type[ast.AST], UnOp]] = {
        ast.UAdd: lambda a: +a,
        ast.USub: lambda a: -a,
    }

    CONSTANTS: typing.ClassVar[dict[str, sympy.Expr]] = {
        'pi': sympy.pi,
        'e': sympy.E,
    }

    FUNCTIONS: typing.ClassVar[dict[str, UnOp]] = {
        'sqrt': sympy.sqrt,
        'sin': sympy.sin,
        'cos': sympy.cos,
        'tan': sympy.tan,
    }

    # Used to check if the expression only contains allowed nodes. Maps an
    # allowed node class to the sub-nodes to check.
    VALID_NODES: typing.ClassVar[dict[typing.Type[ast.AST], list[str]]] = {
        ast.UnaryOp: ['operand'],
        ast.BinOp: ['left', 'right'],
        ast.Name: [],
        ast.Constant: [],
        ast.Call: ['args'],
    }

    _root_node: ast.AST
    _text: str

    def __init__(self, expr: str):
        """
        Initializes the evaluator with the provided expression. May raise a
        SyntaxError if the expression is incorrect or contains disallowed
        operations.
        """

        root_node = ast.parse(expr.strip(), mode='eval').body

        # Check the validity
        self._validate_node(expr.strip(), root_node)

        self._root_node = root_node
        self._text = expr.strip()

    def evaluate(self) -> sympy.Expr:
        """
        Evaluates the expression. Raises ValueError if the result is not a
        finite real number.
        """

        try:
            result = self._evaluate_node(self._root_node)
        except (TypeError, ArithmeticError) as err:
            raise ValueError(f"Cannot evaluate {self._text!r}: {err}") \
                from err

        if not (result.is_extended_real and result.is_finite):
            raise ValueError(f"{self._text!r} is not a finite real number")

        return result

    def __repr__(self) -> str:
        return f"<ExpressionEvaluator: {ast.unparse(self._root_node)}>"

    @staticmethod
    def _syntax_error(message: str, text: str, node: ast.AST) -> SyntaxError:
        assert node.end_col_offset is not None

        filename = '<expr>'
        lineno = 1
        offset = node.col_offset + 1
        end_lineno = 1
        end_offset = node.end_col_offset + 1

        return SyntaxError(message, (filename, lineno, offset, text,
            end_lineno, end_offset))

    @classmethod
    def _validate_node(cls, text: str, node: ast.AST) -> None:
        """
        Check that the provided node (and its children) represent supported
        operations.
        """

        to_check = cls.VALID_NODES.get(node.__class__)
        if to_check is None:
            name = node.__class__.__name__.lower()
            raise cls._syntax_error(f"Invalid operation {name!r}", text, node)

        if isinstance(node, ast.Constant) and (isinstance(node.value, bool)
            or not isinstance(node.value, (int, float))):
            raise cls._syntax_error(f"Invalid constant {node.value!r}", text,
                node)

        if isinstance(node, ast.Name) and node.id not in cls.CONSTANTS:
            raise cls._syntax_error(f"Unknown name {node.id!r}", text, node)

        if isinstance(node, ast.BinOp) and node.op.__class__ not in \
            cls.BINOPS:
            name = node.op.__class__.__name__.lower()
            raise cls._syntax_error(f"Invalid operation {name!r}", text, node)

        if isinstance(node, ast.UnaryOp) and node.op.__class__ not in \
            cls.UNOPS:
            name = node.op.__class__.__name__.lower()
            raise cls._syntax_error(f"Invalid operation {name!r}", text, node)

        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or \
                node.func.id not in cls.FUNCTIONS:
                raise cls._syntax_error("Unknown function", text, node)

            # Only support the 1-argument case.
            if len(node.args) != 1 or node.keywords:
                raise cls._syntax_error("Functions take exactly one "
                    "argument", text, node)

        for attr in to_check:
            sub_node_or_list: ast.AST | list[ast.AST] = getattr(node, attr)
            if isinstance(sub_node_or_list, list):
                for sub_node in sub_node_or_list:
                    cls._validate_node(text, sub_node)
            else:
                cls._validate_node(text, sub_node_or_list)

    @classmethod
    def _evaluate_node(cls, node: ast.AST) -> sympy.Expr:
        class_name = node.__class__.__name__.lower()

        evaluator = getattr(cls, f'_evaluate_{class_name}', None)
        if evaluator is None:
            raise AssertionError(f"Unhandled node: {ast.dump(node)}")

        return evaluator(node)

    @classmethod
    def _evaluate_unaryop(cls, node: ast.UnaryOp) -> sympy.Expr:
        operand = cls._evaluate_node(node.operand)

        return cls.UNOPS[node.op.__class__](operand)

    @classmethod
    def _evaluate_binop(cls, node: ast.BinOp) -> sympy.Expr:
        left = cls._evaluate_node(node.left)
        right = cls._evaluate_node(node.right)

        if isinstance(node.op, ast.Pow) and (not right.is_number or
            abs(right) > MAX_EXPONENT):
            raise ValueError(f"Exponent {right} is too large")

        return cls.BINOPS[node.op.__class__](left, right)

    @classmethod
    def _evaluate_call(cls, node: ast.Call) -> sympy.Expr:
        assert isinstance(node.func, ast.Name)
        argument = cls._evaluate_node(node.args[0])

        return cls.FUNCTIONS[node.func.id](argument)

    @classmethod
    def _evaluate_name(cls, node: ast.Name) -> sympy.Expr:
        return cls.CONSTANTS[node.id]

    @classmethod
    def _evaluate_constant(cls, node: ast.Constant) -> sympy.Expr:
        # Decimal literals are read exactly: 0.1 is 1/10
        return sympy.Rational(repr(node.value))


def parse_number(text: str) -> sympy.Expr:
    """
    Evaluates a numeric parameter. Raises SyntaxError for rejected
    expressions and ValueError for non-real results.
    """

    result = ExpressionEvaluator(text).evaluate()
    LOGGER.debug("Parameter %r evaluated to %s", text, result)
    return result
