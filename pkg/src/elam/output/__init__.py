"""Terminal output, Markdown reports and interactive prompts."""

from .formatter import OutputFormatter
from .markdown_generator import MarkdownReportGenerator

__all__ = ["MarkdownReportGenerator", "OutputFormatter"]
