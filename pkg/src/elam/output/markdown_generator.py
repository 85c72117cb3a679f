"""Markdown reports for checked programs."""

from datetime import datetime
from pathlib import Path

from ..checker.program import ProgramReport, Status

_ICONS = {Status.PASS: "✅", Status.FAIL: "❌", Status.UNKNOWN: "❔"}


def _cell(text: str, limit: int = 80) -> str:
    text = text.replace("|", "\\|").replace("\n", " ")
    return text if len(text) <= limit else text[: limit - 3] + "..."


class MarkdownReportGenerator:
    """Writes one Markdown file summarizing one or more program reports."""

    def render(self, reports: list[ProgramReport], fuel: int) -> str:
        now = datetime.now().strftime("%Y-%m-%d %H:%M")
        items = sum(len(report.items) for report in reports)
        passed = sum(report.passed for report in reports)
        failed = sum(report.failed for report in reports)
        unknown = sum(report.unknown for report in reports)

        md_content = f"""# elam check report

**Generated:** {now}
**Fuel per item:** {fuel}

---

## Summary

| Metric | Value |
|--------|-------|
| Files | {len(reports)} |
| Items | {items} |
| Passed | {passed} |
| Failed | {failed} |
| Unknown | {unknown} |

"""
        for report in reports:
            md_content += f"---\n\n## {report.path or 'input'}\n\n"
            if not report.items:
                md_content += "*No items*\n\n"
                continue
            md_content += "| Line | | Item | Result |\n"
            md_content += "|------|---|------|--------|\n"
            for item_report in report.items:
                result = item_report.message or (
                    str(item_report.value) if item_report.value is not None else "ok"
                )
                md_content += (
                    f"| {item_report.item.line or ''} | {_ICONS[item_report.status]} "
                    f"| `{_cell(item_report.item.describe())}` | {_cell(result)} |\n"
                )
            md_content += "\n"
        return md_content

    def generate(self, reports: list[ProgramReport], fuel: int, output_path: str) -> str:
        """Render the report and save it; returns the path written."""
        path = Path(output_path)
        if not path.suffix:
            path = path.with_suffix(".md")
        path.write_text(self.render(reports, fuel), encoding="utf-8")
        return str(path)
